"""Straight-line re-implementation of the iterative scheduler on G3.

Written independently of the C++ code; its per-window sigma values are frozen
into tests/driver_test.cpp. Windows are printed widest first (1:5 .. 4:5).
"""
import sys, math, itertools
from oracle_values import G3
ids = list(G3)
n, m = 15, 5
I = {t: G3[t][0] for t in ids}; D = {t: G3[t][1] for t in ids}
par = {t: G3[t][2] for t in ids}
ch = {t: [c for c in ids if t in par[c]] for t in ids}
beta = 0.273; d = 230
def sig(prof):
    T = sum(x[1] for x in prof); t = 0; s = 0
    for c, du in prof:
        corr = sum((math.exp(-beta**2*k*k*(T-t-du)) - math.exp(-beta**2*k*k*(T-t)))/(beta**2*k*k) for k in range(1, 11))
        s += c*(du+2*corr); t += du
    return s
Imin = min(min(v) for v in I.values()); Imax = max(max(v) for v in I.values())
Emin = sum(I[t][4]*D[t][4] for t in ids); Emax = sum(I[t][0]*D[t][0] for t in ids)
menergy = {t: sum(a*b for a, b in zip(I[t], D[t]))/5 for t in ids}
E = sorted(ids, key=lambda t: (menergy[t], t))
def lsched(w):
    done, out = set(), []
    while len(out) < n:
        ready = [t for t in ids if t not in done and all(p in done for p in par[t])]
        v = min(ready, key=lambda t: (-w[t], t)); out.append(v); done.add(v)
    return out
def desc(v):
    s, st = set(), [v]
    while st:
        x = st.pop()
        if x not in s: s.add(x); st += ch[x]
    return s
def factors(L, col):
    cur = [I[t][col[t]] for t in L]
    cif = sum(1 for a, b in zip(cur, cur[1:]) if a < b)/(n-1)
    En = sum(I[t][col[t]]*D[t][col[t]] for t in L)
    return cif, (En-Emin)/(Emax-Emin)
def calc_dpf(L, col, st, efix, ws):
    col = dict(col); efix = set(efix)
    Tc = sum(D[t][col[t]] for t in L)
    while Tc > d:
        q = next((t for t in E if t not in efix and st[t] == "free"), None)
        if q is None:
            c, e = factors(L, col); return e, c, math.inf, Tc
        if col[q] <= ws: efix.add(q); continue
        if col[q] == ws+1: efix.add(q)
        col[q] -= 1
        Tc = sum(D[t][col[t]] for t in L)
    free = [t for t in L if st[t] == "free"]
    if not free:
        dpf = (d-Tc)/d
    else:
        dpf = sum((m-1-col[t])/(m-1) for t in free)/len(free)
    c, e = factors(L, col)
    return e, c, dpf, Tc
def choose(L, ws):
    col = {t: m-1 for t in L}; st = {t: "free" for t in L}; efix = set()
    st[L[-1]] = "fixed"; efix.add(L[-1]); Tsum = D[L[-1]][m-1]
    for i in range(n-2, -1, -1):
        t = L[i]; st[t] = "tagged"; efix.add(t); best = (math.inf, None)
        for j in range(m-1, ws-1, -1):
            col[t] = j
            e, c, dpf, Tc = calc_dpf(L, col, st, efix, ws)
            Tt = Tsum + D[t][j]
            B = (d-Tt)/d + (I[t][j]-Imin)/(Imax-Imin) + e + c + dpf
            if B < best[0]: best = (B, j)
        if best[1] is None: return None
        col[t] = best[1]; st[t] = "fixed"; Tsum += D[t][best[1]]
    return col
def cost(L, col): return sig([(I[t][col[t]], D[t][col[t]]) for t in L]), sum(D[t][col[t]] for t in L)
def run():
    L = lsched({t: sum(I[t])/5 for t in ids}); prev = math.inf
    for it in range(6):
        row = []
        best = (math.inf, None, None)
        for ws in range(3, -1, -1):
            col = choose(L, ws)
            if col is None: row.append("x"); continue
            s, dl = cost(L, col); row.append("%.0f/%.1f" % (s, dl))
            if s < best[0]: best = (s, col, dl)
        Lw = lsched({t: sum(I[u][best[1][u]] for u in desc(t)) for t in ids})
        tw = cost(Lw, best[1])[0]
        ic = min(best[0], tw)
        print(" ", it+1, row[::-1], "min %.6f w %.6f" % (best[0], tw), ",".join(Lw))
        if ic >= prev: break
        prev = ic; L = Lw
if __name__ == "__main__":
    run()
