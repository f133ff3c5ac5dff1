#include "batsched/sequencing.hpp"

#include <algorithm>
#include <stdexcept>

namespace batsched {

Sequence list_schedule(const TaskGraph& g, std::span<const double> weight) {
  const std::size_t n = g.size();
  if (weight.size() != n) throw std::invalid_argument("weight must be given for every task");

  std::vector<std::size_t> waiting(n);
  for (std::size_t i = 0; i < n; ++i) waiting[i] = g.parents(i).size();
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (waiting[i] == 0) ready.push_back(i);

  auto better = [&](std::size_t a, std::size_t b) {
    if (weight[a] != weight[b]) return weight[a] > weight[b];
    return g.id_rank(a) < g.id_rank(b);
  };

  Sequence out;
  out.reserve(n);
  while (!ready.empty()) {
    auto pick = std::min_element(ready.begin(), ready.end(), better);
    const std::size_t v = *pick;
    ready.erase(pick);
    out.push_back(v);
    for (std::size_t c : g.children(v))
      if (--waiting[c] == 0) ready.push_back(c);
  }
  if (out.size() != n) throw std::logic_error("list scheduling stalled: graph has a cycle");
  return out;
}

Sequence sequence_dec_energy(const TaskGraph& g, WeightMode mode) {
  std::vector<double> w(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    w[i] = mode == WeightMode::mean_current ? mean_current(g.task(i)) : mean_energy(g.task(i));
  return list_schedule(g, w);
}

namespace {

void check_currents(const TaskGraph& g, std::span<const double> chosen_current) {
  if (chosen_current.size() != g.size())
    throw std::invalid_argument("chosen current must be given for every task");
}

}  // namespace

Sequence weighted_sequence(const TaskGraph& g, std::span<const double> chosen_current) {
  check_currents(g, chosen_current);
  std::vector<double> w(g.size(), 0.0);
  for (std::size_t v = 0; v < g.size(); ++v)
    for (std::size_t u : descendants(g, v)) w[v] += chosen_current[u];
  return list_schedule(g, w);
}

Sequence baseline_sequence(const TaskGraph& g, std::span<const double> chosen_current) {
  check_currents(g, chosen_current);
  std::vector<double> w(g.size(), 0.0);
  for (std::size_t v = 0; v < g.size(); ++v) {
    const auto sub = descendants(g, v);
    double sum = 0.0;
    for (std::size_t u : sub) sum += chosen_current[u];
    w[v] = std::max(chosen_current[v], sum / static_cast<double>(sub.size()));
  }
  return list_schedule(g, w);
}

bool is_topological_order(const TaskGraph& g, const Sequence& seq) {
  if (seq.size() != g.size()) return false;
  std::vector<std::size_t> position(g.size(), g.size());
  for (std::size_t p = 0; p < seq.size(); ++p) {
    if (seq[p] >= g.size() || position[seq[p]] != g.size()) return false;
    position[seq[p]] = p;
  }
  for (std::size_t v = 0; v < g.size(); ++v)
    for (std::size_t c : g.children(v))
      if (position[v] > position[c]) return false;
  return true;
}

std::vector<std::string> sequence_ids(const TaskGraph& g, const Sequence& seq) {
  std::vector<std::string> out;
  out.reserve(seq.size());
  for (std::size_t i : seq) out.push_back(g.task(i).id);
  return out;
}

}  // namespace batsched
