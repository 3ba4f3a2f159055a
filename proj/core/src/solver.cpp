#include "lll/solver.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lll {

std::uint64_t default_budget(std::uint64_t events, std::optional<std::uint64_t> d) {
  const std::uint64_t n = std::max<std::uint64_t>(events, 1);
  const std::uint64_t factor = d ? *d + 1 : n;
  return 64 * n * factor;
}

SolveResult solve_resample(const ProductInstance& instance, const SolveOptions& options) {
  if (!instance.materialized)
    throw std::invalid_argument("cannot solve an instance whose events are not materialized");
  const auto& space = instance.space;
  const auto& events = instance.events;
  const auto n = static_cast<std::uint32_t>(events.size());

  SolveResult result;
  result.seed = options.seed;
  result.budget = options.budget.value_or(
      default_budget(n, options.d ? options.d : instance.declared_d));

  Rng rng(options.seed);
  Assignment a(space.variable_count());
  for (std::size_t v = 0; v < a.size(); ++v) a[v] = rng.below32(space.domain(v));

  std::vector<std::vector<std::uint32_t>> on_variable(space.variable_count());
  for (std::uint32_t i = 0; i < n; ++i)
    for (auto v : events[i].support()) on_variable.at(v).push_back(i);

  std::set<std::uint32_t> violated;
  for (std::uint32_t i = 0; i < n; ++i)
    if (events[i].holds(a)) violated.insert(i);

  std::vector<std::uint64_t> stamp(n, 0);
  std::uint64_t round = 0;
  while (!violated.empty()) {
    if (result.resample_count >= result.budget) {
      result.outcome = SolveOutcome::BudgetExhausted;
      result.assignment = std::move(a);
      return result;
    }
    const std::uint32_t chosen = *violated.begin();
    for (auto v : events[chosen].support()) a[v] = rng.below32(space.domain(v));
    ++result.resample_count;
    if (options.record_trace) result.trace.push_back({result.resample_count, chosen});

    ++round;
    for (auto v : events[chosen].support())
      for (auto j : on_variable[v]) {
        if (stamp[j] == round) continue;
        stamp[j] = round;
        if (events[j].holds(a))
          violated.insert(j);
        else
          violated.erase(j);
      }
  }
  result.outcome = SolveOutcome::Solved;
  result.assignment = std::move(a);
  return result;
}

std::vector<std::size_t> verify_assignment(const ProductInstance& instance, const Assignment& a) {
  instance.space.check(a);
  std::vector<std::size_t> violated;
  for (std::size_t i = 0; i < instance.events.size(); ++i)
    if (instance.events[i].holds(a)) violated.push_back(i);
  return violated;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> latin_conflicts(const LatinInstance& instance,
                                                                    const Assignment& perm) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> conflicts;
  for (std::uint32_t r1 = 0; r1 < instance.n; ++r1)
    for (std::uint32_t r2 = r1 + 1; r2 < instance.n; ++r2)
      if (instance.color(r1, perm.at(r1)) == instance.color(r2, perm.at(r2)))
        conflicts.emplace_back(r1, r2);
  return conflicts;
}

SolveResult solve_permutation(const LatinInstance& instance, const SolveOptions& options) {
  instance.validate();
  const std::uint32_t n = instance.n;
  SolveResult result;
  result.seed = options.seed;
  result.budget = options.budget.value_or(default_budget(n, std::nullopt));

  Rng rng(options.seed);
  Assignment perm(n);
  for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
  rng.shuffle(perm);

  std::uint32_t max_color = 0;
  for (auto c : instance.colors) max_color = std::max(max_color, c);
  std::vector<std::uint32_t> count(static_cast<std::size_t>(max_color) + 1, 0);
  for (std::uint32_t r = 0; r < n; ++r) ++count[instance.color(r, perm[r])];

  auto first_conflict = [&]() -> std::optional<std::uint32_t> {
    for (std::uint32_t r = 0; r < n; ++r)
      if (count[instance.color(r, perm[r])] >= 2) return r;
    return std::nullopt;
  };

  while (auto row = first_conflict()) {
    if (result.resample_count >= result.budget) {
      result.outcome = SolveOutcome::BudgetExhausted;
      result.assignment = std::move(perm);
      return result;
    }
    const std::uint32_t r = *row;
    std::uint32_t partner = rng.below32(n - 1);
    if (partner >= r) ++partner;
    --count[instance.color(r, perm[r])];
    --count[instance.color(partner, perm[partner])];
    std::swap(perm[r], perm[partner]);
    ++count[instance.color(r, perm[r])];
    ++count[instance.color(partner, perm[partner])];
    ++result.resample_count;
    if (options.record_trace) result.trace.push_back({result.resample_count, r});
  }
  result.outcome = SolveOutcome::Solved;
  result.assignment = std::move(perm);
  return result;
}

std::string format_trace(const ProductInstance& instance, const SolveResult& result) {
  std::ostringstream out;
  for (const auto& s : result.trace) {
    out << "step " << s.step << " resample ";
    if (s.event < instance.events.size())
      out << instance.events[s.event].id();
    else
      out << "row" << s.event;
    out << "\n";
  }
  return out.str();
}

namespace {

bool adjacent(std::uint32_t p, std::uint32_t q, std::uint32_t size) {
  if (p == q || size < 2) return false;
  return (p + 1) % size == q || (q + 1) % size == p;
}

}  // namespace

LeaderSelection greedy_leaders(const CircleLayout& layout) {
  LeaderSelection sel;
  const auto size = layout.size();
  std::vector<bool> chosen(size, false);
  for (std::uint32_t g = 0; g < layout.groups; ++g) {
    std::optional<std::uint32_t> pick;
    for (std::uint32_t p = 0; p < size && !pick; ++p) {
      if (layout.group_of[p] != g) continue;
      const bool next_to_leader = size >= 2 && ((chosen[(p + 1) % size] && (p + 1) % size != p) ||
                                                (chosen[(p + size - 1) % size] && (p + size - 1) % size != p));
      if (!next_to_leader) pick = p;
    }
    if (!pick) {
      sel.stuck_group = g;
      return sel;
    }
    chosen[*pick] = true;
    sel.leaders.push_back(*pick);
  }
  sel.success = true;
  return sel;
}

bool leaders_valid(const CircleLayout& layout, std::span<const std::uint32_t> leaders) {
  if (leaders.size() != layout.groups) return false;
  for (std::uint32_t g = 0; g < layout.groups; ++g)
    if (leaders[g] >= layout.size() || layout.group_of[leaders[g]] != g) return false;
  for (std::size_t i = 0; i < leaders.size(); ++i)
    for (std::size_t j = i + 1; j < leaders.size(); ++j)
      if (adjacent(leaders[i], leaders[j], layout.size())) return false;
  return true;
}

std::vector<std::uint32_t> extract_cycle(const Digraph& graph, std::span<const std::uint32_t> labels,
                                         std::uint32_t k) {
  if (k == 0) throw std::invalid_argument("label modulus must be positive");
  if (graph.vertices == 0) throw std::invalid_argument("empty digraph has no cycle");
  if (labels.size() != graph.vertices) throw std::invalid_argument("one label per vertex expected");
  std::vector<std::int64_t> visited_at(graph.vertices, -1);
  std::vector<std::uint32_t> path;
  std::uint32_t v = 0;
  while (visited_at[v] < 0) {
    visited_at[v] = static_cast<std::int64_t>(path.size());
    path.push_back(v);
    const std::uint32_t want = (labels[v] + 1) % k;
    std::optional<std::uint32_t> next;
    for (auto w : graph.out[v])
      if (labels[w] % k == want) {
        next = w;
        break;
      }
    if (!next)
      throw std::invalid_argument("vertex " + std::to_string(v) + " has no out-neighbor labelled " +
                                  std::to_string(want));
    v = *next;
  }
  return {path.begin() + visited_at[v], path.end()};
}

}  // namespace lll
