#include "lll/instances.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "lll/checker.hpp"
#include "lll/measure.hpp"
#include "lll/rng.hpp"

namespace lll {

namespace {

using Params = std::vector<std::pair<std::string, std::string>>;

std::string str(std::uint64_t v) { return std::to_string(v); }
std::string str(const BigInt& v) { return v.str(); }

const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

InstanceGate make_gate(std::string family, Params inputs, bool passes, std::string comparison) {
  InstanceGate g;
  g.family = std::move(family);
  g.inputs = std::move(inputs);
  g.passes = passes;
  g.comparison = std::move(comparison);
  return g;
}

// The measure of every event must be at most 1/(4d).
bool four_d_ok(const Rational& measure, std::uint64_t d) { return measure * 4 * d <= 1; }

// Distinct uniform sample of `count` values below `bound` (partial shuffle).
std::vector<std::uint32_t> sample_distinct(Rng& rng, std::uint32_t bound, std::uint32_t count,
                                           std::vector<std::uint32_t>& scratch) {
  scratch.resize(bound);
  std::iota(scratch.begin(), scratch.end(), 0u);
  for (std::uint32_t i = 0; i < count; ++i) std::swap(scratch[i], scratch[i + rng.below32(bound - i)]);
  return {scratch.begin(), scratch.begin() + count};
}

void set_closed_form(const VariableSpace& space, BadEvent& e) { e.set_analytic_measure(closed_form_measure(space, e)); }

}  // namespace

// ---------------------------------------------------------------- firm

std::uint64_t firm_declared_d(std::uint32_t overlap_cap) {
  std::uint64_t d = 1;
  while (d <= overlap_cap) d <<= 1;
  return d;
}

ProductInstance gen_firm(const FirmParams& p, std::uint64_t seed) {
  const std::uint32_t workers = p.workers == 0 ? 4 * p.jobs : p.workers;
  if (p.jobs == 0) throw std::invalid_argument("firm: jobs must be positive");
  if (p.specialists == 0 || p.specialists > workers)
    throw std::invalid_argument("firm: need 1 <= specialists <= workers");

  Rng rng(seed);
  std::vector<std::vector<std::uint32_t>> jobs_of_worker(workers);
  std::vector<std::set<std::uint32_t>> overlaps(p.jobs);
  std::vector<std::vector<std::uint32_t>> staff(p.jobs);
  std::vector<std::uint32_t> scratch;

  for (std::uint32_t j = 0; j < p.jobs; ++j) {
    bool placed = false;
    for (int attempt = 0; attempt < kGenerationAttempts && !placed; ++attempt) {
      auto chosen = sample_distinct(rng, workers, p.specialists, scratch);
      std::set<std::uint32_t> touched;
      for (auto w : chosen) touched.insert(jobs_of_worker[w].begin(), jobs_of_worker[w].end());
      if (touched.size() > p.overlap_cap) continue;
      bool ok = true;
      for (auto o : touched)
        if (!overlaps[o].count(j) && overlaps[o].size() + 1 > p.overlap_cap) ok = false;
      if (!ok) continue;
      for (auto o : touched) overlaps[o].insert(j);
      overlaps[j] = std::move(touched);
      for (auto w : chosen) jobs_of_worker[w].push_back(j);
      std::sort(chosen.begin(), chosen.end());
      staff[j] = std::move(chosen);
      placed = true;
    }
    if (!placed)
      throw GenerationError("firm: could not place job " + str(j) + " within the overlap cap after " +
                            str(kGenerationAttempts) + " attempts");
  }

  ProductInstance inst;
  inst.family = "firm";
  inst.params = {{"jobs", str(p.jobs)},
                 {"specialists", str(p.specialists)},
                 {"overlap-cap", str(p.overlap_cap)},
                 {"workers", str(workers)},
                 {"seed", str(seed)}};
  inst.space = VariableSpace::uniform(workers, 2);
  for (std::uint32_t j = 0; j < p.jobs; ++j) {
    std::vector<std::uint32_t> zeros(p.specialists, 0), ones(p.specialists, 1);
    auto e = BadEvent::forbidden_patterns("job" + str(j), staff[j], {zeros, ones});
    set_closed_form(inst.space, e);
    inst.events.push_back(std::move(e));
  }
  const std::uint64_t d = firm_declared_d(p.overlap_cap);
  const Rational m = rational_pow(Rational(1, 2), p.specialists - 1);
  inst.declared_d = d;
  inst.declared_measure = m;
  const bool ok = four_d_ok(m, d);
  inst.gate = make_gate("firm", {{"specialists", str(p.specialists)}, {"overlap-cap", str(p.overlap_cap)}, {"d", str(d)}},
                        ok,
                        "measure " + fraction_string(m) + " <= 1/(4*" + str(d) + ") = " +
                            fraction_string(Rational(1, 4 * d)) + ": " + verdict(ok));
  return inst;
}

// ---------------------------------------------------------------- circle

CircleLayout random_circle(std::uint32_t groups, std::uint32_t group_size, std::uint64_t seed) {
  if (groups == 0 || group_size == 0) throw std::invalid_argument("circle: groups and group size must be positive");
  CircleLayout layout;
  layout.groups = groups;
  for (std::uint32_t g = 0; g < groups; ++g)
    for (std::uint32_t i = 0; i < group_size; ++i) layout.group_of.push_back(g);
  Rng rng(seed);
  rng.shuffle(layout.group_of);
  return layout;
}

ProductInstance circle_instance(const CircleLayout& layout) {
  const auto sizes = layout.group_sizes();
  if (std::find(sizes.begin(), sizes.end(), 0u) != sizes.end())
    throw std::invalid_argument("circle: every group needs a member");
  const auto idx = layout.member_indices();
  const std::uint32_t n = layout.size();

  ProductInstance inst;
  inst.family = "circle";
  inst.space = VariableSpace(sizes);
  for (std::uint32_t x = 0; x < n; ++x) {
    const std::uint32_t y = (x + 1) % n;
    const auto gx = layout.group_of[x], gy = layout.group_of[y];
    std::vector<std::uint32_t> support;
    std::vector<std::vector<std::uint32_t>> patterns;
    // Groupmates can never both lead.
    if (gx != gy) {
      support = {gx, gy};
      patterns = {{idx[x], idx[y]}};
    }
    auto e = BadEvent::forbidden_patterns("x" + str(x), support, patterns);
    set_closed_form(inst.space, e);
    inst.events.push_back(std::move(e));
  }

  const std::uint32_t smax = *std::max_element(sizes.begin(), sizes.end());
  const std::uint32_t smin = *std::min_element(sizes.begin(), sizes.end());
  const std::uint64_t d = 4ull * smax;
  const Rational m(1, std::uint64_t{smin} * smin);
  inst.declared_d = d;
  inst.declared_measure = m;
  inst.circle = layout;
  const bool ok = four_d_ok(m, d);
  inst.params = {{"groups", str(layout.groups)}, {"students", str(n)}};
  inst.gate = make_gate("circle", {{"min-group", str(smin)}, {"max-group", str(smax)}, {"d", str(d)}}, ok,
                        "measure " + fraction_string(m) + " <= 1/(4*" + str(d) + ") = " +
                            fraction_string(Rational(1, 4 * d)) + ": " + verdict(ok));
  return inst;
}

ProductInstance gen_circle(std::uint32_t groups, std::uint32_t group_size, std::uint64_t seed) {
  auto inst = circle_instance(random_circle(groups, group_size, seed));
  inst.params.emplace_back("group-size", str(group_size));
  inst.params.emplace_back("seed", str(seed));
  return inst;
}

// ---------------------------------------------------------------- vdW

VdwArithmetic vdw_arithmetic(std::uint64_t n, std::uint64_t k) {
  if (k < 3) throw std::invalid_argument("vdw: k must be at least 3");
  VdwArithmetic a;
  a.n = n;
  a.k = k;
  // sum over steps s >= 1 with (k-1)s <= n-1 of (n - (k-1)s)
  BigInt total = 0;
  if (n >= 1) {
    const std::uint64_t smax = (n - 1) / (k - 1);
    const BigInt S(smax);
    total = BigInt(n) * S - BigInt(k - 1) * S * (S + 1) / 2;
  }
  a.progressions = total;
  const BigInt k2 = BigInt(k) * k;
  a.dependency_bound = k2 * (n / (k - 1));
  a.dependency_bound_ceil = k2 * ((n + k - 2) / (k - 1));
  a.coarse_bound = BigInt(n) * k;
  a.gate_limit = big_pow(BigInt(2), k - 3);
  a.gate_passes = a.dependency_bound <= a.gate_limit;
  return a;
}

std::uint64_t vdw_certified_length(std::uint64_t k) {
  if (k < 3) throw std::invalid_argument("vdw: k must be at least 3");
  BigInt v = big_pow(BigInt(2), k - 3) * (k - 1) / (BigInt(k) * k);
  return static_cast<std::uint64_t>(v);
}

std::uint64_t vdw_overlap_scan(std::uint64_t n, std::uint64_t k, std::uint64_t a, std::uint64_t step) {
  std::set<std::uint64_t> mine;
  for (std::uint64_t i = 0; i < k; ++i) mine.insert(a + i * step);
  std::uint64_t count = 0;
  for (std::uint64_t s = 1; (k - 1) * s <= n - 1; ++s)
    for (std::uint64_t b = 1; b + (k - 1) * s <= n; ++b)
      for (std::uint64_t i = 0; i < k; ++i)
        if (mine.count(b + i * s)) {
          ++count;
          break;
        }
  return count;
}

ProductInstance gen_vdw(std::uint64_t n, std::uint64_t k) {
  const auto arith = vdw_arithmetic(n, k);
  ProductInstance inst;
  inst.family = "vdw";
  inst.params = {{"n", str(n)}, {"k", str(k)}};
  const Rational m = rational_pow(Rational(1, 2), k - 1);
  inst.declared_measure = m;
  const BigInt d = arith.dependency_bound < 1 ? BigInt(1) : arith.dependency_bound;
  if (d <= BigInt(std::numeric_limits<std::uint64_t>::max())) inst.declared_d = static_cast<std::uint64_t>(d);
  inst.declared_event_count = static_cast<std::uint64_t>(arith.progressions);
  inst.gate = make_gate("vdw", {{"n", str(n)}, {"k", str(k)}, {"d", str(d)}}, arith.gate_passes,
                        "4 * " + str(k) + "^2 * floor(" + str(n) + "/" + str(k - 1) + ") = 4 * " + str(d) +
                            " <= 2^" + str(k - 1) + " = " + str(arith.gate_limit * 4) + ": " +
                            verdict(arith.gate_passes));

  const bool small = n <= 100000 && arith.progressions <= 2000000;
  if (!small) {
    inst.materialized = false;
    inst.flags.push_back("certificate-only");
    return inst;
  }
  inst.space = VariableSpace::uniform(n, 2);
  for (std::uint64_t s = 1; n >= 1 && (k - 1) * s <= n - 1; ++s)
    for (std::uint64_t a = 1; a + (k - 1) * s <= n; ++a) {
      std::vector<std::uint32_t> support;
      for (std::uint64_t i = 0; i < k; ++i) support.push_back(static_cast<std::uint32_t>(a + i * s - 1));
      auto e = BadEvent::monochromatic("ap" + str(a) + "+" + str(s), std::move(support));
      e.set_analytic_measure(m);
      inst.events.push_back(std::move(e));
    }
  return inst;
}

// ---------------------------------------------------------------- rainbow

bool rainbow_gate(std::uint64_t m, std::uint64_t r) {
  if (r == 0) return false;
  const Rational lhs = Rational(4) * r * m * (m == 0 ? 0 : m - 1) * rational_pow(Rational(r - 1, r), m);
  return lhs < 1;
}

RainbowChain rainbow_chain() {
  RainbowChain c;
  // (3/2)^26 > 2^13  <=>  3^26 > 2^39
  c.power_above_2_13 = big_pow(3, 26) > big_pow(2, 39);
  c.two_13_above_8000 = big_pow(2, 13) > 8000;
  c.above_7800 = BigInt(8000) > 7800;
  c.factorization = 3 * 4 * 650 == 7800 && 25 * 26 == 650;
  return c;
}

ProductInstance gen_rainbow(const std::vector<Rational>& points, const std::vector<Rational>& offsets,
                            std::uint32_t colors) {
  if (colors < 2) throw std::invalid_argument("rainbow: need at least 2 colors");
  std::vector<Rational> xs;
  {
    std::set<Rational> seen;
    for (const auto& x : points)
      if (seen.insert(x).second) xs.push_back(x);
  }
  std::map<Rational, std::uint32_t> index;
  auto point_index = [&](const Rational& p) {
    auto [it, fresh] = index.emplace(p, static_cast<std::uint32_t>(index.size()));
    return it->second;
  };
  std::vector<std::vector<std::uint32_t>> supports;
  for (const auto& x : xs) {
    std::vector<std::uint32_t> s{point_index(x)};
    for (const auto& off : offsets) s.push_back(point_index(x + off));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    supports.push_back(std::move(s));
  }

  const std::uint64_t m = offsets.size() + 1;
  ProductInstance inst;
  inst.family = "rainbow";
  inst.params = {{"points", str(xs.size())}, {"offsets", str(offsets.size())}, {"colors", str(colors)}};
  inst.space = VariableSpace::uniform(index.size(), colors);
  bool full = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    full = full && supports[i].size() == m;
    auto e = BadEvent::missing_color("x" + str(i), supports[i], colors);
    set_closed_form(inst.space, e);
    inst.events.push_back(std::move(e));
  }
  inst.declared_d = m * (m - 1) + 1;
  if (full) inst.declared_measure = Rational(colors) * rational_pow(Rational(colors - 1, colors), m);

  const bool ok = rainbow_gate(m, colors);
  std::string cmp = "4*" + str(colors) + "*" + str(m) + "*" + str(m - 1) + "*(1-1/" + str(colors) + ")^" + str(m) +
                    " = " +
                    approx_string(Rational(4) * colors * m * (m - 1) * rational_pow(Rational(colors - 1, colors), m), 6) +
                    " < 1: " + verdict(ok);
  if (m == 26 && colors == 3)
    cmp += std::string("; (3/2)^26 > 2^13 > 8000 > 7800: ") + verdict(rainbow_chain().all());
  inst.gate = make_gate("rainbow", {{"m", str(m)}, {"r", str(colors)}}, ok, cmp);
  return inst;
}

std::vector<Rational> random_rationals(std::size_t count, std::uint64_t max_den, std::int64_t span,
                                       std::uint64_t seed) {
  if (max_den == 0 || span <= 0) throw std::invalid_argument("random_rationals: bad range");
  Rng rng(seed);
  std::set<Rational> seen;
  std::vector<Rational> out;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > count * kGenerationAttempts)
      throw GenerationError("random_rationals: range too small for " + str(count) + " distinct values");
    const std::uint64_t q = 1 + rng.below(max_den);
    const std::uint64_t width = 2 * static_cast<std::uint64_t>(span) * q + 1;
    const std::int64_t p = static_cast<std::int64_t>(rng.below(width)) - span * static_cast<std::int64_t>(q);
    Rational v(p, static_cast<std::int64_t>(q));
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------- hypergraph

ProductInstance gen_hypergraph(std::uint32_t k, std::uint32_t class_size, std::uint64_t seed) {
  if (k < 2 || class_size == 0) throw std::invalid_argument("hypergraph: need k >= 2 and a positive class size");
  Rng rng(seed);
  // perm[i][c][j]: point of class c used by set (i, j)
  std::vector<std::vector<std::vector<std::uint32_t>>> perm(k, std::vector<std::vector<std::uint32_t>>(k));
  for (auto& row : perm)
    for (auto& p : row) {
      p.resize(class_size);
      std::iota(p.begin(), p.end(), 0u);
      rng.shuffle(p);
    }
  ProductInstance inst;
  inst.family = "hypergraph";
  inst.params = {{"k", str(k)}, {"class-size", str(class_size)}, {"seed", str(seed)}};
  inst.space = VariableSpace::uniform(std::size_t{k} * class_size, 2);
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = 0; j < class_size; ++j) {
      std::vector<std::uint32_t> support;
      for (std::uint32_t c = 0; c < k; ++c) support.push_back(c * class_size + perm[i][c][j]);
      auto e = BadEvent::monochromatic("e" + str(i) + "_" + str(j), std::move(support));
      set_closed_form(inst.space, e);
      inst.events.push_back(std::move(e));
    }
  const std::uint64_t d = std::uint64_t{k} * (k - 1) + 1;
  const Rational m = rational_pow(Rational(1, 2), k - 1);
  inst.declared_d = d;
  inst.declared_measure = m;
  const bool four = four_d_ok(m, d);
  const EConstant e;
  const bool ev = d > 2 && m * e.hi * (d + 1) <= 1;
  inst.gate = make_gate("hypergraph", {{"k", str(k)}, {"d", str(d)}}, four || ev,
                        "measure " + fraction_string(m) + " <= 1/(4*" + str(d) + "): " + verdict(four) +
                            "; measure <= 1/(e*" + str(d + 1) + "): " + verdict(ev));
  return inst;
}

// ---------------------------------------------------------------- set systems

InstanceGate gen_setsystem_gate(const std::vector<std::vector<std::uint32_t>>& sets) {
  std::vector<std::set<std::uint32_t>> s;
  for (const auto& v : sets) s.emplace_back(v.begin(), v.end());
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i].size() < 3)
      return make_gate("setsystem", {{"sets", str(s.size())}}, false,
                       "set " + str(i) + " has " + str(s[i].size()) + " elements, fewer than 3: fail");

  Rational worst = 0;
  std::size_t worst_index = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Rational sum = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      const bool meets = std::any_of(s[j].begin(), s[j].end(), [&](auto x) { return s[i].count(x) > 0; });
      if (meets) sum += rational_pow(Rational(1, 2), s[j].size());
    }
    if (i == 0 || sum > worst) {
      worst = sum;
      worst_index = i;
    }
  }
  const bool ok = worst <= Rational(1, 8);
  std::string cmp = s.empty() ? std::string("no sets: pass")
                              : "max over sets of sum a_i 2^-i = " + fraction_string(worst) + " (set " +
                                    str(worst_index) + ") <= 1/8: " + verdict(ok);
  return make_gate("setsystem", {{"sets", str(s.size())}}, ok, cmp);
}

ProductInstance gen_setsystem(const std::vector<std::vector<std::uint32_t>>& sets, std::uint32_t ground) {
  ProductInstance inst;
  inst.family = "setsystem";
  inst.params = {{"ground", str(ground)}, {"sets", str(sets.size())}};
  inst.space = VariableSpace::uniform(ground, 2);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::vector<std::uint32_t> s = sets[i];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty() && s.back() >= ground) throw std::invalid_argument("setsystem: element outside the ground set");
    auto e = BadEvent::monochromatic("s" + str(i), std::move(s));
    set_closed_form(inst.space, e);
    inst.events.push_back(std::move(e));
  }
  inst.gate = gen_setsystem_gate(sets);
  return inst;
}

// ---------------------------------------------------------------- graphs

std::uint32_t Graph::max_degree() const {
  std::uint32_t best = 0;
  for (const auto& a : adjacency()) best = std::max(best, static_cast<std::uint32_t>(a.size()));
  return best;
}

std::vector<std::vector<std::uint32_t>> Graph::adjacency() const {
  std::vector<std::set<std::uint32_t>> adj(vertices);
  for (auto [u, v] : edges) {
    if (u >= vertices || v >= vertices) throw std::invalid_argument("graph: edge endpoint out of range");
    if (u == v) continue;
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<std::vector<std::uint32_t>> out;
  for (auto& a : adj) out.emplace_back(a.begin(), a.end());
  return out;
}

Graph cycle_graph(std::uint32_t length) {
  Graph g;
  g.vertices = length;
  for (std::uint32_t i = 0; i < length && length > 1; ++i) {
    if (length == 2 && i == 1) break;
    g.edges.emplace_back(i, (i + 1) % length);
  }
  return g;
}

ProductInstance gen_transversal(const Graph& graph, const std::vector<std::vector<std::uint32_t>>& classes) {
  constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> cls(graph.vertices, none), pos(graph.vertices, 0);
  std::vector<std::uint32_t> sizes;
  for (std::uint32_t c = 0; c < classes.size(); ++c) {
    if (classes[c].empty()) throw std::invalid_argument("transversal: empty class " + str(c));
    for (std::uint32_t i = 0; i < classes[c].size(); ++i) {
      const auto v = classes[c][i];
      if (v >= graph.vertices) throw std::invalid_argument("transversal: class vertex out of range");
      if (cls[v] != none) throw std::invalid_argument("transversal: vertex " + str(v) + " in two classes");
      cls[v] = c;
      pos[v] = i;
    }
    sizes.push_back(static_cast<std::uint32_t>(classes[c].size()));
  }

  ProductInstance inst;
  inst.family = "transversal";
  inst.params = {{"vertices", str(graph.vertices)}, {"edges", str(graph.edges.size())}, {"classes", str(classes.size())}};
  inst.space = VariableSpace(sizes);
  for (auto [u, v] : graph.edges) {
    if (u >= graph.vertices || v >= graph.vertices) throw std::invalid_argument("transversal: edge out of range");
    std::vector<std::uint32_t> support;
    std::vector<std::vector<std::uint32_t>> patterns;
    if (u != v && cls[u] != none && cls[v] != none && cls[u] != cls[v]) {
      support = {cls[u], cls[v]};
      patterns = {{pos[u], pos[v]}};
    }
    auto e = BadEvent::forbidden_patterns("edge" + str(u) + "-" + str(v), support, patterns);
    set_closed_form(inst.space, e);
    inst.events.push_back(std::move(e));
  }

  const std::uint32_t delta = graph.max_degree();
  const EConstant e;
  const Rational t = 2 * e.hi * delta;
  BigInt need = numerator_of(t) / denominator_of(t);
  if (Rational(need) < t) need += 1;
  need += 1;
  const std::uint32_t smallest = sizes.empty() ? 0 : *std::min_element(sizes.begin(), sizes.end());
  const bool ok = sizes.empty() || BigInt(smallest) >= need;
  inst.gate = make_gate("transversal", {{"max-degree", str(delta)}, {"min-class", str(smallest)}}, ok,
                        "min class size " + str(smallest) + " >= ceil(2*e*" + str(delta) + ")+1 = " + str(need) +
                            ": " + verdict(ok));

  // An 11n-cycle split into classes of 11 has its own argument outside the gate.
  bool cycle_case = !classes.empty() && graph.vertices == 11 * classes.size() &&
                    std::all_of(sizes.begin(), sizes.end(), [](auto s) { return s == 11; });
  if (cycle_case) {
    const auto adj = graph.adjacency();
    cycle_case = graph.edges.size() == graph.vertices &&
                 std::all_of(adj.begin(), adj.end(), [](const auto& a) { return a.size() == 2; });
  }
  if (cycle_case) inst.flags.push_back("special-case-cycle-11n");
  return inst;
}

ProductInstance gen_cycle_transversal(std::uint32_t classes, std::uint64_t seed) {
  if (classes == 0) throw std::invalid_argument("cycle transversal: need at least one class");
  const std::uint32_t n = 11 * classes;
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  Rng rng(seed);
  rng.shuffle(order);
  std::vector<std::vector<std::uint32_t>> cls(classes);
  for (std::uint32_t i = 0; i < n; ++i) cls[i / 11].push_back(order[i]);
  for (auto& c : cls) std::sort(c.begin(), c.end());
  auto inst = gen_transversal(cycle_graph(n), cls);
  inst.params.emplace_back("seed", str(seed));
  return inst;
}

ProductInstance gen_listcoloring(const Graph& graph, const std::vector<std::vector<std::uint32_t>>& lists,
                                 std::uint32_t d) {
  if (lists.size() != graph.vertices) throw std::invalid_argument("listcoloring: one list per vertex required");
  std::vector<std::vector<std::uint32_t>> L;
  for (std::uint32_t v = 0; v < graph.vertices; ++v) {
    auto l = lists[v];
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    if (l.empty()) throw std::invalid_argument("listcoloring: vertex " + str(v) + " has an empty list");
    L.push_back(std::move(l));
  }
  auto position = [&](std::uint32_t v, std::uint32_t c) -> std::optional<std::uint32_t> {
    auto it = std::lower_bound(L[v].begin(), L[v].end(), c);
    if (it == L[v].end() || *it != c) return std::nullopt;
    return static_cast<std::uint32_t>(it - L[v].begin());
  };

  ProductInstance inst;
  inst.family = "listcoloring";
  inst.params = {{"vertices", str(graph.vertices)}, {"edges", str(graph.edges.size())}, {"d", str(d)}};
  std::vector<std::uint32_t> domains;
  for (const auto& l : L) domains.push_back(static_cast<std::uint32_t>(l.size()));
  inst.space = VariableSpace(domains);
  for (auto [u, v] : graph.edges) {
    if (u >= graph.vertices || v >= graph.vertices) throw std::invalid_argument("listcoloring: edge out of range");
    if (u == v) continue;
    for (auto c : L[u]) {
      auto pv = position(v, c);
      if (!pv) continue;
      auto e = BadEvent::forbidden_patterns("edge" + str(u) + "-" + str(v) + ":c" + str(c), {u, v},
                                            {{*position(u, c), *pv}});
      set_closed_form(inst.space, e);
      inst.events.push_back(std::move(e));
    }
  }

  const Params inputs{{"d", str(d)}};
  if (d <= 1) {
    inst.gate = make_gate("listcoloring", inputs, false, "d = " + str(d) + " must exceed 1: fail");
    return inst;
  }
  for (std::uint32_t v = 0; v < graph.vertices; ++v)
    if (std::uint64_t{L[v].size()} < 10ull * d) {
      inst.gate = make_gate("listcoloring", inputs, false,
                            "vertex " + str(v) + " list size " + str(L[v].size()) + " < 10*" + str(d) + ": fail");
      return inst;
    }
  const auto adj = graph.adjacency();
  for (std::uint32_t v = 0; v < graph.vertices; ++v)
    for (auto c : L[v]) {
      std::uint64_t count = 0;
      for (auto w : adj[v])
        if (position(w, c)) ++count;
      if (count > d) {
        inst.gate = make_gate("listcoloring", inputs, false,
                              "vertex " + str(v) + " color " + str(c) + " listed by " + str(count) +
                                  " neighbors > d = " + str(d) + ": fail");
        return inst;
      }
    }
  inst.gate = make_gate("listcoloring", inputs, true,
                        "all lists >= " + str(10ull * d) + " and every (vertex, color) has <= " + str(d) +
                            " neighbors listing it: pass");
  return inst;
}

// ---------------------------------------------------------------- Ramsey

ProductInstance gen_ramsey(std::uint32_t k, std::uint32_t n) {
  if (n < 3 || k < n) throw std::invalid_argument("ramsey: need n >= 3 and k >= n");
  if (binomial(k, n) > 2000000) throw std::invalid_argument("ramsey: too many cliques to materialize");
  auto edge = [k](std::uint32_t i, std::uint32_t j) {
    // index of {i<j} in lexicographic order of pairs
    return i * k - i * (i + 1) / 2 + (j - i - 1);
  };
  ProductInstance inst;
  inst.family = "ramsey";
  inst.params = {{"k", str(k)}, {"n", str(n)}};
  inst.space = VariableSpace::uniform(std::size_t{k} * (k - 1) / 2, 2);
  std::vector<std::uint32_t> c(n);
  std::iota(c.begin(), c.end(), 0u);
  const Rational m = rational_pow(Rational(1, 2), n * (n - 1) / 2 - 1);
  while (true) {
    std::vector<std::uint32_t> support;
    std::string id = "clique";
    for (std::uint32_t a = 0; a < n; ++a) {
      id += (a ? "-" : "") + str(c[a]);
      for (std::uint32_t b = a + 1; b < n; ++b) support.push_back(edge(c[a], c[b]));
    }
    std::sort(support.begin(), support.end());
    auto e = BadEvent::monochromatic(std::move(id), std::move(support));
    e.set_analytic_measure(m);
    inst.events.push_back(std::move(e));
    int i = static_cast<int>(n) - 1;
    while (i >= 0 && c[i] == k - n + static_cast<std::uint32_t>(i)) --i;
    if (i < 0) break;
    ++c[i];
    for (std::uint32_t j = i + 1; j < n; ++j) c[j] = c[j - 1] + 1;
  }
  const BigInt edges_in = binomial(n, 2);
  const BigInt d = edges_in * binomial(k, n - 2);
  if (d <= BigInt(std::numeric_limits<std::uint64_t>::max())) inst.declared_d = static_cast<std::uint64_t>(d);
  inst.declared_measure = m;
  const bool ok = ramsey_condition(n, k);
  const std::uint64_t cn2 = n * (n - 1) / 2;
  inst.gate = make_gate("ramsey", {{"n", str(n)}, {"k", str(k)}}, ok,
                        "e*(C(" + str(n) + ",2)*C(" + str(k) + "," + str(n - 2) + ")+1) = e*" + str(d + 1) +
                            " < 2^" + str(cn2 - 1) + " = " + str(big_pow(2, cn2 - 1)) + ": " + verdict(ok));
  return inst;
}

// ---------------------------------------------------------------- digraph

bool digraph_gate(std::uint64_t min_out, std::uint64_t max_in, std::uint64_t k) {
  if (k == 0) return false;
  return big_pow(BigInt(k), min_out) >= BigInt(4) * min_out * max_in * big_pow(BigInt(k - 1), min_out);
}

Digraph random_regular_digraph(std::uint32_t vertices, std::uint32_t degree, std::uint64_t seed) {
  if (degree >= vertices && degree > 0)
    throw std::invalid_argument("digraph: degree must be below the vertex count");
  Rng rng(seed);
  Digraph g(vertices);
  std::vector<std::uint32_t> pi(vertices);
  for (std::uint32_t round = 0; round < degree; ++round) {
    std::iota(pi.begin(), pi.end(), 0u);
    rng.shuffle(pi);
    auto bad = [&](std::uint32_t v) { return pi[v] == v || g.has_arc(v, pi[v]); };
    // Repair conflicts by swapping images; each swap keeps pi a permutation.
    std::uint64_t steps = 0;
    const std::uint64_t limit = std::uint64_t{kGenerationAttempts} * vertices;
    for (std::uint32_t v = 0; v < vertices;) {
      if (!bad(v)) {
        ++v;
        continue;
      }
      if (++steps > limit)
        throw GenerationError("digraph: could not extend to degree " + str(degree) + " after " + str(limit) + " swaps");
      std::swap(pi[v], pi[rng.below32(vertices)]);
      v = 0;
    }
    for (std::uint32_t v = 0; v < vertices; ++v) g.add_arc(v, pi[v]);
  }
  for (auto& o : g.out) std::sort(o.begin(), o.end());
  return g;
}

ProductInstance gen_digraph_labels(const Digraph& graph, std::uint32_t k) {
  if (k == 0) throw std::invalid_argument("digraph: k must be positive");
  ProductInstance inst;
  inst.family = "digraph";
  inst.params = {{"vertices", str(graph.vertices)}, {"arcs", str(graph.arc_count())}, {"k", str(k)}};
  inst.space = VariableSpace::uniform(graph.vertices, k);
  for (std::uint32_t v = 0; v < graph.vertices; ++v) {
    std::vector<std::uint32_t> outs(graph.out[v].begin(), graph.out[v].end());
    std::sort(outs.begin(), outs.end());
    outs.erase(std::unique(outs.begin(), outs.end()), outs.end());
    std::vector<std::uint32_t> support = outs;
    support.push_back(v);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    std::vector<std::uint32_t> radices(support.size(), k);
    const std::uint64_t rows = checked_product(radices, std::uint64_t{1} << 22, "digraph truth table");
    auto at = [&](std::uint32_t x) {
      return static_cast<std::size_t>(std::lower_bound(support.begin(), support.end(), x) - support.begin());
    };
    const std::size_t pv = at(v);
    std::vector<std::size_t> pos;
    for (auto w : outs) pos.push_back(at(w));
    std::vector<bool> bits(rows, false);
    Odometer od(radices);
    std::uint64_t row = 0;
    do {
      const auto& val = od.values();
      const std::uint32_t want = (val[pv] + 1) % k;
      bits[row++] = std::none_of(pos.begin(), pos.end(), [&](std::size_t p) { return val[p] == want; });
    } while (od.next());
    auto e = BadEvent::truth_table("v" + str(v), support, radices, std::move(bits));
    e.set_analytic_measure(rational_pow(Rational(k - 1, k), outs.size()));
    inst.events.push_back(std::move(e));
  }
  const std::uint32_t delta = graph.min_out_degree();
  const std::uint32_t Delta = graph.max_in_degree();
  const bool ok = digraph_gate(delta, Delta, k);
  inst.digraph = graph;
  inst.label_modulus = k;
  inst.gate = make_gate("digraph", {{"min-out", str(delta)}, {"max-in", str(Delta)}, {"k", str(k)}}, ok,
                        str(k) + "^" + str(delta) + " = " + str(big_pow(BigInt(k), delta)) + " >= 4*" + str(delta) +
                            "*" + str(Delta) + "*" + str(k - 1) + "^" + str(delta) + " = " +
                            str(BigInt(4) * delta * Delta * big_pow(BigInt(k - 1), delta)) + ": " + verdict(ok));
  return inst;
}

// ---------------------------------------------------------------- latin

LatinInstance latin_from_matrix(std::uint32_t n, std::vector<std::uint32_t> colors) {
  LatinInstance inst;
  inst.n = n;
  inst.colors = std::move(colors);
  inst.validate();
  inst.params = {{"n", str(n)}};
  inst.gate = latin_gate(inst);
  return inst;
}

LatinInstance gen_latin(std::uint32_t n, std::uint32_t cap, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("latin: n must be positive");
  if (cap == 0) throw std::invalid_argument("latin: cap must be positive");
  std::vector<std::uint32_t> cells(std::size_t{n} * n);
  std::iota(cells.begin(), cells.end(), 0u);
  Rng rng(seed);
  rng.shuffle(cells);
  std::vector<std::uint32_t> colors(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) colors[cells[i]] = static_cast<std::uint32_t>(i / cap);
  auto inst = latin_from_matrix(n, std::move(colors));
  inst.params = {{"n", str(n)}, {"cap", str(cap)}, {"seed", str(seed)}};
  return inst;
}

InstanceGate latin_gate(const LatinInstance& instance) {
  const std::uint32_t limit = instance.n == 0 ? 0 : (instance.n - 1) / 16;
  const std::uint32_t most = instance.max_color_count();
  const bool ok = most <= limit;
  std::string cmp = "max color count " + str(most) + " <= floor((" + str(instance.n) + "-1)/16) = " + str(limit) +
                    ": " + verdict(ok);
  if (limit == 0 && most > 0) cmp += " (a cap of 0 admits no coloring)";
  return make_gate("latin", {{"n", str(instance.n)}, {"max-count", str(most)}}, ok, cmp);
}

}  // namespace lll
