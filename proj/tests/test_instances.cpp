#include <doctest.h>

#include <set>

#include "lll/checker.hpp"
#include "lll/instances.hpp"
#include "lll/measure.hpp"
#include "lll/solver.hpp"
#include "oracle.hpp"

using namespace lll;

namespace {

// Measure by enumerating the support's local values.
Rational local_measure(const VariableSpace& space, const BadEvent& e) {
  std::vector<std::uint32_t> radices;
  for (auto v : e.support()) radices.push_back(space.domain(v));
  const VariableSpace local(radices);
  return oracle::fraction(local, [&](const Assignment& a) { return e.holds_on(a); });
}

void check_measures(const ProductInstance& p) {
  for (const auto& e : p.events) {
    if (e.support().size() > 12) continue;
    const auto exact = local_measure(p.space, e);
    CHECK(measure(p.space, e) == exact);
    if (p.declared_measure) CHECK(exact <= *p.declared_measure);
  }
}

std::uint64_t max_overlap(const ProductInstance& p) {
  std::uint64_t best = 0;
  for (const auto& a : p.events) {
    std::uint64_t c = 0;
    for (const auto& b : p.events) c += supports_intersect(a, b);
    best = std::max(best, c);
  }
  return best;
}

}  // namespace

TEST_CASE("firm") {
  const auto firm = gen_firm({}, 1);
  CHECK(firm.events.size() == 100);
  CHECK(*firm.declared_d == 32);
  CHECK(*firm.declared_measure == Rational(1, 128));
  CHECK(firm.gate->passes);
  CHECK(firm.gate->comparison == "measure 1/128 <= 1/(4*32) = 1/128: pass");
  CHECK(max_overlap(firm) <= 31);
  for (const auto& e : firm.events) CHECK(e.support().size() == 8);
  check_measures(firm);

  const auto loose = gen_firm({.overlap_cap = 40}, 1);
  CHECK(*loose.declared_d == 64);
  CHECK_FALSE(loose.gate->passes);
  CHECK(solve_resample(loose, {.seed = 1}).solved());

  const auto one = gen_firm({.jobs = 1, .workers = 8}, 1);
  CHECK(one.events.size() == 1);
  CHECK(dependency_degrees(one, DependencyMode::Structural).max_degree() == 1);
  CHECK(check_symmetric(one, {.prefer_declared_d = false}).applicable);

  CHECK(gen_firm({}, 5).events[7].support().size() == 8);
  CHECK_THROWS_AS(gen_firm({.jobs = 50, .specialists = 8, .overlap_cap = 0, .workers = 8}, 1), GenerationError);
}

TEST_CASE("circle") {
  const auto c = gen_circle(100, 16, 3);
  CHECK(c.space.variable_count() == 100);
  CHECK(c.events.size() == 1600);
  CHECK(*c.declared_d == 64);
  CHECK(*c.declared_measure == Rational(1, 256));
  CHECK(c.gate->passes);
  check_measures(c);
  std::size_t empty = 0;
  for (const auto& e : c.events) empty += e.support().empty();
  CHECK(empty > 0);  // some neighbors are groupmates

  CircleLayout tiny;
  tiny.groups = 2;
  tiny.group_of = {0, 1, 0, 1};
  const auto t = circle_instance(tiny);
  // 4 selections of one leader per group; leaders are adjacent exactly when the pair of positions is
  std::uint64_t good = 0;
  oracle::for_each_point(t.space, [&](const Assignment& a) { good += verify_assignment(t, a).empty(); });
  std::uint64_t direct = 0;
  for (std::uint32_t a : {0u, 2u})
    for (std::uint32_t b : {1u, 3u}) direct += leaders_valid(tiny, std::vector<std::uint32_t>{a, b});
  CHECK(good == direct);
  CHECK(good == 0);
}

TEST_CASE("van der Waerden arithmetic") {
  const auto big = vdw_arithmetic(15000000, 32);
  CHECK(big.dependency_bound_ceil == BigInt(495483904));
  CHECK(big.dependency_bound_ceil < BigInt(1) << 29);
  CHECK(big.gate_limit == BigInt(1) << 29);
  CHECK(big.gate_passes);
  CHECK(vdw_certified_length(12) == 39);
  CHECK(vdw_arithmetic(39, 12).gate_passes);
  CHECK_THROWS_AS(vdw_arithmetic(10, 2), std::invalid_argument);

  const auto v = gen_vdw(39, 12);
  CHECK(v.materialized);
  CHECK(v.gate->passes);
  check_measures(v);
  CHECK(BigInt(v.events.size()) == vdw_arithmetic(39, 12).progressions);

  const auto cert = gen_vdw(15000000, 32);
  CHECK_FALSE(cert.materialized);
  CHECK(cert.events.empty());
  CHECK(cert.has_flag("certificate-only"));
}

TEST_CASE("property: analytic vdW bounds dominate exact overlap scans") {
  for (std::uint64_t k = 3; k <= 8; ++k)
    for (std::uint64_t n = k; n <= 60; n += 7) {
      const auto ar = vdw_arithmetic(n, k);
      for (std::uint64_t step = 1; 1 + (k - 1) * step <= n; ++step)
        for (std::uint64_t a = 1; a + (k - 1) * step <= n; a += 3) {
          const BigInt exact = vdw_overlap_scan(n, k, a, step);
          CAPTURE(n);
          CAPTURE(k);
          CHECK(exact <= ar.dependency_bound);
          CHECK(exact <= ar.dependency_bound_ceil);
          CHECK(exact <= ar.coarse_bound);
        }
    }
}

TEST_CASE("rainbow") {
  const auto chain = rainbow_chain();
  CHECK(chain.all());
  CHECK(rainbow_gate(26, 3));
  CHECK_FALSE(rainbow_gate(2, 2));
  // 3^26 > 7800 * 2^26 directly
  CHECK(boost::multiprecision::pow(BigInt(3), 26) > BigInt(7800) * boost::multiprecision::pow(BigInt(2), 26));

  const auto xs = random_rationals(40, 50, 100, 1);
  const auto offs = random_rationals(25, 50, 100, 2);
  const auto inst = gen_rainbow(xs, offs, 3);
  CHECK(inst.events.size() == 40);
  check_measures(inst);
  const auto r = solve_resample(inst, {.seed = 1});
  REQUIRE(r.solved());
  for (const auto& e : inst.events) {
    std::set<std::uint32_t> seen;
    for (auto v : e.support()) seen.insert(r.assignment[v]);
    CHECK(seen.size() == 3);
  }

  CHECK_THROWS_AS(gen_rainbow({Rational(0)}, {Rational(1)}, 1), std::invalid_argument);
  const auto small = gen_rainbow({Rational(0)}, {Rational(1)}, 2);
  CHECK_FALSE(small.gate->passes);
  CHECK(oracle::good_fraction(small) == Rational(1, 2));

  // points coincide exactly: 1/2 + 1/2 and 1
  const auto dedup = gen_rainbow({Rational(1, 2), Rational(1)}, {Rational(1, 2)}, 2);
  CHECK(dedup.space.variable_count() == 3);
}

TEST_CASE("hypergraph") {
  const auto h10 = gen_hypergraph(10, 30, 1);
  const auto d10 = max_overlap(h10);
  CHECK(d10 <= 91);
  // recorded from the scan: 2^-9 against 1/(4 d)
  CHECK((Rational(1, 512) * 4 * d10 <= 1) == check_symmetric(h10, {.prefer_declared_d = false}).applicable);
  check_measures(h10);

  // every point lies in exactly k sets
  const auto h9 = gen_hypergraph(9, 20, 2);
  std::vector<int> deg(h9.space.variable_count());
  for (const auto& e : h9.events) {
    CHECK(e.support().size() == 9);
    for (auto v : e.support()) ++deg[v];
  }
  for (int x : deg) CHECK(x == 9);
  CHECK(*h9.declared_d == 73);

  const auto h2 = gen_hypergraph(2, 1, 0);
  CHECK(h2.events.size() == 2);
  CHECK(oracle::good_fraction(h2) > 0);
  CHECK(solve_resample(h2, {.seed = 0}).solved());
}

TEST_CASE("set systems") {
  std::vector<std::vector<std::uint32_t>> disjoint{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}};
  const auto g = gen_setsystem_gate(disjoint);
  CHECK(g.passes);  // a_3 = 1: 1/8 <= 1/8

  CHECK_FALSE(gen_setsystem_gate({{0, 1}, {2, 3, 4}}).passes);

  std::vector<std::vector<std::uint32_t>> star;
  for (std::uint32_t i = 0; i < 100; ++i) {
    std::vector<std::uint32_t> s{0};
    for (std::uint32_t j = 0; j < 9; ++j) s.push_back(1 + 9 * i + j);
    star.push_back(s);
  }
  CHECK(gen_setsystem_gate(star).passes);  // 100 / 1024 < 1/8
  star.resize(200, star[0]);
  for (std::uint32_t i = 100; i < 200; ++i)
    for (std::uint32_t j = 0; j < 9; ++j) star[i][1 + j] = 1 + 9 * i + j;
  CHECK_FALSE(gen_setsystem_gate(star).passes);  // 200 / 1024 > 1/8

  const auto inst = gen_setsystem(disjoint, 9);
  CHECK(inst.events.size() == 3);
  CHECK(solve_resample(inst, {.seed = 3}).solved());
}

TEST_CASE("transversals") {
  const auto cyc = gen_cycle_transversal(5, 1);
  CHECK(cyc.has_flag("special-case-cycle-11n"));
  CHECK_FALSE(cyc.gate->passes);
  const auto r = solve_resample(cyc, {.seed = 1});
  REQUIRE(r.solved());
  CHECK(verify_assignment(cyc, r.assignment).empty());

  Graph matching{14, {}};
  for (std::uint32_t i = 0; i < 7; ++i) matching.edges.emplace_back(i, 7 + i);
  const auto m = gen_transversal(matching, {{0, 1, 2, 3, 4, 5, 6}, {7, 8, 9, 10, 11, 12, 13}});
  CHECK(m.gate->passes);
  const auto m6 = gen_transversal(matching, {{0, 1, 2, 3, 4, 5}, {6, 7, 8, 9, 10, 11, 12, 13}});
  CHECK_FALSE(m6.gate->passes);

  const auto edgeless = gen_transversal(Graph{4, {}}, {{0, 1}, {2, 3}});
  CHECK(edgeless.events.empty());
  CHECK(oracle::good_fraction(edgeless) == 1);
}

TEST_CASE("list coloring") {
  Graph k3{3, {{0, 1}, {1, 2}, {0, 2}}};
  std::vector<std::uint32_t> l20(20);
  for (std::uint32_t i = 0; i < 20; ++i) l20[i] = i;
  const auto same = gen_listcoloring(k3, {l20, l20, l20}, 2);
  CHECK(same.gate->passes);
  CHECK(same.events.size() == 60);
  CHECK(solve_resample(same, {.seed = 1}).solved());

  const auto apart = gen_listcoloring(Graph{2, {{0, 1}}}, {{0, 1}, {2, 3}}, 2);
  CHECK(apart.events.empty());

  Graph star{4, {{0, 1}, {0, 2}, {0, 3}}};
  std::vector<std::vector<std::uint32_t>> lists(4, l20);
  const auto s = gen_listcoloring(star, lists, 2);
  CHECK_FALSE(s.gate->passes);
  CHECK(s.gate->comparison.find("vertex 0 color 0 listed by 3 neighbors") != std::string::npos);
}

TEST_CASE("ramsey") {
  const auto k5 = gen_ramsey(5, 3);
  CHECK(k5.space.variable_count() == 10);
  CHECK(k5.events.size() == 10);
  CHECK(k5.gate->passes == ramsey_condition(3, 5));
  check_measures(k5);
  CHECK(gen_ramsey(6, 3).events.size() == 20);
  CHECK(gen_ramsey(5, 5).gate->passes);
  CHECK_THROWS(gen_ramsey(5, 2));
}

TEST_CASE("digraph labels") {
  CHECK(digraph_gate(1, 1, 1));
  CHECK_FALSE(digraph_gate(2, 2, 2));
  CHECK(digraph_gate(8, 8, 2));
  // 4 * 8 * 8 = 256 = 2^8: equality
  CHECK_FALSE(digraph_gate(8, 9, 2));

  const auto g = random_regular_digraph(40, 8, 4);
  CHECK(g.min_out_degree() == 8);
  CHECK(g.max_in_degree() == 8);
  for (std::uint32_t v = 0; v < 40; ++v) CHECK_FALSE(g.has_arc(v, v));
  const auto p = gen_digraph_labels(g, 2);
  CHECK(p.gate->passes);
  CHECK(p.events.size() == 40);
  check_measures(p);

  Digraph loop(3);
  loop.add_arc(0, 1);
  loop.add_arc(1, 2);
  loop.add_arc(2, 0);
  const auto one = gen_digraph_labels(loop, 1);
  CHECK(oracle::good_fraction(one) == 1);
}

TEST_CASE("latin boards") {
  const auto l = gen_latin(33, 2, 1);
  CHECK(l.max_color_count() <= 2);
  CHECK(latin_gate(l).passes);
  const auto l16 = gen_latin(16, 1, 1);
  CHECK_FALSE(latin_gate(l16).passes);
  CHECK_THROWS(gen_latin(5, 0, 1));
  CHECK_THROWS(latin_from_matrix(2, {0, 1, 2}));
}

TEST_CASE("generators are pure given a seed") {
  CHECK(gen_firm({}, 9).events == gen_firm({}, 9).events);
  CHECK(gen_circle(20, 5, 2).events == gen_circle(20, 5, 2).events);
  CHECK(gen_hypergraph(5, 7, 2).events == gen_hypergraph(5, 7, 2).events);
  CHECK(gen_latin(33, 2, 4).colors == gen_latin(33, 2, 4).colors);
}
