#include <doctest.h>

#include <set>

#include "lll/checker.hpp"
#include "lll/desk.hpp"
#include "lll/instances.hpp"
#include "lll/solver.hpp"
#include "oracle.hpp"

using namespace lll;

namespace {

// Every k-term arithmetic progression inside {1..n} that is monochromatic under col.
bool has_mono_ap(const std::vector<std::uint32_t>& col, std::uint32_t k) {
  const auto n = static_cast<std::uint32_t>(col.size());
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t s = 1; a + (k - 1) * s < n; ++s) {
      bool mono = true;
      for (std::uint32_t i = 1; i < k && mono; ++i) mono = col[a + i * s] == col[a];
      if (mono) return true;
    }
  return false;
}

void check_solved(const ProductInstance& p, const SolveResult& r) {
  REQUIRE(r.solved());
  CHECK(verify_assignment(p, r.assignment).empty());
  for (const auto& e : p.events) CHECK_FALSE(eval_event(e, r.assignment));
}

}  // namespace

TEST_CASE("no bad events: solved without resampling") {
  ProductInstance p;
  p.space = VariableSpace::uniform(5, 3);
  const auto r = solve_resample(p, {.seed = 4});
  CHECK(r.solved());
  CHECK(r.resample_count == 0);
  CHECK(r.trace.empty());
  CHECK(p.space.contains(r.assignment));
}

TEST_CASE("firm instance is solved and every job is covered") {
  const auto firm = gen_firm({}, 11);
  const auto r = solve_resample(firm, {.seed = 3});
  check_solved(firm, r);
  // each job sees a specialist on both days: its specialists are not all on one day
  for (const auto& e : firm.events) {
    std::set<std::uint32_t> days;
    for (auto v : e.support()) days.insert(r.assignment[v]);
    CHECK(days.size() == 2);
  }
  CHECK(r.resample_count <= default_budget(firm.events.size(), firm.declared_d));
}

TEST_CASE("vdw below the gate is solved and AP-free") {
  const auto v = gen_vdw(39, 12);
  const auto r = solve_resample(v, {.seed = 1});
  check_solved(v, r);
  CHECK_FALSE(has_mono_ap(r.assignment, 12));
}

TEST_CASE("determinism per seed") {
  const auto circle = gen_circle(100, 16, 3);
  const auto a = solve_resample(circle, {.seed = 99});
  const auto b = solve_resample(circle, {.seed = 99});
  CHECK(a == b);
  CHECK(format_trace(circle, a) == format_trace(circle, b));
  const auto c = solve_resample(circle, {.seed = 100});
  CHECK(c.seed == 100);
}

TEST_CASE("budget exhaustion is a value") {
  const auto r6 = gen_ramsey(6, 3);
  const auto r = solve_resample(r6, {.seed = 2, .budget = 500});
  CHECK_FALSE(r.solved());
  CHECK(r.resample_count == 500);
  CHECK(r.trace.size() == 500);
  CHECK(r.budget == 500);
}

TEST_CASE("property: resampling touches only the selected event's support") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = gen_ramsey(6, 3);
    for (std::uint64_t b = 1; b < 40; b += 3) {
      const auto before = solve_resample(p, {.seed = seed, .budget = b});
      const auto after = solve_resample(p, {.seed = seed, .budget = b + 1});
      REQUIRE(after.trace.size() == b + 1);
      CHECK(std::equal(before.trace.begin(), before.trace.end(), after.trace.begin()));
      const auto& chosen = p.events[after.trace[b].event];
      // the chosen event is the smallest violated one
      const auto viol = verify_assignment(p, before.assignment);
      REQUIRE_FALSE(viol.empty());
      CHECK(viol.front() == after.trace[b].event);
      const auto sup = chosen.support();
      for (std::uint32_t v = 0; v < p.space.variable_count(); ++v)
        if (!std::binary_search(sup.begin(), sup.end(), v)) CHECK(before.assignment[v] == after.assignment[v]);
    }
  }
}

TEST_CASE("verify_assignment") {
  ProductInstance p;
  p.space = VariableSpace::uniform(8, 2);
  p.events = {BadEvent::monochromatic("all", {0, 1, 2, 3, 4, 5, 6, 7})};
  const auto v = verify_assignment(p, Assignment(8, 0));
  CHECK(v == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(verify_assignment(p, Assignment(7, 0)), std::invalid_argument);
  CHECK_THROWS_AS(verify_assignment(p, Assignment{0, 0, 0, 0, 0, 0, 0, 2}), std::invalid_argument);

  // a 2-coloring of 1..8 with no monochromatic 3-AP
  const auto ap = gen_vdw(8, 3);
  const Assignment witness{0, 0, 1, 1, 0, 0, 1, 1};
  CHECK(verify_assignment(ap, witness).empty());
  CHECK_FALSE(has_mono_ap(witness, 3));
  // strict alternation is not such a witness: 1, 3, 5 share a color
  const Assignment alternating{0, 1, 0, 1, 0, 1, 0, 1};
  CHECK_FALSE(verify_assignment(ap, alternating).empty());
}

TEST_CASE("ramsey: K5 solved, K6 infeasible") {
  const auto k5 = gen_ramsey(5, 3);
  const auto r = solve_resample(k5, {.seed = 8});
  check_solved(k5, r);

  const auto k6 = gen_ramsey(6, 3);
  REQUIRE(k6.space.variable_count() == 15);
  std::uint64_t good = 0;
  oracle::for_each_point(k6.space, [&](const Assignment& a) { good += verify_assignment(k6, a).empty(); });
  CHECK(good == 0);
  CHECK_FALSE(solve_resample(k6, {.seed = 8}).solved());
}

TEST_CASE("latin swap resampling") {
  std::vector<std::uint32_t> distinct(17 * 17);
  for (std::uint32_t i = 0; i < distinct.size(); ++i) distinct[i] = i;
  const auto all = latin_from_matrix(17, distinct);
  const auto r0 = solve_permutation(all, {.seed = 5});
  CHECK(r0.solved());
  CHECK(r0.resample_count == 0);

  const auto capped = gen_latin(17, 1, 3);
  CHECK(capped.max_color_count() == 1);
  CHECK(solve_permutation(capped, {.seed = 1}).resample_count == 0);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto l = gen_latin(33, 2, seed);
    CHECK(l.max_color_count() <= 2);
    const auto r = solve_permutation(l, {.seed = seed});
    REQUIRE(r.solved());
    CHECK(PermutationSpace(33).contains(r.assignment));
    CHECK(latin_conflicts(l, r.assignment).empty());
    std::set<std::uint32_t> seen;
    for (std::uint32_t row = 0; row < 33; ++row) seen.insert(l.color(row, r.assignment[row]));
    CHECK(seen.size() == 33);
  }
}

TEST_CASE("greedy leaders") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto layout = random_circle(10, 20, seed);
    const auto sel = greedy_leaders(layout);
    REQUIRE(sel.success);
    CHECK(leaders_valid(layout, sel.leaders));
  }

  CircleLayout alt;
  alt.groups = 2;
  alt.group_of = {0, 1, 0, 1, 0, 1};
  bool feasible = false;
  for (std::uint32_t a = 0; a < 6; a += 2)
    for (std::uint32_t b = 1; b < 6; b += 2) {
      const std::vector<std::uint32_t> pick{a, b};
      feasible = feasible || leaders_valid(alt, pick);
    }
  CHECK(feasible);
  const auto sel = greedy_leaders(alt);
  CHECK(sel.success);
  CHECK(sel.leaders == std::vector<std::uint32_t>{0, 3});
  CHECK(leaders_valid(alt, sel.leaders));

  CircleLayout one;
  one.groups = 1;
  one.group_of = {0, 0, 0, 0};
  const auto s1 = greedy_leaders(one);
  CHECK(s1.success);
  CHECK(s1.leaders.size() == 1);

  CircleLayout stuck;
  stuck.groups = 3;
  stuck.group_of = {0, 1, 2};
  const auto s3 = greedy_leaders(stuck);
  CHECK_FALSE(s3.success);
  CHECK(s3.stuck_group.has_value());
}

TEST_CASE("extract_cycle") {
  const std::uint32_t k = 5;
  Digraph cyc(k);
  std::vector<std::uint32_t> labels(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    cyc.add_arc(i, (i + 1) % k);
    labels[i] = i;
  }
  CHECK(extract_cycle(cyc, labels, k).size() == k);

  Digraph two(4 * k);
  std::vector<std::uint32_t> l2(4 * k);
  for (std::uint32_t c = 0; c < 2; ++c)
    for (std::uint32_t i = 0; i < 2 * k; ++i) {
      two.add_arc(c * 2 * k + i, c * 2 * k + (i + 1) % (2 * k));
      l2[c * 2 * k + i] = i % k;
    }
  const auto found = extract_cycle(two, l2, k);
  CHECK(found.size() == 2 * k);
  for (std::size_t i = 0; i < found.size(); ++i) CHECK(two.has_arc(found[i], found[(i + 1) % found.size()]));

  labels[2] = 4;
  CHECK_THROWS_AS(extract_cycle(cyc, labels, k), std::invalid_argument);
}

TEST_CASE("digraph labels solve and yield a cycle of length divisible by k") {
  CHECK(digraph_gate(8, 8, 2));
  CHECK(digraph_gate(1, 1, 1));
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto g = random_regular_digraph(64, 8, seed);
    const auto p = gen_digraph_labels(g, 2);
    const auto r = solve_resample(p, {.seed = seed});
    check_solved(p, r);
    const auto cyc = extract_cycle(g, r.assignment, 2);
    CHECK(cyc.size() % 2 == 0);
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      CHECK(g.has_arc(cyc[i], cyc[(i + 1) % cyc.size()]));
      CHECK(r.assignment[cyc[(i + 1) % cyc.size()]] == (r.assignment[cyc[i]] + 1) % 2);
    }
  }
}

TEST_CASE("property: certified desk instances are solved for at least 95 of 100 seeds") {
  for (std::uint64_t inst = 0; inst < 8; ++inst) {
    const auto p = gen_desk_symmetric(inst);
    const auto cert = check_symmetric(p);
    REQUIRE(cert.applicable);
    int solved = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      auto r = solve_resample(p, {.seed = seed, .d = cert.d});
      if (!r.solved()) {
        r = solve_resample(p, {.seed = seed, .budget = 2 * default_budget(p.events.size(), cert.d)});
        REQUIRE(r.solved());
      } else {
        ++solved;
      }
      CHECK(verify_assignment(p, r.assignment).empty());
    }
    CHECK(solved >= 95);
  }
}

TEST_CASE("trace text") {
  const auto k5 = gen_ramsey(5, 3);
  const auto r = solve_resample(k5, {.seed = 1, .budget = 2});
  const auto text = format_trace(k5, r);
  if (!r.trace.empty()) CHECK(text.rfind("step 1 resample clique", 0) == 0);
}
