#include <doctest.h>

#include "lll/checker.hpp"
#include "lll/desk.hpp"
#include "lll/instances.hpp"
#include "lll/measure.hpp"
#include "oracle.hpp"

using namespace lll;

namespace {

ProductInstance from_events(VariableSpace space, std::vector<BadEvent> events) {
  ProductInstance p;
  p.family = "toy";
  p.space = std::move(space);
  p.events = std::move(events);
  return p;
}

// Largest number of events (itself included) sharing a variable with any one event.
std::uint64_t scan_overlap(const ProductInstance& p) {
  std::uint64_t best = 0;
  for (const auto& a : p.events) {
    std::uint64_t c = 0;
    for (const auto& b : p.events) c += supports_intersect(a, b);
    best = std::max(best, c);
  }
  return best;
}

}  // namespace

TEST_CASE("dependency degrees on the flagship families") {
  const auto firm = gen_firm({}, 1);
  const auto rep = dependency_degrees(firm, DependencyMode::Structural);
  for (auto d : rep.degree) CHECK(d <= 31);
  for (std::size_t k = 0; k < rep.degree.size(); ++k) {
    const auto fam = rep.certified_family(k);
    CHECK(std::find(fam.begin(), fam.end(), k) == fam.end());
    CHECK(fam.size() + rep.degree[k] == firm.events.size());
  }

  const auto circle = gen_circle(100, 16, 3);
  const auto crep = dependency_degrees(circle, DependencyMode::Structural);
  CHECK(crep.max_degree() <= 64);

  auto disjoint = from_events(VariableSpace::uniform(9, 2), {BadEvent::monochromatic("a", {0, 1, 2}),
                                                            BadEvent::monochromatic("b", {3, 4, 5}),
                                                            BadEvent::monochromatic("c", {6, 7, 8})});
  for (auto d : dependency_degrees(disjoint, DependencyMode::Structural).degree) CHECK(d == 1);
}

TEST_CASE("zero-measure events never count as dependencies") {
  auto p = from_events(VariableSpace::uniform(4, 2),
                       {BadEvent::monochromatic("a", {0, 1}), BadEvent::clause("taut", {{0, true}, {0, false}}),
                        BadEvent::forbidden_patterns("none", {0, 1}, {})});
  const auto rep = dependency_degrees(p, DependencyMode::Structural);
  CHECK(rep.degree[0] == 1);
  CHECK(rep.degree[1] == 1);
  CHECK(rep.degree[2] == 1);
  SymmetricOptions opt;
  CHECK(check_symmetric(p, opt).applicable == false);  // measure 1/2 > 1/4
  p.events[0] = BadEvent::monochromatic("a", {0, 1, 2, 3});  // 1/8
  CHECK(check_symmetric(p, opt).applicable);
}

TEST_CASE("exhaustive mode certifies at least what structural mode does") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto p = gen_desk_symmetric(seed);
    const auto s = dependency_degrees(p, DependencyMode::Structural);
    const auto x = dependency_degrees(p, DependencyMode::Exhaustive);
    for (std::size_t k = 0; k < s.degree.size(); ++k) {
      CHECK(x.degree[k] <= s.degree[k]);
      CHECK(x.degree[k] >= 1);
      // the exhaustive family really is independent
      std::vector<EventTerm> fam;
      for (auto j : x.certified_family(k)) fam.push_back(EventTerm::of(p.events[j]));
      CHECK(independent_from_family(p.space, EventTerm::of(p.events[k]), fam));
    }
  }
}

TEST_CASE("exhaustive dependency detects independence that supports hide") {
  // a: x0 == x1, b: x1 == x2 over bits. They share x1 but are independent.
  const auto p = from_events(VariableSpace::uniform(3, 2),
                             {BadEvent::forbidden_patterns("a", {0, 1}, {{0, 0}, {1, 1}}),
                              BadEvent::forbidden_patterns("b", {1, 2}, {{0, 0}, {1, 1}})});
  CHECK(dependency_degrees(p, DependencyMode::Structural).degree[0] == 2);
  CHECK(dependency_degrees(p, DependencyMode::Exhaustive).degree[0] == 1);
}

TEST_CASE("symmetric certificate: gate equalities") {
  const auto firm = gen_firm({}, 1);
  auto cert = check_symmetric(firm);
  CHECK(cert.applicable);
  CHECK(*cert.d == 32);
  for (const auto& v : cert.verdicts) {
    CHECK(v.measure == Rational(1, 128));
    CHECK(v.threshold == Rational(1, 128));
  }

  const auto circle = gen_circle(100, 16, 3);
  cert = check_symmetric(circle);
  CHECK(cert.applicable);
  CHECK(*cert.d == 64);
  Rational worst = 0;
  for (const auto& v : cert.verdicts) worst = std::max(worst, v.measure);
  CHECK(worst == Rational(1, 256));
}

TEST_CASE("symmetric certificate: e variant separation at k = 9") {
  const Rational m = rational_pow(Rational(1, 2), 8);
  const EConstant e;
  // d = 72 arithmetic
  CHECK(m > Rational(1, 288));
  CHECK(m <= 1 / (e.hi * 73));
  CHECK(m <= 1 / (e.lo * 73));

  const auto h = gen_hypergraph(9, 40, 5);
  CHECK(scan_overlap(h) <= 73);
  CHECK(*h.declared_d == 73);
  SymmetricOptions opt;
  opt.prefer_declared_d = false;
  CHECK_FALSE(check_symmetric(h, opt).applicable);
  opt.variant = CertificateMode::SymmetricE;
  const auto ce = check_symmetric(h, opt);
  CHECK(ce.applicable);
  CHECK_FALSE(ce.margin_too_thin);
}

TEST_CASE("symmetric certificate rejections") {
  const auto firm = gen_firm({}, 1);
  SymmetricOptions opt;
  opt.d = 3;
  const auto c = check_symmetric(firm, opt);
  CHECK_FALSE(c.applicable);
  CHECK(c.rejection.find("event 'job") != std::string::npos);

  CHECK_FALSE(c.guaranteed_fraction.has_value());
  const auto r6 = check_symmetric(gen_ramsey(6, 3));
  CHECK_FALSE(r6.applicable);
  CHECK(format_certificate(r6).find("guaranteed_fraction") == std::string::npos);
  CHECK_FALSE(induction_certificate(gen_ramsey(6, 3), 10).performed);

  auto tiny = from_events(VariableSpace::uniform(4, 2), {BadEvent::monochromatic("a", {0, 1, 2, 3})});
  opt = {};
  opt.variant = CertificateMode::SymmetricE;
  CHECK(check_symmetric(tiny, opt).rejection.find("d > 2") != std::string::npos);
}

TEST_CASE("a margin inside the e enclosure is reported, never passed") {
  ProductInstance p;
  p.family = "thin";
  p.materialized = false;
  p.declared_d = 3;
  p.declared_event_count = 10;
  const EConstant e;
  // 1/(4 * midpoint of the enclosure)
  p.declared_measure = 1 / (4 * (e.lo + e.hi) / 2);
  SymmetricOptions opt;
  opt.variant = CertificateMode::SymmetricE;
  const auto c = check_symmetric(p, opt);
  CHECK(c.margin_too_thin);
  CHECK_FALSE(c.applicable);
  CHECK(format_certificate(c).find("margin") != std::string::npos);
}

TEST_CASE("certificate-only instances use declared bounds") {
  const auto v = gen_vdw(15000000, 32);
  CHECK_FALSE(v.materialized);
  const auto c = check_symmetric(v);
  CHECK(c.applicable);
  CHECK(*c.d == 495482880);
  CHECK(c.verdicts.size() == 1);
  CHECK(c.verdicts[0].measure == rational_pow(Rational(1, 2), 31));
}

TEST_CASE("general certificate") {
  auto one = from_events(VariableSpace::uniform(1, 2), {BadEvent::monochromatic("a", {0})});
  // measure 1 > 1/2: not applicable; a two-variable event of measure 1/2 is
  one.space = VariableSpace::uniform(2, 2);
  one.events = {BadEvent::monochromatic("a", {0, 1})};
  auto c = check_general(one, {{}}, {Rational(1, 2)});
  CHECK(c.applicable);
  CHECK(*c.guaranteed_fraction == Rational(1, 2));

  CHECK_THROWS_AS(check_general(one, {{}}, {Rational(1)}), std::invalid_argument);
  CHECK_THROWS_AS(check_general(one, {{}, {}}, {Rational(1, 2)}), std::invalid_argument);

  // overlapping supports and a J claiming independence: rejected naming the pair
  auto two = from_events(VariableSpace::uniform(4, 2),
                         {BadEvent::forbidden_patterns("a", {0, 1, 2}, {{0, 0, 0}}),
                          BadEvent::forbidden_patterns("b", {2, 3}, {{1, 1}})});
  c = check_general(two, {{1}, {0}}, {Rational(1, 2), Rational(1, 2)});
  CHECK_FALSE(c.applicable);
  CHECK(c.rejection.find("'b'") != std::string::npos);
  c = check_general(two, {{0}, {}}, {Rational(1, 2), Rational(1, 2)});
  CHECK(c.rejection.find("itself") != std::string::npos);
}

TEST_CASE("general certificate with gamma = 1 - 1/d follows the symmetric gate") {
  // 3 events in a chain a-b-c, d = 3
  const auto p = from_events(VariableSpace::uniform(8, 2), {BadEvent::monochromatic("a", {0, 1, 2, 3}),
                                                           BadEvent::monochromatic("b", {3, 4, 5, 6}),
                                                           BadEvent::monochromatic("c", {6, 7, 0})});
  const auto sym = check_symmetric(p);
  REQUIRE(*sym.d == 3);
  const auto rep = dependency_degrees(p, DependencyMode::Structural);
  std::vector<std::vector<std::uint32_t>> J;
  for (std::size_t k = 0; k < 3; ++k) J.push_back(rep.certified_family(k));
  const auto gen = check_general(p, J, std::vector<Rational>(3, Rational(2, 3)));
  // (1/d)(1-1/d)^(d-1) >= 1/(4d), so the symmetric pass carries over
  if (sym.applicable) CHECK(gen.applicable);
  for (std::size_t k = 0; k < 3; ++k) CHECK(gen.verdicts[k].threshold >= sym.verdicts[k].threshold);

  GeneralOptions strict;
  strict.include_self_in_product = true;
  const auto gs = check_general(p, J, std::vector<Rational>(3, Rational(2, 3)), strict);
  for (std::size_t k = 0; k < 3; ++k) CHECK(gs.verdicts[k].threshold == gen.verdicts[k].threshold * Rational(2, 3));
}

TEST_CASE("property: symmetric certificates are sound at desk scale") {
  int applicable = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const auto p = gen_desk_symmetric(seed);
    const auto c = check_symmetric(p);
    if (!c.applicable) continue;
    ++applicable;
    const Rational f = oracle::good_fraction(p);
    CAPTURE(seed);
    CHECK(f > 0);
    CHECK(f >= *c.guaranteed_fraction);
  }
  CHECK(applicable == 120);
}

TEST_CASE("property: general certificates are sound at desk scale") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = gen_desk_general(seed);
    const auto c = check_general(g.instance, g.families, g.gammas);
    CAPTURE(seed);
    REQUIRE(c.applicable);
    CHECK(oracle::good_fraction(g.instance) >= *c.guaranteed_fraction);
  }
}

TEST_CASE("property: monotonicity in d") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto p = gen_desk_symmetric(seed);
    const auto base = check_symmetric(p);
    const auto maxd = dependency_degrees(p, DependencyMode::Structural).max_degree();
    for (std::uint64_t d2 = *base.d + 1; d2 <= *base.d + 4; ++d2) {
      bool tighter = true;
      for (const auto& e : p.events) tighter = tighter && measure(p.space, e) * 4 * d2 <= 1;
      SymmetricOptions opt;
      opt.d = d2;
      if (base.applicable && tighter && d2 >= maxd) CHECK(check_symmetric(p, opt).applicable);
    }
  }
}

TEST_CASE("induction certificate") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto p = gen_desk_symmetric(seed);
    const auto d = check_symmetric(p).d.value();
    const auto r = induction_certificate(p, d);
    REQUIRE(r.performed);
    CHECK(r.all_hold());
    const auto prefix = oracle::prefix_fractions(p);
    CHECK(r.prefix == prefix);
    for (const auto& row : r.rows)
      if (row.t == 0) CHECK(row.lhs == row.rhs);
    // k = 0, t = n is the lemma's conclusion
    const std::size_t n = p.events.size();
    bool saw = false;
    for (const auto& row : r.rows)
      if (row.k == 0 && row.t == n) {
        saw = true;
        CHECK(row.lhs > 0);
      }
    CHECK(saw);
  }

  auto bad = from_events(VariableSpace::uniform(2, 2), {BadEvent::monochromatic("a", {0, 1})});
  const auto r = induction_certificate(bad, 1);
  CHECK_FALSE(r.performed);
  CHECK_FALSE(r.refusal.empty());
}

TEST_CASE("Ramsey condition") {
  const EConstant e;
  for (const Rational& ev : {e.lo, e.hi}) {
    CHECK(ramsey_condition(5, 5, ev));
    CHECK_FALSE(ramsey_condition(5, 6, ev));
    CHECK_FALSE(ramsey_condition(3, 3, ev));
  }
  // both sides recomputed here: 101 * e < 2^9 and 201 * e >= 2^9
  CHECK(101 * e.hi < 512);
  CHECK(201 * e.lo > 512);
  CHECK(ramsey_condition(5, 5));
  CHECK_THROWS_AS(ramsey_condition(2, 5), std::invalid_argument);
  CHECK_THROWS_AS(ramsey_condition(5, 4), std::invalid_argument);
}

TEST_CASE("certificate report layout") {
  const auto text = format_certificate(check_symmetric(gen_firm({10, 8, 30, 0}, 2)));
  CHECK(text.rfind("certificate\nmode symmetric-4d\nd 32\nevents 10\n", 0) == 0);
  CHECK(text.find("event job0 measure 1/128 threshold 1/128 pass\n") != std::string::npos);
  CHECK(text.find("applicable yes\n") != std::string::npos);
  CHECK(text.find("guaranteed_fraction ") != std::string::npos);
}
