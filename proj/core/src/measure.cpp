#include "lll/measure.hpp"

#include <algorithm>
#include <stdexcept>

namespace lll {

namespace {

struct ProjectedTerm {
  EventTerm term;
  std::vector<std::size_t> positions;  // into the union support
};

// Union of supports plus, for each term, where its variables sit in the union.
struct Projection {
  std::vector<std::uint32_t> variables;
  std::vector<std::uint32_t> radices;
  std::vector<ProjectedTerm> terms;
};

Projection project(const VariableSpace& space, std::span<const EventTerm> terms) {
  Projection p;
  for (const auto& t : terms) {
    auto s = t.event->support();
    p.variables.insert(p.variables.end(), s.begin(), s.end());
  }
  std::sort(p.variables.begin(), p.variables.end());
  p.variables.erase(std::unique(p.variables.begin(), p.variables.end()), p.variables.end());
  for (auto v : p.variables) {
    if (v >= space.variable_count())
      throw std::invalid_argument("support variable " + std::to_string(v) + " out of range");
    p.radices.push_back(space.domain(v));
  }
  for (const auto& t : terms) {
    ProjectedTerm pt{t, {}};
    for (auto v : t.event->support())
      pt.positions.push_back(static_cast<std::size_t>(
          std::lower_bound(p.variables.begin(), p.variables.end(), v) - p.variables.begin()));
    p.terms.push_back(std::move(pt));
  }
  return p;
}

// Calls visit(values) for each tuple of the projection, in lexicographic order.
template <class Visit>
void enumerate(const Projection& p, std::uint64_t cap, const char* what, Visit&& visit) {
  checked_product(p.radices, cap, what);
  Odometer odo(p.radices);
  do {
    visit(odo.values());
  } while (odo.next());
}

bool term_holds(const ProjectedTerm& pt, const std::vector<std::uint32_t>& values,
                std::vector<std::uint32_t>& scratch) {
  scratch.resize(pt.positions.size());
  for (std::size_t i = 0; i < pt.positions.size(); ++i) scratch[i] = values[pt.positions[i]];
  return pt.term.holds_on(scratch);
}

}  // namespace

Rational closed_form_measure(const VariableSpace& space, const BadEvent& event) {
  event.validate(space);
  auto support = event.support();
  BigInt cells = 1;
  for (auto v : support) cells *= space.domain(v);

  switch (event.kind()) {
    case EventKind::Monochromatic: {
      if (support.empty()) return Rational(1);
      std::uint32_t min_domain = space.domain(support[0]);
      for (auto v : support) min_domain = std::min(min_domain, space.domain(v));
      return make_rational(min_domain, cells);
    }
    case EventKind::MissingColor: {
      const std::uint64_t r = event.colors();
      const std::uint64_t s = support.size();
      if (s < r) return Rational(1);
      Rational total = 0;
      for (std::uint64_t i = 1; i < r; ++i) {
        Rational term = Rational(binomial(r, i)) * rational_pow(make_rational(r - i, r), s);
        if (i % 2 == 1)
          total += term;
        else
          total -= term;
      }
      return total;
    }
    case EventKind::Clause: {
      if (event.tautological()) return Rational(0);
      // Per distinct variable: the literal is false with probability 1/r
      // (positive: value 0) or (r-1)/r (negative: value nonzero).
      Rational m = 1;
      for (auto v : support) {
        const auto r = space.domain(v);
        bool positive = true;
        for (const auto& lit : event.literals())
          if (lit.var == v) positive = lit.positive;
        m *= positive ? make_rational(1, r) : make_rational(r - 1, r);
      }
      return m;
    }
    case EventKind::ForbiddenPatterns:
      return make_rational(event.patterns().size(), cells);
    case EventKind::TruthTable: {
      const auto& bits = event.table();
      const auto ones = static_cast<std::uint64_t>(std::count(bits.begin(), bits.end(), true));
      return make_rational(ones, cells);
    }
  }
  throw std::logic_error("unknown event kind");
}

Rational measure(const VariableSpace& space, const BadEvent& event) {
  return closed_form_measure(space, event);
}

Rational enumerated_measure(const VariableSpace& space, const BadEvent& event,
                            const EnumerationLimits& limits) {
  event.validate(space);
  const EventTerm t = EventTerm::of(event);
  return joint_measure(space, std::span<const EventTerm>(&t, 1), limits);
}

Rational joint_measure(const VariableSpace& space, std::span<const EventTerm> terms,
                       const EnumerationLimits& limits) {
  if (terms.empty()) return Rational(1);
  const Projection p = project(space, terms);
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  std::vector<std::uint32_t> scratch;
  enumerate(p, limits.max_assignments, "joint measure", [&](const std::vector<std::uint32_t>& values) {
    ++total;
    for (const auto& pt : p.terms)
      if (!term_holds(pt, values, scratch)) return;
    ++hits;
  });
  return make_rational(hits, total);
}

bool independent(const VariableSpace& space, EventTerm a, EventTerm b,
                 const EnumerationLimits& limits) {
  const EventTerm pair[] = {a, b};
  const Rational both = joint_measure(space, pair, limits);
  const Rational ma = joint_measure(space, std::span<const EventTerm>(&pair[0], 1), limits);
  const Rational mb = joint_measure(space, std::span<const EventTerm>(&pair[1], 1), limits);
  return both == ma * mb;
}

bool independent_from_family(const VariableSpace& space, EventTerm a,
                             std::span<const EventTerm> family,
                             const EnumerationLimits& limits) {
  if (family.empty()) return true;
  if (family.size() > limits.max_family)
    throw EnumerationCapExceeded("family of " + std::to_string(family.size()) +
                                 " exceeds the family cap " + std::to_string(limits.max_family));
  const std::size_t k = family.size();
  const std::size_t masks = std::size_t{1} << k;

  std::vector<EventTerm> all;
  all.push_back(a);
  all.insert(all.end(), family.begin(), family.end());
  const Projection p = project(space, all);

  bool single_pass = true;
  try {
    checked_product(p.radices, limits.max_assignments, "family independence");
  } catch (const EnumerationCapExceeded&) {
    single_pass = false;
  }

  if (single_pass) {
    // Count points by the exact set of family members that hold, then take
    // superset sums so that at[S] = #points where every member of S holds.
    std::vector<std::uint64_t> at(masks, 0), at_with_a(masks, 0);
    std::uint64_t total = 0;
    std::vector<std::uint32_t> scratch;
    enumerate(p, limits.max_assignments, "family independence",
              [&](const std::vector<std::uint32_t>& values) {
                ++total;
                std::size_t mask = 0;
                for (std::size_t i = 0; i < k; ++i)
                  if (term_holds(p.terms[i + 1], values, scratch)) mask |= std::size_t{1} << i;
                ++at[mask];
                if (term_holds(p.terms[0], values, scratch)) ++at_with_a[mask];
              });
    for (std::size_t bit = 0; bit < k; ++bit)
      for (std::size_t m = 0; m < masks; ++m)
        if (!(m & (std::size_t{1} << bit))) {
          at[m] += at[m | (std::size_t{1} << bit)];
          at_with_a[m] += at_with_a[m | (std::size_t{1} << bit)];
        }
    const BigInt size_a = at_with_a[0];
    for (std::size_t m = 1; m < masks; ++m)
      if (BigInt(at_with_a[m]) * total != size_a * at[m]) return false;
    return true;
  }

  const Rational ma = joint_measure(space, std::span<const EventTerm>(&a, 1), limits);
  std::vector<EventTerm> subset;
  for (std::size_t m = 1; m < masks; ++m) {
    subset.clear();
    for (std::size_t i = 0; i < k; ++i)
      if (m & (std::size_t{1} << i)) subset.push_back(family[i]);
    const Rational mb = joint_measure(space, subset, limits);
    subset.push_back(a);
    if (joint_measure(space, subset, limits) != ma * mb) return false;
  }
  return true;
}

bool supports_intersect(const BadEvent& a, const BadEvent& b) {
  auto sa = a.support();
  auto sb = b.support();
  std::size_t i = 0, j = 0;
  while (i < sa.size() && j < sb.size()) {
    if (sa[i] == sb[j]) return true;
    if (sa[i] < sb[j])
      ++i;
    else
      ++j;
  }
  return false;
}

bool support_disjoint_certificate(const BadEvent& a, std::span<const EventTerm> family) {
  return std::none_of(family.begin(), family.end(),
                      [&](const EventTerm& t) { return supports_intersect(a, *t.event); });
}

}  // namespace lll
