#include "lll/chain.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "lll/rng.hpp"

namespace lll {

std::string to_string(ChainStatus status) {
  switch (status) {
    case ChainStatus::HypothesesNotMet: return "hypotheses-not-met";
    case ChainStatus::NonEmpty: return "non-empty";
    case ChainStatus::Empty: return "empty";
  }
  return "?";
}

namespace {

std::size_t count(const Subset& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), true)); }

std::size_t count_and(const Subset& a, const Subset& b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += a[i] && b[i];
  return c;
}

}  // namespace

ChainReport chain_verify(const std::vector<Subset>& sets) {
  if (sets.size() < 2) throw std::invalid_argument("chain: need at least two sets");
  const std::size_t N = sets.front().size();
  for (const auto& s : sets)
    if (s.size() != N) throw std::invalid_argument("chain: sets over different universes");
  if (N == 0) throw std::invalid_argument("chain: empty universe");

  ChainReport r;
  r.universe = N;
  r.sets = sets.size();
  r.threshold = 1 - Rational(1, static_cast<std::uint64_t>(sets.size() - 1));
  r.proven_range = sets.size() <= 4;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    r.fractions.emplace_back(static_cast<std::uint64_t>(count(sets[k])), static_cast<std::uint64_t>(N));
    if (!r.low_fraction && r.fractions.back() <= r.threshold) r.low_fraction = k;
  }
  for (std::size_t k = 0; k + 1 < sets.size() && !r.dependent_pair; ++k) {
    const BigInt lhs = BigInt(count_and(sets[k], sets[k + 1])) * N;
    const BigInt rhs = BigInt(count(sets[k])) * count(sets[k + 1]);
    if (lhs != rhs) r.dependent_pair = k;
  }
  Subset all(N, true);
  for (const auto& s : sets)
    for (std::size_t i = 0; i < N; ++i) all[i] = all[i] && s[i];
  r.intersection_size = count(all);
  if (!r.hypotheses_hold())
    r.status = ChainStatus::HypothesesNotMet;
  else
    r.status = r.intersection_size > 0 ? ChainStatus::NonEmpty : ChainStatus::Empty;
  return r;
}

std::string format_chain(const ChainReport& r) {
  std::ostringstream os;
  os << "chain sets " << r.sets << " universe " << r.universe << "\n";
  os << "threshold " << fraction_string(r.threshold) << "\n";
  for (std::size_t k = 0; k < r.fractions.size(); ++k)
    os << "set " << k << " fraction " << fraction_string(r.fractions[k]) << "\n";
  if (r.low_fraction) os << "set " << *r.low_fraction << " at or below threshold\n";
  if (r.dependent_pair) os << "pair " << *r.dependent_pair << " " << *r.dependent_pair + 1 << " dependent\n";
  os << "intersection " << r.intersection_size << "\n";
  os << "status " << to_string(r.status) << (r.proven_range ? " (proven range)" : " (open range)") << "\n";
  return os.str();
}

ChainSearchReport chain_search(std::size_t n, std::size_t max_universe, std::size_t trials, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("chain search: n must be at least 2");
  if (max_universe < 2) throw std::invalid_argument("chain search: universe too small");
  ChainSearchReport rep;
  rep.n = n;
  rep.max_universe = max_universe;
  rep.seed = seed;
  Rng rng(seed);
  const Rational thr = 1 - Rational(1, static_cast<std::uint64_t>(n - 1));

  for (std::size_t t = 0; t < trials; ++t) {
    ++rep.trials;
    const std::size_t N = 2 + rng.below(max_universe - 1);
    // smallest size strictly above thr * N
    std::size_t lo = 0;
    while (lo <= N && Rational(static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(N)) <= thr) ++lo;
    if (lo > N) continue;

    std::vector<Subset> sets;
    Subset running(N, true);
    std::vector<std::size_t> order(N);
    std::iota(order.begin(), order.end(), 0);

    std::size_t a = lo + rng.below(N - lo + 1);
    {
      rng.shuffle(order);
      Subset s(N, false);
      for (std::size_t i = 0; i < a; ++i) s[order[i]] = true;
      sets.push_back(s);
      running = s;
    }
    bool ok = true;
    while (sets.size() < n && ok) {
      const Subset& prev = sets.back();
      // sizes b > thr*N with a*b divisible by N, so that |prev ∩ next| = a*b/N
      std::vector<std::size_t> sizes;
      for (std::size_t b = lo; b <= N; ++b)
        if ((a * b) % N == 0) sizes.push_back(b);
      if (sizes.empty()) {
        ok = false;
        break;
      }
      // favor small sets half the time
      const std::size_t b = rng.below(2) ? sizes.front() : sizes[rng.below(sizes.size())];
      const std::size_t c = a * b / N;
      std::vector<std::size_t> in_prev_outside, in_prev_inside, outside;
      rng.shuffle(order);
      for (auto i : order) {
        if (!prev[i])
          outside.push_back(i);
        else if (running[i])
          in_prev_inside.push_back(i);
        else
          in_prev_outside.push_back(i);
      }
      if (c > in_prev_outside.size() + in_prev_inside.size() || b - c > outside.size()) {
        ok = false;
        break;
      }
      Subset s(N, false);
      // overlap with prev: avoid the running intersection first
      std::size_t placed = 0;
      for (auto i : in_prev_outside)
        if (placed < c) s[i] = true, ++placed;
      for (auto i : in_prev_inside)
        if (placed < c) s[i] = true, ++placed;
      for (std::size_t i = 0; i < b - c; ++i) s[outside[i]] = true;
      for (std::size_t i = 0; i < N; ++i) running[i] = running[i] && s[i];
      sets.push_back(std::move(s));
      a = b;
    }
    if (!ok) continue;
    const auto report = chain_verify(sets);
    if (!report.hypotheses_hold()) continue;
    ++rep.families;
    const Rational f(static_cast<std::uint64_t>(report.intersection_size), static_cast<std::uint64_t>(N));
    if (!rep.min_fraction || f < *rep.min_fraction) rep.min_fraction = f;
    if (report.status == ChainStatus::Empty) {
      rep.counterexample = sets;
      break;
    }
  }
  return rep;
}

std::string format_chain_search(const ChainSearchReport& r) {
  std::ostringstream os;
  os << "chain search n " << r.n << " max universe " << r.max_universe << " seed " << r.seed << "\n";
  os << "trials " << r.trials << " families " << r.families << "\n";
  if (r.min_fraction)
    os << "min intersection fraction " << fraction_string(*r.min_fraction) << " (~" << approx_string(*r.min_fraction, 6)
       << ")\n";
  os << "result " << (r.counterexample ? "counterexample found" : "none found") << "\n";
  return os.str();
}

}  // namespace lll
