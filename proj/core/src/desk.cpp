#include "lll/desk.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lll/measure.hpp"
#include "lll/rng.hpp"

namespace lll {

namespace {

struct Skeleton {
  VariableSpace space;
  std::vector<std::vector<std::uint32_t>> supports;
};

Skeleton random_skeleton(Rng& rng, const DeskOptions& opt) {
  std::vector<std::uint32_t> domains;
  std::uint64_t size = 1;
  while (domains.size() < 12) {
    const std::uint32_t r = 2 + rng.below32(2);
    if (size * r > opt.max_space) break;
    size *= r;
    domains.push_back(r);
  }
  Skeleton s{VariableSpace(domains), {}};
  const auto vars = static_cast<std::uint32_t>(domains.size());
  const std::uint32_t events = 2 + rng.below32(std::max<std::uint32_t>(opt.max_events, 2) - 1);
  std::vector<std::uint32_t> pool(vars);
  for (std::uint32_t e = 0; e < events; ++e) {
    const std::uint32_t width = 2 + rng.below32(std::min<std::uint32_t>(4, vars - 1));
    std::iota(pool.begin(), pool.end(), 0u);
    rng.shuffle(pool);
    std::vector<std::uint32_t> sup(pool.begin(), pool.begin() + width);
    std::sort(sup.begin(), sup.end());
    s.supports.push_back(std::move(sup));
  }
  return s;
}

bool share(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  for (auto x : a)
    if (std::binary_search(b.begin(), b.end(), x)) return true;
  return false;
}

// A truth table with `rows_set` random rows marked bad.
BadEvent table_event(Rng& rng, const VariableSpace& space, std::string id, const std::vector<std::uint32_t>& support,
                     std::uint64_t rows_set) {
  std::vector<std::uint32_t> radices;
  std::uint64_t rows = 1;
  for (auto v : support) {
    radices.push_back(space.domain(v));
    rows *= space.domain(v);
  }
  std::vector<std::uint64_t> idx(rows);
  std::iota(idx.begin(), idx.end(), 0);
  rng.shuffle(idx);
  std::vector<bool> bits(rows, false);
  for (std::uint64_t i = 0; i < rows_set && i < rows; ++i) bits[idx[i]] = true;
  auto e = BadEvent::truth_table(std::move(id), support, radices, std::move(bits));
  e.set_analytic_measure(closed_form_measure(space, e));
  return e;
}

std::uint64_t rows_of(const VariableSpace& space, const std::vector<std::uint32_t>& support) {
  std::uint64_t rows = 1;
  for (auto v : support) rows *= space.domain(v);
  return rows;
}

// Largest t with t/rows <= cap, then sometimes fewer.
std::uint64_t pick_rows(Rng& rng, std::uint64_t rows, const Rational& cap) {
  const Rational scaled = cap * rows;
  const auto t_max = static_cast<std::uint64_t>(BigInt(numerator_of(scaled) / denominator_of(scaled)));
  if (rng.below(4) == 0) return rng.below(t_max + 1);
  return t_max;
}

}  // namespace

ProductInstance gen_desk_symmetric(std::uint64_t seed, const DeskOptions& options) {
  Rng rng(seed);
  auto sk = random_skeleton(rng, options);
  const std::size_t n = sk.supports.size();
  std::uint64_t d = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::uint64_t dk = 0;
    for (std::size_t j = 0; j < n; ++j) dk += share(sk.supports[k], sk.supports[j]);
    d = std::max(d, dk);
  }
  const Rational cap(1, 4 * d);

  ProductInstance inst;
  inst.family = "desk";
  inst.params = {{"kind", "symmetric"}, {"seed", std::to_string(seed)}};
  inst.space = sk.space;
  for (std::size_t k = 0; k < n; ++k) {
    const std::string id = "a" + std::to_string(k);
    const auto rows = rows_of(sk.space, sk.supports[k]);
    // Monochromatic when it fits under the cap, as a change of shape.
    auto mono = BadEvent::monochromatic(id, sk.supports[k]);
    const Rational mm = closed_form_measure(sk.space, mono);
    if (mm <= cap && rng.below(3) == 0) {
      mono.set_analytic_measure(mm);
      inst.events.push_back(std::move(mono));
      continue;
    }
    inst.events.push_back(table_event(rng, sk.space, id, sk.supports[k], pick_rows(rng, rows, cap)));
  }
  return inst;
}

DeskGeneral gen_desk_general(std::uint64_t seed, const DeskOptions& options) {
  Rng rng(seed);
  auto sk = random_skeleton(rng, options);
  const std::size_t n = sk.supports.size();
  DeskGeneral out;
  out.families.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      if (j != k && !share(sk.supports[k], sk.supports[j])) out.families[k].push_back(static_cast<std::uint32_t>(j));
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t a = 1 + rng.below(6);
    out.gammas.emplace_back(a, a + 1);
  }
  auto& inst = out.instance;
  inst.family = "desk";
  inst.params = {{"kind", "general"}, {"seed", std::to_string(seed)}};
  inst.space = sk.space;
  for (std::size_t k = 0; k < n; ++k) {
    Rational cap = 1 - out.gammas[k];
    for (std::size_t j = 0; j < n; ++j)
      if (j != k && !std::binary_search(out.families[k].begin(), out.families[k].end(), static_cast<std::uint32_t>(j))) cap *= out.gammas[j];
    const auto rows = rows_of(sk.space, sk.supports[k]);
    inst.events.push_back(table_event(rng, sk.space, "a" + std::to_string(k), sk.supports[k], pick_rows(rng, rows, cap)));
  }
  return out;
}

}  // namespace lll
