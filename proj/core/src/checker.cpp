#include "lll/checker.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "lll/measure.hpp"

namespace lll {

std::uint64_t DependencyReport::max_degree() const {
  return degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
}

std::vector<std::uint32_t> DependencyReport::certified_family(std::size_t k) const {
  std::vector<std::uint32_t> family;
  const auto& dep = dependent.at(k);
  for (std::uint32_t j = 0; j < dependent.size(); ++j)
    if (!std::binary_search(dep.begin(), dep.end(), j)) family.push_back(j);
  return family;
}

std::string to_string(CertificateMode mode) {
  switch (mode) {
    case CertificateMode::Symmetric4d: return "symmetric-4d";
    case CertificateMode::SymmetricE: return "symmetric-e";
    case CertificateMode::General: return "general";
  }
  return "?";
}

namespace {

std::vector<bool> zero_measure_flags(const ProductInstance& instance) {
  std::vector<bool> zero(instance.events.size());
  for (std::size_t i = 0; i < instance.events.size(); ++i)
    zero[i] = measure(instance.space, instance.events[i]) == 0;
  return zero;
}

DependencyReport structural_degrees(const ProductInstance& instance, const std::vector<bool>& zero) {
  const auto n = instance.events.size();
  std::vector<std::vector<std::uint32_t>> on_variable(instance.space.variable_count());
  for (std::uint32_t i = 0; i < n; ++i) {
    if (zero[i]) continue;
    for (auto v : instance.events[i].support()) on_variable[v].push_back(i);
  }
  DependencyReport report;
  report.dependent.resize(n);
  report.degree.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    auto& dep = report.dependent[i];
    dep.push_back(i);
    if (!zero[i])
      for (auto v : instance.events[i].support())
        dep.insert(dep.end(), on_variable[v].begin(), on_variable[v].end());
    std::sort(dep.begin(), dep.end());
    dep.erase(std::unique(dep.begin(), dep.end()), dep.end());
    report.degree[i] = dep.size();
  }
  return report;
}

std::vector<EventTerm> terms_for(const ProductInstance& instance,
                                 const std::vector<std::uint32_t>& indices) {
  std::vector<EventTerm> terms;
  terms.reserve(indices.size());
  for (auto j : indices) terms.push_back(EventTerm::of(instance.events[j]));
  return terms;
}

// (1 - 1/d)^n, or (3/4)^n when d == 1 (every event independent of all the
// others, so the fractions multiply). Exact only when the numbers stay small.
void fill_guarantee(LLLCertificate& cert, std::uint64_t d, std::uint64_t n) {
  const std::uint64_t num = d >= 2 ? d - 1 : 3;
  const std::uint64_t den = d >= 2 ? d : 4;
  cert.guaranteed_expression =
      "(" + std::to_string(num) + "/" + std::to_string(den) + ")^" + std::to_string(n);
  const auto bits = static_cast<std::uint64_t>(std::bit_width(den)) * n;
  if (bits <= (std::uint64_t{1} << 21))
    cert.guaranteed_fraction = rational_pow(make_rational(num, den), n);
}

}  // namespace

DependencyReport dependency_degrees(const ProductInstance& instance, DependencyMode mode,
                                    const EnumerationLimits& limits) {
  if (!instance.materialized)
    throw std::invalid_argument("instance events are not materialized; use declared bounds");
  const auto zero = zero_measure_flags(instance);
  DependencyReport report = structural_degrees(instance, zero);
  if (mode == DependencyMode::Structural) return report;

  const auto n = static_cast<std::uint32_t>(instance.events.size());
  for (std::uint32_t k = 0; k < n; ++k) {
    if (zero[k]) continue;
    std::vector<std::uint32_t> candidates;
    for (auto j : report.dependent[k])
      if (j != k) candidates.push_back(j);
    if (candidates.empty()) continue;
    const auto base = report.certified_family(k);
    // 2^candidates families, each with up to 2^(base + candidates) subfamilies
    const std::size_t work_bits = 2 * candidates.size() + base.size();
    if (base.size() + candidates.size() > limits.max_family ||
        work_bits >= static_cast<std::size_t>(std::bit_width(limits.max_assignments)))
      throw EnumerationCapExceeded("exhaustive dependency scan of event '" +
                                   instance.events[k].id() + "' exceeds the family cap");

    // Valid families are closed under subsets, so the first hit when scanning
    // by decreasing size is a largest one.
    const std::size_t masks = std::size_t{1} << candidates.size();
    std::vector<std::size_t> order(masks);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [](std::size_t a, std::size_t b) {
      return std::popcount(a) > std::popcount(b);
    });
    const EventTerm self = EventTerm::of(instance.events[k]);
    for (auto mask : order) {
      std::vector<std::uint32_t> family = base;
      for (std::size_t i = 0; i < candidates.size(); ++i)
        if (mask & (std::size_t{1} << i)) family.push_back(candidates[i]);
      const auto terms = terms_for(instance, family);
      if (independent_from_family(instance.space, self, terms, limits)) {
        std::vector<std::uint32_t> dep{k};
        for (std::size_t i = 0; i < candidates.size(); ++i)
          if (!(mask & (std::size_t{1} << i))) dep.push_back(candidates[i]);
        std::sort(dep.begin(), dep.end());
        report.dependent[k] = std::move(dep);
        report.degree[k] = report.dependent[k].size();
        break;
      }
    }
  }
  return report;
}

LLLCertificate check_symmetric(const ProductInstance& instance, const SymmetricOptions& options) {
  LLLCertificate cert;
  cert.mode = options.variant;
  cert.event_count = instance.event_count();
  const std::uint64_t n = cert.event_count;

  std::vector<std::pair<std::string, Rational>> measures;
  std::uint64_t d = 1;

  if (options.use_declared || !instance.materialized) {
    if (!instance.declared_d && !options.d) {
      cert.rejection = "no declared dependency bound";
      return cert;
    }
    d = options.d.value_or(*instance.declared_d);
    if (instance.declared_d && d < *instance.declared_d) {
      cert.d = d;
      cert.rejection = "d = " + std::to_string(d) + " is below the declared bound " +
                       std::to_string(*instance.declared_d);
      return cert;
    }
    if (instance.materialized) {
      for (const auto& e : instance.events) {
        if (e.analytic_measure())
          measures.emplace_back(e.id(), *e.analytic_measure());
        else if (instance.declared_measure)
          measures.emplace_back(e.id(), *instance.declared_measure);
        else
          measures.emplace_back(e.id(), measure(instance.space, e));
      }
    } else {
      if (!instance.declared_measure) {
        cert.rejection = "no declared measure bound";
        return cert;
      }
      measures.emplace_back("*", *instance.declared_measure);
    }
  } else {
    const auto report = dependency_degrees(instance, options.dependency, options.limits);
    const auto observed = report.max_degree();
    if (options.d) {
      d = *options.d;
      for (std::size_t k = 0; k < report.degree.size(); ++k)
        if (report.degree[k] > d) {
          cert.d = d;
          cert.rejection = "d = " + std::to_string(d) + " is below d_k = " +
                           std::to_string(report.degree[k]) + " of event '" +
                           instance.events[k].id() + "'";
          return cert;
        }
    } else if (options.prefer_declared_d && instance.declared_d) {
      d = *instance.declared_d;
      if (d < observed) {
        cert.d = d;
        cert.rejection = "declared bound " + std::to_string(d) + " is below observed d_k = " +
                         std::to_string(observed);
        return cert;
      }
    } else {
      d = std::max<std::uint64_t>(observed, 1);
    }
    for (const auto& e : instance.events) measures.emplace_back(e.id(), measure(instance.space, e));
  }

  if (d == 0) d = 1;
  cert.d = d;
  if (options.variant == CertificateMode::SymmetricE && d <= 2) {
    cert.rejection = "the e variant needs d > 2";
    return cert;
  }
  if (options.variant == CertificateMode::General)
    throw std::invalid_argument("check_symmetric called with the general mode");

  const Rational dd(d);
  Rational threshold, threshold_lo;
  if (options.variant == CertificateMode::Symmetric4d) {
    threshold = threshold_lo = 1 / (4 * dd);
  } else {
    threshold = 1 / (options.e.hi * (dd + 1));
    threshold_lo = 1 / (options.e.lo * (dd + 1));
  }

  bool all_pass = true;
  for (auto& [id, m] : measures) {
    const bool pass_hi = m <= threshold;
    const bool pass_lo = m <= threshold_lo;
    const bool pass = pass_hi && pass_lo;
    if (pass_hi != pass_lo) cert.margin_too_thin = true;
    all_pass = all_pass && pass;
    cert.verdicts.push_back({id, m, threshold, pass});
  }
  cert.applicable = all_pass && !cert.margin_too_thin;
  if (cert.applicable) fill_guarantee(cert, d, n);
  return cert;
}

LLLCertificate check_general(const ProductInstance& instance,
                             const std::vector<std::vector<std::uint32_t>>& J,
                             const std::vector<Rational>& gammas, const GeneralOptions& options) {
  if (!instance.materialized)
    throw std::invalid_argument("general certificate needs materialized events");
  const auto n = instance.events.size();
  if (J.size() != n || gammas.size() != n)
    throw std::invalid_argument("need one J set and one gamma per event");
  for (const auto& g : gammas)
    if (g <= 0 || g >= 1) throw std::invalid_argument("gamma " + fraction_string(g) + " not in (0,1)");

  LLLCertificate cert;
  cert.mode = CertificateMode::General;
  cert.event_count = n;
  cert.gammas = gammas;
  cert.J = J;

  const auto zero = zero_measure_flags(instance);
  for (std::uint32_t k = 0; k < n; ++k) {
    std::vector<std::uint32_t> family;
    bool structural = true;
    for (auto j : J[k]) {
      if (j >= n) throw std::invalid_argument("J index out of range");
      if (j == k && !zero[k]) {
        cert.rejection = "event '" + instance.events[k].id() + "' cannot be independent of itself";
        return cert;
      }
      family.push_back(j);
      if (!zero[k] && !zero[j] && supports_intersect(instance.events[k], instance.events[j]))
        structural = false;
    }
    if (structural) continue;
    const EventTerm self = EventTerm::of(instance.events[k]);
    try {
      const auto terms = terms_for(instance, family);
      if (independent_from_family(instance.space, self, terms, options.limits)) continue;
      // Name the first member whose addition breaks independence.
      for (std::size_t m = 1; m <= family.size(); ++m) {
        const std::vector<EventTerm> prefix(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(m));
        if (!independent_from_family(instance.space, self, prefix, options.limits)) {
          cert.rejection = "event '" + instance.events[k].id() +
                           "' is not certified independent of event '" +
                           instance.events[family[m - 1]].id() + "'";
          return cert;
        }
      }
    } catch (const EnumerationCapExceeded& ex) {
      cert.rejection = "could not certify J set of event '" + instance.events[k].id() +
                       "': " + ex.what();
      return cert;
    }
  }

  Rational product_all = 1;
  for (const auto& g : gammas) product_all *= g;

  bool all_pass = true;
  std::vector<bool> in_J(n);
  for (std::uint32_t k = 0; k < n; ++k) {
    std::fill(in_J.begin(), in_J.end(), false);
    for (auto j : J[k]) in_J[j] = true;
    Rational threshold = 1 - gammas[k];
    for (std::uint32_t j = 0; j < n; ++j) {
      if (in_J[j]) continue;
      if (j == k && !options.include_self_in_product) continue;
      threshold *= gammas[j];
    }
    const Rational m = measure(instance.space, instance.events[k]);
    const bool pass = m <= threshold;
    all_pass = all_pass && pass;
    cert.verdicts.push_back({instance.events[k].id(), m, threshold, pass});
  }
  cert.applicable = all_pass;
  if (cert.applicable) {
    cert.guaranteed_fraction = product_all;
    cert.guaranteed_expression = "prod gamma_k";
  }
  return cert;
}

std::string format_certificate(const LLLCertificate& cert) {
  std::ostringstream out;
  out << "certificate\n";
  out << "mode " << to_string(cert.mode) << "\n";
  if (cert.d) out << "d " << *cert.d << "\n";
  if (!cert.gammas.empty()) {
    out << "gammas";
    for (const auto& g : cert.gammas) out << ' ' << fraction_string(g);
    out << "\n";
    for (std::size_t k = 0; k < cert.J.size(); ++k) {
      out << "J " << k;
      for (auto j : cert.J[k]) out << ' ' << j;
      out << "\n";
    }
  }
  out << "events " << cert.event_count << "\n";
  if (!cert.rejection.empty()) out << "rejected " << cert.rejection << "\n";
  for (const auto& v : cert.verdicts)
    out << "event " << v.id << " measure " << fraction_string(v.measure) << " threshold "
        << fraction_string(v.threshold) << (v.pass ? " pass" : " fail") << "\n";
  if (cert.margin_too_thin) out << "margin too thin\n";
  out << "applicable " << (cert.applicable ? "yes" : "no") << "\n";
  if (cert.guaranteed_fraction)
    out << "guaranteed_fraction " << fraction_string(*cert.guaranteed_fraction) << " (~"
        << approx_string(*cert.guaranteed_fraction, 6) << ")\n";
  else if (!cert.guaranteed_expression.empty())
    out << "guaranteed_fraction " << cert.guaranteed_expression << "\n";
  return out.str();
}

bool InductionReport::all_hold() const {
  if (!performed) return false;
  if (scalar_fact_needed && !scalar_fact_holds) return false;
  return std::all_of(rows.begin(), rows.end(), [](const InductionRow& r) { return r.holds; });
}

InductionReport induction_certificate(const ProductInstance& instance, std::uint64_t d,
                                      const EnumerationLimits& limits) {
  InductionReport report;
  report.d = d;
  if (d == 0) {
    report.refusal = "d must be positive";
    return report;
  }
  if (!instance.materialized) {
    report.refusal = "events are not materialized";
    return report;
  }
  SymmetricOptions options;
  options.d = d;
  options.limits = limits;
  auto cert = check_symmetric(instance, options);
  // Exhaustive dependencies can only lower d_k, which helps only when every
  // measure already meets 1/(4d).
  bool measures_fit = true;
  for (const auto& e : instance.events) measures_fit = measures_fit && measure(instance.space, e) * 4 * d <= 1;
  if (!cert.applicable && measures_fit) {
    options.dependency = DependencyMode::Exhaustive;
    try {
      cert = check_symmetric(instance, options);
    } catch (const EnumerationCapExceeded&) {
    }
  }
  if (!cert.applicable) {
    report.refusal = cert.rejection.empty()
                         ? "symmetric certificate at d = " + std::to_string(d) + " is not applicable"
                         : cert.rejection;
    return report;
  }

  const auto n = instance.events.size();
  std::vector<EventTerm> terms;
  for (const auto& e : instance.events) terms.push_back(EventTerm::of(e));

  // Histogram of the first bad event that occurs at each point of the union
  // of supports; prefix intersections of good sets follow from it.
  std::vector<std::uint32_t> vars;
  for (const auto& e : instance.events) vars.insert(vars.end(), e.support().begin(), e.support().end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  std::vector<std::uint32_t> radices;
  for (auto v : vars) radices.push_back(instance.space.domain(v));
  const std::uint64_t total = checked_product(radices, limits.max_assignments, "induction certificate");

  std::vector<std::vector<std::size_t>> positions(n);
  for (std::size_t i = 0; i < n; ++i)
    for (auto v : instance.events[i].support())
      positions[i].push_back(static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin()));

  std::vector<std::uint64_t> first_bad(n + 1, 0);
  std::vector<std::uint32_t> local;
  Odometer odo(radices);
  do {
    std::size_t first = n;
    for (std::size_t i = 0; i < n && first == n; ++i) {
      local.resize(positions[i].size());
      for (std::size_t j = 0; j < local.size(); ++j) local[j] = odo.values()[positions[i][j]];
      if (instance.events[i].holds_on(local)) first = i;
    }
    ++first_bad[first];
  } while (odo.next());

  report.prefix.resize(n + 1);
  std::uint64_t good = total;
  for (std::size_t m = 0; m <= n; ++m) {
    report.prefix[m] = make_rational(good, total);
    if (m < n) good -= first_bad[m];
  }

  const Rational q = 1 - make_rational(1, d);
  for (std::size_t s = 0; s <= n; ++s)
    for (std::size_t t = 0; t <= s; ++t) {
      const std::size_t k = s - t;
      InductionRow row{k, t, report.prefix[k + t], report.prefix[k] * rational_pow(q, t), false};
      row.holds = row.lhs >= row.rhs;
      if (!row.holds && !report.first_violation) report.first_violation = {k, t};
      report.rows.push_back(std::move(row));
    }

  report.scalar_fact_needed = d > 1;
  report.scalar_lhs = rational_pow(q, d);
  report.scalar_fact_holds = report.scalar_lhs >= make_rational(1, 4);
  report.performed = true;
  return report;
}

std::string format_induction(const InductionReport& report) {
  std::ostringstream out;
  out << "induction d " << report.d << "\n";
  if (!report.performed) {
    out << "refused " << report.refusal << "\n";
    return out.str();
  }
  for (std::size_t m = 0; m < report.prefix.size(); ++m)
    out << "prefix " << m << " " << fraction_string(report.prefix[m]) << "\n";
  for (const auto& r : report.rows)
    out << "I k " << r.k << " t " << r.t << " lhs " << fraction_string(r.lhs) << " rhs "
        << fraction_string(r.rhs) << (r.holds ? " holds" : " VIOLATED") << "\n";
  out << "scalar (1-1/d)^d " << fraction_string(report.scalar_lhs)
      << (report.scalar_fact_needed ? (report.scalar_fact_holds ? " >= 1/4" : " < 1/4") : " (d = 1, unused)")
      << "\n";
  if (report.first_violation)
    out << "first violation k " << report.first_violation->first << " t "
        << report.first_violation->second << "\n";
  out << "result " << (report.all_hold() ? "all pairs hold" : "violated") << "\n";
  return out.str();
}

bool ramsey_condition(std::uint64_t n, std::uint64_t k, const Rational& e) {
  if (n < 3 || k < n) throw std::invalid_argument("ramsey condition needs n >= 3 and k >= n");
  const std::uint64_t c = static_cast<std::uint64_t>(binomial(n, 2));
  const BigInt lhs = BigInt(c) * binomial(k, n - 2) + 1;
  return Rational(lhs) * e < Rational(big_pow(2, c - 1));
}

bool ramsey_condition(std::uint64_t n, std::uint64_t k) { return ramsey_condition(n, k, EConstant{}.hi); }

}  // namespace lll
