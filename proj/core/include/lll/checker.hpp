#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lll/instance.hpp"
#include "lll/rational.hpp"
#include "lll/space.hpp"

namespace lll {

enum class DependencyMode { Structural, Exhaustive };

/// For each event k: the events *not* certified independent of it
/// (`dependent[k]`, ascending, always containing k) and d_k = |dependent[k]|.
/// The certified family of k is every other event.
struct DependencyReport {
  std::vector<std::vector<std::uint32_t>> dependent;
  std::vector<std::uint64_t> degree;

  std::uint64_t max_degree() const;
  std::vector<std::uint32_t> certified_family(std::size_t k) const;
};

/// Structural mode certifies events with disjoint supports; zero-measure
/// events are independent of everything and never counted. Exhaustive mode
/// starts from the structural family and adds the largest set of remaining
/// events for which independence-from-family holds by exact counting.
DependencyReport dependency_degrees(const ProductInstance& instance, DependencyMode mode,
                                    const EnumerationLimits& limits = {});

enum class CertificateMode { Symmetric4d, SymmetricE, General };

std::string to_string(CertificateMode mode);

struct EventVerdict {
  std::string id;
  Rational measure;
  Rational threshold;
  bool pass = false;
};

struct LLLCertificate {
  CertificateMode mode = CertificateMode::Symmetric4d;
  std::optional<std::uint64_t> d;
  std::vector<Rational> gammas;
  std::vector<std::vector<std::uint32_t>> J;
  std::vector<EventVerdict> verdicts;
  std::uint64_t event_count = 0;
  bool applicable = false;
  /// Set when the instance is small enough to compute the bound exactly.
  std::optional<Rational> guaranteed_fraction;
  std::string guaranteed_expression;
  /// Why the certificate was refused before verdicts were evaluated.
  std::string rejection;
  /// The two ends of the e enclosure decided some comparison differently.
  bool margin_too_thin = false;
};

struct SymmetricOptions {
  /// Defaults to max d_k (or the declared bound when `use_declared`).
  std::optional<std::uint64_t> d;
  CertificateMode variant = CertificateMode::Symmetric4d;
  DependencyMode dependency = DependencyMode::Structural;
  /// Take d and measures from the family's closed forms instead of scanning
  /// events. Required for certificate-only instances.
  bool use_declared = false;
  /// When d is not given, prefer the family's declared bound over the scan.
  bool prefer_declared_d = true;
  EConstant e;
  EnumerationLimits limits;
};

/// Symmetric local lemma: every bad measure <= 1/(4d), or <= 1/(e(d+1))
/// with d > 2 for the e variant (evaluated with the upper end of the e
/// enclosure). Comparisons are inclusive. Guarantee: (1-1/d)^n.
LLLCertificate check_symmetric(const ProductInstance& instance, const SymmetricOptions& options = {});

struct GeneralOptions {
  /// Stricter reading that keeps gamma_k inside the product.
  bool include_self_in_product = false;
  EnumerationLimits limits;
};

/// General local lemma: event k must be independent of {A_j : j in J[k]} and
/// measure(k) <= (1 - gamma_k) * prod_{j not in J[k], j != k} gamma_j.
/// Guarantee: prod gamma_k. Throws std::invalid_argument when a gamma is
/// outside (0,1) or the vectors do not match the event count.
LLLCertificate check_general(const ProductInstance& instance,
                             const std::vector<std::vector<std::uint32_t>>& J,
                             const std::vector<Rational>& gammas,
                             const GeneralOptions& options = {});

/// Flat text rendering: mode, d or gammas, one line per event, guarantee.
std::string format_certificate(const LLLCertificate& cert);

/// |A_1 ∩ .. ∩ A_{k+t}| >= |A_1 ∩ .. ∩ A_k| (1 - 1/d)^t, where A_i are the
/// good sets (complements of the bad events, declaration order).
struct InductionRow {
  std::size_t k = 0;
  std::size_t t = 0;
  Rational lhs;
  Rational rhs;
  bool holds = false;
};

struct InductionReport {
  bool performed = false;
  std::string refusal;
  std::uint64_t d = 0;
  /// prefix[m] = |A_1 ∩ .. ∩ A_m| / |M|, m = 0..n.
  std::vector<Rational> prefix;
  std::vector<InductionRow> rows;
  std::optional<std::pair<std::size_t, std::size_t>> first_violation;
  /// (1 - 1/d)^d >= 1/4; only used by the argument when d > 1.
  bool scalar_fact_needed = false;
  bool scalar_fact_holds = false;
  Rational scalar_lhs;

  bool all_hold() const;
};

/// Refuses (performed == false) unless the symmetric certificate at d is
/// applicable. Throws EnumerationCapExceeded when counting is too large.
InductionReport induction_certificate(const ProductInstance& instance, std::uint64_t d,
                                      const EnumerationLimits& limits = {});

std::string format_induction(const InductionReport& report);

/// C(n,2) C(k,n-2) + 1 < 2^(C(n,2)-1) / e, evaluated exactly for the given
/// value of e. Requires n >= 3 and k >= n.
bool ramsey_condition(std::uint64_t n, std::uint64_t k, const Rational& e);
/// Conservative form: divides by the upper end of the e enclosure.
bool ramsey_condition(std::uint64_t n, std::uint64_t k);

}  // namespace lll
