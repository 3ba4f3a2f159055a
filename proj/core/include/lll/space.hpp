#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lll/rational.hpp"

namespace lll {

/// Raised when a brute-force count would exceed the configured limits.
class EnumerationCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Brute-force budgets. Defaults can be overridden through the environment
/// variables LLL_MAX_ASSIGNMENTS and LLL_MAX_FAMILY.
struct EnumerationLimits {
  std::uint64_t max_assignments = std::uint64_t{1} << 24;
  std::size_t max_family = 20;

  static EnumerationLimits from_environment();
};

/// A point of a product space: one value per variable.
using Assignment = std::vector<std::uint32_t>;

/// Finite product of per-variable domains {0..r_i-1}.
class VariableSpace {
 public:
  VariableSpace() = default;
  explicit VariableSpace(std::vector<std::uint32_t> domains);

  /// n copies of the same domain.
  static VariableSpace uniform(std::size_t variables, std::uint32_t domain);

  std::size_t variable_count() const { return domains_.size(); }
  std::uint32_t domain(std::size_t var) const { return domains_.at(var); }
  std::span<const std::uint32_t> domains() const { return domains_; }

  /// Exact product of all domain sizes.
  BigInt size() const;

  bool contains(const Assignment& a) const;
  /// Throws std::invalid_argument with the first offending position.
  void check(const Assignment& a) const;

  friend bool operator==(const VariableSpace&, const VariableSpace&) = default;

 private:
  std::vector<std::uint32_t> domains_;
};

BigInt space_size(const VariableSpace& space);

/// Bijections of {0..n-1}.
class PermutationSpace {
 public:
  explicit PermutationSpace(std::uint32_t n);

  std::uint32_t n() const { return n_; }
  BigInt size() const;
  bool contains(const Assignment& perm) const;

 private:
  std::uint32_t n_;
};

/// Mixed-radix odometer over the product of `radices`; the last position
/// varies fastest so that iteration order is lexicographic.
class Odometer {
 public:
  explicit Odometer(std::vector<std::uint32_t> radices);

  const std::vector<std::uint32_t>& values() const { return values_; }
  /// Advances; returns false after the final tuple.
  bool next();

 private:
  std::vector<std::uint32_t> radices_;
  std::vector<std::uint32_t> values_;
};

/// Product of the radices as uint64, or throws EnumerationCapExceeded if it
/// exceeds `cap`.
std::uint64_t checked_product(std::span<const std::uint32_t> radices, std::uint64_t cap,
                              const std::string& what);

}  // namespace lll
