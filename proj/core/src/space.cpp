#include "lll/space.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace lll {

namespace {

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || v == 0) return fallback;
  return v;
}

}  // namespace

EnumerationLimits EnumerationLimits::from_environment() {
  EnumerationLimits limits;
  limits.max_assignments = env_u64("LLL_MAX_ASSIGNMENTS", limits.max_assignments);
  limits.max_family =
      static_cast<std::size_t>(env_u64("LLL_MAX_FAMILY", limits.max_family));
  return limits;
}

VariableSpace::VariableSpace(std::vector<std::uint32_t> domains) : domains_(std::move(domains)) {
  for (std::size_t i = 0; i < domains_.size(); ++i)
    if (domains_[i] == 0)
      throw std::invalid_argument("variable " + std::to_string(i) + " has an empty domain");
}

VariableSpace VariableSpace::uniform(std::size_t variables, std::uint32_t domain) {
  return VariableSpace(std::vector<std::uint32_t>(variables, domain));
}

BigInt VariableSpace::size() const {
  BigInt total = 1;
  for (auto d : domains_) total *= d;
  return total;
}

bool VariableSpace::contains(const Assignment& a) const {
  if (a.size() != domains_.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] >= domains_[i]) return false;
  return true;
}

void VariableSpace::check(const Assignment& a) const {
  if (a.size() != domains_.size())
    throw std::invalid_argument("assignment has " + std::to_string(a.size()) +
                                " values, space has " + std::to_string(domains_.size()) +
                                " variables");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] >= domains_[i])
      throw std::invalid_argument("value " + std::to_string(a[i]) + " of variable " +
                                  std::to_string(i) + " outside domain of size " +
                                  std::to_string(domains_[i]));
}

BigInt space_size(const VariableSpace& space) { return space.size(); }

PermutationSpace::PermutationSpace(std::uint32_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("permutation space needs n >= 1");
}

BigInt PermutationSpace::size() const {
  BigInt f = 1;
  for (std::uint32_t i = 2; i <= n_; ++i) f *= i;
  return f;
}

bool PermutationSpace::contains(const Assignment& perm) const {
  if (perm.size() != n_) return false;
  std::vector<bool> seen(n_, false);
  for (auto v : perm) {
    if (v >= n_ || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Odometer::Odometer(std::vector<std::uint32_t> radices)
    : radices_(std::move(radices)), values_(radices_.size(), 0) {}

bool Odometer::next() {
  for (std::size_t i = radices_.size(); i-- > 0;) {
    if (++values_[i] < radices_[i]) return true;
    values_[i] = 0;
  }
  return false;
}

std::uint64_t checked_product(std::span<const std::uint32_t> radices, std::uint64_t cap,
                              const std::string& what) {
  std::uint64_t total = 1;
  for (auto r : radices) {
    if (r != 0 && total > cap / r)
      throw EnumerationCapExceeded(what + " needs more than " + std::to_string(cap) +
                                   " assignments");
    total *= r;
  }
  if (total > cap)
    throw EnumerationCapExceeded(what + " needs " + std::to_string(total) +
                                 " assignments, cap is " + std::to_string(cap));
  return total;
}

}  // namespace lll
