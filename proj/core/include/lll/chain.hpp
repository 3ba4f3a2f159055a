#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lll/rational.hpp"

namespace lll {

/// A subset of {0..universe-1} as a membership mask.
using Subset = std::vector<bool>;

enum class ChainStatus {
  HypothesesNotMet,
  NonEmpty,
  /// Hypotheses hold but the intersection is empty. For n <= 4 this would
  /// contradict a theorem; for larger n it refutes the open claim.
  Empty,
};

std::string to_string(ChainStatus status);

/// Chain condition for A_1..A_n: every |A_k|/|M| > 1 - 1/(n-1) and each
/// consecutive pair A_k, A_{k+1} independent.
struct ChainReport {
  std::size_t universe = 0;
  std::size_t sets = 0;
  Rational threshold;
  std::vector<Rational> fractions;
  /// Index k (0-based) of the first set at or below the threshold.
  std::optional<std::size_t> low_fraction;
  /// Index k of the first pair (k, k+1) that is dependent.
  std::optional<std::size_t> dependent_pair;
  std::size_t intersection_size = 0;
  /// True for n <= 4, where the conclusion is a theorem.
  bool proven_range = false;
  ChainStatus status = ChainStatus::HypothesesNotMet;

  bool hypotheses_hold() const { return !low_fraction && !dependent_pair; }
};

/// Throws std::invalid_argument if fewer than 2 sets are given or the masks
/// differ in length.
ChainReport chain_verify(const std::vector<Subset>& sets);
std::string format_chain(const ChainReport& report);

struct ChainSearchReport {
  std::size_t n = 0;
  std::size_t max_universe = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  /// Families built that satisfy the hypotheses.
  std::size_t families = 0;
  /// Smallest intersection fraction seen across those families.
  std::optional<Rational> min_fraction;
  std::optional<std::vector<Subset>> counterexample;
};

/// Randomized search for families meeting the chain hypotheses with empty
/// intersection. Each set is built from the previous one so that the pair is
/// exactly independent, steering the overlap away from the running
/// intersection. Finding nothing proves nothing.
ChainSearchReport chain_search(std::size_t n, std::size_t max_universe, std::size_t trials, std::uint64_t seed);
std::string format_chain_search(const ChainSearchReport& report);

}  // namespace lll
