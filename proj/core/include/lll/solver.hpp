#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lll/instance.hpp"
#include "lll/rng.hpp"

namespace lll {

enum class SolveOutcome { Solved, BudgetExhausted };

struct TraceStep {
  std::uint64_t step = 0;
  /// Index of the resampled event (product spaces) or of the swapped row
  /// (permutation spaces).
  std::uint32_t event = 0;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct SolveResult {
  SolveOutcome outcome = SolveOutcome::BudgetExhausted;
  /// Final point; meaningful (violation-free) only when solved.
  Assignment assignment;
  std::uint64_t resample_count = 0;
  std::vector<TraceStep> trace;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;

  bool solved() const { return outcome == SolveOutcome::Solved; }
  friend bool operator==(const SolveResult&, const SolveResult&) = default;
};

struct SolveOptions {
  std::uint64_t seed = 0;
  /// Maximum number of resampling steps; see default_budget().
  std::optional<std::uint64_t> budget;
  /// Dependency bound used for the default budget.
  std::optional<std::uint64_t> d;
  bool record_trace = true;
};

/// 64·n·(d+1) when d is known, 64·n·n otherwise (at least 64).
std::uint64_t default_budget(std::uint64_t events, std::optional<std::uint64_t> d);

/// Resampling: draw a uniform point; while some bad event holds, take the
/// violated event with the smallest index and redraw its support variables
/// uniformly. Stops when nothing is violated or the budget is spent.
SolveResult solve_resample(const ProductInstance& instance, const SolveOptions& options = {});

/// Indices of the events that hold at `a`, in declaration order. Throws
/// std::invalid_argument when `a` is not a point of the space.
std::vector<std::size_t> verify_assignment(const ProductInstance& instance, const Assignment& a);

/// Swap resampling on permutations of the rows of a latin board: while two
/// selected cells share a color, swap the column of the first conflicting
/// row with that of a uniformly chosen other row.
SolveResult solve_permutation(const LatinInstance& instance, const SolveOptions& options = {});

/// Pairs of rows (r1 < r2) whose selected cells share a color.
std::vector<std::pair<std::uint32_t, std::uint32_t>> latin_conflicts(const LatinInstance& instance,
                                                                    const Assignment& perm);

/// "step <i> resample <event-id>" lines.
std::string format_trace(const ProductInstance& instance, const SolveResult& result);

struct LeaderSelection {
  bool success = false;
  /// Circle position of each group's leader (valid when success).
  std::vector<std::uint32_t> leaders;
  std::optional<std::uint32_t> stuck_group;
};

/// Greedy choice of one leader per group, no two adjacent: groups are
/// handled in index order and each takes its first student (circle order)
/// not next to an already chosen leader.
LeaderSelection greedy_leaders(const CircleLayout& layout);

/// True iff leaders has one position per group, in that group, and no two
/// are adjacent on the circle.
bool leaders_valid(const CircleLayout& layout, std::span<const std::uint32_t> leaders);

/// Walks from vertex 0, always to the first out-neighbor labelled
/// label + 1 (mod k), and returns the closed cycle (as a vertex sequence,
/// without repeating the first vertex). Its length is a multiple of k.
/// Throws std::invalid_argument when some visited vertex has no such
/// out-neighbor.
std::vector<std::uint32_t> extract_cycle(const Digraph& graph, std::span<const std::uint32_t> labels,
                                         std::uint32_t k);

}  // namespace lll
