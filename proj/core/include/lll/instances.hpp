#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lll/instance.hpp"
#include "lll/rational.hpp"

namespace lll {

/// A randomized construction gave up after its attempt budget.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Attempts before a generator reports impossible parameters.
inline constexpr int kGenerationAttempts = 1000;

// -- firm: weekend rota --------------------------------------------------
// Each worker takes Saturday (0) or Sunday (1) off. A job is bad when all
// its specialists are off on the same day.

struct FirmParams {
  std::uint32_t jobs = 100;
  std::uint32_t specialists = 8;
  /// Each job shares specialists with at most this many other jobs.
  std::uint32_t overlap_cap = 30;
  /// Worker pool size; 0 means 4 * jobs.
  std::uint32_t workers = 0;
};

/// Smallest power of two strictly above the overlap cap.
std::uint64_t firm_declared_d(std::uint32_t overlap_cap);

ProductInstance gen_firm(const FirmParams& params, std::uint64_t seed);

// -- circle: one leader per group, no two adjacent -------------------------

CircleLayout random_circle(std::uint32_t groups, std::uint32_t group_size, std::uint64_t seed);
/// One variable per group (which member leads); one event per student x:
/// x and its clockwise neighbor both lead. Groupmate pairs give empty events.
ProductInstance circle_instance(const CircleLayout& layout);
ProductInstance gen_circle(std::uint32_t groups, std::uint32_t group_size, std::uint64_t seed);

// -- van der Waerden -------------------------------------------------------

struct VdwArithmetic {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  /// Number of k-term progressions inside {1..n}.
  BigInt progressions;
  /// k^2 * floor(n/(k-1)): bound on the progressions meeting a given one.
  BigInt dependency_bound;
  /// k^2 * ceil(n/(k-1)), the rounded-up variant.
  BigInt dependency_bound_ceil;
  /// n * k, the coarse bound.
  BigInt coarse_bound;
  /// 2^(k-3): the largest d the 1/(4d) gate allows at measure 2^(1-k).
  BigInt gate_limit;
  bool gate_passes = false;
};

/// Exact gate arithmetic; materializes nothing. Requires k >= 3.
VdwArithmetic vdw_arithmetic(std::uint64_t n, std::uint64_t k);

/// floor(2^(k-3) (k-1) / k^2): length the gate certifies for k.
std::uint64_t vdw_certified_length(std::uint64_t k);

/// Number of k-term progressions in {1..n} meeting the progression
/// {a, a+step, ...} (itself included), by direct scan.
std::uint64_t vdw_overlap_scan(std::uint64_t n, std::uint64_t k, std::uint64_t a, std::uint64_t step);

/// Instances above 10^5 variables (or 2*10^6 progressions) are
/// certificate-only: no events and no space, closed-form bounds only (n is
/// kept in the params).
ProductInstance gen_vdw(std::uint64_t n, std::uint64_t k);

// -- rainbow colorings -----------------------------------------------------

/// 4 r m (m-1) (1 - 1/r)^m < 1, exact.
bool rainbow_gate(std::uint64_t m, std::uint64_t r);

struct RainbowChain {
  bool power_above_2_13 = false;  // (3/2)^26 > 2^13
  bool two_13_above_8000 = false;
  bool above_7800 = false;
  bool factorization = false;  // 7800 = 3 * 4 * 650, 650 = 25 * 26
  bool all() const { return power_above_2_13 && two_13_above_8000 && above_7800 && factorization; }
};

RainbowChain rainbow_chain();

/// Colorings of X ∪ (X + M_1) ∪ ... with r colors; one MissingColor event
/// per x in X over {x, x + M_1, ...}. Throws std::invalid_argument if r < 2.
ProductInstance gen_rainbow(const std::vector<Rational>& points, const std::vector<Rational>& offsets,
                            std::uint32_t colors);

/// `count` distinct rationals p/q with |p| <= span*q, q <= max_den.
std::vector<Rational> random_rationals(std::size_t count, std::uint64_t max_den, std::int64_t span,
                                       std::uint64_t seed);

// -- uniform regular hypergraphs -------------------------------------------

/// k-partite k-uniform k-regular set system on k * class_size points: the
/// sets are indexed by (i, j), i < k, j < class_size, and pick one point
/// per class through independent random permutations.
ProductInstance gen_hypergraph(std::uint32_t k, std::uint32_t class_size, std::uint64_t seed);

// -- set systems -----------------------------------------------------------

/// For each set S, a_i counts the chosen i-element sets meeting S (S itself
/// included). Passes iff every set has >= 3 elements and
/// sum_i a_i 2^-i <= 1/8 for every set.
InstanceGate gen_setsystem_gate(const std::vector<std::vector<std::uint32_t>>& sets);
ProductInstance gen_setsystem(const std::vector<std::vector<std::uint32_t>>& sets, std::uint32_t ground);

// -- graphs ----------------------------------------------------------------

struct Graph {
  std::uint32_t vertices = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  std::uint32_t max_degree() const;
  std::vector<std::vector<std::uint32_t>> adjacency() const;
};

Graph cycle_graph(std::uint32_t length);

/// One vertex per class; an edge is bad when both ends are chosen.
/// Gate: every class has >= ceil(2 e Δ) + 1 vertices (e rounded up).
ProductInstance gen_transversal(const Graph& graph, const std::vector<std::vector<std::uint32_t>>& classes);
/// Cycle of length 11 n split at random into n classes of 11.
ProductInstance gen_cycle_transversal(std::uint32_t classes, std::uint64_t seed);

/// Choose a color from each vertex list; bad when an edge's ends share it.
/// Gate: d > 1, lists of >= 10 d colors, and for every vertex v and color c
/// on its list at most d neighbors of v list c.
ProductInstance gen_listcoloring(const Graph& graph, const std::vector<std::vector<std::uint32_t>>& lists,
                                 std::uint32_t d);

// -- Ramsey ----------------------------------------------------------------

/// Edge 2-colorings of K_k; one Monochromatic event per n-clique.
ProductInstance gen_ramsey(std::uint32_t k, std::uint32_t n);

// -- digraph labels --------------------------------------------------------

/// k^delta >= 4 delta Delta (k-1)^delta, exact.
bool digraph_gate(std::uint64_t min_out, std::uint64_t max_in, std::uint64_t k);

/// Union of `degree` random fixed-point-free permutations without repeated
/// arcs: every vertex has in- and out-degree `degree`.
Digraph random_regular_digraph(std::uint32_t vertices, std::uint32_t degree, std::uint64_t seed);

/// A label in Z_k per vertex; vertex v is bad when no out-neighbor carries
/// label(v) + 1 mod k.
ProductInstance gen_digraph_labels(const Digraph& graph, std::uint32_t k);

// -- latin transversals ----------------------------------------------------

/// Cells shuffled and colored in runs of `cap`, so no color exceeds cap.
LatinInstance gen_latin(std::uint32_t n, std::uint32_t cap, std::uint64_t seed);
LatinInstance latin_from_matrix(std::uint32_t n, std::vector<std::uint32_t> colors);
/// Every color on at most floor((n-1)/16) cells.
InstanceGate latin_gate(const LatinInstance& instance);

}  // namespace lll
