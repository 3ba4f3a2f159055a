#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lll/event.hpp"
#include "lll/rational.hpp"
#include "lll/space.hpp"

namespace lll {

/// Outcome of a family's sufficient condition, with the comparison spelled out.
struct InstanceGate {
  std::string family;
  std::vector<std::pair<std::string, std::string>> inputs;
  bool passes = false;
  std::string comparison;
};

struct Digraph {
  std::uint32_t vertices = 0;
  std::vector<std::vector<std::uint32_t>> out;

  explicit Digraph(std::uint32_t n = 0) : vertices(n), out(n) {}
  void add_arc(std::uint32_t from, std::uint32_t to);
  bool has_arc(std::uint32_t from, std::uint32_t to) const;
  std::size_t arc_count() const;
  std::uint32_t min_out_degree() const;
  std::uint32_t max_in_degree() const;
};

/// Students around a circle: group_of[p] is the group of the student at
/// position p; position p is adjacent to p-1 and p+1 (mod size).
struct CircleLayout {
  std::uint32_t groups = 0;
  std::vector<std::uint32_t> group_of;

  std::uint32_t size() const { return static_cast<std::uint32_t>(group_of.size()); }
  /// Index of the student at `position` among its groupmates, in circle order.
  std::vector<std::uint32_t> member_indices() const;
  std::vector<std::uint32_t> group_sizes() const;
};

/// Bad events over a product space plus family metadata.
struct ProductInstance {
  std::string family;
  std::vector<std::pair<std::string, std::string>> params;
  VariableSpace space;
  std::vector<BadEvent> events;

  /// Closed-form bound on every d_k (the event itself included).
  std::optional<std::uint64_t> declared_d;
  /// Closed-form bound on every bad-event measure.
  std::optional<Rational> declared_measure;
  /// Event count for instances whose events are not materialized.
  std::optional<std::uint64_t> declared_event_count;
  bool materialized = true;

  std::optional<InstanceGate> gate;
  std::vector<std::string> flags;

  std::optional<Digraph> digraph;
  std::optional<std::uint32_t> label_modulus;
  std::optional<CircleLayout> circle;

  std::optional<Assignment> assignment;

  std::uint64_t event_count() const;
  bool has_flag(const std::string& flag) const;
  std::optional<std::string> param(const std::string& key) const;
  /// Checks every event against the space and that ids are unique.
  void validate() const;
};

/// n x n board, colors stored row-major; a solution is a permutation
/// (row r -> column perm[r]) whose cells have pairwise distinct colors.
struct LatinInstance {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> colors;
  std::optional<InstanceGate> gate;
  std::vector<std::pair<std::string, std::string>> params;
  std::optional<Assignment> permutation;

  std::uint32_t color(std::uint32_t row, std::uint32_t col) const { return colors[row * n + col]; }
  /// Largest number of cells sharing one color.
  std::uint32_t max_color_count() const;
  void validate() const;
};

using Instance = std::variant<ProductInstance, LatinInstance>;

}  // namespace lll
