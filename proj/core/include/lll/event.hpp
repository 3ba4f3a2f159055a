#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lll/rational.hpp"
#include "lll/space.hpp"

namespace lll {

enum class EventKind { Monochromatic, MissingColor, Clause, ForbiddenPatterns, TruthTable };

std::string_view to_string(EventKind kind);

/// A literal of a clause. On non-boolean domains "true" means "nonzero".
struct Literal {
  std::uint32_t var = 0;
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
};

/// A bad event: a predicate over a product space that reads only the
/// variables listed in its support. Events are the complements of the good
/// sets whose intersection we want to be non-empty.
///
/// Kinds:
///   Monochromatic      all support values equal
///   MissingColor       some value of {0..colors-1} absent on the support
///   Clause             every literal false (the clause is falsified)
///   ForbiddenPatterns  the support values equal one of the listed tuples
///   TruthTable         bit lookup, rows in support-lexicographic order
///                      (first support variable most significant)
class BadEvent {
 public:
  static BadEvent monochromatic(std::string id, std::vector<std::uint32_t> support);
  static BadEvent missing_color(std::string id, std::vector<std::uint32_t> support,
                                std::uint32_t colors);
  static BadEvent clause(std::string id, std::vector<Literal> literals);
  /// Pattern columns follow `support` as given; the support is sorted
  /// internally and the columns permuted to match.
  static BadEvent forbidden_patterns(std::string id, std::vector<std::uint32_t> support,
                                     std::vector<std::vector<std::uint32_t>> patterns);
  /// `support` must be strictly increasing; `radices` are the domain sizes of
  /// the support variables and `bits.size()` must equal their product.
  static BadEvent truth_table(std::string id, std::vector<std::uint32_t> support,
                              std::vector<std::uint32_t> radices, std::vector<bool> bits);

  const std::string& id() const { return id_; }
  EventKind kind() const { return kind_; }
  /// Strictly increasing variable indices.
  std::span<const std::uint32_t> support() const { return support_; }

  std::uint32_t colors() const { return colors_; }
  const std::vector<Literal>& literals() const { return literals_; }
  const std::vector<std::vector<std::uint32_t>>& patterns() const { return patterns_; }
  const std::vector<std::uint32_t>& radices() const { return radices_; }
  const std::vector<bool>& table() const { return table_; }
  /// True for a clause containing x and not-x.
  bool tautological() const { return tautology_; }

  const std::optional<Rational>& analytic_measure() const { return analytic_measure_; }
  void set_analytic_measure(Rational m) { analytic_measure_ = std::move(m); }

  /// Evaluates on the support values, listed in support order.
  bool holds_on(std::span<const std::uint32_t> local) const;
  /// Evaluates on a full point. Throws std::out_of_range if the support
  /// reaches past the end of `a`.
  bool holds(std::span<const std::uint32_t> a) const;

  /// Checks support bounds and kind-specific shape against `space`.
  /// Throws std::invalid_argument.
  void validate(const VariableSpace& space) const;

  friend bool operator==(const BadEvent&, const BadEvent&) = default;

 private:
  BadEvent(std::string id, EventKind kind) : id_(std::move(id)), kind_(kind) {}

  std::string id_;
  EventKind kind_;
  std::vector<std::uint32_t> support_;
  std::uint32_t colors_ = 0;
  std::vector<Literal> literals_;
  // Clause: per support position, whether the literal on it is positive.
  std::vector<bool> clause_positive_;
  bool tautology_ = false;
  std::vector<std::vector<std::uint32_t>> patterns_;
  std::vector<std::uint32_t> radices_;
  std::vector<bool> table_;
  std::optional<Rational> analytic_measure_;
};

/// An event or its complement, as an operand of independence queries.
struct EventTerm {
  const BadEvent* event = nullptr;
  bool complemented = false;

  static EventTerm of(const BadEvent& e) { return {&e, false}; }
  static EventTerm complement_of(const BadEvent& e) { return {&e, true}; }
  EventTerm complement() const { return {event, !complemented}; }

  bool holds_on(std::span<const std::uint32_t> local) const {
    return event->holds_on(local) != complemented;
  }
};

bool eval_event(const BadEvent& event, const Assignment& a);

}  // namespace lll
