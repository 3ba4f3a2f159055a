#include "lll/event.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace lll {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Monochromatic: return "mono";
    case EventKind::MissingColor: return "missing";
    case EventKind::Clause: return "clause";
    case EventKind::ForbiddenPatterns: return "forbidden";
    case EventKind::TruthTable: return "table";
  }
  return "?";
}

namespace {

void require_sorted_distinct(const std::vector<std::uint32_t>& support, const std::string& id) {
  for (std::size_t i = 1; i < support.size(); ++i)
    if (support[i - 1] >= support[i])
      throw std::invalid_argument("event '" + id + "': support must be strictly increasing");
}

std::vector<std::uint32_t> sorted_distinct(std::vector<std::uint32_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

BadEvent BadEvent::monochromatic(std::string id, std::vector<std::uint32_t> support) {
  BadEvent e(std::move(id), EventKind::Monochromatic);
  e.support_ = sorted_distinct(std::move(support));
  return e;
}

BadEvent BadEvent::missing_color(std::string id, std::vector<std::uint32_t> support,
                                 std::uint32_t colors) {
  if (colors == 0) throw std::invalid_argument("event '" + id + "': zero colors");
  BadEvent e(std::move(id), EventKind::MissingColor);
  e.support_ = sorted_distinct(std::move(support));
  e.colors_ = colors;
  return e;
}

BadEvent BadEvent::clause(std::string id, std::vector<Literal> literals) {
  BadEvent e(std::move(id), EventKind::Clause);
  std::vector<std::uint32_t> vars;
  vars.reserve(literals.size());
  for (const auto& lit : literals) vars.push_back(lit.var);
  e.support_ = sorted_distinct(std::move(vars));
  e.clause_positive_.assign(e.support_.size(), false);
  std::vector<bool> seen(e.support_.size(), false);
  for (const auto& lit : literals) {
    auto pos = static_cast<std::size_t>(
        std::lower_bound(e.support_.begin(), e.support_.end(), lit.var) - e.support_.begin());
    if (seen[pos] && e.clause_positive_[pos] != lit.positive) e.tautology_ = true;
    seen[pos] = true;
    e.clause_positive_[pos] = lit.positive;
  }
  e.literals_ = std::move(literals);
  return e;
}

BadEvent BadEvent::forbidden_patterns(std::string id, std::vector<std::uint32_t> support,
                                      std::vector<std::vector<std::uint32_t>> patterns) {
  BadEvent e(std::move(id), EventKind::ForbiddenPatterns);
  for (const auto& p : patterns)
    if (p.size() != support.size())
      throw std::invalid_argument("event '" + e.id_ + "': pattern width " +
                                  std::to_string(p.size()) + " != support size " +
                                  std::to_string(support.size()));
  std::vector<std::size_t> order(support.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
  for (std::size_t i = 0; i < order.size(); ++i) e.support_.push_back(support[order[i]]);
  require_sorted_distinct(e.support_, e.id_);
  for (auto& p : patterns) {
    std::vector<std::uint32_t> q(p.size());
    for (std::size_t i = 0; i < order.size(); ++i) q[i] = p[order[i]];
    e.patterns_.push_back(std::move(q));
  }
  std::sort(e.patterns_.begin(), e.patterns_.end());
  e.patterns_.erase(std::unique(e.patterns_.begin(), e.patterns_.end()), e.patterns_.end());
  return e;
}

BadEvent BadEvent::truth_table(std::string id, std::vector<std::uint32_t> support,
                               std::vector<std::uint32_t> radices, std::vector<bool> bits) {
  BadEvent e(std::move(id), EventKind::TruthTable);
  require_sorted_distinct(support, e.id_);
  if (radices.size() != support.size())
    throw std::invalid_argument("event '" + e.id_ + "': one radix per support variable");
  std::uint64_t rows = 1;
  for (auto r : radices) {
    if (r == 0) throw std::invalid_argument("event '" + e.id_ + "': zero radix");
    rows *= r;
    if (rows > (std::uint64_t{1} << 32))
      throw std::invalid_argument("event '" + e.id_ + "': truth table too large");
  }
  if (bits.size() != rows)
    throw std::invalid_argument("event '" + e.id_ + "': truth table has " +
                                std::to_string(bits.size()) + " bits, expected " +
                                std::to_string(rows));
  e.support_ = std::move(support);
  e.radices_ = std::move(radices);
  e.table_ = std::move(bits);
  return e;
}

bool BadEvent::holds_on(std::span<const std::uint32_t> local) const {
  switch (kind_) {
    case EventKind::Monochromatic:
      for (std::size_t i = 1; i < local.size(); ++i)
        if (local[i] != local[0]) return false;
      return true;
    case EventKind::MissingColor: {
      if (local.size() < colors_) return true;
      // colors_ is small in practice; a bitmask covers up to 64.
      if (colors_ <= 64) {
        std::uint64_t seen = 0;
        for (auto v : local)
          if (v < colors_) seen |= std::uint64_t{1} << v;
        const std::uint64_t full =
            colors_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << colors_) - 1;
        return seen != full;
      }
      std::vector<bool> seen(colors_, false);
      for (auto v : local)
        if (v < colors_) seen[v] = true;
      return std::find(seen.begin(), seen.end(), false) != seen.end();
    }
    case EventKind::Clause:
      if (tautology_) return false;
      for (std::size_t i = 0; i < local.size(); ++i) {
        const bool literal_true = clause_positive_[i] ? local[i] != 0 : local[i] == 0;
        if (literal_true) return false;
      }
      return true;
    case EventKind::ForbiddenPatterns:
      for (const auto& p : patterns_)
        if (std::equal(p.begin(), p.end(), local.begin(), local.end())) return true;
      return false;
    case EventKind::TruthTable: {
      std::uint64_t row = 0;
      for (std::size_t i = 0; i < local.size(); ++i) row = row * radices_[i] + local[i];
      return table_[row];
    }
  }
  return false;
}

bool BadEvent::holds(std::span<const std::uint32_t> a) const {
  std::uint32_t buffer[64];
  std::vector<std::uint32_t> heap;
  std::uint32_t* local = buffer;
  if (support_.size() > 64) {
    heap.resize(support_.size());
    local = heap.data();
  }
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (support_[i] >= a.size())
      throw std::out_of_range("event '" + id_ + "' reads variable " +
                              std::to_string(support_[i]) + " of a " +
                              std::to_string(a.size()) + "-variable assignment");
    local[i] = a[support_[i]];
  }
  return holds_on(std::span<const std::uint32_t>(local, support_.size()));
}

void BadEvent::validate(const VariableSpace& space) const {
  for (auto v : support_)
    if (v >= space.variable_count())
      throw std::invalid_argument("event '" + id_ + "': support variable " + std::to_string(v) +
                                  " out of range (space has " +
                                  std::to_string(space.variable_count()) + ")");
  switch (kind_) {
    case EventKind::MissingColor:
      for (auto v : support_)
        if (space.domain(v) != colors_)
          throw std::invalid_argument("event '" + id_ + "': variable " + std::to_string(v) +
                                      " has domain " + std::to_string(space.domain(v)) +
                                      ", expected " + std::to_string(colors_) + " colors");
      break;
    case EventKind::ForbiddenPatterns:
      for (const auto& p : patterns_)
        for (std::size_t i = 0; i < p.size(); ++i)
          if (p[i] >= space.domain(support_[i]))
            throw std::invalid_argument("event '" + id_ + "': pattern value out of domain");
      break;
    case EventKind::TruthTable:
      for (std::size_t i = 0; i < support_.size(); ++i)
        if (radices_[i] != space.domain(support_[i]))
          throw std::invalid_argument("event '" + id_ + "': truth-table radix mismatch on variable " +
                                      std::to_string(support_[i]));
      break;
    default:
      break;
  }
}

bool eval_event(const BadEvent& event, const Assignment& a) { return event.holds(a); }

}  // namespace lll
