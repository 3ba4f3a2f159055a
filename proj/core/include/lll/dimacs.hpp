#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lll/instance.hpp"

namespace lll {

/// Larger variable counts are rejected as a malformed header.
inline constexpr std::uint32_t kMaxDimacsVariables = 1u << 24;

struct CnfFormula {
  std::uint32_t variables = 0;
  /// Signed 1-based literals; no clause is empty.
  std::vector<std::vector<std::int32_t>> clauses;

  /// Common clause length, or nothing for mixed widths or no clauses.
  std::optional<std::size_t> width() const;
  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

class DimacsError : public std::runtime_error {
 public:
  enum class Kind {
    MissingHeader,
    MalformedHeader,
    MalformedToken,
    LiteralOutOfRange,
    MissingTerminator,
    EmptyClause,
    ClauseCountMismatch,
  };

  DimacsError(Kind kind, std::size_t line, const std::string& message);

  Kind kind() const { return kind_; }
  /// 1-based line of the offending token (last line for end-of-input errors).
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

std::string_view to_string(DimacsError::Kind kind);

/// Comment lines start with 'c'; a line starting with '%' ends the input.
/// Clauses may span lines and share lines; each ends with 0.
CnfFormula parse_dimacs(std::string_view text);
std::string serialize_dimacs(const CnfFormula& formula);

/// True iff every clause has a true literal under a (0/1 per variable).
bool cnf_satisfied(const CnfFormula& formula, const std::vector<std::uint32_t>& a);

/// One Clause event per clause over {0,1}^variables, with the overlap gate.
ProductInstance cnf_to_instance(const CnfFormula& formula);

/// Width-k formula in which every clause shares a variable with at most
/// 2^(k-2) other clauses. Passes vacuously when there are no clauses.
InstanceGate ksat_gate(const CnfFormula& formula);

/// Random width-k formula meeting the overlap gate; clauses use k distinct
/// variables with random signs. Throws GenerationError after repeated
/// failures to place a clause.
CnfFormula gen_ksat(std::uint32_t variables, std::uint32_t clauses, std::uint32_t k, std::uint64_t seed);

}  // namespace lll
