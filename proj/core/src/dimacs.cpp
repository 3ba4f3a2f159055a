#include "lll/dimacs.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

#include "lll/instances.hpp"
#include "lll/measure.hpp"
#include "lll/rng.hpp"

namespace lll {

std::optional<std::size_t> CnfFormula::width() const {
  if (clauses.empty()) return std::nullopt;
  const std::size_t w = clauses.front().size();
  for (const auto& c : clauses)
    if (c.size() != w) return std::nullopt;
  return w;
}

DimacsError::DimacsError(Kind kind, std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      line_(line) {}

std::string_view to_string(DimacsError::Kind kind) {
  using K = DimacsError::Kind;
  switch (kind) {
    case K::MissingHeader: return "missing header";
    case K::MalformedHeader: return "malformed header";
    case K::MalformedToken: return "malformed token";
    case K::LiteralOutOfRange: return "literal out of range";
    case K::MissingTerminator: return "missing terminator";
    case K::EmptyClause: return "empty clause";
    case K::ClauseCountMismatch: return "clause count mismatch";
  }
  return "?";
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <class T>
std::optional<T> parse_int(std::string_view s) {
  T v{};
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text) {
  using K = DimacsError::Kind;
  CnfFormula f;
  bool have_header = false;
  std::uint64_t declared = 0;
  std::vector<std::int32_t> current;
  std::size_t current_line = 0;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto tok = tokens(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (tok[0].front() == 'c') continue;
    if (tok[0].front() == '%') break;
    if (tok[0] == "p") {
      if (have_header) throw DimacsError(K::MalformedHeader, line_no, "second header");
      if (tok.size() != 4 || tok[1] != "cnf")
        throw DimacsError(K::MalformedHeader, line_no, "expected 'p cnf <variables> <clauses>'");
      const auto v = parse_int<std::uint32_t>(tok[2]);
      const auto c = parse_int<std::uint64_t>(tok[3]);
      if (!v || !c || tok[2].front() == '-' || tok[3].front() == '-' || *v > kMaxDimacsVariables)
        throw DimacsError(K::MalformedHeader, line_no,
                          "counts must be non-negative integers, at most " + std::to_string(kMaxDimacsVariables) +
                              " variables");
      f.variables = *v;
      declared = *c;
      have_header = true;
      continue;
    }
    if (!have_header) throw DimacsError(K::MissingHeader, line_no, "clause before 'p cnf' header");
    for (auto t : tok) {
      const auto lit = parse_int<std::int64_t>(t);
      if (!lit) throw DimacsError(K::MalformedToken, line_no, "'" + std::string(t) + "' is not an integer");
      if (*lit == 0) {
        if (current.empty()) throw DimacsError(K::EmptyClause, line_no, "clause with no literals");
        f.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      const std::int64_t mag = *lit < 0 ? -*lit : *lit;
      if (mag > f.variables)
        throw DimacsError(K::LiteralOutOfRange, line_no,
                          "literal " + std::string(t) + " exceeds " + std::to_string(f.variables) + " variables");
      if (current.empty()) current_line = line_no;
      current.push_back(static_cast<std::int32_t>(*lit));
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw DimacsError(K::MissingHeader, line_no, "no 'p cnf' header");
  if (!current.empty())
    throw DimacsError(K::MissingTerminator, current_line, "clause not terminated by 0");
  if (f.clauses.size() != declared)
    throw DimacsError(K::ClauseCountMismatch, line_no,
                      "header declares " + std::to_string(declared) + " clauses, found " +
                          std::to_string(f.clauses.size()));
  return f;
}

std::string serialize_dimacs(const CnfFormula& f) {
  std::ostringstream os;
  os << "p cnf " << f.variables << " " << f.clauses.size() << "\n";
  for (const auto& c : f.clauses) {
    for (auto l : c) os << l << " ";
    os << "0\n";
  }
  return os.str();
}

bool cnf_satisfied(const CnfFormula& f, const std::vector<std::uint32_t>& a) {
  for (const auto& c : f.clauses) {
    bool sat = false;
    for (auto l : c) {
      const auto v = static_cast<std::size_t>(l < 0 ? -l : l) - 1;
      if (v >= a.size()) throw std::invalid_argument("assignment shorter than the formula");
      if ((a[v] != 0) == (l > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

namespace {

std::vector<std::set<std::uint32_t>> clause_vars(const CnfFormula& f) {
  std::vector<std::set<std::uint32_t>> out;
  for (const auto& c : f.clauses) {
    std::set<std::uint32_t> s;
    for (auto l : c) s.insert(static_cast<std::uint32_t>(l < 0 ? -l : l) - 1);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

InstanceGate ksat_gate(const CnfFormula& f) {
  InstanceGate g;
  g.family = "ksat";
  g.inputs = {{"variables", std::to_string(f.variables)}, {"clauses", std::to_string(f.clauses.size())}};
  if (f.clauses.empty()) {
    g.passes = true;
    g.comparison = "no clauses: pass";
    return g;
  }
  const auto w = f.width();
  if (!w) {
    g.passes = false;
    g.comparison = "clauses have different widths: fail";
    return g;
  }
  const std::size_t k = *w;
  g.inputs.emplace_back("k", std::to_string(k));
  const auto vars = clause_vars(f);
  std::vector<std::vector<std::uint32_t>> by_var(f.variables);
  for (std::uint32_t i = 0; i < vars.size(); ++i)
    for (auto v : vars[i]) by_var[v].push_back(i);
  std::size_t worst = 0, worst_clause = 0;
  for (std::uint32_t i = 0; i < vars.size(); ++i) {
    std::set<std::uint32_t> others;
    for (auto v : vars[i]) others.insert(by_var[v].begin(), by_var[v].end());
    others.erase(i);
    if (others.size() > worst) worst = others.size(), worst_clause = i;
  }
  // others <= 2^(k-2)  <=>  4 * others <= 2^k
  const bool ok = BigInt(worst) * 4 <= big_pow(BigInt(2), k);
  g.passes = ok;
  g.comparison = "clause " + std::to_string(worst_clause + 1) + " shares variables with " + std::to_string(worst) +
                 " others, limit 2^" + std::to_string(k) + "/4: " + (ok ? "pass" : "fail");
  return g;
}

ProductInstance cnf_to_instance(const CnfFormula& f) {
  ProductInstance inst;
  inst.family = "ksat";
  inst.params = {{"variables", std::to_string(f.variables)}, {"clauses", std::to_string(f.clauses.size())}};
  inst.space = VariableSpace::uniform(f.variables, 2);
  for (std::size_t i = 0; i < f.clauses.size(); ++i) {
    std::vector<Literal> lits;
    for (auto l : f.clauses[i]) lits.push_back({static_cast<std::uint32_t>(l < 0 ? -l : l) - 1, l > 0});
    auto e = BadEvent::clause("c" + std::to_string(i + 1), std::move(lits));
    e.set_analytic_measure(closed_form_measure(inst.space, e));
    inst.events.push_back(std::move(e));
  }
  inst.gate = ksat_gate(f);
  return inst;
}

CnfFormula gen_ksat(std::uint32_t variables, std::uint32_t clauses, std::uint32_t k, std::uint64_t seed) {
  if (k == 0 || k > variables) throw std::invalid_argument("ksat: need 1 <= k <= variables");
  if (k > 40) throw std::invalid_argument("ksat: k too large");
  const std::uint64_t limit = std::uint64_t{1} << (k >= 2 ? k - 2 : 0);
  const std::uint64_t cap = k >= 2 ? limit : 0;
  Rng rng(seed);
  CnfFormula f;
  f.variables = variables;
  std::vector<std::vector<std::uint32_t>> by_var(variables);
  std::vector<std::set<std::uint32_t>> neighbors;
  std::vector<std::uint32_t> pool(variables);
  for (std::uint32_t c = 0; c < clauses; ++c) {
    bool placed = false;
    for (int attempt = 0; attempt < kGenerationAttempts && !placed; ++attempt) {
      std::iota(pool.begin(), pool.end(), 0u);
      for (std::uint32_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below32(variables - i)]);
      std::vector<std::uint32_t> vars(pool.begin(), pool.begin() + k);
      std::set<std::uint32_t> touched;
      for (auto v : vars) touched.insert(by_var[v].begin(), by_var[v].end());
      if (touched.size() > cap) continue;
      bool ok = true;
      for (auto o : touched)
        if (neighbors[o].size() + 1 > cap) ok = false;
      if (!ok) continue;
      for (auto o : touched) neighbors[o].insert(c);
      neighbors.push_back(std::move(touched));
      std::sort(vars.begin(), vars.end());
      std::vector<std::int32_t> clause;
      for (auto v : vars) {
        by_var[v].push_back(c);
        const auto lit = static_cast<std::int32_t>(v + 1);
        clause.push_back(rng.below(2) ? lit : -lit);
      }
      f.clauses.push_back(std::move(clause));
      placed = true;
    }
    if (!placed)
      throw GenerationError("ksat: could not place clause " + std::to_string(c + 1) + " after " +
                            std::to_string(kGenerationAttempts) + " attempts");
  }
  return f;
}

}  // namespace lll
