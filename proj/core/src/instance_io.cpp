#include "lll/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace lll {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

namespace {

void write_common_meta(std::ostream& os, const std::optional<InstanceGate>& gate) {
  if (!gate) return;
  os << "gate " << (gate->passes ? "pass" : "fail") << " " << gate->family;
  if (!gate->comparison.empty()) os << " " << gate->comparison;
  os << "\n";
  for (const auto& [k, v] : gate->inputs) os << "gate-input " << k << " " << v << "\n";
}

void write_product(std::ostream& os, const ProductInstance& p) {
  os << "family " << p.family << "\n";
  for (const auto& [k, v] : p.params) os << "param " << k << " " << v << "\n";
  for (const auto& f : p.flags) os << "flag " << f << "\n";
  if (p.declared_d) os << "declared-d " << *p.declared_d << "\n";
  if (p.declared_measure) os << "declared-measure " << fraction_string(*p.declared_measure) << "\n";
  if (p.declared_event_count) os << "declared-events " << *p.declared_event_count << "\n";
  if (!p.materialized) os << "materialized no\n";
  write_common_meta(os, p.gate);

  const auto doms = p.space.domains();
  os << "space product " << doms.size() << "\n";
  os << "domains";
  for (std::size_t i = 0; i < doms.size();) {
    std::size_t j = i;
    while (j < doms.size() && doms[j] == doms[i]) ++j;
    os << " " << doms[i];
    if (j - i > 1) os << "*" << (j - i);
    i = j;
  }
  os << "\n";

  os << "events " << p.events.size() << "\n";
  for (const auto& e : p.events) {
    os << "event " << e.id() << " " << to_string(e.kind()) << " support " << e.support().size();
    for (auto v : e.support()) os << " " << v;
    switch (e.kind()) {
      case EventKind::Monochromatic: break;
      case EventKind::MissingColor: os << " colors " << e.colors(); break;
      case EventKind::Clause:
        os << " lits " << e.literals().size();
        for (const auto& l : e.literals()) os << " " << (l.positive ? "" : "-") << (l.var + 1);
        break;
      case EventKind::ForbiddenPatterns:
        os << " patterns " << e.patterns().size();
        for (const auto& pat : e.patterns())
          for (auto v : pat) os << " " << v;
        break;
      case EventKind::TruthTable: {
        os << " table ";
        for (bool b : e.table()) os << (b ? '1' : '0');
        break;
      }
    }
    if (e.analytic_measure()) os << " measure " << fraction_string(*e.analytic_measure());
    os << "\n";
  }

  if (p.digraph) {
    os << "digraph " << p.digraph->vertices << "\n";
    for (std::uint32_t v = 0; v < p.digraph->vertices; ++v) {
      os << "arcs " << v << " " << p.digraph->out[v].size();
      for (auto w : p.digraph->out[v]) os << " " << w;
      os << "\n";
    }
  }
  if (p.label_modulus) os << "label-modulus " << *p.label_modulus << "\n";
  if (p.circle) {
    os << "circle " << p.circle->groups << " " << p.circle->size();
    for (auto g : p.circle->group_of) os << " " << g;
    os << "\n";
  }
  if (p.assignment) {
    os << "assignment " << p.assignment->size();
    for (auto v : *p.assignment) os << " " << v;
    os << "\n";
  }
}

void write_latin(std::ostream& os, const LatinInstance& l) {
  os << "family latin\n";
  for (const auto& [k, v] : l.params) os << "param " << k << " " << v << "\n";
  write_common_meta(os, l.gate);
  os << "space permutation " << l.n << "\n";
  for (std::uint32_t r = 0; r < l.n; ++r) {
    os << "colors " << r;
    for (std::uint32_t c = 0; c < l.n; ++c) os << " " << l.color(r, c);
    os << "\n";
  }
  if (l.permutation) {
    os << "assignment " << l.permutation->size();
    for (auto v : *l.permutation) os << " " << v;
    os << "\n";
  }
}

// ------------------------------------------------------------------ reader

struct Line {
  std::size_t number = 0;
  std::string_view raw;
  std::vector<std::string_view> tok;
};

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (i < s.size()) {
    while (i < s.size() && ws(s[i])) ++i;
    const std::size_t b = i;
    while (i < s.size() && !ws(s[i])) ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

// Text after the first `skip` tokens, trimmed.
std::string rest_after(const Line& line, std::size_t skip) {
  if (line.tok.size() <= skip) return {};
  const char* start = line.tok[skip].data();
  const char* stop = line.tok.back().data() + line.tok.back().size();
  return std::string(start, stop);
}

class Cursor {
 public:
  explicit Cursor(const Line& line) : line_(line) {}

  bool done() const { return pos_ >= line_.tok.size(); }
  std::string_view word(const char* what) {
    if (done()) fail(std::string("expected ") + what);
    return line_.tok[pos_++];
  }
  std::optional<std::string_view> peek() const {
    if (done()) return std::nullopt;
    return line_.tok[pos_];
  }
  template <class T>
  T number(const char* what, T max = std::numeric_limits<T>::max()) {
    auto w = word(what);
    T v{};
    auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || p != w.data() + w.size() || v > max)
      fail(std::string("bad ") + what + " '" + std::string(w) + "'");
    return v;
  }
  void expect(std::string_view keyword) {
    auto w = word(std::string(keyword).c_str());
    if (w != keyword) fail("expected '" + std::string(keyword) + "', got '" + std::string(w) + "'");
  }
  void finish() {
    if (!done()) fail("unexpected '" + std::string(line_.tok[pos_]) + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_.number, msg); }

 private:
  const Line& line_;
  std::size_t pos_ = 1;
};

Rational parse_fraction(Cursor& c, const char* what) {
  auto w = c.word(what);
  try {
    return parse_rational(w);
  } catch (const std::exception& e) {
    c.fail(std::string("bad ") + what + ": " + e.what());
  }
}

// Limits that keep fuzzed files from allocating absurd amounts of memory.
constexpr std::uint64_t kMaxVariables = std::uint64_t{1} << 26;
constexpr std::uint32_t kMaxDomain = std::uint32_t{1} << 24;
constexpr std::uint64_t kMaxTable = std::uint64_t{1} << 24;
constexpr std::uint32_t kMaxLatin = 4096;

BadEvent parse_event(Cursor& c, const VariableSpace& space) {
  const std::string id(c.word("event id"));
  const auto kind = c.word("event kind");
  c.expect("support");
  const auto s = c.number<std::uint32_t>("support size", 1u << 20);
  std::vector<std::uint32_t> support;
  for (std::uint32_t i = 0; i < s; ++i) {
    const auto v = c.number<std::uint32_t>("support variable");
    if (v >= space.variable_count()) c.fail("support variable " + std::to_string(v) + " out of range");
    support.push_back(v);
  }
  std::optional<BadEvent> e;
  try {
    if (kind == "mono") {
      e = BadEvent::monochromatic(id, support);
    } else if (kind == "missing") {
      c.expect("colors");
      e = BadEvent::missing_color(id, support, c.number<std::uint32_t>("colors"));
    } else if (kind == "clause") {
      c.expect("lits");
      const auto m = c.number<std::uint32_t>("literal count", 1u << 20);
      std::vector<Literal> lits;
      for (std::uint32_t i = 0; i < m; ++i) {
        const auto l = c.number<std::int64_t>("literal");
        const std::int64_t mag = l < 0 ? -l : l;
        if (l == 0 || mag > static_cast<std::int64_t>(space.variable_count()))
          c.fail("literal " + std::to_string(l) + " out of range");
        lits.push_back({static_cast<std::uint32_t>(mag - 1), l > 0});
      }
      e = BadEvent::clause(id, std::move(lits));
      std::vector<std::uint32_t> got(e->support().begin(), e->support().end());
      std::vector<std::uint32_t> want = support;
      if (got != want) c.fail("clause support does not match its literals");
    } else if (kind == "forbidden") {
      c.expect("patterns");
      const auto m = c.number<std::uint32_t>("pattern count", 1u << 24);
      if (static_cast<std::uint64_t>(m) * support.size() > kMaxTable) c.fail("too many pattern values");
      std::vector<std::vector<std::uint32_t>> pats(m, std::vector<std::uint32_t>(support.size()));
      for (auto& p : pats)
        for (auto& v : p) v = c.number<std::uint32_t>("pattern value");
      e = BadEvent::forbidden_patterns(id, support, std::move(pats));
    } else if (kind == "table") {
      c.expect("table");
      auto bits_text = c.word("table bits");
      std::vector<std::uint32_t> radices;
      std::uint64_t rows = 1;
      for (auto v : support) {
        radices.push_back(space.domain(v));
        rows *= space.domain(v);
        if (rows > kMaxTable) c.fail("truth table too large");
      }
      if (bits_text.size() != rows)
        c.fail("table has " + std::to_string(bits_text.size()) + " bits, expected " + std::to_string(rows));
      std::vector<bool> bits;
      for (char ch : bits_text) {
        if (ch != '0' && ch != '1') c.fail("table bits must be 0 or 1");
        bits.push_back(ch == '1');
      }
      e = BadEvent::truth_table(id, support, radices, std::move(bits));
    } else {
      c.fail("unknown event kind '" + std::string(kind) + "'");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& ex) {
    c.fail(ex.what());
  }
  if (auto w = c.peek(); w && *w == "measure") {
    c.word("measure");
    e->set_analytic_measure(parse_fraction(c, "measure"));
  }
  c.finish();
  try {
    e->validate(space);
  } catch (const std::exception& ex) {
    c.fail(ex.what());
  }
  return *e;
}

Assignment parse_values(Cursor& c, std::size_t expected) {
  const auto n = c.number<std::uint64_t>("value count");
  if (n != expected) c.fail("expected " + std::to_string(expected) + " values, got count " + std::to_string(n));
  Assignment a(n);
  for (auto& v : a) v = c.number<std::uint32_t>("value");
  c.finish();
  return a;
}

}  // namespace

std::string write_instance(const Instance& instance) {
  std::ostringstream os;
  os << "lll-instance 1\n";
  std::visit(
      [&](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, ProductInstance>)
          write_product(os, x);
        else
          write_latin(os, x);
      },
      instance);
  os << "end\n";
  return os.str();
}

Instance read_instance(std::string_view text) {
  std::vector<Line> lines;
  {
    std::size_t pos = 0, number = 0;
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      Line l;
      l.number = ++number;
      l.raw = text.substr(pos, end - pos);
      l.tok = split(l.raw);
      pos = end + 1;
      if (l.tok.empty() || l.tok[0].front() == '#') continue;
      lines.push_back(std::move(l));
    }
  }
  if (lines.empty()) throw ParseError(1, "empty file");
  if (lines[0].tok.size() != 2 || lines[0].tok[0] != "lll-instance")
    throw ParseError(lines[0].number, "expected header 'lll-instance 1'");
  if (lines[0].tok[1] != "1")
    throw ParseError(lines[0].number, "unsupported format version " + std::string(lines[0].tok[1]));

  ProductInstance p;
  LatinInstance lat;
  bool is_latin = false, have_space = false, have_domains = false, ended = false;
  std::optional<std::uint64_t> expected_events;
  std::uint64_t variables = 0;
  std::optional<InstanceGate> gate;
  std::vector<std::pair<std::string, std::string>> params;
  std::string family;
  std::set<std::string> ids;
  std::vector<bool> latin_row_seen;

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    Cursor c(line);
    const auto key = line.tok[0];
    if (ended) c.fail("content after 'end'");
    auto need_product_space = [&] {
      if (!have_space || is_latin) c.fail("'" + std::string(key) + "' needs a product space first");
    };

    if (key == "end") {
      c.finish();
      ended = true;
    } else if (key == "family") {
      family = std::string(c.word("family name"));
      c.finish();
    } else if (key == "param") {
      std::string k(c.word("param key"));
      params.emplace_back(std::move(k), rest_after(line, 2));
    } else if (key == "flag") {
      p.flags.emplace_back(c.word("flag"));
      c.finish();
    } else if (key == "declared-d") {
      p.declared_d = c.number<std::uint64_t>("declared d");
      c.finish();
    } else if (key == "declared-measure") {
      p.declared_measure = parse_fraction(c, "declared measure");
      c.finish();
    } else if (key == "declared-events") {
      p.declared_event_count = c.number<std::uint64_t>("declared event count");
      c.finish();
    } else if (key == "materialized") {
      auto w = c.word("yes|no");
      if (w != "yes" && w != "no") c.fail("materialized must be yes or no");
      p.materialized = w == "yes";
      c.finish();
    } else if (key == "gate") {
      InstanceGate g;
      auto v = c.word("pass|fail");
      if (v != "pass" && v != "fail") c.fail("gate verdict must be pass or fail");
      g.passes = v == "pass";
      g.family = std::string(c.word("gate family"));
      g.comparison = rest_after(line, 3);
      gate = std::move(g);
    } else if (key == "gate-input") {
      if (!gate) c.fail("'gate-input' before 'gate'");
      std::string k(c.word("gate input key"));
      gate->inputs.emplace_back(std::move(k), rest_after(line, 2));
    } else if (key == "space") {
      if (have_space) c.fail("second 'space' line");
      auto kind = c.word("space kind");
      if (kind == "product") {
        variables = c.number<std::uint64_t>("variable count", kMaxVariables);
      } else if (kind == "permutation") {
        is_latin = true;
        lat.n = c.number<std::uint32_t>("permutation size", kMaxLatin);
        lat.colors.assign(std::size_t{lat.n} * lat.n, 0);
        latin_row_seen.assign(lat.n, false);
      } else {
        c.fail("unknown space kind '" + std::string(kind) + "'");
      }
      c.finish();
      have_space = true;
    } else if (key == "domains") {
      need_product_space();
      if (have_domains) c.fail("second 'domains' line");
      std::vector<std::uint32_t> doms;
      for (std::size_t t = 1; t < line.tok.size(); ++t) {
        auto w = line.tok[t];
        const auto star = w.find('*');
        auto num = [&](std::string_view s, std::uint64_t max) {
          std::uint64_t v = 0;
          auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
          if (ec != std::errc() || ptr != s.data() + s.size() || v > max)
            c.fail("bad domain token '" + std::string(w) + "'");
          return v;
        };
        const auto r = static_cast<std::uint32_t>(num(w.substr(0, star), kMaxDomain));
        const std::uint64_t count = star == std::string_view::npos ? 1 : num(w.substr(star + 1), kMaxVariables);
        if (r == 0) c.fail("domain sizes must be positive");
        if (doms.size() + count > variables) c.fail("more domains than variables");
        doms.insert(doms.end(), count, r);
      }
      if (doms.size() != variables)
        c.fail("expected " + std::to_string(variables) + " domains, got " + std::to_string(doms.size()));
      p.space = VariableSpace(std::move(doms));
      have_domains = true;
    } else if (key == "events") {
      need_product_space();
      if (!have_domains && variables > 0) c.fail("'events' before 'domains'");
      if (expected_events) c.fail("second 'events' line");
      expected_events = c.number<std::uint64_t>("event count");
      c.finish();
    } else if (key == "event") {
      if (!expected_events) c.fail("'event' before 'events'");
      if (p.events.size() >= *expected_events) c.fail("more events than declared");
      auto e = parse_event(c, p.space);
      if (!ids.insert(e.id()).second) c.fail("duplicate event id '" + e.id() + "'");
      p.events.push_back(std::move(e));
    } else if (key == "digraph") {
      need_product_space();
      if (p.digraph) c.fail("second 'digraph' line");
      p.digraph = Digraph(c.number<std::uint32_t>("vertex count", static_cast<std::uint32_t>(kMaxVariables)));
      c.finish();
    } else if (key == "arcs") {
      if (!p.digraph) c.fail("'arcs' before 'digraph'");
      const auto v = c.number<std::uint32_t>("vertex");
      if (v >= p.digraph->vertices) c.fail("vertex out of range");
      if (!p.digraph->out[v].empty()) c.fail("second 'arcs' line for vertex " + std::to_string(v));
      const auto m = c.number<std::uint32_t>("arc count", p.digraph->vertices * 4 + 16);
      for (std::uint32_t j = 0; j < m; ++j) {
        const auto w = c.number<std::uint32_t>("arc head");
        if (w >= p.digraph->vertices) c.fail("arc head out of range");
        p.digraph->add_arc(v, w);
      }
      c.finish();
    } else if (key == "label-modulus") {
      p.label_modulus = c.number<std::uint32_t>("label modulus");
      if (*p.label_modulus == 0) c.fail("label modulus must be positive");
      c.finish();
    } else if (key == "circle") {
      CircleLayout layout;
      layout.groups = c.number<std::uint32_t>("group count", static_cast<std::uint32_t>(kMaxVariables));
      const auto n = c.number<std::uint32_t>("circle size", static_cast<std::uint32_t>(kMaxVariables));
      for (std::uint32_t j = 0; j < n; ++j) {
        const auto g = c.number<std::uint32_t>("group");
        if (g >= layout.groups) c.fail("group out of range");
        layout.group_of.push_back(g);
      }
      c.finish();
      p.circle = std::move(layout);
    } else if (key == "colors") {
      if (!is_latin) c.fail("'colors' needs a permutation space");
      const auto r = c.number<std::uint32_t>("row");
      if (r >= lat.n) c.fail("row out of range");
      if (latin_row_seen[r]) c.fail("row " + std::to_string(r) + " given twice");
      latin_row_seen[r] = true;
      for (std::uint32_t col = 0; col < lat.n; ++col) lat.colors[std::size_t{r} * lat.n + col] = c.number<std::uint32_t>("color");
      c.finish();
    } else if (key == "assignment") {
      if (!have_space) c.fail("'assignment' before 'space'");
      if (is_latin) {
        auto perm = parse_values(c, lat.n);
        if (!PermutationSpace(lat.n).contains(perm)) c.fail("assignment is not a permutation");
        lat.permutation = std::move(perm);
      } else {
        auto a = parse_values(c, variables);
        if (!p.space.contains(a)) c.fail("assignment value outside its domain");
        p.assignment = std::move(a);
      }
    } else {
      c.fail("unknown directive '" + std::string(key) + "'");
    }
  }

  const std::size_t last = lines.back().number;
  if (!ended) throw ParseError(last, "missing 'end'");
  if (!have_space) throw ParseError(last, "missing 'space'");
  if (is_latin) {
    for (std::uint32_t r = 0; r < lat.n; ++r)
      if (!latin_row_seen[r]) throw ParseError(last, "missing colors for row " + std::to_string(r));
    lat.params = std::move(params);
    lat.gate = std::move(gate);
    return lat;
  }
  if (!have_domains && variables > 0) throw ParseError(last, "missing 'domains'");
  if (!expected_events) throw ParseError(last, "missing 'events'");
  if (p.events.size() != *expected_events)
    throw ParseError(last, "declared " + std::to_string(*expected_events) + " events, found " +
                               std::to_string(p.events.size()));
  if (!p.materialized && !p.events.empty()) throw ParseError(last, "unmaterialized instance lists events");
  if (p.digraph && p.digraph->vertices != p.space.variable_count())
    throw ParseError(last, "digraph size does not match the space");
  if (p.circle) {
    const auto sizes = p.circle->group_sizes();
    if (sizes.size() != p.space.variable_count()) throw ParseError(last, "circle groups do not match the space");
    for (std::size_t g = 0; g < sizes.size(); ++g)
      if (sizes[g] != p.space.domain(g)) throw ParseError(last, "circle group sizes do not match the domains");
  }
  p.family = std::move(family);
  p.params = std::move(params);
  p.gate = std::move(gate);
  return p;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_instance(ss.str());
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << write_instance(instance);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void set_assignment(Instance& instance, const Assignment& a) {
  if (auto* p = std::get_if<ProductInstance>(&instance))
    p->assignment = a;
  else
    std::get<LatinInstance>(instance).permutation = a;
}

}  // namespace lll
