#include "lll/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lll/checker.hpp"
#include "lll/desk.hpp"
#include "lll/dimacs.hpp"
#include "lll/instance_io.hpp"
#include "lll/instances.hpp"
#include "lll/measure.hpp"
#include "lll/solver.hpp"

namespace lll {

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

/// Usage-level failure raised while interpreting option values.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::uint32_t to_u32(const std::string& s) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &used);
  } catch (const std::exception&) {
    throw UsageError("'" + s + "' is not a non-negative integer");
  }
  if (used != s.size() || v > 0xffffffffUL || s.front() == '-') throw UsageError("'" + s + "' is not a valid integer");
  return static_cast<std::uint32_t>(v);
}

// "0,1,2;3,4,5"
std::vector<std::vector<std::uint32_t>> parse_groups(const std::string& s) {
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& part : split_on(s, ';')) {
    std::vector<std::uint32_t> g;
    for (const auto& x : split_on(part, ',')) g.push_back(to_u32(x));
    out.push_back(std::move(g));
  }
  return out;
}

// "0-1,1-2"
Graph parse_graph(std::uint32_t vertices, const std::string& s) {
  Graph g;
  g.vertices = vertices;
  for (const auto& e : split_on(s, ',')) {
    const auto dash = e.find('-');
    if (dash == std::string::npos) throw UsageError("edge '" + e + "' must look like u-v");
    g.edges.emplace_back(to_u32(e.substr(0, dash)), to_u32(e.substr(dash + 1)));
  }
  return g;
}

std::vector<Rational> parse_rationals(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& x : split_on(s, ',')) {
    try {
      out.push_back(parse_rational(x));
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string gate_line(const std::optional<InstanceGate>& gate) {
  if (!gate) return "gate none\n";
  return "gate " + gate->family + " " + (gate->passes ? "pass" : "fail") + ": " + gate->comparison + "\n";
}

// ------------------------------------------------------------------ gen

struct GenArgs {
  std::uint64_t seed = 1;
  std::string out;
  // firm
  std::uint32_t jobs = 100, specialists = 8, overlap_cap = 30, workers = 0;
  // circle
  std::uint32_t groups = 100, group_size = 16;
  // vdw / ramsey / hypergraph / digraph / ksat / latin
  std::uint64_t n = 0, k = 0;
  std::uint32_t class_size = 20;
  std::uint32_t vertices = 0, degree = 0;
  std::uint32_t vars = 0, clauses = 0;
  std::string dimacs;
  std::uint32_t cap = 1;
  // rainbow
  std::uint32_t points = 40, offsets = 25, colors = 3;
  std::uint64_t max_den = 12;
  std::int64_t span = 50;
  std::string x_list, m_list;
  // graphs and set systems
  std::string edges, classes, lists, sets;
  std::uint32_t cycle_classes = 0, ground = 0, d = 2;
};

Instance generate(const std::string& family, const GenArgs& a) {
  if (family == "firm") return gen_firm({a.jobs, a.specialists, a.overlap_cap, a.workers}, a.seed);
  if (family == "circle") return gen_circle(a.groups, a.group_size, a.seed);
  if (family == "vdw") {
    if (a.n > 0xffffffffULL) throw UsageError("--n too large");
    return gen_vdw(a.n, a.k);
  }
  if (family == "rainbow") {
    std::vector<Rational> xs, ms;
    if (!a.x_list.empty())
      xs = parse_rationals(a.x_list);
    else
      xs = random_rationals(a.points, a.max_den, a.span, a.seed);
    if (!a.m_list.empty()) {
      ms = parse_rationals(a.m_list);
    } else {
      // nonzero offsets drawn from a second stream
      auto pool = random_rationals(a.offsets + 1, a.max_den, a.span, a.seed ^ 0x9e3779b97f4a7c15ULL);
      for (const auto& r : pool)
        if (r != 0 && ms.size() < a.offsets) ms.push_back(r);
    }
    auto inst = gen_rainbow(xs, ms, a.colors);
    if (a.x_list.empty()) inst.params.emplace_back("seed", std::to_string(a.seed));
    return inst;
  }
  if (family == "hypergraph") {
    if (a.k > 64) throw UsageError("--k too large");
    return gen_hypergraph(static_cast<std::uint32_t>(a.k), a.class_size, a.seed);
  }
  if (family == "setsystem") return gen_setsystem(parse_groups(a.sets), a.ground);
  if (family == "transversal") {
    if (a.cycle_classes > 0) return gen_cycle_transversal(a.cycle_classes, a.seed);
    return gen_transversal(parse_graph(a.vertices, a.edges), parse_groups(a.classes));
  }
  if (family == "listcoloring") return gen_listcoloring(parse_graph(a.vertices, a.edges), parse_groups(a.lists), a.d);
  if (family == "ramsey") {
    if (a.k > 4096 || a.n > 4096) throw UsageError("--k/--n too large");
    return gen_ramsey(static_cast<std::uint32_t>(a.k), static_cast<std::uint32_t>(a.n));
  }
  if (family == "digraph") {
    if (a.k > 0xffffffffULL) throw UsageError("--k too large");
    auto inst = gen_digraph_labels(random_regular_digraph(a.vertices, a.degree, a.seed), static_cast<std::uint32_t>(a.k));
    inst.params.emplace_back("seed", std::to_string(a.seed));
    return inst;
  }
  if (family == "ksat") {
    CnfFormula f;
    if (!a.dimacs.empty()) {
      f = parse_dimacs(slurp(a.dimacs));
    } else {
      if (a.k > 40) throw UsageError("--k too large");
      f = gen_ksat(a.vars, a.clauses, static_cast<std::uint32_t>(a.k), a.seed);
    }
    auto inst = cnf_to_instance(f);
    if (a.dimacs.empty()) {
      inst.params.emplace_back("k", std::to_string(a.k));
      inst.params.emplace_back("seed", std::to_string(a.seed));
    }
    return inst;
  }
  if (family == "latin") {
    if (a.n > 4096) throw UsageError("--n too large");
    return gen_latin(static_cast<std::uint32_t>(a.n), a.cap, a.seed);
  }
  if (family == "desk") return gen_desk_symmetric(a.seed);
  throw UsageError("unknown family '" + family + "'");
}

std::size_t event_total(const Instance& inst) {
  if (auto* p = std::get_if<ProductInstance>(&inst)) return p->event_count();
  return 0;
}

int cmd_gen(const std::string& family, const GenArgs& a, std::ostream& out) {
  const Instance inst = generate(family, a);
  const std::string text = write_instance(inst);
  if (a.out.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream f(a.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + a.out);
  f << text;
  out << "wrote " << a.out << " family " << family << " events " << event_total(inst) << "\n";
  std::visit([&](const auto& x) { out << gate_line(x.gate); }, inst);
  return kOk;
}

// ------------------------------------------------------------------ check

struct CheckArgs {
  std::string file;
  std::string mode = "sym";
  std::string d = "auto";
  bool analytic = false;
  std::string dependency = "structural";
  std::vector<std::string> gammas;
  bool strict = false;
};

DependencyMode dependency_mode(const std::string& s) {
  if (s == "structural") return DependencyMode::Structural;
  if (s == "exhaustive") return DependencyMode::Exhaustive;
  throw UsageError("--dependency must be structural or exhaustive");
}

int cmd_check(const CheckArgs& a, std::ostream& out) {
  Instance inst = load_instance(a.file);
  auto* p = std::get_if<ProductInstance>(&inst);
  if (!p) {
    const auto& lat = std::get<LatinInstance>(inst);
    out << gate_line(lat.gate);
    out << "certificate unavailable for permutation spaces\n";
    return kNegative;
  }
  const auto limits = EnumerationLimits::from_environment();
  LLLCertificate cert;
  if (a.mode == "sym" || a.mode == "sym-e") {
    SymmetricOptions opt;
    opt.variant = a.mode == "sym" ? CertificateMode::Symmetric4d : CertificateMode::SymmetricE;
    if (a.d != "auto") opt.d = to_u32(a.d);
    opt.use_declared = a.analytic;
    opt.dependency = dependency_mode(a.dependency);
    opt.limits = limits;
    cert = check_symmetric(*p, opt);
  } else if (a.mode == "general") {
    const std::size_t n = p->events.size();
    std::vector<Rational> gammas;
    for (const auto& g : a.gammas)
      for (const auto& r : parse_rationals(g)) gammas.push_back(r);
    if (gammas.size() == 1) gammas.assign(n, gammas.front());
    if (gammas.size() != n)
      throw UsageError("--gamma needs one value or one per event (" + std::to_string(n) + ")");
    const auto deps = dependency_degrees(*p, dependency_mode(a.dependency), limits);
    std::vector<std::vector<std::uint32_t>> J;
    for (std::size_t k = 0; k < n; ++k) J.push_back(deps.certified_family(k));
    GeneralOptions opt;
    opt.include_self_in_product = a.strict;
    opt.limits = limits;
    cert = check_general(*p, J, gammas, opt);
  } else {
    throw UsageError("--mode must be sym, sym-e or general");
  }
  out << format_certificate(cert);
  out << gate_line(p->gate);
  return cert.applicable ? kOk : kNegative;
}

// ------------------------------------------------------------------ solve

struct SolveArgs {
  std::string file;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> budget;
  bool trace = false;
  std::string out;
};

std::string assignment_line(const Assignment& a) {
  std::string s = "assignment " + std::to_string(a.size());
  for (auto v : a) s += " " + std::to_string(v);
  return s + "\n";
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  Instance inst = load_instance(a.file);
  SolveOptions opt;
  opt.seed = a.seed;
  opt.budget = a.budget;
  opt.record_trace = a.trace;
  SolveResult r;
  std::size_t violations = 0;
  if (auto* p = std::get_if<ProductInstance>(&inst)) {
    if (!p->materialized) throw UsageError("instance events are not materialized; nothing to solve");
    r = solve_resample(*p, opt);
    violations = verify_assignment(*p, r.assignment).size();
    out << "outcome " << (r.solved() ? "solved" : "budget-exhausted") << "\n";
    out << "seed " << r.seed << "\nbudget " << r.budget << "\nresamples " << r.resample_count << "\n";
    out << "violations " << violations << "\n";
    if (a.trace) out << format_trace(*p, r);
  } else {
    const auto& lat = std::get<LatinInstance>(inst);
    r = solve_permutation(lat, opt);
    violations = latin_conflicts(lat, r.assignment).size();
    out << "outcome " << (r.solved() ? "solved" : "budget-exhausted") << "\n";
    out << "seed " << r.seed << "\nbudget " << r.budget << "\nswaps " << r.resample_count << "\n";
    out << "conflicts " << violations << "\n";
    if (a.trace)
      for (const auto& s : r.trace) out << "step " << s.step << " swap row" << s.event << "\n";
  }
  if (r.solved()) {
    set_assignment(inst, r.assignment);
    if (!a.out.empty()) {
      save_instance(inst, a.out);
      out << "wrote " << a.out << "\n";
    }
    out << assignment_line(r.assignment);
  }
  return r.solved() ? kOk : kNegative;
}

// ------------------------------------------------------------------ verify

int cmd_verify(const std::string& file, std::ostream& out) {
  Instance inst = load_instance(file);
  if (auto* lat = std::get_if<LatinInstance>(&inst)) {
    if (!lat->permutation) {
      out << "no assignment block\n";
      return kNegative;
    }
    const auto conflicts = latin_conflicts(*lat, *lat->permutation);
    for (auto [r1, r2] : conflicts) out << "conflict row" << r1 << " row" << r2 << "\n";
    out << "conflicts " << conflicts.size() << "\n";
    return conflicts.empty() ? kOk : kNegative;
  }
  auto& p = std::get<ProductInstance>(inst);
  if (p.assignment) {
    if (!p.materialized) throw UsageError("instance events are not materialized; nothing to verify");
    const auto bad = verify_assignment(p, *p.assignment);
    for (auto i : bad) out << "violated " << p.events[i].id() << "\n";
    out << "violations " << bad.size() << "\n";
    return bad.empty() ? kOk : kNegative;
  }
  if (!p.materialized) {
    out << "cannot verify: events are not materialized\n";
    return kNegative;
  }
  const auto limits = EnumerationLimits::from_environment();
  if (p.space.size() > limits.max_assignments) {
    out << "cannot verify: space of " << p.space.size().str() << " points exceeds the enumeration cap "
        << limits.max_assignments << "\n";
    return kNegative;
  }
  std::uint64_t good = 0, total = 0;
  Odometer od(std::vector<std::uint32_t>(p.space.domains().begin(), p.space.domains().end()));
  do {
    ++total;
    bool any = false;
    for (const auto& e : p.events)
      if (e.holds(od.values())) {
        any = true;
        break;
      }
    good += !any;
  } while (od.next());
  const Rational fraction(good, total);
  out << "good points " << good << " of " << total << "\n";
  out << "fraction " << fraction_string(fraction) << " (~" << approx_string(fraction, 6) << ")\n";
  SymmetricOptions opt;
  opt.limits = limits;
  const auto cert = check_symmetric(p, opt);
  if (!cert.applicable || !cert.guaranteed_fraction) {
    out << "certificate not applicable; nothing to compare\n";
    return kOk;
  }
  const bool ok = fraction >= *cert.guaranteed_fraction;
  out << "guaranteed " << fraction_string(*cert.guaranteed_fraction) << " = " << cert.guaranteed_expression << "\n";
  out << "consistent " << (ok ? "yes" : "no") << "\n";
  return ok ? kOk : kNegative;
}

// ------------------------------------------------------------------ cert

int cmd_cert(const std::string& file, const std::string& d_text, std::ostream& out) {
  Instance inst = load_instance(file);
  auto* p = std::get_if<ProductInstance>(&inst);
  if (!p) {
    out << "refused: induction certificate needs a product space\n";
    return kNegative;
  }
  const auto limits = EnumerationLimits::from_environment();
  std::uint64_t d = 0;
  if (d_text == "auto") {
    if (!p->materialized) {
      out << "refused: events are not materialized\n";
      return kNegative;
    }
    d = dependency_degrees(*p, DependencyMode::Structural, limits).max_degree();
  } else {
    d = to_u32(d_text);
  }
  const auto report = induction_certificate(*p, d, limits);
  out << format_induction(report);
  return report.performed && report.all_hold() ? kOk : kNegative;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local lemma toolkit: generate, certify, solve and verify instances", "lll"};
  app.require_subcommand(1);

  GenArgs g;
  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  gen->require_subcommand(1);
  auto family = [&](const char* name, const char* help) {
    auto* sc = gen->add_subcommand(name, help);
    sc->add_option("--seed", g.seed, "Random seed");
    sc->add_option("--out,-o", g.out, "Output file (default: stdout)");
    return sc;
  };
  auto* firm = family("firm", "Weekend rota: jobs with specialists");
  firm->add_option("--jobs", g.jobs)->capture_default_str();
  firm->add_option("--specialists", g.specialists)->capture_default_str();
  firm->add_option("--overlap-cap", g.overlap_cap)->capture_default_str();
  firm->add_option("--workers", g.workers, "Worker pool (0: 4 * jobs)");
  auto* circle = family("circle", "Group leaders around a circle");
  circle->add_option("--groups", g.groups)->capture_default_str();
  circle->add_option("--group-size", g.group_size)->capture_default_str();
  auto* vdw = family("vdw", "2-colorings without monochromatic k-term progressions");
  vdw->add_option("--n", g.n)->required();
  vdw->add_option("--k", g.k)->required();
  auto* rainbow = family("rainbow", "Colorings where every translate sees all colors");
  rainbow->add_option("--points", g.points)->capture_default_str();
  rainbow->add_option("--offsets", g.offsets)->capture_default_str();
  rainbow->add_option("--colors", g.colors)->capture_default_str();
  rainbow->add_option("--max-den", g.max_den, "Largest denominator of random rationals")->capture_default_str();
  rainbow->add_option("--span", g.span, "Random rationals lie in [-span, span]")->capture_default_str();
  rainbow->add_option("--x", g.x_list, "Explicit points, e.g. 0,1/2,3");
  rainbow->add_option("--m", g.m_list, "Explicit offsets");
  auto* hyp = family("hypergraph", "k-uniform k-regular set system, 2-colored");
  hyp->add_option("--k", g.k)->required();
  hyp->add_option("--class-size", g.class_size)->capture_default_str();
  auto* sets = family("setsystem", "2-coloring of an explicit set system");
  sets->add_option("--ground", g.ground)->required();
  sets->add_option("--sets", g.sets, "e.g. 0,1,2;2,3,4")->required();
  auto* trans = family("transversal", "One vertex per class, independent");
  trans->add_option("--cycle-classes", g.cycle_classes, "Random classes of 11 on a cycle of 11n vertices");
  trans->add_option("--vertices", g.vertices);
  trans->add_option("--edges", g.edges, "e.g. 0-1,1-2");
  trans->add_option("--classes", g.classes, "e.g. 0,1;2,3");
  auto* lc = family("listcoloring", "Proper coloring from vertex lists");
  lc->add_option("--vertices", g.vertices)->required();
  lc->add_option("--edges", g.edges);
  lc->add_option("--lists", g.lists, "e.g. 0,1,2;1,2,3")->required();
  lc->add_option("--d", g.d)->capture_default_str();
  auto* ram = family("ramsey", "Edge 2-colorings of K_k without monochromatic K_n");
  ram->add_option("--k", g.k)->required();
  ram->add_option("--n", g.n)->required();
  auto* dig = family("digraph", "Z_k labels on a random regular digraph");
  dig->add_option("--vertices", g.vertices)->required();
  dig->add_option("--degree", g.degree)->required();
  dig->add_option("--k", g.k)->required();
  auto* ksat = family("ksat", "k-SAT: random gated formula or a DIMACS file");
  ksat->add_option("--dimacs", g.dimacs, "DIMACS CNF input");
  ksat->add_option("--vars", g.vars);
  ksat->add_option("--clauses", g.clauses);
  ksat->add_option("--k", g.k);
  auto* latin = family("latin", "Rainbow transversal of a colored n x n board");
  latin->add_option("--n", g.n)->required();
  latin->add_option("--cap", g.cap, "Cells per color")->capture_default_str();
  family("desk", "Small random instance with an applicable symmetric certificate");

  CheckArgs c;
  auto* check = app.add_subcommand("check", "Check local lemma hypotheses and print a certificate");
  check->add_option("file", c.file)->required();
  check->add_option("--mode", c.mode, "sym | sym-e | general")->capture_default_str();
  check->add_option("--d", c.d, "auto | N")->capture_default_str();
  check->add_flag("--analytic", c.analytic, "Use the family's declared d and measure bounds");
  check->add_option("--dependency", c.dependency, "structural | exhaustive")->capture_default_str();
  check->add_option("--gamma", c.gammas, "General mode: one value or one per event (comma separated)");
  check->add_flag("--strict", c.strict, "General mode: keep gamma_k inside the product");

  SolveArgs s;
  auto* solve = app.add_subcommand("solve", "Run the resampling solver");
  solve->add_option("file", s.file)->required();
  solve->add_option("--seed", s.seed)->capture_default_str();
  solve->add_option("--budget", s.budget, "Resampling steps (default: 64 n (d+1))");
  solve->add_flag("--trace", s.trace, "Print one line per resampling step");
  solve->add_option("--out,-o", s.out, "Write the instance with the assignment block");

  std::string verify_file;
  auto* verify = app.add_subcommand("verify", "Verify an assignment block or count good points");
  verify->add_option("file", verify_file)->required();

  std::string cert_file, cert_d = "auto";
  auto* cert = app.add_subcommand("cert", "Print the induction certificate table");
  cert->add_option("file", cert_file)->required();
  cert->add_option("--d", cert_d, "auto | N")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (gen->parsed()) {
      for (auto* sc : gen->get_subcommands())
        if (sc->parsed()) return cmd_gen(sc->get_name(), g, out);
    }
    if (check->parsed()) return cmd_check(c, out);
    if (solve->parsed()) return cmd_solve(s, out);
    if (verify->parsed()) return cmd_verify(verify_file, out);
    if (cert->parsed()) return cmd_cert(cert_file, cert_d, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const DimacsError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const EnumerationCapExceeded& e) {
    err << "error: " << e.what() << " (raise LLL_MAX_ASSIGNMENTS or LLL_MAX_FAMILY)\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  err << "error: no command\n";
  return kInputError;
}

}  // namespace lll
