#include <doctest.h>

#include <filesystem>

#include "lll/desk.hpp"
#include "lll/dimacs.hpp"
#include "lll/instance_io.hpp"
#include "lll/instances.hpp"
#include "lll/rng.hpp"
#include "lll/solver.hpp"

using namespace lll;

namespace {

std::vector<Instance> samples() {
  std::vector<Instance> out;
  out.emplace_back(gen_firm({.jobs = 12}, 1));
  out.emplace_back(gen_circle(10, 6, 2));
  out.emplace_back(gen_vdw(20, 4));
  out.emplace_back(gen_vdw(15000000, 32));
  out.emplace_back(gen_rainbow(random_rationals(6, 9, 5, 1), random_rationals(3, 9, 5, 2), 3));
  out.emplace_back(gen_hypergraph(4, 5, 3));
  out.emplace_back(gen_setsystem({{0, 1, 2}, {2, 3, 4}}, 6));
  out.emplace_back(gen_cycle_transversal(2, 4));
  out.emplace_back(gen_listcoloring(Graph{2, {{0, 1}}}, {{0, 1, 2}, {1, 2, 3}}, 2));
  out.emplace_back(gen_ramsey(5, 3));
  out.emplace_back(gen_digraph_labels(random_regular_digraph(12, 3, 5), 3));
  out.emplace_back(cnf_to_instance(gen_ksat(40, 6, 3, 6)));
  out.emplace_back(gen_desk_symmetric(7));
  out.emplace_back(gen_latin(17, 1, 8));
  auto solved = gen_ramsey(5, 3);
  solved.assignment = solve_resample(solved, {.seed = 1}).assignment;
  out.emplace_back(std::move(solved));
  auto latin = gen_latin(33, 2, 1);
  latin.permutation = solve_permutation(latin, {.seed = 1}).assignment;
  out.emplace_back(std::move(latin));
  return out;
}

std::size_t error_line(std::string_view text) {
  try {
    read_instance(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  FAIL("no parse error for: " << text);
  return 0;
}

}  // namespace

TEST_CASE("write, read, write is the identity for every family") {
  for (const auto& inst : samples()) {
    const auto text = write_instance(inst);
    CAPTURE(text.substr(0, 60));
    const auto back = read_instance(text);
    CHECK(back.index() == inst.index());
    CHECK(write_instance(back) == text);
    if (const auto* p = std::get_if<ProductInstance>(&inst)) {
      const auto& q = std::get<ProductInstance>(back);
      CHECK(q.space == p->space);
      CHECK(q.events == p->events);
      CHECK(q.declared_d == p->declared_d);
      CHECK(q.declared_measure == p->declared_measure);
      CHECK(q.flags == p->flags);
      CHECK(q.assignment == p->assignment);
      CHECK(q.materialized == p->materialized);
      CHECK(q.gate.has_value() == p->gate.has_value());
      if (p->gate) {
        CHECK(q.gate->passes == p->gate->passes);
        CHECK(q.gate->comparison == p->gate->comparison);
      }
    } else {
      const auto& l = std::get<LatinInstance>(inst);
      const auto& m = std::get<LatinInstance>(back);
      CHECK(m.colors == l.colors);
      CHECK(m.permutation == l.permutation);
    }
  }
}

TEST_CASE("files on disk") {
  const auto dir = std::filesystem::temp_directory_path() / "lll-io-test";
  std::filesystem::create_directories(dir);
  const Instance inst = gen_firm({.jobs = 5}, 3);
  save_instance(inst, dir / "firm.lll");
  CHECK(write_instance(load_instance(dir / "firm.lll")) == write_instance(inst));
  CHECK_THROWS(load_instance(dir / "missing.lll"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("set_assignment") {
  Instance inst = gen_ramsey(5, 3);
  const Assignment a(10, 1);
  set_assignment(inst, a);
  CHECK(std::get<ProductInstance>(inst).assignment == a);
  CHECK(write_instance(inst).find("assignment 10 1 1 1 1 1 1 1 1 1 1\n") != std::string::npos);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(error_line("") == 1);
  CHECK(error_line("lll-instance 2\n") == 1);
  CHECK(error_line("lll-instance 1\nfamily x\nbogus 1\nend\n") == 3);
  CHECK(error_line("lll-instance 1\nspace product 2\ndomains 2\nevents 0\nend\n") == 3);
  CHECK(error_line("lll-instance 1\nspace product 2\ndomains 2*2\nevents 1\n"
                   "event a mono support 2 0 5\nend\n") == 5);
  CHECK(error_line("lll-instance 1\nspace product 2\ndomains 2*2\nevents 1\n"
                   "event a mono support 2 0 1 measure 1/x\nend\n") == 5);
  CHECK(error_line("lll-instance 1\nspace product 2\ndomains 2*2\nevents 2\n"
                   "event a mono support 2 0 1\nend\n") == 6);
  CHECK(error_line("lll-instance 1\nspace product 1\ndomains 2\nevents 0\nassignment 1 3\nend\n") == 5);
  CHECK(error_line("lll-instance 1\nspace product 1\ndomains 2\nevents 0\n") > 0);
  CHECK(error_line("lll-instance 1\nspace product 99999999999\nend\n") == 2);
  // comments and blank lines are skipped
  CHECK_NOTHROW(read_instance("lll-instance 1\n# note\n\nspace product 1\ndomains 2\nevents 0\nend\n"));
}

TEST_CASE("property: fuzzed instance files never escape as anything but ParseError") {
  Rng rng(5);
  const auto base = samples();
  std::vector<std::string> texts;
  for (const auto& s : base) texts.push_back(write_instance(s));
  const std::string alphabet = "0123456789 -/*\nabcdefghijklmnopqrstuvwxyz";
  int parsed = 0;
  for (int round = 0; round < 4000; ++round) {
    std::string text = texts[rng.below(texts.size())];
    const std::size_t edits = 1 + rng.below(4);
    for (std::size_t e = 0; e < edits; ++e) {
      const std::size_t at = rng.below(text.size());
      switch (rng.below(3)) {
        case 0: text[at] = alphabet[rng.below(alphabet.size())]; break;
        case 1: text.erase(at, 1 + rng.below(12)); break;
        default: text.insert(at, 1, static_cast<char>(rng.below(256))); break;
      }
    }
    try {
      const auto inst = read_instance(text);
      ++parsed;
      const auto again = write_instance(inst);
      CHECK(write_instance(read_instance(again)) == again);
    } catch (const ParseError&) {
    }
  }
  CHECK(parsed > 0);
}
