#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lll/instance.hpp"

namespace lll {

/// Malformed instance file; line() is 1-based (0 when not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Line-oriented text format, first line "lll-instance 1". Blank lines and
/// lines starting with '#' are ignored. Product instances:
///
///   family <name>
///   param <key> <value...>
///   flag <name>
///   declared-d <n> / declared-measure <p/q> / declared-events <n>
///   materialized no
///   gate <pass|fail> <family> <comparison...>
///   gate-input <key> <value...>
///   space product <variables>
///   domains <r> | <r>*<count> ...
///   events <count>
///   event <id> <kind> support <s> <v...> [colors <r> | lits <m> <±(v+1)...> |
///         patterns <m> <values...> | table <bits>] [measure <p/q>]
///   digraph <vertices>
///   arcs <v> <count> <w...>
///   label-modulus <k>
///   circle <groups> <size> <group of each position...>
///   assignment <n> <values...>
///   end
///
/// Latin instances use "space permutation <n>", then n lines
/// "colors <row> <c...>", and a permutation as the assignment block.
std::string write_instance(const Instance& instance);
Instance read_instance(std::string_view text);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& instance, const std::filesystem::path& path);

/// Replaces (or adds) the assignment block.
void set_assignment(Instance& instance, const Assignment& a);

}  // namespace lll
