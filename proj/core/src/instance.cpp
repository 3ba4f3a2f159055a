#include "lll/instance.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace lll {

void Digraph::add_arc(std::uint32_t from, std::uint32_t to) {
  if (from >= vertices || to >= vertices) throw std::invalid_argument("arc endpoint out of range");
  out[from].push_back(to);
}

bool Digraph::has_arc(std::uint32_t from, std::uint32_t to) const {
  if (from >= vertices) return false;
  return std::find(out[from].begin(), out[from].end(), to) != out[from].end();
}

std::size_t Digraph::arc_count() const {
  std::size_t total = 0;
  for (const auto& o : out) total += o.size();
  return total;
}

std::uint32_t Digraph::min_out_degree() const {
  if (vertices == 0) return 0;
  std::size_t m = out[0].size();
  for (const auto& o : out) m = std::min(m, o.size());
  return static_cast<std::uint32_t>(m);
}

std::uint32_t Digraph::max_in_degree() const {
  std::vector<std::uint32_t> in(vertices, 0);
  for (const auto& o : out)
    for (auto w : o) ++in[w];
  return vertices == 0 ? 0 : *std::max_element(in.begin(), in.end());
}

std::vector<std::uint32_t> CircleLayout::member_indices() const {
  std::vector<std::uint32_t> next(groups, 0), index(group_of.size());
  for (std::size_t p = 0; p < group_of.size(); ++p) index[p] = next[group_of[p]]++;
  return index;
}

std::vector<std::uint32_t> CircleLayout::group_sizes() const {
  std::vector<std::uint32_t> sizes(groups, 0);
  for (auto g : group_of) ++sizes[g];
  return sizes;
}

std::uint64_t ProductInstance::event_count() const {
  if (!materialized && declared_event_count) return *declared_event_count;
  return events.size();
}

bool ProductInstance::has_flag(const std::string& flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

std::optional<std::string> ProductInstance::param(const std::string& key) const {
  for (const auto& [k, v] : params)
    if (k == key) return v;
  return std::nullopt;
}

void ProductInstance::validate() const {
  std::unordered_set<std::string> ids;
  for (const auto& e : events) {
    if (!ids.insert(e.id()).second)
      throw std::invalid_argument("duplicate event id '" + e.id() + "'");
    e.validate(space);
  }
  if (assignment) space.check(*assignment);
}

std::uint32_t LatinInstance::max_color_count() const {
  std::vector<std::uint32_t> counts;
  for (auto c : colors) {
    if (c >= counts.size()) counts.resize(c + 1, 0);
    ++counts[c];
  }
  return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

void LatinInstance::validate() const {
  if (n == 0) throw std::invalid_argument("latin board needs n >= 1");
  if (colors.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("latin board needs n*n colors");
  if (permutation) {
    std::vector<bool> seen(n, false);
    if (permutation->size() != n) throw std::invalid_argument("permutation length mismatch");
    for (auto v : *permutation) {
      if (v >= n || seen[v]) throw std::invalid_argument("assignment is not a permutation");
      seen[v] = true;
    }
  }
}

}  // namespace lll
