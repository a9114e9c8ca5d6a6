#pragma once

#include "bilgrow/system.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bilgrow {

/// Edge k -> i whenever some c^(k)_{i,j} or c^(k)_{j,i} is nonzero.
class DepGraph {
public:
  explicit DepGraph(std::size_t dim = 0) : adj_(dim, std::vector<bool>(dim, false)) {}

  std::size_t dim() const noexcept { return adj_.size(); }
  bool has_edge(std::size_t from, std::size_t to) const { return adj_.at(from).at(to); }
  void add_edge(std::size_t from, std::size_t to) { adj_.at(from).at(to) = true; }
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  /// Out-neighbours in ascending order.
  std::vector<std::size_t> successors(std::size_t v) const;

private:
  std::vector<std::vector<bool>> adj_;
};

DepGraph build_depgraph(const System& system);

/// Strongly connected components ordered by their smallest vertex, with the
/// transitive "greater than" relation of the condensation.
struct ComponentPoset {
  std::vector<std::vector<std::size_t>> components;  ///< each sorted ascending
  std::vector<std::size_t> component_of;             ///< vertex -> component index
  std::vector<std::vector<bool>> greater;            ///< greater[a][b]: a > b

  std::size_t size() const noexcept { return components.size(); }
  bool is_greater(std::size_t a, std::size_t b) const { return greater.at(a).at(b); }
  /// Components strictly below `c`.
  std::vector<std::size_t> below(std::size_t c) const;
  /// Number of components in the longest chain a_1 > a_2 > ... .
  std::size_t longest_chain() const;
};

ComponentPoset components(const DepGraph& graph);

struct ComponentClass {
  bool internal_triple = false;       ///< some c^(k)_{i,j} > 0 with k, i, j all inside
  bool half_self_dependent = false;   ///< structural clause only
  bool sink_trivial = false;          ///< some vertex has no coefficients at all
};

std::vector<ComponentClass> classify(const System& system, const ComponentPoset& poset);

/// The system restricted to a component and every component below it,
/// re-indexed in ascending original order.
struct Subsystem {
  System system;
  std::vector<std::size_t> original;  ///< new index -> original index
};

Subsystem subsystem(const System& system, const ComponentPoset& poset, std::size_t component);

/// Fewest edges from `from` to `to`; 0 when from == to.
std::optional<std::size_t> shortest_path(const DepGraph& graph, std::size_t from, std::size_t to);
/// A shortest vertex sequence from -> ... -> to (just {from} when equal).
std::optional<std::vector<std::size_t>> shortest_route(const DepGraph& graph, std::size_t from, std::size_t to);
/// Length of the shortest closed walk through v with at least one edge.
std::optional<std::size_t> shortest_cycle(const DepGraph& graph, std::size_t v);

/// Graphviz digraph with one cluster per component and flags as labels.
std::string to_dot(const System& system, const DepGraph& graph, const ComponentPoset& poset,
                   const std::vector<ComponentClass>& classes);

}  // namespace bilgrow
