#include "bilgrow/depgraph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace bilgrow {

std::vector<std::pair<std::size_t, std::size_t>> DepGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < dim(); ++a)
    for (std::size_t b = 0; b < dim(); ++b)
      if (adj_[a][b]) out.emplace_back(a, b);
  return out;
}

std::vector<std::size_t> DepGraph::successors(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < dim(); ++b)
    if (adj_.at(v)[b]) out.push_back(b);
  return out;
}

DepGraph build_depgraph(const System& system) {
  DepGraph g(system.dim());
  for (const auto& t : system.map.terms()) {
    g.add_edge(t.k, t.i);
    g.add_edge(t.k, t.j);
  }
  return g;
}

ComponentPoset components(const DepGraph& graph) {
  const std::size_t n = graph.dim();
  // Tarjan
  std::vector<long> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> found;
  long counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (auto w : graph.successors(v)) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      found.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);

  ComponentPoset poset;
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  poset.components = std::move(found);
  poset.component_of.assign(n, 0);
  for (std::size_t c = 0; c < poset.components.size(); ++c)
    for (auto v : poset.components[c]) poset.component_of[v] = c;

  const std::size_t m = poset.components.size();
  poset.greater.assign(m, std::vector<bool>(m, false));
  for (auto [a, b] : graph.edges()) {
    auto ca = poset.component_of[a], cb = poset.component_of[b];
    if (ca != cb) poset.greater[ca][cb] = true;
  }
  for (std::size_t via = 0; via < m; ++via)
    for (std::size_t a = 0; a < m; ++a)
      if (poset.greater[a][via])
        for (std::size_t b = 0; b < m; ++b)
          if (poset.greater[via][b]) poset.greater[a][b] = true;
  return poset;
}

std::vector<std::size_t> ComponentPoset::below(std::size_t c) const {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < size(); ++b)
    if (greater.at(c)[b]) out.push_back(b);
  return out;
}

std::size_t ComponentPoset::longest_chain() const {
  std::vector<std::size_t> memo(size(), 0);
  std::function<std::size_t(std::size_t)> depth = [&](std::size_t c) -> std::size_t {
    if (memo[c]) return memo[c];
    std::size_t best = 0;
    for (auto b : below(c)) best = std::max(best, depth(b));
    return memo[c] = best + 1;
  };
  std::size_t best = 0;
  for (std::size_t c = 0; c < size(); ++c) best = std::max(best, depth(c));
  return best;
}

std::vector<ComponentClass> classify(const System& system, const ComponentPoset& poset) {
  std::vector<ComponentClass> out(poset.size());
  std::vector<bool> has_terms(system.dim(), false);
  for (auto& c : out) c.half_self_dependent = true;
  for (const auto& t : system.map.terms()) {
    has_terms[t.k] = true;
    auto ck = poset.component_of[t.k];
    auto ci = poset.component_of[t.i], cj = poset.component_of[t.j];
    if (ci == ck && cj == ck) out[ck].internal_triple = true;
    bool i_lower = poset.is_greater(ck, ci), j_lower = poset.is_greater(ck, cj);
    if (!i_lower && !j_lower) out[ck].half_self_dependent = false;
  }
  for (std::size_t v = 0; v < system.dim(); ++v)
    if (!has_terms[v]) out[poset.component_of[v]].sink_trivial = true;
  return out;
}

Subsystem subsystem(const System& system, const ComponentPoset& poset, std::size_t component) {
  if (component >= poset.size()) throw InputError("subsystem: no such component");
  std::vector<bool> keep_comp(poset.size(), false);
  keep_comp[component] = true;
  for (auto b : poset.below(component)) keep_comp[b] = true;

  Subsystem out;
  std::vector<std::size_t> remap(system.dim(), system.dim());
  for (std::size_t v = 0; v < system.dim(); ++v)
    if (keep_comp[poset.component_of[v]]) {
      remap[v] = out.original.size();
      out.original.push_back(v);
    }
  std::vector<Term> terms;
  for (const auto& t : system.map.terms()) {
    if (remap[t.k] == system.dim()) continue;
    // inputs of a kept output are reachable from it, hence kept
    terms.push_back({remap[t.k], remap[t.i], remap[t.j], t.value});
  }
  out.system.map = BilinearMap(out.original.size(), std::move(terms));
  for (auto v : out.original) out.system.seed.push_back(system.seed[v]);
  out.system.seed_policy = system.seed_policy;
  out.system.name = system.name.empty() ? "" : system.name + "/sub";
  return out;
}

std::optional<std::vector<std::size_t>> shortest_route(const DepGraph& graph, std::size_t from, std::size_t to) {
  if (from >= graph.dim() || to >= graph.dim()) throw InputError("shortest_path: vertex out of range");
  if (from == to) return std::vector<std::size_t>{from};
  std::vector<std::size_t> parent(graph.dim(), graph.dim());
  std::vector<bool> seen(graph.dim(), false);
  std::deque<std::size_t> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto w : graph.successors(v)) {
      if (seen[w]) continue;
      seen[w] = true;
      parent[w] = v;
      if (w == to) {
        std::vector<std::size_t> path{to};
        while (path.back() != from) path.push_back(parent[path.back()]);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> shortest_path(const DepGraph& graph, std::size_t from, std::size_t to) {
  auto route = shortest_route(graph, from, to);
  if (!route) return std::nullopt;
  return route->size() - 1;
}

std::optional<std::size_t> shortest_cycle(const DepGraph& graph, std::size_t v) {
  std::optional<std::size_t> best;
  for (auto w : graph.successors(v)) {
    auto back = shortest_path(graph, w, v);
    if (back && (!best || *back + 1 < *best)) best = *back + 1;
  }
  return best;
}

std::string to_dot(const System& system, const DepGraph& graph, const ComponentPoset& poset,
                   const std::vector<ComponentClass>& classes) {
  std::ostringstream os;
  os << "digraph dependency {\n";
  if (!system.name.empty()) os << "  label=\"" << system.name << "\";\n";
  os << "  node [shape=circle];\n";
  for (std::size_t c = 0; c < poset.size(); ++c) {
    const auto& cls = classes.at(c);
    os << "  subgraph cluster_" << c << " {\n";
    os << "    label=\"C" << c + 1 << (cls.internal_triple ? " internal_triple" : "")
       << (cls.half_self_dependent ? " half_self_dependent" : "") << (cls.sink_trivial ? " sink_trivial" : "")
       << "\";\n";
    for (auto v : poset.components[c]) os << "    v" << v + 1 << " [label=\"" << v + 1 << "\"];\n";
    os << "  }\n";
  }
  for (auto [a, b] : graph.edges()) os << "  v" << a + 1 << " -> v" << b + 1 << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace bilgrow
