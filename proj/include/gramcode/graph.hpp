#pragma once

// Restricted de Bruijn graphs D(S) and the analyses built on them.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gramcode/errors.hpp"
#include "gramcode/grams.hpp"
#include "gramcode/numeric.hpp"

namespace gramcode {

using NodeId = std::size_t;
using ArcId = std::size_t;

class DeBruijnGraph {
 public:
  explicit DeBruijnGraph(GramSet s) : set_(std::move(s)) {
    const GramCode q = static_cast<GramCode>(set_.q());
    node_mod_ = pow_q(set_.q(), set_.ell() - 1);
    std::vector<GramCode> nodes;
    for (auto z : set_.codes()) {
      nodes.push_back(z / q);
      nodes.push_back(z % node_mod_);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    node_codes_ = std::move(nodes);

    out_.resize(node_codes_.size());
    in_.resize(node_codes_.size());
    for (ArcId a = 0; a < set_.size(); ++a) {
      GramCode z = set_.code(a);
      NodeId from = *node_index(z / q);
      NodeId to = *node_index(z % node_mod_);
      ends_.emplace_back(from, to);
      out_[from].push_back(a);
      in_[to].push_back(a);
    }
    // Codes are sorted, so out-arcs of each node are already ordered by terminal node.
  }

  const GramSet& gram_set() const { return set_; }
  int q() const { return set_.q(); }
  int ell() const { return set_.ell(); }
  std::size_t node_count() const { return node_codes_.size(); }
  std::size_t arc_count() const { return set_.size(); }

  GramCode node_code(NodeId v) const { return node_codes_[v]; }
  const std::vector<GramCode>& node_codes() const { return node_codes_; }
  std::string node_label(NodeId v) const { return to_digits(gram_at(node_codes_[v], q(), ell() - 1)); }
  std::string arc_label(ArcId a) const { return set_.label(a); }

  std::optional<NodeId> node_index(GramCode c) const {
    auto it = std::lower_bound(node_codes_.begin(), node_codes_.end(), c);
    if (it == node_codes_.end() || *it != c) return std::nullopt;
    return static_cast<NodeId>(it - node_codes_.begin());
  }

  NodeId initial(ArcId a) const { return ends_[a].first; }
  NodeId terminal(ArcId a) const { return ends_[a].second; }
  bool is_loop(ArcId a) const { return ends_[a].first == ends_[a].second; }
  const std::vector<ArcId>& out_arcs(NodeId v) const { return out_[v]; }
  const std::vector<ArcId>& in_arcs(NodeId v) const { return in_[v]; }

  std::optional<ArcId> arc_between(NodeId from, NodeId to) const {
    for (auto a : out_[from])
      if (terminal(a) == to) return a;
    return std::nullopt;
  }

  std::optional<ArcId> first_loop() const {
    for (ArcId a = 0; a < arc_count(); ++a)
      if (is_loop(a)) return a;
    return std::nullopt;
  }

  /// Word spelled by a node walk v0 v1 ... vk.
  Word spell(const std::vector<NodeId>& walk) const {
    require(!walk.empty(), "empty walk");
    Word first = gram_at(node_codes_[walk.front()], q(), ell() - 1);
    std::vector<Symbol> s(first.symbols().begin(), first.symbols().end());
    for (std::size_t i = 1; i < walk.size(); ++i)
      s.push_back(static_cast<Symbol>(node_codes_[walk[i]] % static_cast<GramCode>(q())));
    return Word(std::move(s), q());
  }

 private:
  GramSet set_;
  GramCode node_mod_ = 1;
  std::vector<GramCode> node_codes_;
  std::vector<std::pair<NodeId, NodeId>> ends_;
  std::vector<std::vector<ArcId>> out_, in_;
};

inline DeBruijnGraph build_graph(const GramSet& s) { return DeBruijnGraph(s); }

// ---------------------------------------------------------------------------

/// Dense integer matrix, row-major.
struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  std::int64_t& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::int64_t at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

/// Fraction-free (Bareiss) elimination; exact.
inline std::size_t integer_rank(IntMatrix m) {
  std::vector<BigInt> a(m.data.begin(), m.data.end());
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return a[i * m.cols + j]; };
  std::size_t rank = 0;
  BigInt prev = 1;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::size_t piv = rank;
    while (piv < m.rows && at(piv, col) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(at(piv, j), at(rank, j));
    for (std::size_t i = rank + 1; i < m.rows; ++i) {
      for (std::size_t j = col + 1; j < m.cols; ++j)
        at(i, j) = (at(i, j) * at(rank, col) - at(i, col) * at(rank, j)) / prev;
      at(i, col) = 0;
    }
    prev = at(rank, col);
    ++rank;
  }
  return rank;
}

/// B(D): +1 at the terminal node, -1 at the initial node, zero column for loops.
inline IntMatrix incidence(const DeBruijnGraph& g) {
  IntMatrix b(g.node_count(), g.arc_count());
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    if (g.is_loop(a)) continue;
    b.at(g.terminal(a), a) += 1;
    b.at(g.initial(a), a) -= 1;
  }
  return b;
}

// ---------------------------------------------------------------------------

/// Tarjan SCC. Components are listed by smallest member node; members sorted.
inline std::vector<std::vector<NodeId>> strongly_connected_components(const DeBruijnGraph& g) {
  const std::size_t n = g.node_count();
  constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, unset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeId> stack;
  std::vector<std::vector<NodeId>> comps;
  std::size_t counter = 0;

  // Iterative DFS: frames of (node, next out-arc position).
  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != unset) continue;
    std::vector<std::pair<NodeId, std::size_t>> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto& outs = g.out_arcs(v);
      if (pos < outs.size()) {
        NodeId w = g.terminal(outs[pos++]);
        if (index[w] == unset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<NodeId> comp;
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
      NodeId done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
    }
  }
  std::sort(comps.begin(), comps.end());
  return comps;
}

inline bool is_strongly_connected(const DeBruijnGraph& g) {
  return strongly_connected_components(g).size() == 1;
}

inline bool is_balanced(const DeBruijnGraph& g) {
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (g.in_arcs(v).size() != g.out_arcs(v).size()) return false;
  return true;
}

inline bool is_eulerian(const DeBruijnGraph& g) { return is_balanced(g) && is_strongly_connected(g); }

// ---------------------------------------------------------------------------

/// Hierholzer walk on the multigraph with the given arc multiplicities.
/// Always leaves a node along the unused arc with the smallest terminal node.
/// Closed: starts at the smallest node with positive out-degree.
/// Open: starts at the unique node with out - in = +1.
inline std::vector<NodeId> euler_walk(const DeBruijnGraph& g, const std::vector<std::int64_t>& mult) {
  require(mult.size() == g.arc_count(), "multiplicity vector length != |S|");
  const std::size_t n = g.node_count();
  std::vector<std::int64_t> balance(n, 0);
  std::int64_t total = 0;
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    require(mult[a] >= 0, "negative arc multiplicity");
    balance[g.initial(a)] += mult[a];
    balance[g.terminal(a)] -= mult[a];
    total += mult[a];
  }
  require(total > 0, "all arc multiplicities are zero");

  std::optional<NodeId> source, sink;
  for (NodeId v = 0; v < n; ++v) {
    if (balance[v] == 0) continue;
    if (balance[v] == 1 && !source)
      source = v;
    else if (balance[v] == -1 && !sink)
      sink = v;
    else
      throw ValidationError("flow imbalance at more than one source/sink pair (node " +
                            g.node_label(v) + ")");
  }
  require(source.has_value() == sink.has_value(), "unmatched source/sink imbalance");

  NodeId start = 0;
  if (source) {
    start = *source;
  } else {
    for (NodeId v = 0; v < n; ++v) {
      bool has_out = false;
      for (auto a : g.out_arcs(v)) has_out |= mult[a] > 0;
      if (has_out) {
        start = v;
        break;
      }
    }
  }

  std::vector<std::int64_t> left = mult;
  std::vector<std::size_t> next(n, 0);
  std::vector<NodeId> stack{start}, out;
  out.reserve(static_cast<std::size_t>(total) + 1);
  while (!stack.empty()) {
    NodeId v = stack.back();
    const auto& outs = g.out_arcs(v);
    while (next[v] < outs.size() && left[outs[next[v]]] == 0) ++next[v];
    if (next[v] < outs.size()) {
      ArcId a = outs[next[v]];
      --left[a];
      stack.push_back(g.terminal(a));
    } else {
      out.push_back(v);
      stack.pop_back();
    }
  }
  if (out.size() != static_cast<std::size_t>(total) + 1)
    throw ValidationError("support of the multiplicity vector is disconnected");
  std::reverse(out.begin(), out.end());
  return out;
}

inline std::vector<NodeId> eulerian_circuit(const DeBruijnGraph& g, const std::vector<std::int64_t>& mult) {
  auto walk = euler_walk(g, mult);
  require(walk.front() == walk.back(), "multiplicities are not balanced; no circuit exists");
  return walk;
}

// ---------------------------------------------------------------------------

enum class HamiltonianStatus { found, absent, budget_exceeded };

struct HamiltonianResult {
  HamiltonianStatus status = HamiltonianStatus::absent;
  std::vector<NodeId> cycle;  // c0..c_{V-1}; closing arc c_{V-1} -> c0
  std::uint64_t steps = 0;
};

constexpr std::uint64_t kDefaultHamiltonianBudget = 10'000'000;

namespace detail {

inline std::optional<std::vector<NodeId>> full_de_bruijn_hamiltonian(const DeBruijnGraph& g) {
  const GramSet& s = g.gram_set();
  if (s.ell() < 3 || s.size() != pow_q(s.q(), s.ell())) return std::nullopt;
  // Arcs of D(q, ell-1) are the nodes of D(q, ell).
  DeBruijnGraph lower(GramSet::full(s.q(), s.ell() - 1));
  auto circuit = eulerian_circuit(lower, std::vector<std::int64_t>(lower.arc_count(), 1));
  std::vector<NodeId> cycle;
  const GramCode q = static_cast<GramCode>(s.q());
  for (std::size_t i = 0; i + 1 < circuit.size(); ++i) {
    GramCode arc = lower.node_code(circuit[i]) * q + lower.node_code(circuit[i + 1]) % q;
    cycle.push_back(*g.node_index(arc));
  }
  return cycle;
}

}  // namespace detail

/// Search for a Hamiltonian cycle. Full de Bruijn graphs with ell >= 3 use the
/// Euler circuit of the next lower order; everything else is lex-order backtracking.
inline HamiltonianResult find_hamiltonian_cycle(const DeBruijnGraph& g,
                                                std::uint64_t budget = kDefaultHamiltonianBudget) {
  HamiltonianResult r;
  if (auto c = detail::full_de_bruijn_hamiltonian(g)) {
    r.status = HamiltonianStatus::found;
    r.cycle = std::move(*c);
    return r;
  }
  const std::size_t n = g.node_count();
  if (!is_strongly_connected(g)) return r;
  if (n == 1) {
    if (g.first_loop()) {
      r.status = HamiltonianStatus::found;
      r.cycle = {0};
    }
    return r;
  }
  std::vector<bool> used(n, false);
  std::vector<NodeId> path{0};
  used[0] = true;
  bool exceeded = false;
  std::function<bool()> extend = [&]() -> bool {
    if (++r.steps > budget) {
      exceeded = true;
      return false;
    }
    NodeId v = path.back();
    if (path.size() == n) return g.arc_between(v, 0).has_value();
    for (auto a : g.out_arcs(v)) {
      NodeId w = g.terminal(a);
      if (used[w]) continue;
      used[w] = true;
      path.push_back(w);
      if (extend()) return true;
      if (exceeded) return false;
      path.pop_back();
      used[w] = false;
    }
    return false;
  };
  if (extend()) {
    r.status = HamiltonianStatus::found;
    r.cycle = path;
  } else {
    r.status = exceeded ? HamiltonianStatus::budget_exceeded : HamiltonianStatus::absent;
  }
  return r;
}

inline std::vector<NodeId> hamiltonian_cycle(const DeBruijnGraph& g,
                                             std::uint64_t budget = kDefaultHamiltonianBudget) {
  auto r = find_hamiltonian_cycle(g, budget);
  switch (r.status) {
    case HamiltonianStatus::found:
      return r.cycle;
    case HamiltonianStatus::absent:
      throw ComputationError("graph has no Hamiltonian cycle");
    case HamiltonianStatus::budget_exceeded:
      throw ComputationError("Hamiltonian search budget of " + std::to_string(budget) +
                             " steps exceeded");
  }
  return {};
}

// ---------------------------------------------------------------------------

struct CycleLengths {
  std::vector<std::size_t> lengths;  // achieved simple-cycle lengths, ascending
  BigInt lcm;
};

/// Lengths of all simple cycles and their lcm. Each cycle is found once, from its
/// smallest node; the search stops early once every length 1..|V| has been seen.
inline CycleLengths cycle_length_lcm(const DeBruijnGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<bool> seen(n + 1, false);
  std::size_t found = 0;
  std::vector<bool> on_path(n, false);

  std::function<void(NodeId, NodeId, std::size_t)> dfs = [&](NodeId s, NodeId v, std::size_t depth) {
    if (found == n) return;
    for (auto a : g.out_arcs(v)) {
      NodeId w = g.terminal(a);
      if (w == s) {
        if (!seen[depth]) {
          seen[depth] = true;
          ++found;
        }
      } else if (w > s && !on_path[w]) {
        on_path[w] = true;
        dfs(s, w, depth + 1);
        on_path[w] = false;
      }
    }
  };
  for (NodeId s = 0; s < n && found < n; ++s) {
    on_path[s] = true;
    dfs(s, s, 1);
    on_path[s] = false;
  }

  CycleLengths r;
  std::vector<std::int64_t> lens;
  for (std::size_t k = 1; k <= n; ++k)
    if (seen[k]) {
      r.lengths.push_back(k);
      lens.push_back(static_cast<std::int64_t>(k));
    }
  r.lcm = lens.empty() ? BigInt(1) : lcm_of(lens);
  return r;
}

// ---------------------------------------------------------------------------

struct AuxiliaryDag {
  struct Arc {
    std::size_t from, to;
    std::int64_t weight;
  };
  // Node numbering: components 0..k-1, then source = k, sink = k+1.
  std::vector<std::vector<NodeId>> components;
  std::vector<std::int64_t> delta;
  std::vector<Arc> arcs;

  std::size_t source() const { return components.size(); }
  std::size_t sink() const { return components.size() + 1; }
};

inline AuxiliaryDag auxiliary_dag(const DeBruijnGraph& g) {
  AuxiliaryDag dag;
  dag.components = strongly_connected_components(g);
  const std::size_t k = dag.components.size();
  std::vector<std::size_t> comp_of(g.node_count());
  for (std::size_t i = 0; i < k; ++i)
    for (auto v : dag.components[i]) comp_of[v] = i;

  std::vector<std::int64_t> inner_arcs(k, 0);
  std::set<std::pair<std::size_t, std::size_t>> cross;
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    auto ci = comp_of[g.initial(a)], cj = comp_of[g.terminal(a)];
    if (ci == cj)
      ++inner_arcs[ci];
    else
      cross.emplace(ci, cj);
  }
  for (std::size_t i = 0; i < k; ++i)
    dag.delta.push_back(inner_arcs[i] - static_cast<std::int64_t>(dag.components[i].size()));

  for (std::size_t i = 0; i < k; ++i) dag.arcs.push_back({dag.source(), i, 0});
  for (auto [i, j] : cross) dag.arcs.push_back({i, j, dag.delta[i] + 1});
  for (std::size_t i = 0; i < k; ++i) dag.arcs.push_back({i, dag.sink(), dag.delta[i]});
  return dag;
}

struct GrowthExponent {
  std::int64_t delta = 0;      // longest source -> sink path weight
  std::int64_t delta_bar = 0;  // max over components
};

inline GrowthExponent growth_exponent(const DeBruijnGraph& g) {
  AuxiliaryDag dag = auxiliary_dag(g);
  const std::size_t total = dag.components.size() + 2;
  std::vector<std::vector<AuxiliaryDag::Arc>> out(total);
  std::vector<std::size_t> indeg(total, 0);
  for (const auto& a : dag.arcs) {
    out[a.from].push_back(a);
    ++indeg[a.to];
  }
  constexpr auto neg = std::numeric_limits<std::int64_t>::min();
  std::vector<std::int64_t> best(total, neg);
  best[dag.source()] = 0;
  std::vector<std::size_t> ready{dag.source()};
  while (!ready.empty()) {
    auto v = ready.back();
    ready.pop_back();
    for (const auto& a : out[v]) {
      if (best[v] != neg) best[a.to] = std::max(best[a.to], best[v] + a.weight);
      if (--indeg[a.to] == 0) ready.push_back(a.to);
    }
  }
  GrowthExponent r;
  r.delta = best[dag.sink()];
  r.delta_bar = *std::max_element(dag.delta.begin(), dag.delta.end());
  return r;
}

}  // namespace gramcode
