#ifndef TABULAR_CELLS_HPP
#define TABULAR_CELLS_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tabular/structure_table.hpp"

namespace tabular {

enum class CellFlavor { Left, Right, TwoSided };

/// Directed preorder graphs on the basis of a structure table.  An edge
/// u -> z in the left graph records that z appears with nonzero coefficient
/// in some product K*u, i.e. z lies weakly below u in the left preorder.
struct PreorderGraphs {
  std::vector<std::vector<int>> left, right, two_sided;
  /// Nodes that occur in an unknown pair; their edge sets may be incomplete.
  std::vector<bool> touched_by_unknown;
};

inline PreorderGraphs preorder_graphs(const StructureTable& t) {
  const int n = t.size();
  PreorderGraphs g;
  g.left.assign(n, {});
  g.right.assign(n, {});
  g.touched_by_unknown.assign(n, false);
  std::vector<std::set<int>> left(n), right(n);
  t.for_each_known_pair([&](int x, int y, const StructureTable::Row& row) {
    for (const auto& [z, pi] : row) {
      left[y].insert(z);   // z appears in x * y
      right[x].insert(z);
    }
  });
  if (!t.complete) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (!t.known(x, y)) {
          g.touched_by_unknown[y] = true;  // left edges of y incomplete
          g.touched_by_unknown[x] = true;  // right edges of x incomplete
        }
  }
  g.two_sided.assign(n, {});
  for (int i = 0; i < n; ++i) {
    g.left[i].assign(left[i].begin(), left[i].end());
    g.right[i].assign(right[i].begin(), right[i].end());
    std::set<int> both = left[i];
    both.insert(right[i].begin(), right[i].end());
    g.two_sided[i].assign(both.begin(), both.end());
  }
  return g;
}

/// Partition of the basis into cells per flavor, with the condensation DAG.
/// Cells are numbered deterministically by their smallest member index.
struct CellDecomposition {
  struct Flavor {
    std::vector<int> cell_of;                    // basis index -> cell id
    std::vector<std::vector<int>> members;       // cell id -> sorted indices
    std::vector<std::pair<int, int>> dag_edges;  // (upper, lower), lower < upper
    std::vector<std::vector<bool>> leq;          // leq[a][b]: cell a <= cell b

    int cell_count() const { return static_cast<int>(members.size()); }
    bool cells_leq(int a, int b) const { return leq[a][b]; }
  };
  Flavor left, right, two_sided;
  bool exact = false;
  std::vector<bool> certified;  // per basis element

  const Flavor& flavor(CellFlavor f) const {
    switch (f) {
      case CellFlavor::Left: return left;
      case CellFlavor::Right: return right;
      default: return two_sided;
    }
  }
};

namespace detail {

// Iterative Tarjan SCC; components renumbered by smallest member.
inline void condense(const std::vector<std::vector<int>>& adj,
                     CellDecomposition::Flavor& out) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int next_index = 0, comp_count = 0;
  struct Frame { int v; std::size_t child; };
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.child < adj[f.v].size()) {
        int w = adj[f.v][f.child++];
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = comp_count;
            if (w == f.v) break;
          }
          ++comp_count;
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  // renumber components by smallest member for reproducible ids
  std::vector<int> min_member(comp_count, n);
  for (int v = 0; v < n; ++v)
    min_member[comp[v]] = std::min(min_member[comp[v]], v);
  std::vector<int> order(comp_count);
  for (int c = 0; c < comp_count; ++c) order[c] = c;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return min_member[a] < min_member[b]; });
  std::vector<int> renumber(comp_count);
  for (int i = 0; i < comp_count; ++i) renumber[order[i]] = i;

  out.cell_of.assign(n, -1);
  out.members.assign(comp_count, {});
  for (int v = 0; v < n; ++v) {
    out.cell_of[v] = renumber[comp[v]];
    out.members[out.cell_of[v]].push_back(v);
  }
  std::set<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v)
    for (int w : adj[v])
      if (out.cell_of[v] != out.cell_of[w])
        edges.emplace(out.cell_of[v], out.cell_of[w]);
  out.dag_edges.assign(edges.begin(), edges.end());

  // reachability closure: leq[a][b] iff a reachable from b (a below b)
  out.leq.assign(comp_count, std::vector<bool>(comp_count, false));
  for (int c = 0; c < comp_count; ++c) out.leq[c][c] = true;
  // process in reverse of a topological-ish order: repeat until stable
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [u, l] : out.dag_edges)
      for (int c = 0; c < comp_count; ++c)
        if (out.leq[c][l] && !out.leq[c][u]) {
          out.leq[c][u] = true;
          changed = true;
        }
  }
}

}  // namespace detail

inline CellDecomposition cell_decomposition(const StructureTable& t,
                                            const PreorderGraphs& g) {
  CellDecomposition d;
  detail::condense(g.left, d.left);
  detail::condense(g.right, d.right);
  detail::condense(g.two_sided, d.two_sided);
  d.exact = t.complete;
  d.certified.assign(t.size(), true);
  if (!t.complete)
    for (int i = 0; i < t.size(); ++i)
      d.certified[i] = !g.touched_by_unknown[i];
  return d;
}

/// Per-basis-element a-values.  For complete tables the max is exact; for
/// partial tables a value is certified only under the attainment, escape
/// margin and cell-constancy conditions described in a_function below.
struct AFunctionTable {
  struct Entry {
    int a = -1;
    bool has_value = false;  // some known product produces this element
    bool certified = false;
  };
  std::vector<Entry> entries;

  int value(int z) const { return entries[z].a; }
  bool certified(int z) const { return entries[z].certified; }
};

/// a(z) = max degree of g_{x,y,z}.  Exact on complete tables.  On partial
/// tables, z is certified when (i) the max is attained by a known entry,
/// (ii) every unknown pair that could still raise the max (its two lengths
/// both exceed the candidate, since deg g_{x,y,z} <= min(l(x), l(y)))
/// escapes the horizon by more than safety_margin, and (iii) the value is
/// constant across its two-sided cell and attained there by a product of
/// the form g_{x, x*, d} with d a star-fixed cell member.
inline AFunctionTable a_function(const StructureTable& t,
                                 const CellDecomposition& cells,
                                 int safety_margin = 0) {
  const int n = t.size();
  AFunctionTable out;
  out.entries.assign(n, {});
  t.for_each_known_pair([&](int x, int y, const StructureTable::Row& row) {
    for (const auto& [z, pi] : row) {
      int d = t.pool[pi].degree();
      auto& e = out.entries[z];
      if (!e.has_value || d > e.a) e.a = d;
      e.has_value = true;
    }
  });
  if (t.complete) {
    for (auto& e : out.entries) e.certified = e.has_value;
    return out;
  }

  // Aggregate unknown pairs: for each min-weight value, the shallowest
  // escape depth among unknown pairs attaining it.
  const bool have_weights = !t.weight.empty() && t.horizon_bound >= 0;
  bool any_unknown = false;
  std::map<int, int> min_depth_by_minw;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (!t.known(x, y)) {
        any_unknown = true;
        if (!have_weights) continue;
        int minw = std::min(t.weight[x], t.weight[y]);
        int depth = t.weight[x] + t.weight[y] - t.horizon_bound;
        auto [it, fresh] = min_depth_by_minw.emplace(minw, depth);
        if (!fresh) it->second = std::min(it->second, depth);
      }

  auto margin_ok = [&](int a) {
    if (!any_unknown) return true;
    if (!have_weights) return false;
    // pairs with min weight <= a cannot raise the max
    // (deg g_{x,y,z} <= min(weight(x), weight(y)))
    for (auto it = min_depth_by_minw.upper_bound(a);
         it != min_depth_by_minw.end(); ++it)
      if (it->second <= safety_margin) return false;
    return true;
  };

  std::vector<bool> pass(n, false);
  for (int z = 0; z < n; ++z)
    pass[z] = out.entries[z].has_value && margin_ok(out.entries[z].a);

  // max degree of g_{x, x*, d} per target d, over known pairs (x, x*)
  const bool have_star = !t.star.empty();
  std::vector<int> dstar_max(n, LaurentPoly::neg_infinity);
  if (have_star)
    for (int x = 0; x < n; ++x) {
      const auto* r = t.row_if_known(x, t.star[x]);
      if (!r) continue;
      for (const auto& [z, pi] : *r)
        dstar_max[z] = std::max(dstar_max[z], t.pool[pi].degree());
    }

  for (const auto& cell : cells.two_sided.members) {
    int cell_max = -1;
    bool any = false;
    for (int z : cell)
      if (out.entries[z].has_value) {
        cell_max = std::max(cell_max, out.entries[z].a);
        any = true;
      }
    if (!any) continue;
    bool witnessed = !have_star;
    if (have_star)
      for (int d : cell)
        if (t.star[d] == d && dstar_max[d] == cell_max) { witnessed = true; break; }
    for (int z : cell)
      out.entries[z].certified =
          pass[z] && out.entries[z].a == cell_max && witnessed;
  }
  return out;
}

/// Leading coefficients: gamma_{x,y,z} is the v^{a(z)} coefficient of
/// g_{x,y,z}.  Entries whose a-value is uncertified are omitted.
struct GammaTable {
  std::vector<int> a_of;          // certified a-value per element, -1 otherwise
  std::unordered_map<std::uint64_t, std::vector<std::pair<int, Int>>> rows;

  bool has_element(int z) const { return a_of[z] >= 0; }
  /// Only meaningful when the underlying pair is known and a(z) certified.
  Int gamma(int x, int y, int z) const {
    auto it = rows.find(StructureTable::pair_key(x, y));
    if (it == rows.end()) return Int(0);
    for (const auto& [zi, g] : it->second)
      if (zi == z) return g;
    return Int(0);
  }
  const std::vector<std::pair<int, Int>>* row(int x, int y) const {
    auto it = rows.find(StructureTable::pair_key(x, y));
    return it == rows.end() ? nullptr : &it->second;
  }
};

inline GammaTable gamma_table(const StructureTable& t, const AFunctionTable& a) {
  GammaTable out;
  out.a_of.assign(t.size(), -1);
  for (int z = 0; z < t.size(); ++z)
    if (a.entries[z].certified) out.a_of[z] = a.entries[z].a;
  t.for_each_known_pair([&](int x, int y, const StructureTable::Row& row) {
    std::vector<std::pair<int, Int>> grow;
    for (const auto& [z, pi] : row) {
      if (out.a_of[z] < 0) continue;
      Int c = t.pool[pi].coeff(out.a_of[z]);
      if (c != 0) grow.emplace_back(z, std::move(c));
    }
    if (!grow.empty())
      out.rows.emplace(StructureTable::pair_key(x, y), std::move(grow));
  });
  return out;
}

}  // namespace tabular

#endif
