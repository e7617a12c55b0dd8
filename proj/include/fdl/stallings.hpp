#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fdl/errors.hpp"
#include "fdl/words.hpp"

namespace fdl {

constexpr long kDefaultVertexCap = 1000000;

struct Edge {
  int src;
  int dst;
  Letter label;  // A or B only

  friend bool operator==(const Edge& x, const Edge& y) {
    return x.src == y.src && x.dst == y.dst && x.label == y.label;
  }
  friend bool operator<(const Edge& x, const Edge& y) {
    return std::tie(x.src, x.dst, x.label) < std::tie(y.src, y.dst, y.label);
  }
};

struct TraceResult {
  enum class Outcome { Closed, Open, Blocked };
  Outcome outcome;
  int end_vertex = -1;
  Int position = 0;  // letters consumed before the missing edge (Blocked only)

  bool closed() const { return outcome == Outcome::Closed; }
};

// Finite cover of the wedge of two circles: a pair of permutations of
// {0,...,degree-1} with base point 0.  The stabilizer of 0 is a finite-index
// subgroup of F.
struct PermRep {
  int degree = 0;
  std::vector<int> perm_a;
  std::vector<int> perm_b;

  bool valid() const {
    auto is_perm = [&](const std::vector<int>& p) {
      if (static_cast<int>(p.size()) != degree) return false;
      std::vector<char> seen(p.size(), 0);
      for (int v : p) {
        if (v < 0 || v >= degree || seen[v]) return false;
        seen[v] = 1;
      }
      return true;
    };
    return degree > 0 && is_perm(perm_a) && is_perm(perm_b);
  }

  // Action of a reduced F-word on a sheet; exponents reduce modulo the
  // permutation cycle through the current sheet.
  int act(int start, const Word& w) const {
    int v = start;
    for (const Run& r : w.runs()) {
      if (is_barred(r.letter)) fail(ErrorKind::NonFreeFactorWord, "cover action needs an F-word");
      const std::vector<int>& fwd = r.letter == Letter::A ? perm_a : perm_b;
      int clen = 1;
      for (int u = fwd[v]; u != v; u = fwd[u]) ++clen;
      Int steps = floor_mod(r.exp, clen);
      for (Int i = 0; i < steps; ++i) v = fwd[v];
    }
    return v;
  }
};

// Based graph with edges labeled a or b.  Unfolded instances are plain edge
// lists; fold() produces the canonical folded form on which all subgroup
// queries run.  Folded graphs are re-indexed by BFS from the base (a-out,
// a-in, b-out, b-in order), so equal folded graphs are based-isomorphic.
class LabeledGraph {
 public:
  LabeledGraph() = default;

  LabeledGraph(int num_vertices, int base, std::vector<Edge> edges)
      : nv_(num_vertices), base_(base), edges_(std::move(edges)) {
    if (nv_ <= 0 || base_ < 0 || base_ >= nv_)
      fail(ErrorKind::BadInput, "graph needs a base vertex");
    for (const Edge& e : edges_) {
      if (e.src < 0 || e.src >= nv_ || e.dst < 0 || e.dst >= nv_)
        fail(ErrorKind::BadInput, "edge endpoint out of range");
      if (is_barred(e.label)) fail(ErrorKind::BadInput, "graph labels are a or b only");
    }
  }

  static LabeledGraph from_generators(const std::vector<Word>& gens,
                                      long vertex_cap = kDefaultVertexCap) {
    std::vector<Edge> edges;
    int nv = 1;
    for (const Word& g : gens) {
      if (!g.over_free_factor())
        fail(ErrorKind::NonFreeFactorWord, "subgroup generators must be over {a,b}");
      Int len = g.length();
      if (Int(nv) + len > vertex_cap) fail(ErrorKind::SizeCap, "generator wedge exceeds vertex cap");
      int cur = 0;
      Int remaining = len;
      for (const Run& r : g.runs()) {
        int dir = r.exp > 0 ? 1 : -1;
        for (Int i = 0, n = abs(r.exp); i < n; ++i) {
          --remaining;
          int nxt = remaining == 0 ? 0 : nv++;
          if (dir > 0)
            edges.push_back({cur, nxt, r.letter});
          else
            edges.push_back({nxt, cur, r.letter});
          cur = nxt;
        }
      }
    }
    return LabeledGraph(nv, 0, std::move(edges)).fold();
  }

  int num_vertices() const { return nv_; }
  int base() const { return base_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool folded() const { return folded_; }

  int out(int v, Letter l) const { return out_[v][idx(l)]; }
  int in(int v, Letter l) const { return in_[v][idx(l)]; }

  friend bool operator==(const LabeledGraph& x, const LabeledGraph& y) {
    if (x.nv_ != y.nv_ || x.base_ != y.base_) return false;
    std::vector<Edge> a = x.edges_, b = y.edges_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  }

  // Stallings folding: union-find over vertices, merging targets of
  // same-labeled edges sharing an endpoint until deterministic.
  LabeledGraph fold() const {
    std::vector<int> parent(nv_);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<int> rank(nv_, 0);
    auto find = [&](int v) {
      while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
      }
      return v;
    };
    auto unite = [&](int x, int y) {
      x = find(x);
      y = find(y);
      if (x == y) return false;
      if (rank[x] < rank[y]) std::swap(x, y);
      parent[y] = x;
      if (rank[x] == rank[y]) ++rank[x];
      return true;
    };

    bool merged = true;
    while (merged) {
      merged = false;
      std::vector<std::array<int, 2>> o(nv_, {-1, -1}), i(nv_, {-1, -1});
      for (const Edge& e : edges_) {
        int s = find(e.src), t = find(e.dst), l = idx(e.label);
        int& os = o[s][l];
        if (os == -1)
          os = t;
        else if (find(os) != t)
          merged |= unite(os, t);
        int& it = i[t][l];
        if (it == -1)
          it = s;
        else if (find(it) != s)
          merged |= unite(it, s);
      }
    }

    // Canonical re-index by BFS from the base class.
    std::vector<std::array<int, 2>> o(nv_, {-1, -1}), i(nv_, {-1, -1});
    for (const Edge& e : edges_) {
      int s = find(e.src), t = find(e.dst);
      o[s][idx(e.label)] = t;
      i[t][idx(e.label)] = s;
    }
    std::vector<int> id(nv_, -1);
    std::vector<int> order;
    int b = find(base_);
    id[b] = 0;
    order.push_back(b);
    for (std::size_t k = 0; k < order.size(); ++k) {
      int v = order[k];
      for (int n : {o[v][0], i[v][0], o[v][1], i[v][1]}) {
        if (n != -1 && id[n] == -1) {
          id[n] = static_cast<int>(order.size());
          order.push_back(n);
        }
      }
    }
    std::vector<Edge> es;
    for (int v : order)
      for (int l = 0; l < 2; ++l)
        if (o[v][l] != -1) es.push_back({id[v], id[o[v][l]], l == 0 ? Letter::A : Letter::B});
    std::sort(es.begin(), es.end());
    LabeledGraph g(static_cast<int>(order.size()), 0, std::move(es));
    g.build_adjacency();
    return g;
  }

  TraceResult trace(const Word& w) const {
    require_folded();
    if (!w.over_free_factor()) fail(ErrorKind::NonFreeFactorWord, "trace needs a word over {a,b}");
    int v = base_;
    Int pos = 0;
    for (const Run& r : w.runs()) {
      auto [end, taken] = advance(v, r.letter, r.exp > 0 ? 1 : -1, abs(r.exp));
      pos += taken;
      v = end;
      if (taken < abs(r.exp)) return {TraceResult::Outcome::Blocked, v, pos};
    }
    if (v == base_) return {TraceResult::Outcome::Closed, v, pos};
    return {TraceResult::Outcome::Open, v, pos};
  }

  bool contains(const Word& w) const { return trace(w).closed(); }

  // Deletes degree-1 non-base vertices until none remain.
  LabeledGraph core() const {
    require_folded();
    std::vector<char> alive(nv_, 1);
    std::vector<int> deg(nv_, 0);
    for (int v = 0; v < nv_; ++v)
      for (int l = 0; l < 2; ++l) {
        if (out_[v][l] != -1) {
          ++deg[v];
          ++deg[out_[v][l]];
        }
      }
    std::queue<int> q;
    for (int v = 0; v < nv_; ++v)
      if (v != base_ && deg[v] <= 1) q.push(v);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      if (!alive[v] || v == base_ || deg[v] > 1) continue;
      alive[v] = 0;
      for (int l = 0; l < 2; ++l) {
        int t = out_[v][l];
        if (t != -1 && alive[t]) {
          --deg[t];
          if (t != base_ && deg[t] <= 1) q.push(t);
        }
        int s = in_[v][l];
        if (s != -1 && s != v && alive[s]) {
          --deg[s];
          if (s != base_ && deg[s] <= 1) q.push(s);
        }
      }
    }
    std::vector<Edge> es;
    for (const Edge& e : edges_)
      if (alive[e.src] && alive[e.dst]) es.push_back(e);
    return LabeledGraph(nv_, base_, std::move(es)).fold();
  }

  // Fiber product: based component of the product graph; reads exactly the
  // intersection of the two subgroups.
  static LabeledGraph pullback(const LabeledGraph& g1, const LabeledGraph& g2) {
    g1.require_folded();
    g2.require_folded();
    std::map<std::pair<int, int>, int> id;
    std::vector<std::pair<int, int>> order;
    auto get = [&](int u, int v) {
      auto [it, fresh] = id.try_emplace({u, v}, static_cast<int>(order.size()));
      if (fresh) order.push_back({u, v});
      return it->second;
    };
    get(g1.base_, g2.base_);
    std::vector<Edge> es;
    for (std::size_t k = 0; k < order.size(); ++k) {
      auto [u, v] = order[k];
      for (int l = 0; l < 2; ++l) {
        Letter lab = l == 0 ? Letter::A : Letter::B;
        int u2 = g1.out_[u][l], v2 = g2.out_[v][l];
        if (u2 != -1 && v2 != -1) es.push_back({static_cast<int>(k), get(u2, v2), lab});
        int u0 = g1.in_[u][l], v0 = g2.in_[v][l];
        if (u0 != -1 && v0 != -1) (void)get(u0, v0);
      }
    }
    return LabeledGraph(static_cast<int>(order.size()), 0, std::move(es)).fold();
  }

  // Nielsen-Schreier basis from the BFS spanning tree (a-edges before
  // b-edges), one word per non-tree edge, in discovery order.
  std::vector<Word> basis() const {
    auto [words, slots] = basis_with_slots();
    (void)slots;
    return words;
  }

  // Expresses a closed word in the basis: emits (index, +-1) at each
  // crossing of a non-tree edge.
  std::vector<std::pair<int, int>> express(const Word& w) const {
    require_folded();
    TraceResult t = trace(w);
    if (!t.closed()) fail(ErrorKind::NotAMember, "word is not in the subgroup");
    auto [words, slot_index] = basis_with_slots();
    (void)words;
    if (w.length() > 1000000) fail(ErrorKind::SizeCap, "word too long for express");
    std::vector<std::pair<int, int>> out;
    int v = base_;
    for (const Run& r : w.runs()) {
      int l = idx(r.letter);
      int dir = r.exp > 0 ? 1 : -1;
      for (Int i = 0, n = abs(r.exp); i < n; ++i) {
        int u = dir > 0 ? v : in_[v][l];
        int nxt = dir > 0 ? out_[v][l] : in_[v][l];
        auto it = slot_index.find({u, l});
        if (it != slot_index.end()) out.push_back({it->second, dir});
        v = nxt;
      }
    }
    return out;
  }

  // Extends the core to a finite cover whose base-point stabilizer S
  // contains the subgroup and excludes `avoid`.
  PermRep hall_complete(const Word& avoid, long vertex_cap = kDefaultVertexCap) const {
    require_folded();
    if (trace(avoid).closed()) fail(ErrorKind::AlreadyMember, "avoid word lies in the subgroup");

    // Materialize the avoid path, adding fresh vertices where edges are
    // missing.
    std::vector<std::array<int, 2>> o = out_, i = in_;
    auto add_vertex = [&] {
      if (static_cast<long>(o.size()) >= vertex_cap)
        fail(ErrorKind::SizeCap, "cover exceeds vertex cap");
      o.push_back({-1, -1});
      i.push_back({-1, -1});
      return static_cast<int>(o.size()) - 1;
    };
    int v = base_;
    for (const Run& r : avoid.runs()) {
      int l = idx(r.letter);
      int dir = r.exp > 0 ? 1 : -1;
      for (Int k = 0, n = abs(r.exp); k < n; ++k) {
        int nxt = dir > 0 ? o[v][l] : i[v][l];
        if (nxt == -1) {
          nxt = add_vertex();
          if (dir > 0) {
            o[v][l] = nxt;
            i[nxt][l] = v;
          } else {
            i[v][l] = nxt;
            o[nxt][l] = v;
          }
        }
        v = nxt;
      }
    }

    for (int attempt = 0; attempt < 2; ++attempt) {
      PermRep rep;
      rep.degree = static_cast<int>(o.size());
      for (int l = 0; l < 2; ++l) {
        std::vector<int> perm(o.size(), -1);
        std::vector<int> srcs, dsts;
        for (int u = 0; u < rep.degree; ++u) {
          if (o[u][l] != -1)
            perm[u] = o[u][l];
          else
            srcs.push_back(u);
          if (i[u][l] == -1) dsts.push_back(u);
        }
        for (std::size_t k = 0; k < srcs.size(); ++k) perm[srcs[k]] = dsts[k];
        (l == 0 ? rep.perm_a : rep.perm_b) = std::move(perm);
      }
      if (rep.act(base_, avoid) != base_) return rep;
      add_vertex();  // one extra sheet shifts the completion matching
    }
    fail(ErrorKind::SizeCap, "hall completion failed to exclude avoid word");
  }

  std::string to_dot() const {
    std::string s = "digraph stallings {\n  rankdir=LR;\n  node [shape=circle];\n";
    s += "  " + std::to_string(base_) + " [style=bold, penwidth=3];\n";
    for (const Edge& e : edges_) {
      bool a = e.label == Letter::A;
      s += "  " + std::to_string(e.src) + " -> " + std::to_string(e.dst) +
           " [label=\"" + (a ? "a" : "b") + "\", color=" + (a ? "blue" : "red") + "];\n";
    }
    s += "}\n";
    return s;
  }

 private:
  static int idx(Letter l) { return l == Letter::A ? 0 : 1; }

  void require_folded() const {
    if (!folded_) fail(ErrorKind::BadInput, "operation requires a folded graph");
  }

  void build_adjacency() {
    out_.assign(nv_, {-1, -1});
    in_.assign(nv_, {-1, -1});
    for (const Edge& e : edges_) {
      int l = idx(e.label);
      if (out_[e.src][l] != -1 || in_[e.dst][l] != -1)
        fail(ErrorKind::BadInput, "graph is not deterministic");
      out_[e.src][l] = e.dst;
      in_[e.dst][l] = e.src;
    }
    folded_ = true;
  }

  // Follows label-l edges for t steps.  A folded label/direction is a
  // partial injection, so a walk either hits a missing edge or returns to
  // its start; huge exponents reduce modulo the cycle length.
  std::pair<int, Int> advance(int start, Letter lab, int dir, const Int& t) const {
    int l = idx(lab);
    std::vector<int> path{start};
    Int done = 0;
    while (done < t) {
      int cur = path.back();
      int nxt = dir > 0 ? out_[cur][l] : in_[cur][l];
      if (nxt == -1) return {cur, done};
      ++done;
      if (nxt == start) {
        Int rem = floor_mod(t, done);
        return {path[rem.get_ui()], t};
      }
      path.push_back(nxt);
    }
    return {path.back(), t};
  }

  std::pair<std::vector<Word>, std::map<std::pair<int, int>, int>> basis_with_slots() const {
    require_folded();
    std::vector<Word> path_to(nv_);
    std::vector<char> seen(nv_, 0);
    std::set<std::pair<int, int>> tree;  // out-slot (vertex, label)
    std::vector<int> order{base_};
    seen[base_] = 1;
    for (std::size_t k = 0; k < order.size(); ++k) {
      int v = order[k];
      for (int l = 0; l < 2; ++l) {
        Letter lab = l == 0 ? Letter::A : Letter::B;
        int t = out_[v][l];
        if (t != -1 && !seen[t]) {
          seen[t] = 1;
          tree.insert({v, l});
          path_to[t] = path_to[v] * Word::letter(lab);
          order.push_back(t);
        }
        int s = in_[v][l];
        if (s != -1 && !seen[s]) {
          seen[s] = 1;
          tree.insert({s, l});
          path_to[s] = path_to[v] * Word::letter(lab, -1);
          order.push_back(s);
        }
      }
    }
    std::vector<Word> words;
    std::map<std::pair<int, int>, int> slot_index;
    for (int v : order) {
      for (int l = 0; l < 2; ++l) {
        int t = out_[v][l];
        if (t == -1 || tree.count({v, l})) continue;
        Letter lab = l == 0 ? Letter::A : Letter::B;
        slot_index[{v, l}] = static_cast<int>(words.size());
        words.push_back(path_to[v] * Word::letter(lab) * path_to[t].inverse());
      }
    }
    return {words, slot_index};
  }

  int nv_ = 0;
  int base_ = 0;
  std::vector<Edge> edges_;
  bool folded_ = false;
  std::vector<std::array<int, 2>> out_, in_;
};

}  // namespace fdl
