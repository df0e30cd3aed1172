#include "polytree/isomorphism.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "polytree/errors.hpp"

namespace polytree {

namespace {

struct Side {
  const Tree* tree;
  std::vector<bool> in;      // edge lies in T(k)
  std::vector<int> mark;     // 0 none, 1 on the path above the mark, 2 carries the mark
  int mark_vertex = -1;      // vertex carrying the mark
  std::vector<int> color;
};

Side prepare(const Tree& t, int k) {
  if (t.depth < k) throw InvalidArgument("degeneration", "tree depth is below the requested truncation");
  Side s{&t, std::vector<bool>(t.edges.size(), false), std::vector<int>(t.edges.size(), 0), -1, {}};
  const double top = std::pow(t.d, k) * t.base_height() * (1.0 + 1e-9);
  for (const auto& e : t.edges) {
    if (e.trunk) s.in[static_cast<std::size_t>(e.id)] = e.bottom_height < top;
    else s.in[static_cast<std::size_t>(e.id)] = e.level < k;
  }
  return s;
}

// Replaces a point by the nearest point of T(k) and records the mark.
void place_mark(Side& s, TreePoint p, int k) {
  const Tree& t = *s.tree;
  int e = -1;
  switch (p.kind) {
    case TreePoint::Kind::Vertex:
      if (t.vertex(p.id).depth <= k) {
        s.mark_vertex = p.id;
        e = t.vertex(p.id).parent_edge;
      } else {
        e = t.vertex(p.id).parent_edge;
      }
      break;
    case TreePoint::Kind::Edge:
    case TreePoint::Kind::Truncated:
      e = p.id;
      break;
    case TreePoint::Kind::JuliaEnd:
      throw InvalidArgument("degeneration", "cannot mark a Julia end");
  }
  while (e >= 0 && !s.in[static_cast<std::size_t>(e)]) {
    // Climb to the first edge inside T(k); its bottom vertex is the mark.
    const int top = t.edge(e).top;
    if (top < 0) break;
    if (t.vertex(top).depth <= k && !t.edge(e).trunk) s.mark_vertex = top;
    e = t.vertex(top).parent_edge;
  }
  if (s.mark_vertex < 0 && e >= 0) s.mark[static_cast<std::size_t>(e)] = 2;
  for (int cur = e; cur >= 0; cur = t.parent(cur))
    if (s.mark[static_cast<std::size_t>(cur)] == 0) s.mark[static_cast<std::size_t>(cur)] = 1;
}

void refine(std::vector<Side*> sides) {
  std::map<std::vector<int>, int> dict;
  auto id_of = [&](std::vector<int> key) {
    auto [it, inserted] = dict.emplace(std::move(key), static_cast<int>(dict.size()));
    return it->second;
  };
  for (Side* s : sides) {
    const Tree& t = *s->tree;
    s->color.assign(t.edges.size(), -1);
    for (const auto& e : t.edges) {
      if (!s->in[static_cast<std::size_t>(e.id)]) continue;
      const int bottom_marked = (e.bottom >= 0 && e.bottom == s->mark_vertex) ? 1 : 0;
      s->color[static_cast<std::size_t>(e.id)] =
          id_of({e.trunk ? 1 + e.id : 0, e.level, e.degree,
                 s->mark[static_cast<std::size_t>(e.id)], bottom_marked});
    }
  }
  std::size_t distinct = dict.size();
  for (int round = 0; round < 64; ++round) {
    dict.clear();
    std::vector<std::vector<int>> next;
    for (Side* s : sides) {
      const Tree& t = *s->tree;
      std::vector<int> col(t.edges.size(), -1);
      for (const auto& e : t.edges) {
        if (!s->in[static_cast<std::size_t>(e.id)]) continue;
        auto color_of = [&](int x) {
          return (x >= 0 && s->in[static_cast<std::size_t>(x)]) ? s->color[static_cast<std::size_t>(x)] : -1;
        };
        std::vector<int> key{s->color[static_cast<std::size_t>(e.id)], color_of(e.image), color_of(t.parent(e.id))};
        std::vector<int> kids;
        if (e.bottom >= 0 && !e.trunk)
          for (int c : t.vertex(e.bottom).child_edges) kids.push_back(color_of(c));
        std::sort(kids.begin(), kids.end());
        key.push_back(static_cast<int>(kids.size()));
        key.insert(key.end(), kids.begin(), kids.end());
        col[static_cast<std::size_t>(e.id)] = id_of(key);
      }
      next.push_back(std::move(col));
    }
    for (std::size_t i = 0; i < sides.size(); ++i) sides[i]->color = std::move(next[i]);
    if (dict.size() == distinct) break;
    distinct = dict.size();
  }
}

bool match_below(const Side& a, const Side& b, int va, int vb, TreeMapping& m) {
  const Tree& ta = *a.tree;
  const Tree& tb = *b.tree;
  m.vertex[static_cast<std::size_t>(va)] = vb;
  std::vector<int> ka, kb;
  for (int c : ta.vertex(va).child_edges)
    if (a.in[static_cast<std::size_t>(c)]) ka.push_back(c);
  for (int c : tb.vertex(vb).child_edges)
    if (b.in[static_cast<std::size_t>(c)]) kb.push_back(c);
  if (ka.size() != kb.size()) return false;
  std::vector<bool> used(kb.size(), false);
  for (int ea : ka) {
    bool ok = false;
    for (std::size_t j = 0; j < kb.size() && !ok; ++j) {
      const int eb = kb[j];
      if (used[j] || a.color[static_cast<std::size_t>(ea)] != b.color[static_cast<std::size_t>(eb)]) continue;
      used[j] = true;
      m.edge[static_cast<std::size_t>(ea)] = eb;
      const int ba = ta.edge(ea).bottom, bb = tb.edge(eb).bottom;
      if ((ba < 0) != (bb < 0)) return false;
      if (ba >= 0 && !match_below(a, b, ba, bb, m)) return false;
      ok = true;
    }
    if (!ok) return false;
  }
  return true;
}

std::optional<TreeMapping> solve(Side& a, Side& b) {
  refine({&a, &b});
  const Tree& ta = *a.tree;
  const Tree& tb = *b.tree;
  TreeMapping m{std::vector<int>(ta.vertices.size(), -1), std::vector<int>(ta.edges.size(), -1)};
  // Trunk edges correspond by rank.
  std::vector<int> trunk_a, trunk_b;
  for (int e = 0;; ++e) {
    if (e > ta.top_edge && e > tb.top_edge) break;
    const bool ia = e <= ta.top_edge && a.in[static_cast<std::size_t>(e)];
    const bool ib = e <= tb.top_edge && b.in[static_cast<std::size_t>(e)];
    if (ia != ib) return std::nullopt;
    if (!ia) continue;
    if (a.color[static_cast<std::size_t>(e)] != b.color[static_cast<std::size_t>(e)]) return std::nullopt;
    m.edge[static_cast<std::size_t>(e)] = e;
    m.vertex[static_cast<std::size_t>(ta.edge(e).bottom)] = tb.edge(e).bottom;
  }
  if (!match_below(a, b, ta.base, tb.base, m)) return std::nullopt;
  // Dynamics: phi(F e) = F(phi e) whenever both images are in the truncations.
  for (const auto& e : ta.edges) {
    const int me = m.edge[static_cast<std::size_t>(e.id)];
    if (me < 0) continue;
    const int fa = e.image, fb = tb.edge(me).image;
    const bool ina = fa >= 0 && a.in[static_cast<std::size_t>(fa)];
    const bool inb = fb >= 0 && b.in[static_cast<std::size_t>(fb)];
    if (ina != inb) return std::nullopt;
    if (ina && m.edge[static_cast<std::size_t>(fa)] != fb) return std::nullopt;
  }
  if (a.mark_vertex >= 0 && m.vertex[static_cast<std::size_t>(a.mark_vertex)] != b.mark_vertex) return std::nullopt;
  return m;
}

}  // namespace

std::optional<TreeMapping> truncation_isomorphic(const Tree& t1, const Tree& t2, int k) {
  if (t1.d != t2.d) return std::nullopt;
  Side a = prepare(t1, k), b = prepare(t2, k);
  return solve(a, b);
}

std::optional<TreeMapping> truncation_isomorphic(const Tree& t1, const TreePoint& p1, const Tree& t2,
                                                 const TreePoint& p2, int k) {
  if (t1.d != t2.d) return std::nullopt;
  Side a = prepare(t1, k), b = prepare(t2, k);
  place_mark(a, p1, k);
  place_mark(b, p2, k);
  return solve(a, b);
}

}  // namespace polytree
