#include "conwaykit/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace ck {

namespace {

struct SlotRef {
  int crossing = -1;
  bool under = false;
};

struct Slots {
  std::map<int, SlotRef> head, tail;
};

Slots slots_of(const LinkDiagram& d) {
  Slots s;
  auto put = [](std::map<int, SlotRef>& m, int e, int ci, bool under) {
    if (e < 1) throw DiagramError("edge ids must be positive");
    if (!m.emplace(e, SlotRef{ci, under}).second)
      throw DiagramError("edge " + std::to_string(e) + " attached twice on the same side");
  };
  for (int i = 0; i < static_cast<int>(d.crossings.size()); ++i) {
    const Crossing& c = d.crossings[i];
    put(s.head, c.under_in, i, true);
    put(s.head, c.over_in, i, false);
    put(s.tail, c.under_out, i, true);
    put(s.tail, c.over_out, i, false);
  }
  return s;
}

int successor(const LinkDiagram& d, const Slots& s, int e) {
  const SlotRef& h = s.head.at(e);
  const Crossing& c = d.crossings[h.crossing];
  return h.under ? c.under_out : c.over_out;
}

// Flat per-edge-id head tables.  Usable only when edge ids are compact enough
// to index directly; build() refuses sparse labelings and structurally broken
// diagrams so callers can fall back to the map-based path (which also carries
// the error reporting).
struct DenseHeads {
  int maxe = 0;
  std::vector<int> cross;            // head crossing per edge id, -1 when absent
  std::vector<unsigned char> under;  // edge enters on the under-strand
  std::vector<unsigned char> circle;
  std::vector<int> succ;  // next edge along the oriented walk

  bool build(const LinkDiagram& d) {
    long long m = d.max_edge();
    long long budget = 4 * static_cast<long long>(d.crossings.size()) +
                       static_cast<long long>(d.circles.size()) + 64;
    if (m > budget) return false;
    maxe = static_cast<int>(m);
    cross.assign(maxe + 1, -1);
    under.assign(maxe + 1, 0);
    circle.assign(maxe + 1, 0);
    succ.assign(maxe + 1, 0);
    for (int i = 0; i < static_cast<int>(d.crossings.size()); ++i) {
      const Crossing& c = d.crossings[i];
      if (c.under_in < 1 || c.over_in < 1 || c.under_out < 1 || c.over_out < 1) return false;
      if (cross[c.under_in] >= 0 || (c.under_in != c.over_in && cross[c.over_in] >= 0))
        return false;
      cross[c.under_in] = i;
      under[c.under_in] = 1;
      cross[c.over_in] = i;
      succ[c.under_in] = c.under_out;
      succ[c.over_in] = c.over_out;
    }
    for (int e : d.circles) {
      if (e < 1 || circle[e] || cross[e] >= 0) return false;
      circle[e] = 1;
    }
    return true;
  }
};

// Walks every component in ascending-start-edge order.  Returns false (leaving
// comps unspecified) when the diagram needs the map-based path instead.
bool dense_components(const LinkDiagram& d, DenseHeads& h, std::vector<std::vector<int>>& comps) {
  if (!h.build(d)) return false;
  std::vector<unsigned char> seen(h.maxe + 1, 0);
  for (int e = 1; e <= h.maxe; ++e) {
    if (seen[e]) continue;
    if (h.circle[e]) {
      seen[e] = 1;
      comps.push_back({e});
      continue;
    }
    if (h.cross[e] < 0) continue;
    std::vector<int> walk{e};
    seen[e] = 1;
    int steps = 0;
    for (int x = h.succ[e]; x != e; x = h.succ[x]) {
      if (x < 1 || x > h.maxe || h.cross[x] < 0 || seen[x] || ++steps > h.maxe) {
        comps.clear();
        return false;
      }
      walk.push_back(x);
      seen[x] = 1;
    }
    comps.push_back(std::move(walk));
  }
  return true;
}

// Union-find over edge ids used when crossings are removed and their strands
// rejoined.  unite(a, b) records "a continues as b"; a closed loop (uniting a
// class with itself) yields a free circle.
struct Glue {
  std::map<int, int> par;
  int find(int x) {
    auto it = par.find(x);
    if (it == par.end() || it->second == x) return x;
    int r = find(it->second);
    par[x] = r;
    return r;
  }
  // returns true when the glue closed a loop
  bool unite(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return true;
    if (ra > rb) std::swap(ra, rb);
    par[rb] = ra;
    par.emplace(ra, ra);
    return false;
  }
};

LinkDiagram rebuild_without(const LinkDiagram& d, const std::set<int>& drop, Glue& g,
                            const std::vector<int>& closed) {
  LinkDiagram r;
  for (int i = 0; i < static_cast<int>(d.crossings.size()); ++i) {
    if (drop.count(i)) continue;
    Crossing c = d.crossings[i];
    c.under_in = g.find(c.under_in);
    c.under_out = g.find(c.under_out);
    c.over_in = g.find(c.over_in);
    c.over_out = g.find(c.over_out);
    r.crossings.push_back(c);
  }
  r.circles = d.circles;
  for (int e : closed) r.circles.push_back(g.find(e));
  return normalize(r);
}

// Reverse the orientation of a set of passages: the walk enters `crossing` on
// the under or over strand once or twice; each reversed strand swaps its
// in/out slots, and the sign flips when exactly one of the two strands turns.
void reverse_passages(LinkDiagram& d, const std::map<int, std::vector<bool>>& touched) {
  for (const auto& [ci, passes] : touched) {
    Crossing& c = d.crossings[ci];
    for (bool under : passes) {
      if (under)
        std::swap(c.under_in, c.under_out);
      else
        std::swap(c.over_in, c.over_out);
    }
    if (passes.size() == 1) c.sign = -c.sign;
  }
}

}  // namespace

int LinkDiagram::writhe() const {
  int w = 0;
  for (const auto& c : crossings) w += c.sign;
  return w;
}

int LinkDiagram::max_edge() const {
  int m = 0;
  for (const auto& c : crossings)
    m = std::max({m, c.under_in, c.under_out, c.over_in, c.over_out});
  for (int e : circles) m = std::max(m, e);
  return m;
}

int BraidWord::exponent_sum() const {
  int s = 0;
  for (auto& [g, e] : letters) s += e;
  return s;
}

void validate(const LinkDiagram& d) {
  Slots s = slots_of(d);
  if (s.head.size() != s.tail.size()) throw DiagramError("open strand ends");
  for (const auto& [e, ref] : s.head)
    if (!s.tail.count(e)) throw DiagramError("edge " + std::to_string(e) + " has no start");
  std::set<int> seen;
  for (int e : d.circles) {
    if (e < 1) throw DiagramError("edge ids must be positive");
    if (s.head.count(e) || s.tail.count(e))
      throw DiagramError("circle edge " + std::to_string(e) + " attached to a crossing");
    if (!seen.insert(e).second) throw DiagramError("duplicate circle edge");
  }
  for (const auto& c : d.crossings)
    if (c.sign != 1 && c.sign != -1) throw DiagramError("crossing sign must be +1 or -1");
}

LinkDiagram normalize(const LinkDiagram& d) {
  long long m = d.max_edge();
  long long budget = 4 * static_cast<long long>(d.crossings.size()) +
                     static_cast<long long>(d.circles.size()) + 64;
  int low = 1;
  for (const auto& c : d.crossings)
    low = std::min({low, c.under_in, c.under_out, c.over_in, c.over_out});
  for (int e : d.circles) low = std::min(low, e);
  LinkDiagram r = d;
  if (m <= budget && low >= 1) {
    std::vector<int> remap(m + 1, 0);
    for (const auto& c : d.crossings) {
      remap[c.under_in] = 1;
      remap[c.under_out] = 1;
      remap[c.over_in] = 1;
      remap[c.over_out] = 1;
    }
    for (int e : d.circles) remap[e] = 1;
    int next = 0;
    for (long long e = 1; e <= m; ++e)
      if (remap[e]) remap[e] = ++next;
    for (auto& c : r.crossings) {
      c.under_in = remap[c.under_in];
      c.under_out = remap[c.under_out];
      c.over_in = remap[c.over_in];
      c.over_out = remap[c.over_out];
    }
    for (auto& e : r.circles) e = remap[e];
  } else {
    std::set<int> ids;
    for (const auto& c : d.crossings) {
      ids.insert(c.under_in);
      ids.insert(c.under_out);
      ids.insert(c.over_in);
      ids.insert(c.over_out);
    }
    for (int e : d.circles) ids.insert(e);
    std::map<int, int> remap;
    int next = 1;
    for (int e : ids) remap[e] = next++;
    for (auto& c : r.crossings) {
      c.under_in = remap[c.under_in];
      c.under_out = remap[c.under_out];
      c.over_in = remap[c.over_in];
      c.over_out = remap[c.over_out];
    }
    for (auto& e : r.circles) e = remap[e];
  }
  std::sort(r.circles.begin(), r.circles.end());
  return r;
}

namespace {

std::vector<std::vector<int>> components_by_map(const LinkDiagram& d) {
  Slots s = slots_of(d);
  std::set<int> todo;
  for (const auto& [e, ref] : s.head) todo.insert(e);
  for (int e : d.circles) todo.insert(e);
  std::set<int> circ(d.circles.begin(), d.circles.end());
  std::vector<std::vector<int>> comps;
  while (!todo.empty()) {
    int start = *todo.begin();
    std::vector<int> walk{start};
    todo.erase(start);
    if (!circ.count(start)) {
      for (int e = successor(d, s, start); e != start; e = successor(d, s, e)) {
        walk.push_back(e);
        todo.erase(e);
      }
    }
    comps.push_back(std::move(walk));
  }
  return comps;
}

}  // namespace

std::vector<std::vector<int>> components(const LinkDiagram& d) {
  DenseHeads h;
  std::vector<std::vector<int>> comps;
  if (dense_components(d, h, comps)) return comps;
  return components_by_map(d);
}

TraversalReport traverse(const LinkDiagram& d) {
  TraversalReport r;
  r.writhe = d.writhe();
  DenseHeads h;
  if (dense_components(d, h, r.components)) {
    std::vector<unsigned char> met(d.crossings.size(), 0);
    for (const auto& walk : r.components) {
      if (h.circle[walk.front()]) continue;
      for (int e : walk) {
        int ci = h.cross[e];
        if (!met[ci]) {
          met[ci] = 1;
          if (h.under[e]) r.bad.push_back(ci);
        }
      }
    }
    r.descending = r.bad.empty();
    return r;
  }
  Slots s = slots_of(d);
  r.components = components_by_map(d);
  std::set<int> circ(d.circles.begin(), d.circles.end());
  std::set<int> met;
  for (const auto& walk : r.components) {
    if (circ.count(walk.front())) continue;
    for (int e : walk) {
      const SlotRef& h2 = s.head.at(e);
      if (met.insert(h2.crossing).second && h2.under) r.bad.push_back(h2.crossing);
    }
  }
  r.descending = r.bad.empty();
  return r;
}

static int comp_of_edge(const std::vector<std::vector<int>>& comps, int e) {
  for (int i = 0; i < static_cast<int>(comps.size()); ++i)
    for (int x : comps[i])
      if (x == e) return i;
  throw DiagramError("edge not in any component");
}

int linking_number(const LinkDiagram& d, int ci, int cj) {
  if (ci == cj) throw DiagramError("linking number needs two distinct components");
  auto comps = components(d);
  int sum = 0;
  for (const auto& c : d.crossings) {
    int cu = comp_of_edge(comps, c.under_in);
    int co = comp_of_edge(comps, c.over_in);
    if ((cu == ci && co == cj) || (cu == cj && co == ci)) sum += c.sign;
  }
  if (sum % 2 != 0) throw DiagramError("odd mixed crossing sum");
  return sum / 2;
}

std::vector<std::vector<int>> linking_matrix(const LinkDiagram& d) {
  auto comps = components(d);
  int n = static_cast<int>(comps.size());
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (const auto& c : d.crossings) {
    int cu = comp_of_edge(comps, c.under_in);
    int co = comp_of_edge(comps, c.over_in);
    if (cu != co) {
      m[cu][co] += c.sign;
      m[co][cu] += c.sign;
    }
  }
  for (auto& row : m)
    for (auto& v : row) {
      if (v % 2 != 0) throw DiagramError("odd mixed crossing sum");
      v /= 2;
    }
  return m;
}

LinkDiagram switch_crossing(const LinkDiagram& d, int p) {
  LinkDiagram r = d;
  Crossing& c = r.crossings.at(p);
  std::swap(c.under_in, c.over_in);
  std::swap(c.under_out, c.over_out);
  c.sign = -c.sign;
  return r;
}

LinkDiagram smooth_oriented(const LinkDiagram& d, int p) {
  const Crossing& c = d.crossings.at(p);
  Glue g;
  std::vector<int> closed;
  if (g.unite(c.under_in, c.over_out)) closed.push_back(c.under_in);
  if (g.unite(c.over_in, c.under_out)) closed.push_back(c.over_in);
  return rebuild_without(d, {p}, g, closed);
}

UnorientedSmoothing smooth_unoriented_ex(const LinkDiagram& d, int p) {
  const Crossing& c = d.crossings.at(p);
  DenseHeads fast;
  bool dense = fast.build(d);
  Slots s;
  if (!dense) s = slots_of(d);
  auto head_of = [&](int e) {
    if (dense) return SlotRef{fast.cross[e], fast.under[e] != 0};
    return s.head.at(e);
  };
  auto walk_piece = [&](int start) {
    std::vector<int> seq{start};
    while (head_of(seq.back()).crossing != p)
      seq.push_back(dense ? fast.succ[seq.back()] : successor(d, s, seq.back()));
    return seq;
  };
  std::vector<int> pu = walk_piece(c.under_out);
  std::vector<int> po = walk_piece(c.over_out);
  bool rev_u;
  if (pu.size() != po.size())
    rev_u = pu.size() < po.size();
  else
    rev_u = *std::min_element(pu.begin(), pu.end()) < *std::min_element(po.begin(), po.end());
  const std::vector<int>& rev = rev_u ? pu : po;

  LinkDiagram work = d;
  std::map<int, std::vector<bool>> touched;
  for (int e : rev) {
    SlotRef h = head_of(e);
    if (h.crossing != p) touched[h.crossing].push_back(h.under);
  }
  reverse_passages(work, touched);

  int out1 = rev.back();                                        // now leaves p's in side
  int in1 = (c.under_in == out1) ? c.over_in : c.under_in;      // still arrives there
  int in2 = rev.front();                                        // now arrives on p's out side
  int out2 = (c.under_out == in2) ? c.over_out : c.under_out;   // still leaves there
  Glue g;
  std::vector<int> closed;
  if (g.unite(in1, out1)) closed.push_back(in1);
  if (g.unite(in2, out2)) closed.push_back(in2);
  UnorientedSmoothing result;
  result.diagram = rebuild_without(work, {p}, g, closed);
  result.reversed_edges = std::set<int>(rev.begin(), rev.end());
  return result;
}

LinkDiagram smooth_unoriented(const LinkDiagram& d, int p) {
  return smooth_unoriented_ex(d, p).diagram;
}

LinkDiagram mirror(const LinkDiagram& d) {
  LinkDiagram r = d;
  for (auto& c : r.crossings) {
    std::swap(c.under_in, c.over_in);
    std::swap(c.under_out, c.over_out);
    c.sign = -c.sign;
  }
  return r;
}

LinkDiagram reverse_all(const LinkDiagram& d) {
  LinkDiagram r = d;
  for (auto& c : r.crossings) {
    std::swap(c.under_in, c.under_out);
    std::swap(c.over_in, c.over_out);
  }
  return r;
}

LinkDiagram reverse_component(const LinkDiagram& d, int ci) {
  auto comps = components(d);
  if (ci < 0 || ci >= static_cast<int>(comps.size())) throw DiagramError("no such component");
  Slots s = slots_of(d);
  std::set<int> circ(d.circles.begin(), d.circles.end());
  LinkDiagram r = d;
  if (circ.count(comps[ci].front())) return r;
  std::map<int, std::vector<bool>> touched;
  for (int e : comps[ci]) {
    const SlotRef& h = s.head.at(e);
    touched[h.crossing].push_back(h.under);
  }
  reverse_passages(r, touched);
  return r;
}

LinkDiagram disjoint_union(const LinkDiagram& a, const LinkDiagram& b) {
  int off = a.max_edge();
  LinkDiagram r = a;
  for (Crossing c : b.crossings) {
    c.under_in += off;
    c.under_out += off;
    c.over_in += off;
    c.over_out += off;
    r.crossings.push_back(c);
  }
  for (int e : b.circles) r.circles.push_back(e + off);
  return normalize(r);
}

LinkDiagram connected_sum(const LinkDiagram& a, const LinkDiagram& b) {
  auto ca = components(a), cb = components(b);
  if (ca.empty() || cb.empty()) throw DiagramError("connected sum with empty diagram");
  std::set<int> circa(a.circles.begin(), a.circles.end());
  std::set<int> circb(b.circles.begin(), b.circles.end());
  int e1 = ca.front().front();
  int e2 = cb.front().front();
  if (circa.count(e1)) {
    LinkDiagram a2 = a;
    a2.circles.erase(std::find(a2.circles.begin(), a2.circles.end(), e1));
    if (a2.crossings.empty() && a2.circles.empty()) return normalize(b);
    return disjoint_union(normalize(a2), b);
  }
  if (circb.count(e2)) return connected_sum(b, a);
  int off = a.max_edge();
  LinkDiagram r = a;
  for (Crossing c : b.crossings) {
    c.under_in += off;
    c.under_out += off;
    c.over_in += off;
    c.over_out += off;
    r.crossings.push_back(c);
  }
  for (int e : b.circles) r.circles.push_back(e + off);
  e2 += off;
  Slots s = slots_of(r);
  auto set_head = [&](int e, int val) {
    const SlotRef& h = s.head.at(e);
    Crossing& c = r.crossings[h.crossing];
    (h.under ? c.under_in : c.over_in) = val;
  };
  set_head(e1, e2);
  set_head(e2, e1);
  return normalize(r);
}

LinkDiagram sublink(const LinkDiagram& d, const std::set<int>& keep) {
  auto comps = components(d);
  for (int i : keep)
    if (i < 0 || i >= static_cast<int>(comps.size())) throw DiagramError("no such component");
  auto kept_edge = [&](int e) { return keep.count(comp_of_edge(comps, e)) > 0; };
  Glue g;
  std::vector<int> closed;
  std::set<int> drop;
  for (int i = 0; i < static_cast<int>(d.crossings.size()); ++i) {
    const Crossing& c = d.crossings[i];
    bool ku = kept_edge(c.under_in), ko = kept_edge(c.over_in);
    if (ku && ko) continue;
    drop.insert(i);
    if (ku && g.unite(c.under_in, c.under_out)) closed.push_back(c.under_in);
    if (ko && g.unite(c.over_in, c.over_out)) closed.push_back(c.over_in);
  }
  LinkDiagram pruned = d;
  pruned.circles.clear();
  for (int e : d.circles)
    if (kept_edge(e)) pruned.circles.push_back(e);
  LinkDiagram r;
  for (int i = 0; i < static_cast<int>(pruned.crossings.size()); ++i) {
    if (drop.count(i)) continue;
    r.crossings.push_back(pruned.crossings[i]);
  }
  for (auto& c : r.crossings) {
    c.under_in = g.find(c.under_in);
    c.under_out = g.find(c.under_out);
    c.over_in = g.find(c.over_in);
    c.over_out = g.find(c.over_out);
  }
  r.circles = pruned.circles;
  for (int e : closed) r.circles.push_back(g.find(e));
  return normalize(r);
}

// --- pretzel -----------------------------------------------------------------

namespace {

// corner indices: 0 TL, 1 TR, 2 BL, 3 BR; a strand entering corner x leaves at 3-x
struct PortRef {
  int crossing = -1;  // -1: connector node
  int corner = 0;
  int connector = -1;
  bool operator<(const PortRef& o) const {
    return std::tie(crossing, corner, connector) < std::tie(o.crossing, o.corner, o.connector);
  }
  bool operator==(const PortRef&) const = default;
};

}  // namespace

LinkDiagram pretzel(const std::vector<int>& twists) {
  int n = static_cast<int>(twists.size());
  if (n == 0) throw DiagramError("pretzel needs at least one twist region");
  // connector ids: strip k gets 4: top-left, top-right, bottom-left, bottom-right
  auto conn = [&](int k, int which) { return k * 4 + which; };  // 0 TL,1 TR,2 BL,3 BR
  std::vector<std::pair<PortRef, PortRef>> segs;
  auto cport = [](int crossing, int corner) { return PortRef{crossing, corner, -1}; };
  auto nport = [](int id) { return PortRef{-1, 0, id}; };
  int ncross = 0;
  std::vector<int> strip_first(n, -1);
  for (int k = 0; k < n; ++k) {
    int t = std::abs(twists[k]);
    if (t == 0) {
      segs.push_back({nport(conn(k, 0)), nport(conn(k, 2))});
      segs.push_back({nport(conn(k, 1)), nport(conn(k, 3))});
      continue;
    }
    strip_first[k] = ncross;
    segs.push_back({nport(conn(k, 0)), cport(ncross, 0)});
    segs.push_back({nport(conn(k, 1)), cport(ncross, 1)});
    for (int j = 0; j + 1 < t; ++j) {
      segs.push_back({cport(ncross + j, 2), cport(ncross + j + 1, 0)});
      segs.push_back({cport(ncross + j, 3), cport(ncross + j + 1, 1)});
    }
    segs.push_back({cport(ncross + t - 1, 2), nport(conn(k, 2))});
    segs.push_back({cport(ncross + t - 1, 3), nport(conn(k, 3))});
    ncross += t;
  }
  for (int k = 0; k < n; ++k) {
    int k2 = (k + 1) % n;
    segs.push_back({nport(conn(k, 1)), nport(conn(k2, 0))});  // top arc
    segs.push_back({nport(conn(k, 3)), nport(conn(k2, 2))});  // bottom arc
  }

  // contract connector nodes (degree 2) into diagram edges between corners
  std::map<PortRef, std::vector<int>> at;
  for (int i = 0; i < static_cast<int>(segs.size()); ++i) {
    at[segs[i].first].push_back(i);
    at[segs[i].second].push_back(i);
  }
  std::vector<bool> used(segs.size(), false);
  // edge endpoints as corner ports; closed connector loops become circles
  std::vector<std::pair<PortRef, PortRef>> edges;
  int loop_circles = 0;
  for (int i = 0; i < static_cast<int>(segs.size()); ++i) {
    if (used[i]) continue;
    used[i] = true;
    auto extend = [&](PortRef end, int seg) {
      while (end.crossing == -1) {
        const auto& inc = at[end];
        int nxt = inc[0] == seg ? (inc.size() > 1 ? inc[1] : -1) : inc[0];
        if (nxt == -1 || used[nxt]) return std::pair<PortRef, int>{end, -1};
        used[nxt] = true;
        end = segs[nxt].first == end ? segs[nxt].second : segs[nxt].first;
        seg = nxt;
      }
      return std::pair<PortRef, int>{end, seg};
    };
    auto [a, sa] = extend(segs[i].first, i);
    if (sa == -1 && a.crossing == -1) {
      ++loop_circles;  // pure connector loop
      continue;
    }
    auto [b, sb] = extend(segs[i].second, i);
    edges.push_back({a, b});
  }

  // orient components: walk through crossings (enter corner x, leave 3-x)
  std::map<PortRef, int> edge_at;  // corner port -> edge index
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    edge_at[edges[i].first] = i;
    edge_at[edges[i].second] = i;
  }
  std::vector<int> head_corner(edges.size(), -1);  // which endpoint is the head (0/1)
  std::vector<bool> oriented(edges.size(), false);
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    if (oriented[i]) continue;
    int e = i;
    PortRef into = edges[i].second;  // orient first edge from .first to .second
    while (!oriented[e]) {
      oriented[e] = true;
      head_corner[e] = (edges[e].second == into) ? 1 : 0;
      PortRef exit{into.crossing, 3 - into.corner, -1};
      int enext = edge_at.at(exit);
      into = (edges[enext].first == exit) ? edges[enext].second : edges[enext].first;
      e = enext;
    }
  }

  // assemble crossings: per crossing find the four incident edge ends
  LinkDiagram d;
  d.crossings.resize(ncross);
  for (int k = 0; k < n; ++k) {
    int t = std::abs(twists[k]);
    for (int j = 0; j < t; ++j) {
      int ci = strip_first[k] + j;
      int eid[4];
      bool in_at[4];
      for (int corner = 0; corner < 4; ++corner) {
        int e = edge_at.at(PortRef{ci, corner, -1});
        eid[corner] = e + 1;  // edge ids 1-based
        PortRef headp = head_corner[e] == 1 ? edges[e].second : edges[e].first;
        in_at[corner] = (headp == PortRef{ci, corner, -1});
      }
      // diagonal A occupies corners 0,3; diagonal B corners 1,2
      int a_in = in_at[0] ? 0 : 3, a_out = 3 - a_in;
      int b_in = in_at[1] ? 1 : 2, b_out = 3 - b_in;
      auto vec = [](int from, int to) {
        auto xy = [](int c) { return std::pair<int, int>{c == 0 || c == 2 ? 0 : 1, c < 2 ? 1 : 0}; };
        auto [x1, y1] = xy(from);
        auto [x2, y2] = xy(to);
        return std::pair<int, int>{x2 - x1, y2 - y1};
      };
      auto [ax, ay] = vec(a_in, a_out);
      auto [bx, by] = vec(b_in, b_out);
      bool over_b = twists[k] > 0;
      int det = over_b ? (bx * ay - by * ax) : (ax * by - ay * bx);
      Crossing& c = d.crossings[ci];
      c.sign = det > 0 ? 1 : -1;
      if (over_b) {
        c.over_in = eid[b_in];
        c.over_out = eid[b_out];
        c.under_in = eid[a_in];
        c.under_out = eid[a_out];
      } else {
        c.over_in = eid[a_in];
        c.over_out = eid[a_out];
        c.under_in = eid[b_in];
        c.under_out = eid[b_out];
      }
    }
  }
  int nextid = static_cast<int>(edges.size()) + 1;
  for (int i = 0; i < loop_circles; ++i) d.circles.push_back(nextid++);
  return normalize(d);
}

// --- braids ------------------------------------------------------------------

BraidWord parse_braid(const std::string& text, int strands) {
  BraidWord b;
  std::istringstream in(text);
  std::string tok;
  int maxgen = 0;
  while (in >> tok) {
    if (tok[0] != 's') throw DiagramError("braid letter must start with s: " + tok);
    size_t caret = tok.find('^');
    std::string gens = tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
    if (gens.empty() || !std::all_of(gens.begin(), gens.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw DiagramError("bad generator index in " + tok);
    int gen = std::stoi(gens);
    if (gen < 1) throw DiagramError("generator index must be >= 1");
    long long expo = 1;
    if (caret != std::string::npos) {
      std::string es = tok.substr(caret + 1);
      try {
        size_t used = 0;
        expo = std::stoll(es, &used);
        if (used != es.size()) throw std::invalid_argument("");
      } catch (...) {
        throw DiagramError("bad exponent in " + tok);
      }
    }
    maxgen = std::max(maxgen, gen);
    if (expo == 0) continue;
    int sgn = expo > 0 ? 1 : -1;
    for (long long i = 0; i < std::abs(expo); ++i) b.letters.push_back({gen, sgn});
  }
  b.strands = std::max(maxgen + 1, strands > 0 ? strands : 1);
  if (strands > 0 && maxgen + 1 > strands)
    throw DiagramError("braid word needs more strands than declared");
  if (b.strands < 1) b.strands = 1;
  return b;
}

std::string braid_to_text(const BraidWord& b) {
  std::ostringstream out;
  size_t i = 0;
  bool first = true;
  while (i < b.letters.size()) {
    size_t j = i;
    while (j < b.letters.size() && b.letters[j] == b.letters[i]) ++j;
    int run = static_cast<int>(j - i) * b.letters[i].second;
    if (!first) out << " ";
    out << "s" << b.letters[i].first;
    if (run != 1) out << "^" << run;
    first = false;
    i = j;
  }
  return out.str();
}

LinkDiagram braid_closure(const BraidWord& b) {
  int n = b.strands;
  std::vector<int> cur(n + 1);
  for (int j = 1; j <= n; ++j) cur[j] = j;
  int next = n + 1;
  LinkDiagram d;
  for (auto [gen, sgn] : b.letters) {
    if (gen + 1 > n) throw DiagramError("generator exceeds strand count");
    int a = cur[gen], bb = cur[gen + 1];
    int c = next++, e = next++;
    Crossing x;
    x.sign = sgn;
    if (sgn > 0) {
      x.over_in = a;
      x.over_out = e;
      x.under_in = bb;
      x.under_out = c;
    } else {
      x.under_in = a;
      x.under_out = e;
      x.over_in = bb;
      x.over_out = c;
    }
    d.crossings.push_back(x);
    cur[gen] = c;
    cur[gen + 1] = e;
  }
  for (int j = 1; j <= n; ++j) {
    if (cur[j] == j) {
      d.circles.push_back(j);
      continue;
    }
    for (auto& c : d.crossings) {
      if (c.under_in == cur[j]) c.under_in = j;
      if (c.under_out == cur[j]) c.under_out = j;
      if (c.over_in == cur[j]) c.over_in = j;
      if (c.over_out == cur[j]) c.over_out = j;
    }
  }
  return normalize(d);
}

BraidWord conjugate(const BraidWord& b, int gen, int sgn) {
  if (gen < 1 || gen >= b.strands) throw DiagramError("conjugating generator out of range");
  BraidWord r = b;
  r.letters.insert(r.letters.begin(), {gen, -sgn});
  r.letters.push_back({gen, sgn});
  return r;
}

BraidWord stabilize(const BraidWord& b, int sgn) {
  BraidWord r = b;
  r.letters.push_back({b.strands, sgn});
  r.strands = b.strands + 1;
  return r;
}

std::optional<BraidWord> destabilize(const BraidWord& b) {
  if (b.letters.empty() || b.strands < 2) return std::nullopt;
  int top = b.strands - 1;
  if (b.letters.back().first != top) return std::nullopt;
  for (size_t i = 0; i + 1 < b.letters.size(); ++i)
    if (b.letters[i].first == top) return std::nullopt;
  BraidWord r = b;
  r.letters.pop_back();
  r.strands = b.strands - 1;
  return r;
}

BraidWord insert_cancelling_pair(const BraidWord& b, size_t pos, int gen, int sgn) {
  if (gen < 1 || gen >= b.strands) throw DiagramError("generator out of range");
  if (pos > b.letters.size()) pos = b.letters.size();
  BraidWord r = b;
  r.letters.insert(r.letters.begin() + pos, {{gen, sgn}, {gen, -sgn}});
  return r;
}

BraidWord free_reduce(const BraidWord& b) {
  BraidWord r = b;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < r.letters.size(); ++i) {
      if (r.letters[i].first == r.letters[i + 1].first &&
          r.letters[i].second == -r.letters[i + 1].second) {
        r.letters.erase(r.letters.begin() + i, r.letters.begin() + i + 2);
        changed = true;
        break;
      }
    }
  }
  return r;
}

// --- text format ---------------------------------------------------------------

LinkDiagram parse_diagram(const std::string& text) {
  LinkDiagram d;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind == "X") {
      Crossing c;
      std::string sgn;
      if (!(ls >> c.under_in >> c.under_out >> c.over_in >> c.over_out >> sgn))
        throw DiagramError("bad X line: " + line);
      if (sgn == "+")
        c.sign = 1;
      else if (sgn == "-")
        c.sign = -1;
      else
        throw DiagramError("crossing sign must be + or -");
      d.crossings.push_back(c);
    } else if (kind == "O") {
      int e;
      if (!(ls >> e)) throw DiagramError("bad O line: " + line);
      d.circles.push_back(e);
    } else {
      throw DiagramError("unknown line kind: " + kind);
    }
  }
  validate(d);
  return d;
}

std::string diagram_to_text(const LinkDiagram& d) {
  std::ostringstream out;
  for (const auto& c : d.crossings)
    out << "X " << c.under_in << " " << c.under_out << " " << c.over_in << " " << c.over_out
        << " " << (c.sign > 0 ? "+" : "-") << "\n";
  for (int e : d.circles) out << "O " << e << "\n";
  return out.str();
}

// --- canonical code --------------------------------------------------------------

std::string min_gauss_code(const LinkDiagram& d) {
  int ncross = static_cast<int>(d.crossings.size());
  DenseHeads h;
  std::vector<std::vector<int>> comps;
  bool dense = ncross <= 255 && dense_components(d, h, comps);
  if (!dense) {
    LinkDiagram nd = normalize(d);
    if (ncross > 255 || !dense_components(nd, h, comps)) return "F:" + diagram_to_text(d);
    return min_gauss_code(nd);
  }
  std::vector<const std::vector<int>*> walks;
  for (const auto& c : comps)
    if (!h.circle[c.front()]) walks.push_back(&c);
  long long work = 1;
  for (size_t i = 2; i <= walks.size(); ++i) work *= static_cast<long long>(i);
  for (const auto* w : walks) work *= static_cast<long long>(w->size());
  if (work > 200000 || walks.size() > 7) {
    return "F:" + diagram_to_text(d);
  }
  std::vector<int> order(walks.size());
  std::iota(order.begin(), order.end(), 0);
  std::string best, cur;
  std::vector<int> rot(walks.size(), 0);
  std::vector<unsigned char> lab(ncross, 0);
  do {
    // enumerate rotations by odometer
    std::fill(rot.begin(), rot.end(), 0);
    while (true) {
      // candidate code: "C<circles>,<walk sizes>|" then two raw bytes per slot
      // (first-encounter label, then 1 + 2*under + (sign > 0)); compared against
      // the best candidate byte by byte so losers abort at the first mismatch
      cur.clear();
      cur += 'C';
      cur += std::to_string(d.circles.size());
      for (size_t oi = 0; oi < order.size(); ++oi) {
        cur += ',';
        cur += std::to_string(walks[order[oi]]->size());
      }
      cur += '|';
      std::fill(lab.begin(), lab.end(), 0);
      unsigned char next = 0;
      int cmp = best.empty() ? 1 : 0;  // 1 ahead, 0 tied, -1 beaten
      size_t pos = 0;
      for (size_t i = 0; i < cur.size() && cmp == 0; ++i, ++pos) {
        if (pos >= best.size() || static_cast<unsigned char>(cur[i]) >
                                      static_cast<unsigned char>(best[pos])) {
          cmp = -1;
        } else if (static_cast<unsigned char>(cur[i]) < static_cast<unsigned char>(best[pos])) {
          cmp = 1;
        }
      }
      pos = cur.size();
      auto push = [&](unsigned char b) {
        if (cmp == 0) {
          if (pos >= best.size() || b > static_cast<unsigned char>(best[pos]))
            cmp = -1;
          else if (b < static_cast<unsigned char>(best[pos]))
            cmp = 1;
        }
        cur += static_cast<char>(b);
        ++pos;
      };
      for (size_t oi = 0; oi < order.size() && cmp >= 0; ++oi) {
        const auto& w = *walks[order[oi]];
        for (size_t j = 0; j < w.size() && cmp >= 0; ++j) {
          int e = w[(j + rot[oi]) % w.size()];
          int ci = h.cross[e];
          if (!lab[ci]) lab[ci] = ++next;
          push(lab[ci]);
          push(static_cast<unsigned char>(1 + 2 * h.under[e] +
                                          (d.crossings[ci].sign > 0 ? 1 : 0)));
        }
      }
      if (cmp == 1 || (cmp == 0 && pos < best.size())) best = cur;
      size_t k = 0;
      while (k < rot.size()) {
        if (++rot[k] < static_cast<int>(walks[order[k]]->size())) break;
        rot[k++] = 0;
      }
      if (k == rot.size()) break;
      if (rot.empty()) break;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  if (best.empty()) best = "C" + std::to_string(d.circles.size()) + "|";
  return best;
}

}  // namespace ck
