#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ck {

struct DiagramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One crossing of an oriented link diagram.  Slots hold edge ids (>= 1); the
// under strand runs under_in -> under_out, the over strand over_in -> over_out.
// sign is +1 or -1.
struct Crossing {
  int under_in = 0, under_out = 0, over_in = 0, over_out = 0;
  int sign = 0;
  bool operator==(const Crossing&) const = default;
};

// Closed oriented diagram: crossings plus crossing-free circle components.
// Every edge id appears in exactly one in-slot and one out-slot, or names a
// free circle.  normalize() keeps edge ids consecutive from 1.
struct LinkDiagram {
  std::vector<Crossing> crossings;
  std::vector<int> circles;
  bool operator==(const LinkDiagram&) const = default;

  int writhe() const;
  int max_edge() const;
};

struct BraidWord {
  int strands = 1;
  std::vector<std::pair<int, int>> letters;  // (generator index >= 1, +1/-1)
  bool operator==(const BraidWord&) const = default;
  int exponent_sum() const;
};

// components + traversal data from the canonical base points (the smallest
// edge id of each component, components ordered by that id).
struct TraversalReport {
  std::vector<std::vector<int>> components;  // edge walks; free circles appear as singletons
  std::vector<int> bad;                      // crossing indices first met on the under strand,
                                             // in traversal order
  bool descending = false;
  int writhe = 0;
};

struct TrivialForm {
  int components = 0;
  int writhe = 0;
};

// Result of the unoriented smoothing: the rewired diagram plus which edges of
// the input had their orientation reversed (needed by linking-number bookkeeping).
struct UnorientedSmoothing {
  LinkDiagram diagram;
  std::set<int> reversed_edges;  // edge ids of the input diagram
};

void validate(const LinkDiagram& d);
LinkDiagram normalize(const LinkDiagram& d);

TraversalReport traverse(const LinkDiagram& d);
std::vector<std::vector<int>> components(const LinkDiagram& d);
// Pairwise linking number of two components (by index into components(d)).
int linking_number(const LinkDiagram& d, int ci, int cj);
std::vector<std::vector<int>> linking_matrix(const LinkDiagram& d);

LinkDiagram switch_crossing(const LinkDiagram& d, int p);
LinkDiagram smooth_oriented(const LinkDiagram& d, int p);
UnorientedSmoothing smooth_unoriented_ex(const LinkDiagram& d, int p);
LinkDiagram smooth_unoriented(const LinkDiagram& d, int p);

LinkDiagram mirror(const LinkDiagram& d);
LinkDiagram reverse_all(const LinkDiagram& d);
LinkDiagram reverse_component(const LinkDiagram& d, int ci);
LinkDiagram disjoint_union(const LinkDiagram& a, const LinkDiagram& b);
LinkDiagram connected_sum(const LinkDiagram& a, const LinkDiagram& b);
// Keep exactly the components whose indices are listed; kept strands pass
// straight through crossings with discarded strands.
LinkDiagram sublink(const LinkDiagram& d, const std::set<int>& keep);

LinkDiagram pretzel(const std::vector<int>& twists);

BraidWord parse_braid(const std::string& text, int strands = 0);
std::string braid_to_text(const BraidWord& b);
LinkDiagram braid_closure(const BraidWord& b);

BraidWord conjugate(const BraidWord& b, int gen, int sgn);
BraidWord stabilize(const BraidWord& b, int sgn);
std::optional<BraidWord> destabilize(const BraidWord& b);
BraidWord insert_cancelling_pair(const BraidWord& b, size_t pos, int gen, int sgn);
BraidWord free_reduce(const BraidWord& b);

LinkDiagram parse_diagram(const std::string& text);
std::string diagram_to_text(const LinkDiagram& d);

// Canonical cache key: minimal signed Gauss-style code over component orders
// and base-point rotations (falls back to a deterministic non-minimal key for
// very large diagrams).
std::string min_gauss_code(const LinkDiagram& d);

}  // namespace ck
