#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "conwaykit/diagram.hpp"
#include "conwaykit/poly.hpp"

namespace ck {

struct AlgebraUndefined : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two-operation algebra consumed by the resolving-tree evaluator.  constant(n)
// is the value of a descending diagram with n components; bar recovers the
// value at a positive crossing from (switched value, smoothed value), star the
// value at a negative one.  Operations must be pure: branch children may be
// evaluated concurrently.  Partial algebras throw AlgebraUndefined naming the
// offending pair.
template <typename V>
struct ConwayAlgebra {
  std::string name;
  std::function<V(int)> constant;
  std::function<V(const V&, const V&)> bar;
  std::function<V(const V&, const V&)> star;
};

struct EvalStats {
  long long branches = 0;
  long long leaves = 0;
};

struct EvalOptions {
  bool cache = false;     // memoize on the canonical diagram code
  bool parallel = false;  // evaluate branch children as OpenMP tasks
  int task_depth = 6;     // spawn tasks only above this depth
  EvalStats* stats = nullptr;
};

namespace detail {

// Hash-sharded memo table: concurrent lookups contend only within one shard,
// so task-parallel tree walks are not serialized on a single lock.
template <typename V>
class ShardedCache {
 public:
  bool lookup(const std::string& key, V& out) {
    Shard& s = shard(key);
    std::lock_guard<std::mutex> lk(s.mu);
    auto it = s.map.find(key);
    if (it == s.map.end()) return false;
    out = it->second;
    return true;
  }

  void store(const std::string& key, const V& val) {
    Shard& s = shard(key);
    std::lock_guard<std::mutex> lk(s.mu);
    s.map.emplace(key, val);
  }

 private:
  static constexpr size_t kShards = 64;
  struct Shard {
    std::mutex mu;
    std::unordered_map<std::string, V> map;
  };
  Shard& shard(const std::string& key) { return shards_[std::hash<std::string>{}(key) % kShards]; }
  std::array<Shard, kShards> shards_;
};

template <typename V>
class ConwayEval {
 public:
  ConwayEval(const ConwayAlgebra<V>& alg, const EvalOptions& opt) : alg_(alg), opt_(opt) {}

  V run(const LinkDiagram& d) {
    if (!opt_.parallel) return go(d, 0);
    V out;
#pragma omp parallel
#pragma omp single nowait
    out = go(d, 0);
    return out;
  }

 private:
  V go(const LinkDiagram& d, int depth) {
    TraversalReport t = traverse(d);
    if (t.descending) {
      if (opt_.stats) {
#pragma omp atomic
        ++opt_.stats->leaves;
      }
      return alg_.constant(static_cast<int>(t.components.size()));
    }
    if (opt_.stats) {
#pragma omp atomic
      ++opt_.stats->branches;
    }
    std::string key;
    if (opt_.cache) {
      key = min_gauss_code(d);
      V val;
      if (cache_.lookup(key, val)) return val;
    }
    int p = t.bad.front();
    LinkDiagram sw = switch_crossing(d, p);
    LinkDiagram sm = smooth_oriented(d, p);
    V a, b;
    if (opt_.parallel && depth < opt_.task_depth) {
#pragma omp task shared(a, sw) firstprivate(depth)
      a = go(sw, depth + 1);
      b = go(sm, depth + 1);
#pragma omp taskwait
    } else {
      a = go(sw, depth + 1);
      b = go(sm, depth + 1);
    }
    V out = d.crossings[p].sign > 0 ? alg_.bar(a, b) : alg_.star(a, b);
    if (opt_.cache) cache_.store(key, out);
    return out;
  }

  const ConwayAlgebra<V>& alg_;
  const EvalOptions& opt_;
  ShardedCache<V> cache_;
};

}  // namespace detail

template <typename V>
V evaluate(const LinkDiagram& d, const ConwayAlgebra<V>& alg, const EvalOptions& opt = {}) {
  validate(d);
  detail::ConwayEval<V> ev(alg, opt);
  return ev.run(d);
}

// Materialized resolving tree (for inspection and structural tests; the
// evaluator above never builds it).
struct ResolvingTree {
  struct Node {
    LinkDiagram diagram;
    TrivialForm form;  // meaningful at leaves
    int crossing = -1;
    int sign = 0;
    int switch_child = -1;
    int smooth_child = -1;
    bool is_leaf() const { return crossing < 0; }
  };
  std::vector<Node> nodes;  // nodes[0] is the root
  long long leaf_count() const;
  int depth() const;
};

ResolvingTree build_resolving_tree(const LinkDiagram& d, long long max_nodes = 1 << 20);

// --- built-in algebras --------------------------------------------------------

// two-variable skein algebra: x*w(plus) + y*w(minus) = w(smoothed)
ConwayAlgebra<LaurentPoly> homfly_algebra();
// one-variable specialization, skein-native: w(plus) - w(minus) = z*w(smoothed)
ConwayAlgebra<LaurentPoly> conway_poly_algebra();
// skein-native in t^(1/2): -t*w(plus) + (1/t)*w(minus) = (sqrt(t)-1/sqrt(t))*w(smoothed)
ConwayAlgebra<LaurentPoly> jones_algebra();
// three-variable extension: x*w(plus) + y*w(minus) = w(smoothed) - z
ConwayAlgebra<LaurentPoly> three_var_algebra();

// (component count, total pairwise linking number)
struct LkValue {
  long long components = 0;
  long long linking = 0;
  bool operator==(const LkValue&) const = default;
};
ConwayAlgebra<LkValue> component_linking_algebra();

LaurentPoly homfly(const LinkDiagram& d, const EvalOptions& opt = {});
LaurentPoly conway_poly(const LinkDiagram& d, const EvalOptions& opt = {});
LaurentPoly jones(const LinkDiagram& d, const EvalOptions& opt = {});
LaurentPoly three_var_invariant(const LinkDiagram& d, const EvalOptions& opt = {});

// --- finite tables --------------------------------------------------------------

// Operation tables over {1..n}; entry 0 marks an undefined (partial) cell.
// constants holds the start of the sequence a_1, a_2, ...; its last `period`
// entries repeat forever, so the sequence may have a non-repeating prefix.
// period 0 means the whole list repeats.
struct FiniteAlgebra {
  std::string name;
  int n = 0;
  std::vector<std::vector<int>> bar_table, star_table;
  std::vector<int> constants;
  int period = 0;

  int constant(int k) const;
  int bar_at(int a, int b) const;
  int star_at(int a, int b) const;
  std::optional<int> bar_peek(int a, int b) const;
  std::optional<int> star_peek(int a, int b) const;

  std::string to_text() const;
  static FiniteAlgebra parse(const std::string& text);
  ConwayAlgebra<int> algebra() const;
};

// i | j = i * j = i; the evaluator then returns the component count's constant
FiniteAlgebra first_element_algebra(int n);
// a | b = a * b = 1 - a - b computed mod 3 over {1,2,3} (3 standing for 0)
FiniteAlgebra mod_three_algebra();
// the four-element table whose two trefoils evaluate to different elements
FiniteAlgebra four_element_algebra();

// --- axiom checking --------------------------------------------------------------

struct AxiomFailure {
  std::string axiom;
  std::string witness;
};

struct AxiomReport {
  std::vector<AxiomFailure> failures;
  std::vector<std::string> passed;   // directly verified, in axiom order
  std::vector<std::string> implied;  // axioms that already follow from other passed ones
  long long skipped_undefined = 0;   // tuples not checkable on a partial table
  bool ok() const { return failures.empty(); }
  std::string summary() const;
};

AxiomReport check_axioms(const FiniteAlgebra& t);

// --- mirror involutions ------------------------------------------------------------

// tau must fix the constants and swap the roles of the two operations; when it
// exists, the invariant of a mirror image is tau of the invariant.
template <typename V>
bool mirror_involution_check(const ConwayAlgebra<V>& alg, const std::function<V(const V&)>& tau,
                             const std::vector<V>& samples, int constants_to_check = 6) {
  for (int k = 1; k <= constants_to_check; ++k)
    if (!(tau(alg.constant(k)) == alg.constant(k))) return false;
  for (const V& a : samples)
    for (const V& b : samples) {
      if (!(tau(alg.bar(a, b)) == alg.star(tau(a), tau(b)))) return false;
      if (!(tau(alg.star(a, b)) == alg.bar(tau(a), tau(b)))) return false;
    }
  return true;
}

// exhaustive search over bijections fixing the first two elements
std::optional<std::vector<int>> find_mirror_involution(const FiniteAlgebra& t);

// --- weighted simplices ---------------------------------------------------------------

template <typename V>
struct WeightedSimplex {
  int components = 0;
  std::map<std::vector<int>, V> faces;  // sorted component-index subsets
};

template <typename V>
WeightedSimplex<V> weighted_simplex(const LinkDiagram& d,
                                    const std::function<V(const LinkDiagram&)>& w) {
  int n = static_cast<int>(components(d).size());
  if (n > 8) throw DiagramError("weighted simplex supports at most 8 components");
  WeightedSimplex<V> s;
  s.components = n;
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::set<int> keep;
    std::vector<int> face;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) {
        keep.insert(i);
        face.push_back(i);
      }
    s.faces.emplace(std::move(face), w(sublink(d, keep)));
  }
  return s;
}

template <typename V>
bool simplex_equivalent(const WeightedSimplex<V>& x, const WeightedSimplex<V>& y) {
  if (x.components != y.components || x.faces.size() != y.faces.size()) return false;
  int n = x.components;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (const auto& [face, value] : x.faces) {
      std::vector<int> mapped;
      mapped.reserve(face.size());
      for (int i : face) mapped.push_back(perm[i]);
      std::sort(mapped.begin(), mapped.end());
      auto it = y.faces.find(mapped);
      if (it == y.faces.end() || !(it->second == value)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// total pairwise linking number on every sublink
WeightedSimplex<long long> lk_weighted_simplex(const LinkDiagram& d);

}  // namespace ck
