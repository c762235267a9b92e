#pragma once

#include <random>
#include <string>
#include <vector>

#include "conwaykit/conway.hpp"
#include "conwaykit/diagram.hpp"
#include "conwaykit/poly.hpp"

namespace ck {

// Two-carrier algebra consumed by the ternary regular-isotopy evaluator.
// VA values belong to oriented diagrams, VU to unoriented ones. constant(n, j)
// is the value of a descending oriented diagram with n components and writhe j,
// constant_u(n, j) its unoriented counterpart. star recovers the value at a
// crossing of an oriented diagram from (switched, compatible smoothing,
// incompatible smoothing); on unoriented diagrams star_u plays that role and
// must be symmetric in its last two arguments, because without an orientation
// the two smoothings cannot be told apart. phi forgets the orientation.
template <typename VA, typename VU>
struct KauffmanAlgebra {
  std::string name;
  std::function<VA(int, int)> constant;
  std::function<VU(int, int)> constant_u;
  std::function<VA(const VA&, const VA&, const VU&)> star;
  std::function<VU(const VU&, const VU&, const VU&)> star_u;
  std::function<VU(const VA&)> phi;
};

namespace detail {

template <typename VA, typename VU>
class KauffmanEval {
 public:
  KauffmanEval(const KauffmanAlgebra<VA, VU>& alg, const EvalOptions& opt)
      : alg_(alg), opt_(opt) {}

  VA run_oriented(const LinkDiagram& d) {
    if (!opt_.parallel) return go_a(d, 0);
    VA out;
#pragma omp parallel
#pragma omp single nowait
    out = go_a(d, 0);
    return out;
  }

  VU run_unoriented(const LinkDiagram& d) {
    if (!opt_.parallel) return go_u(d, 0);
    VU out;
#pragma omp parallel
#pragma omp single nowait
    out = go_u(d, 0);
    return out;
  }

 private:
  VA go_a(const LinkDiagram& d, int depth) {
    TraversalReport t = traverse(d);
    if (t.descending) {
      if (opt_.stats) {
#pragma omp atomic
        ++opt_.stats->leaves;
      }
      return alg_.constant(static_cast<int>(t.components.size()), t.writhe);
    }
    if (opt_.stats) {
#pragma omp atomic
      ++opt_.stats->branches;
    }
    std::string key;
    if (opt_.cache) {
      key = min_gauss_code(d);
      VA val;
      if (cache_a_.lookup(key, val)) return val;
    }
    int p = t.bad.front();
    LinkDiagram sw = switch_crossing(d, p);
    LinkDiagram sm = smooth_oriented(d, p);
    LinkDiagram su = smooth_unoriented(d, p);
    VA a, b;
    VU c;
    if (opt_.parallel && depth < opt_.task_depth) {
#pragma omp task shared(a, sw) firstprivate(depth)
      a = go_a(sw, depth + 1);
#pragma omp task shared(b, sm) firstprivate(depth)
      b = go_a(sm, depth + 1);
      c = go_u(su, depth + 1);
#pragma omp taskwait
    } else {
      a = go_a(sw, depth + 1);
      b = go_a(sm, depth + 1);
      c = go_u(su, depth + 1);
    }
    VA out = alg_.star(a, b, c);
    if (opt_.cache) cache_a_.store(key, out);
    return out;
  }

  VU go_u(const LinkDiagram& d, int depth) {
    TraversalReport t = traverse(d);
    if (t.descending) {
      if (opt_.stats) {
#pragma omp atomic
        ++opt_.stats->leaves;
      }
      return alg_.constant_u(static_cast<int>(t.components.size()), t.writhe);
    }
    if (opt_.stats) {
#pragma omp atomic
      ++opt_.stats->branches;
    }
    std::string key;
    if (opt_.cache) {
      key = min_gauss_code(d);
      VU val;
      if (cache_u_.lookup(key, val)) return val;
    }
    int p = t.bad.front();
    LinkDiagram sw = switch_crossing(d, p);
    LinkDiagram sm = smooth_oriented(d, p);
    LinkDiagram su = smooth_unoriented(d, p);
    VU a, b, c;
    if (opt_.parallel && depth < opt_.task_depth) {
#pragma omp task shared(a, sw) firstprivate(depth)
      a = go_u(sw, depth + 1);
#pragma omp task shared(b, sm) firstprivate(depth)
      b = go_u(sm, depth + 1);
      c = go_u(su, depth + 1);
#pragma omp taskwait
    } else {
      a = go_u(sw, depth + 1);
      b = go_u(sm, depth + 1);
      c = go_u(su, depth + 1);
    }
    VU out = alg_.star_u(a, b, c);
    if (opt_.cache) cache_u_.store(key, out);
    return out;
  }

  const KauffmanAlgebra<VA, VU>& alg_;
  const EvalOptions& opt_;
  ShardedCache<VA> cache_a_;
  ShardedCache<VU> cache_u_;
};

}  // namespace detail

// Value of an oriented diagram under the two-stage resolving procedure: bad
// crossings are switched or smoothed until every path reaches a descending
// diagram; an incompatible smoothing hands its subtree to the unoriented stage.
template <typename VA, typename VU>
VA evaluate_regular(const LinkDiagram& d, const KauffmanAlgebra<VA, VU>& alg,
                    const EvalOptions& opt = {}) {
  validate(d);
  detail::KauffmanEval<VA, VU> ev(alg, opt);
  return ev.run_oriented(d);
}

// Value of a diagram whose orientation is considered incidental.  The carried
// orientation steers the resolving order only; the result does not depend on
// it (tested property).
template <typename VA, typename VU>
VU evaluate_unoriented(const LinkDiagram& d, const KauffmanAlgebra<VA, VU>& alg,
                       const EvalOptions& opt = {}) {
  validate(d);
  detail::KauffmanEval<VA, VU> ev(alg, opt);
  return ev.run_unoriented(d);
}

// Materialized three-way resolving tree (inspection and structural tests only).
struct TernaryResolvingTree {
  struct Node {
    LinkDiagram diagram;
    bool oriented = true;
    TrivialForm form;  // meaningful at leaves; form.writhe is the leaf writhe
    int crossing = -1;
    int sign = 0;
    int switch_child = -1;
    int smooth_child = -1;
    int infinity_child = -1;
    bool is_leaf() const { return crossing < 0; }
  };
  std::vector<Node> nodes;  // nodes[0] is the root
  long long leaf_count() const;
  int depth() const;
};

TernaryResolvingTree build_ternary_tree(const LinkDiagram& d, long long max_nodes = 1 << 20);

// --- built-in algebras --------------------------------------------------------

// regular-isotopy polynomial with w(+) + w(-) = z*(w(compatible) + w(incompatible))
KauffmanAlgebra<LaurentPoly, LaurentPoly> kauffman_L_algebra();
// the three-variable algebra whose star is b,c,d -> -b + t*c + z*d
KauffmanAlgebra<LaurentPoly, LaurentPoly> jck_algebra();

LaurentPoly kauffman_L(const LinkDiagram& d, const EvalOptions& opt = {});
LaurentPoly kauffman_F(const LinkDiagram& d, const EvalOptions& opt = {});
LaurentPoly q_polynomial(const LinkDiagram& d, const EvalOptions& opt = {});
LaurentPoly jck(const LinkDiagram& d, const EvalOptions& opt = {});
LaurentPoly jck_tilde(const LinkDiagram& d, const EvalOptions& opt = {});

// binary regular-isotopy companion of the two-variable skein polynomial:
// w(+) - w(-) = z*w(compatible), descending leaf (n, j) -> a^j*((a-1/a)/z)^(n-1)
LaurentPoly homfly_regular(const LinkDiagram& d, const EvalOptions& opt = {});

// half-integer invariant lifted to the quarter grid through the a,z
// substitution a -> t^(3/4), z -> -(t^(-1/4) + t^(1/4))
LaurentPoly jones_from_kauffman(const LinkDiagram& d, const EvalOptions& opt = {});

// --- axiom checking --------------------------------------------------------------

template <typename VA, typename VU>
struct KauffmanSamples {
  std::vector<VA> oriented;
  std::vector<VU> unoriented;
};

// K1/K3 exactly on a window of constants, K5/K6/K2 on all sample combinations,
// K4 on `budget` pseudo-random sample tuples (fixed seed).  Witnesses name the
// tuple positions, not the values, so no printable requirement on VA/VU.
template <typename VA, typename VU>
AxiomReport check_kauffman_axioms(const KauffmanAlgebra<VA, VU>& alg,
                                  const KauffmanSamples<VA, VU>& samples, int budget = 200,
                                  int constant_span = 3) {
  AxiomReport rep;
  auto fail = [&rep](const std::string& axiom, const std::string& witness) {
    for (const auto& f : rep.failures)
      if (f.axiom == axiom) return;
    rep.failures.push_back({axiom, witness});
  };

  for (int i = 1; i <= constant_span; ++i)
    for (int j = -constant_span; j <= constant_span; ++j) {
      if (!(alg.phi(alg.constant(i, j)) == alg.constant_u(i, j)))
        fail("K1", "constants (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      if (!(alg.star(alg.constant(i, j - 1), alg.constant(i + 1, j), alg.constant_u(i, j)) ==
            alg.constant(i, j + 1)))
        fail("K3", "constants (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }

  const auto& sa = samples.oriented;
  const auto& su = samples.unoriented;
  for (size_t x = 0; x < sa.size(); ++x)
    for (size_t y = 0; y < sa.size(); ++y)
      for (size_t z = 0; z < su.size(); ++z) {
        std::string at = "samples (" + std::to_string(x) + ", " + std::to_string(y) + ", " +
                         std::to_string(z) + ")";
        if (!(alg.star(alg.star(sa[x], sa[y], su[z]), sa[y], su[z]) == sa[x])) fail("K5", at);
        if (!(alg.phi(alg.star(sa[x], sa[y], su[z])) ==
              alg.star_u(alg.phi(sa[x]), alg.phi(sa[y]), su[z])))
          fail("K2", at);
      }
  for (size_t x = 0; x < su.size(); ++x)
    for (size_t y = 0; y < su.size(); ++y)
      for (size_t z = 0; z < su.size(); ++z)
        if (!(alg.star_u(su[x], su[y], su[z]) == alg.star_u(su[x], su[z], su[y])))
          fail("K6", "samples (" + std::to_string(x) + ", " + std::to_string(y) + ", " +
                         std::to_string(z) + ")");

  if (!sa.empty() && !su.empty()) {
    std::mt19937 rng(12345);
    auto pa = [&] { return sa[rng() % sa.size()]; };
    auto pu = [&] { return su[rng() % su.size()]; };
    for (int r = 0; r < budget; ++r) {
      VA a = pa(), b = pa(), d = pa(), e = pa();
      VU c = pu(), f = pu(), g = pu(), h = pu(), i = pu();
      VA lhs = alg.star(alg.star(a, b, c), alg.star(d, e, f), alg.star_u(g, h, i));
      VA rhs = alg.star(alg.star(a, d, g), alg.star(b, e, h), alg.star_u(c, f, i));
      if (!(lhs == rhs)) fail("K4", "random tuple " + std::to_string(r));
    }
  }

  for (const char* ax : {"K1", "K2", "K3", "K4", "K5", "K6"}) {
    bool bad = false;
    for (const auto& f : rep.failures)
      if (f.axiom == ax) bad = true;
    if (!bad) rep.passed.push_back(ax);
  }
  return rep;
}

}  // namespace ck
