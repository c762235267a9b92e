#include "conwaykit/kauffman.hpp"

namespace ck {

long long TernaryResolvingTree::leaf_count() const {
  long long n = 0;
  for (const auto& node : nodes)
    if (node.is_leaf()) ++n;
  return n;
}

int TernaryResolvingTree::depth() const {
  // nodes are appended parent-first, so a single backward pass suffices
  std::vector<int> h(nodes.size(), 0);
  int best = 0;
  for (size_t i = nodes.size(); i-- > 0;) {
    const Node& nd = nodes[i];
    if (!nd.is_leaf())
      h[i] = 1 + std::max({h[nd.switch_child], h[nd.smooth_child], h[nd.infinity_child]});
    best = std::max(best, h[i]);
  }
  return best;
}

TernaryResolvingTree build_ternary_tree(const LinkDiagram& d, long long max_nodes) {
  validate(d);
  TernaryResolvingTree tree;
  tree.nodes.push_back({d, true, {}, -1, 0, -1, -1, -1});
  for (size_t i = 0; i < tree.nodes.size(); ++i) {
    if (static_cast<long long>(tree.nodes.size()) > max_nodes)
      throw DiagramError("resolving tree exceeds the node limit");
    LinkDiagram cur = tree.nodes[i].diagram;
    bool ori = tree.nodes[i].oriented;
    TraversalReport t = traverse(cur);
    if (t.descending) {
      tree.nodes[i].form = {static_cast<int>(t.components.size()), t.writhe};
      continue;
    }
    int p = t.bad.front();
    int sw = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({switch_crossing(cur, p), ori, {}, -1, 0, -1, -1, -1});
    int sm = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({smooth_oriented(cur, p), ori, {}, -1, 0, -1, -1, -1});
    int su = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({smooth_unoriented(cur, p), false, {}, -1, 0, -1, -1, -1});
    tree.nodes[i].crossing = p;
    tree.nodes[i].sign = cur.crossings[p].sign;
    tree.nodes[i].switch_child = sw;
    tree.nodes[i].smooth_child = sm;
    tree.nodes[i].infinity_child = su;
  }
  return tree;
}

namespace {

const std::vector<VarSpec> kAZ{{"a", 1}, {"z", 1}};
const std::vector<VarSpec> kATZ{{"a", 1}, {"t", 1}, {"z", 1}};
const std::vector<VarSpec> kX{{"x", 1}};
const std::vector<VarSpec> kT4{{"t", 4}};

LaurentPoly az(int ea, int ez, int c = 1) { return LaurentPoly::monomial(kAZ, {ea, ez}, c); }
LaurentPoly atz(int ea, int et, int ez, int c = 1) {
  return LaurentPoly::monomial(kATZ, {ea, et, ez}, c);
}

}  // namespace

KauffmanAlgebra<LaurentPoly, LaurentPoly> kauffman_L_algebra() {
  KauffmanAlgebra<LaurentPoly, LaurentPoly> alg;
  alg.name = "kauffman_L";
  LaurentPoly mu = az(1, -1) + az(-1, -1) - LaurentPoly::constant(kAZ, 1);
  LaurentPoly zz = az(0, 1);
  auto cst = [mu](int i, int j) {
    return mu.pow(static_cast<unsigned>(i - 1)).mul_monomial({j, 0}, 1);
  };
  alg.constant = cst;
  alg.constant_u = cst;
  alg.star = [zz](const LaurentPoly& b, const LaurentPoly& c, const LaurentPoly& d) {
    return zz * (c + d) - b;
  };
  alg.star_u = alg.star;
  alg.phi = [](const LaurentPoly& w) { return w; };
  return alg;
}

KauffmanAlgebra<LaurentPoly, LaurentPoly> jck_algebra() {
  KauffmanAlgebra<LaurentPoly, LaurentPoly> alg;
  alg.name = "jck";
  LaurentPoly big = atz(1, -1, 0) + atz(-1, -1, 0);             // (a + 1/a)/t
  LaurentPoly small = big - LaurentPoly::constant(kATZ, 1);     // (a + 1/a)/t - 1
  LaurentPoly zt = atz(0, -1, 1);                               // z/t
  LaurentPoly head = LaurentPoly::constant(kATZ, 1) - zt;       // 1 - z/t
  alg.constant = [big, small, zt, head](int i, int j) {
    unsigned k = static_cast<unsigned>(i - 1);
    return (big.pow(k) * head + zt * small.pow(k)).mul_monomial({j, 0, 0}, 1);
  };
  alg.constant_u = [small](int i, int j) {
    return small.pow(static_cast<unsigned>(i - 1)).mul_monomial({j, 0, 0}, 1);
  };
  LaurentPoly tt = atz(0, 1, 0);
  LaurentPoly zz = atz(0, 0, 1);
  alg.star = [tt, zz](const LaurentPoly& b, const LaurentPoly& c, const LaurentPoly& d) {
    return tt * c + zz * d - b;
  };
  alg.star_u = [tt](const LaurentPoly& b, const LaurentPoly& c, const LaurentPoly& d) {
    return tt * (c + d) - b;
  };
  alg.phi = [tt](const LaurentPoly& w) {
    return w.substitute(kATZ, {{"a", atz(1, 0, 0)}, {"t", tt}, {"z", tt}});
  };
  return alg;
}

LaurentPoly kauffman_L(const LinkDiagram& d, const EvalOptions& opt) {
  auto alg = kauffman_L_algebra();
  return evaluate_regular(d, alg, opt);
}

LaurentPoly kauffman_F(const LinkDiagram& d, const EvalOptions& opt) {
  return kauffman_L(d, opt).mul_monomial({-d.writhe(), 0}, 1);
}

LaurentPoly q_polynomial(const LinkDiagram& d, const EvalOptions& opt) {
  return kauffman_F(d, opt).substitute(
      kX, {{"a", LaurentPoly::constant(kX, 1)}, {"z", LaurentPoly::single(kX, "x", 1)}});
}

LaurentPoly jck(const LinkDiagram& d, const EvalOptions& opt) {
  auto alg = jck_algebra();
  return evaluate_regular(d, alg, opt);
}

LaurentPoly jck_tilde(const LinkDiagram& d, const EvalOptions& opt) {
  return jck(d, opt).mul_monomial({-d.writhe(), 0, 0}, 1);
}

namespace {

LaurentPoly r_eval(const LinkDiagram& d, const EvalOptions& opt, int depth) {
  TraversalReport t = traverse(d);
  if (t.descending) {
    if (opt.stats) {
#pragma omp atomic
      ++opt.stats->leaves;
    }
    LaurentPoly delta = az(1, -1) - az(-1, -1);
    return delta.pow(static_cast<unsigned>(t.components.size() - 1))
        .mul_monomial({t.writhe, 0}, 1);
  }
  if (opt.stats) {
#pragma omp atomic
    ++opt.stats->branches;
  }
  int p = t.bad.front();
  LinkDiagram sw = switch_crossing(d, p);
  LinkDiagram sm = smooth_oriented(d, p);
  LaurentPoly a, b;
  if (opt.parallel && depth < opt.task_depth) {
#pragma omp task shared(a, sw) firstprivate(depth)
    a = r_eval(sw, opt, depth + 1);
    b = r_eval(sm, opt, depth + 1);
#pragma omp taskwait
  } else {
    a = r_eval(sw, opt, depth + 1);
    b = r_eval(sm, opt, depth + 1);
  }
  LaurentPoly zb = b.mul_monomial({0, 1}, 1);
  return d.crossings[p].sign > 0 ? a + zb : a - zb;
}

}  // namespace

LaurentPoly homfly_regular(const LinkDiagram& d, const EvalOptions& opt) {
  validate(d);
  if (!opt.parallel) return r_eval(d, opt, 0);
  LaurentPoly out;
#pragma omp parallel
#pragma omp single nowait
  out = r_eval(d, opt, 0);
  return out;
}

LaurentPoly jones_from_kauffman(const LinkDiagram& d, const EvalOptions& opt) {
  LaurentPoly f = kauffman_F(d, opt);
  int k = std::max(0, -f.min_exp("z"));
  LaurentPoly cleared = f.mul_monomial({0, k}, 1);
  LaurentPoly img_a = LaurentPoly::single(kT4, "t", 3);
  LaurentPoly img_z = LaurentPoly::monomial(kT4, {-1}, -1) + LaurentPoly::monomial(kT4, {1}, -1);
  LaurentPoly num = cleared.substitute(kT4, {{"a", img_a}, {"z", img_z}});
  return num.div_exact(img_z.pow(static_cast<unsigned>(k)), "t");
}

}  // namespace ck
