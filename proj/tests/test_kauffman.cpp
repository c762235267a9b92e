#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "conwaykit/kauffman.hpp"

using namespace ck;

namespace {

LinkDiagram closure(const std::string& word, int strands = 0) {
  return braid_closure(parse_braid(word, strands));
}

LinkDiagram unlink(int n) { return closure("", n); }

const std::vector<VarSpec> kAZ{{"a", 1}, {"z", 1}};
const std::vector<VarSpec> kATZ{{"a", 1}, {"t", 1}, {"z", 1}};

LaurentPoly paz(const std::string& s) { return LaurentPoly::parse(s, kAZ); }
LaurentPoly patz(const std::string& s) { return LaurentPoly::parse(s, kATZ); }

std::vector<LinkDiagram> sample_diagrams() {
  return {closure("s1^3"), closure("s1^-3"), closure("s1 s2^-1 s1 s2^-1"), closure("s1^2"),
          closure("s1^-2 s2^3 s1^-2 s2")};
}

// component index of every edge
std::map<int, int> edge_component(const LinkDiagram& d) {
  std::map<int, int> out;
  auto comps = components(d);
  for (size_t i = 0; i < comps.size(); ++i)
    for (int e : comps[i]) out[e] = static_cast<int>(i);
  return out;
}

// half the signed count of crossings with exactly one strand in `rev`,
// optionally skipping one crossing and optionally re-signing it to +1
long long piece_linking(const LinkDiagram& d, const std::set<int>& rev, int skip,
                        bool count_skip_as_plus) {
  long long raw = 0;
  for (size_t q = 0; q < d.crossings.size(); ++q) {
    const Crossing& c = d.crossings[q];
    bool u = rev.count(c.under_in) > 0;
    bool o = rev.count(c.over_in) > 0;
    if (u == o) continue;
    if (static_cast<int>(q) == skip) {
      if (count_skip_as_plus) raw += 1;
    } else {
      raw += c.sign;
    }
  }
  return raw / 2;
}

LaurentPoly vtilde(const LinkDiagram& d) {
  return jones_from_kauffman(d).mul_monomial({3 * d.writhe()}, 1);
}

KauffmanSamples<LaurentPoly, LaurentPoly> az_samples() {
  KauffmanSamples<LaurentPoly, LaurentPoly> s;
  s.oriented = {paz("1"), paz("a"), paz("z"), paz("a^-1 + z^2"), paz("2 - a*z")};
  s.unoriented = s.oriented;
  return s;
}

KauffmanSamples<LaurentPoly, LaurentPoly> atz_samples() {
  KauffmanSamples<LaurentPoly, LaurentPoly> s;
  s.oriented = {patz("1"), patz("a"), patz("t"), patz("z"), patz("a^-1*t + z"), patz("2 - a*z")};
  s.unoriented = {patz("1"), patz("a"), patz("t"), patz("a^-1"), patz("t^-1 + a"), patz("3*a*t")};
  return s;
}

}  // namespace

TEST_CASE("ternary tree of trivial diagrams is a single leaf") {
  for (int n = 1; n <= 3; ++n) {
    TernaryResolvingTree t = build_ternary_tree(unlink(n));
    REQUIRE(t.nodes.size() == 1);
    CHECK(t.nodes[0].is_leaf());
    CHECK(t.nodes[0].oriented);
    CHECK(t.nodes[0].form.components == n);
    CHECK(t.nodes[0].form.writhe == 0);
  }
}

TEST_CASE("ternary tree structural invariants") {
  for (const std::string& word : {"s1^3", "s1 s2^-1 s1 s2^-1", "s1^2"}) {
    LinkDiagram d = closure(word);
    TernaryResolvingTree t = build_ternary_tree(d);
    CHECK(t.leaf_count() >= 2);
    for (const auto& node : t.nodes) {
      auto rep = traverse(node.diagram);
      if (node.is_leaf()) {
        CHECK(rep.descending);
        CHECK(rep.writhe == node.form.writhe);
        CHECK(static_cast<int>(rep.components.size()) == node.form.components);
        continue;
      }
      CHECK(node.sign == node.diagram.crossings[node.crossing].sign);
      const auto& sw = t.nodes[node.switch_child];
      const auto& sm = t.nodes[node.smooth_child];
      const auto& su = t.nodes[node.infinity_child];
      CHECK(sw.diagram.crossings.size() == node.diagram.crossings.size());
      CHECK(sm.diagram.crossings.size() == node.diagram.crossings.size() - 1);
      CHECK(su.diagram.crossings.size() == node.diagram.crossings.size() - 1);
      CHECK(sw.oriented == node.oriented);
      CHECK(sm.oriented == node.oriented);
      CHECK_FALSE(su.oriented);
    }
  }
}

TEST_CASE("descending leaves take the writhe-indexed constants") {
  auto alg = kauffman_L_algebra();
  for (int n = 1; n <= 3; ++n) {
    CHECK(evaluate_regular(unlink(n), alg) == alg.constant(n, 0));
    CHECK(evaluate_unoriented(unlink(n), alg) == alg.constant_u(n, 0));
  }
  // single positive curl: writhe 1 representative of the unknot
  LinkDiagram curl = closure("s1", 2);
  CHECK(evaluate_regular(curl, alg) == alg.constant(1, 1));
  CHECK(kauffman_L(curl) == paz("a"));
  CHECK(homfly_regular(curl) == paz("a"));
  auto jalg = jck_algebra();
  CHECK(evaluate_regular(curl, jalg) == jalg.constant(1, 1));
}

TEST_CASE("kauffman polynomial frozen values") {
  CHECK(kauffman_F(unlink(1)) == paz("1"));
  CHECK(kauffman_F(unlink(2)) == paz("a^-1*z^-1 - 1 + a*z^-1"));
  CHECK(kauffman_F(closure("s1^3")) ==
        paz("-a^-4 - 2*a^-2 + a^-5*z + a^-3*z + a^-4*z^2 + a^-2*z^2"));
  CHECK(kauffman_L(closure("s1^3")) == kauffman_F(closure("s1^3")).mul_monomial({3, 0}, 1));
}

TEST_CASE("q polynomial frozen values and symmetries") {
  const std::vector<VarSpec> kX{{"x", 1}};
  auto px = [&](const std::string& s) { return LaurentPoly::parse(s, kX); };
  CHECK(q_polynomial(unlink(1)) == px("1"));
  CHECK(q_polynomial(unlink(2)) == px("2*x^-1 - 1"));
  CHECK(q_polynomial(closure("s1^2")) == px("-2*x^-1 + 1 + 2*x"));

  for (const LinkDiagram& d : sample_diagrams()) {
    LaurentPoly q = q_polynomial(d);
    CHECK(q_polynomial(mirror(d)) == q);
    auto comps = components(d);
    for (size_t i = 0; i < comps.size(); ++i)
      CHECK(q_polynomial(reverse_component(d, static_cast<int>(i))) == q);
  }
}

TEST_CASE("trefoil value matches the published three-variable computation") {
  LinkDiagram tre = closure("s1^3");
  LaurentPoly jt = jck_tilde(tre);
  CHECK(jt == patz("-a^-4 - 2*a^-2 + t^2*a^-2 + a^-3*z + a^-5*z + t*a^-4*z"));
  CHECK(jck(tre) == jt.mul_monomial({3, 0, 0}, 1));
  CHECK(jck(tre) == patz("-a^-1 - 2*a + t^2*a + z + a^-2*z + t*a^-1*z"));
}

TEST_CASE("ternary skein relation holds at every crossing") {
  LaurentPoly z = LaurentPoly::single(kAZ, "z", 1);
  for (const LinkDiagram& d : sample_diagrams()) {
    LaurentPoly ld = kauffman_L(d);
    for (int p = 0; p < static_cast<int>(d.crossings.size()); ++p) {
      LaurentPoly lsw = kauffman_L(switch_crossing(d, p));
      LaurentPoly lo = kauffman_L(smooth_oriented(d, p));
      LaurentPoly li = kauffman_L(smooth_unoriented(d, p));
      CHECK(ld + lsw == z * (lo + li));
    }
  }
}

TEST_CASE("regular isotopy invariance and curl factors") {
  BraidWord b = parse_braid("s1 s2^-1 s1 s2^-1");
  LinkDiagram d = braid_closure(b);
  LaurentPoly l = kauffman_L(d);
  LaurentPoly r = homfly_regular(d);
  LaurentPoly j = jck(d);

  BraidWord c1 = conjugate(b, 2, -1);
  BraidWord c2 = insert_cancelling_pair(c1, 1, 1, 1);
  for (const BraidWord& w : {c1, c2}) {
    CHECK(kauffman_L(braid_closure(w)) == l);
    CHECK(homfly_regular(braid_closure(w)) == r);
    CHECK(jck(braid_closure(w)) == j);
  }

  LinkDiagram up = braid_closure(stabilize(b, 1));
  LinkDiagram down = braid_closure(stabilize(b, -1));
  CHECK(kauffman_L(up) == l.mul_monomial({1, 0}, 1));
  CHECK(kauffman_L(down) == l.mul_monomial({-1, 0}, 1));
  CHECK(homfly_regular(up) == r.mul_monomial({1, 0}, 1));
  CHECK(homfly_regular(down) == r.mul_monomial({-1, 0}, 1));

  LaurentPoly f = kauffman_F(d);
  LaurentPoly jt = jck_tilde(d);
  for (const LinkDiagram& e : {up, down, braid_closure(c2)}) {
    CHECK(kauffman_F(e) == f);
    CHECK(jck_tilde(e) == jt);
  }
}

TEST_CASE("value does not depend on component orientations") {
  auto lalg = kauffman_L_algebra();
  auto jalg = jck_algebra();
  for (const std::string& word : {"s1^2", "s1^-2 s2^3 s1^-2 s2", "s1 s2^-1 s1 s2^-1"}) {
    LinkDiagram d = closure(word);
    LaurentPoly l = kauffman_L(d);
    LaurentPoly ju = evaluate_unoriented(d, jalg);
    auto comps = components(d);
    for (size_t i = 0; i < comps.size(); ++i) {
      LinkDiagram r = reverse_component(d, static_cast<int>(i));
      CHECK(kauffman_L(r) == l);
      CHECK(evaluate_unoriented(r, lalg) == evaluate_unoriented(d, lalg));
      CHECK(evaluate_unoriented(r, jalg) == ju);
    }
    CHECK(kauffman_L(reverse_all(d)) == l);
  }
}

TEST_CASE("product and mirror rules") {
  LinkDiagram tre = closure("s1^3");
  LinkDiagram f8 = closure("s1 s2^-1 s1 s2^-1");
  LinkDiagram hopf = closure("s1^2");
  LaurentPoly mu = paz("a^-1*z^-1 - 1 + a*z^-1");

  CHECK(kauffman_F(connected_sum(tre, f8)) == kauffman_F(tre) * kauffman_F(f8));
  CHECK(kauffman_F(disjoint_union(tre, hopf)) == mu * kauffman_F(tre) * kauffman_F(hopf));

  auto inv_a = [](const LaurentPoly& p) {
    LaurentPoly out = LaurentPoly::zero(p.vars());
    for (const auto& [e, c] : p.terms()) {
      Exps f = e;
      f[0] = -f[0];
      out += LaurentPoly::monomial(p.vars(), f, c);
    }
    return out;
  };
  for (const LinkDiagram& d : sample_diagrams()) {
    CHECK(kauffman_F(mirror(d)) == inv_a(kauffman_F(d)));
    CHECK(jck_tilde(mirror(d)) == inv_a(jck_tilde(d)));
  }
}

TEST_CASE("single component reversal shifts by four times the linking number") {
  for (const std::string& word : {"s1^2", "s1^-2", "s1^-2 s2^3 s1^-2 s2"}) {
    LinkDiagram d = closure(word);
    auto m = linking_matrix(d);
    LaurentPoly f = kauffman_F(d);
    for (size_t i = 0; i < m.size(); ++i) {
      long long lambda = 0;
      for (size_t j = 0; j < m.size(); ++j) lambda += m[i][j];
      LinkDiagram r = reverse_component(d, static_cast<int>(i));
      CHECK(kauffman_F(r) == f.mul_monomial({static_cast<int>(4 * lambda), 0}, 1));
      CHECK(jones(r) == jones(d).mul_monomial({static_cast<int>(6 * lambda)}, 1));
    }
  }
}

TEST_CASE("quarter-grid substitution reproduces the skein-native invariant") {
  const std::vector<VarSpec> kT4{{"t", 4}};
  for (const LinkDiagram& d : sample_diagrams()) {
    CHECK(jones_from_kauffman(d) == jones(d).regrid(kT4));
  }
  CHECK(jones_from_kauffman(unlink(3)) == jones(unlink(3)).regrid(kT4));
}

TEST_CASE("reduced alternating diagrams realize the full degree span") {
  CHECK(jones_from_kauffman(closure("s1^3")).span("t") == 4 * 3);
  CHECK(jones_from_kauffman(closure("s1 s2^-1 s1 s2^-1")).span("t") == 4 * 4);
}

TEST_CASE("oriented skein consequences of the ternary relation") {
  // split by whether the smoothing joins components (mixed) or splits (self)
  LaurentPoly z = LaurentPoly::single(kAZ, "z", 1);
  const std::vector<VarSpec> kT2{{"t", 2}};
  LaurentPoly root = LaurentPoly::single(kT2, "t", 1);
  LaurentPoly rootinv = LaurentPoly::single(kT2, "t", -1);

  for (const LinkDiagram& d : sample_diagrams()) {
    auto comp_of = edge_component(d);
    for (int p = 0; p < static_cast<int>(d.crossings.size()); ++p) {
      const Crossing& c = d.crossings[p];
      bool self = comp_of[c.under_in] == comp_of[c.over_in];
      int s = c.sign;
      LinkDiagram sw = switch_crossing(d, p);
      const LinkDiagram& plus = s > 0 ? d : sw;
      const LinkDiagram& minus = s > 0 ? sw : d;
      LinkDiagram sm = smooth_oriented(d, p);
      auto un = smooth_unoriented_ex(d, p);
      std::set<int> rev(un.reversed_edges.begin(), un.reversed_edges.end());

      if (self) {
        long long lambda = piece_linking(d, rev, p, false);
        LaurentPoly lhs = kauffman_F(plus).mul_monomial({1, 0}, 1) +
                          kauffman_F(minus).mul_monomial({-1, 0}, 1);
        LaurentPoly rhs =
            z * (kauffman_F(sm) +
                 kauffman_F(un.diagram).mul_monomial({static_cast<int>(-4 * lambda), 0}, 1));
        CHECK(lhs == rhs);

        LaurentPoly vlhs = root * jones(plus) - rootinv * jones(minus);
        LaurentPoly vrhs =
            (root - rootinv) *
            jones(un.diagram).mul_monomial({static_cast<int>(-6 * lambda)}, 1);
        CHECK(vlhs == vrhs);
      } else {
        long long lambda = piece_linking(d, rev, p, true);
        LaurentPoly lhs = kauffman_F(plus).mul_monomial({1, 0}, 1) +
                          kauffman_F(minus).mul_monomial({-1, 0}, 1);
        LaurentPoly rhs =
            z * (kauffman_F(sm) +
                 kauffman_F(un.diagram).mul_monomial({static_cast<int>(-4 * lambda + 2), 0}, 1));
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("quarter-grid recursion at every crossing") {
  for (const LinkDiagram& d : sample_diagrams()) {
    LaurentPoly vd = vtilde(d);
    for (int p = 0; p < static_cast<int>(d.crossings.size()); ++p) {
      LaurentPoly vo = vtilde(smooth_oriented(d, p));
      LaurentPoly vi = vtilde(smooth_unoriented(d, p));
      if (d.crossings[p].sign > 0)
        CHECK(vd == vo.mul_monomial({1}, -1) + vi.mul_monomial({-1}, -1));
      else
        CHECK(vd == vo.mul_monomial({-1}, -1) + vi.mul_monomial({1}, -1));
    }
  }
}

TEST_CASE("three-variable specializations") {
  const std::vector<VarSpec> kAT{{"a", 1}, {"t", 1}};
  LaurentPoly az_t = LaurentPoly::single(kATZ, "z", 1);
  LaurentPoly at_t = LaurentPoly::single(kATZ, "t", 1);
  auto sub_z = [&](const LaurentPoly& p, const LaurentPoly& img) {
    return p.substitute(kATZ, {{"a", LaurentPoly::single(kATZ, "a", 1)},
                               {"t", LaurentPoly::single(kATZ, "t", 1)},
                               {"z", img}});
  };
  for (const LinkDiagram& d : sample_diagrams()) {
    LaurentPoly j = jck(d);
    LaurentPoly j0 = sub_z(j, LaurentPoly::zero(kATZ));
    LaurentPoly jt = sub_z(j, at_t);
    // exact interpolation in the third variable
    CHECK(at_t * j == at_t * j0 + az_t * (jt - j0));
    // collapsing the third variable onto the second recovers the two-variable value
    LaurentPoly jt_at = j.substitute(kAT, {{"a", LaurentPoly::single(kAT, "a", 1)},
                                           {"t", LaurentPoly::single(kAT, "t", 1)},
                                           {"z", LaurentPoly::single(kAT, "t", 1)}});
    LaurentPoly l_at = kauffman_L(d).substitute(kAT, {{"a", LaurentPoly::single(kAT, "a", 1)},
                                                      {"z", LaurentPoly::single(kAT, "t", 1)}});
    CHECK(jt_at == l_at);
  }
}

TEST_CASE("dropping the third variable leaves a two-variable skein value") {
  const std::vector<VarSpec> kAT{{"a", 1}, {"t", 1}};
  LaurentPoly img_x = LaurentPoly::monomial(kAT, {1, -1}, 1);        // a/t
  LaurentPoly img_y_plus = LaurentPoly::monomial(kAT, {-1, -1}, 1);  // 1/(a*t)
  LaurentPoly img_y_minus = LaurentPoly::monomial(kAT, {-1, -1}, -1);
  const std::vector<VarSpec> kXY{{"x", 1}, {"y", 1}};
  bool plus_all = true, minus_all = true;
  for (const LinkDiagram& d : sample_diagrams()) {
    LaurentPoly lhs = jck_tilde(d).slice("z", 0).substitute(
        kAT, {{"a", LaurentPoly::single(kAT, "a", 1)},
              {"t", LaurentPoly::single(kAT, "t", 1)},
              {"z", LaurentPoly::zero(kAT)}});
    LaurentPoly p = homfly(d);
    if (!(lhs == p.substitute(kAT, {{"x", img_x}, {"y", img_y_plus}}))) plus_all = false;
    if (!(lhs == p.substitute(kAT, {{"x", img_x}, {"y", img_y_minus}}))) minus_all = false;
  }
  // the positive-sign reading of the substitution is the one that holds
  CHECK(plus_all);
  CHECK_FALSE(minus_all);
}

TEST_CASE("binary regular value reduces to the two-variable polynomial") {
  const std::vector<VarSpec> kXY{{"x", 1}, {"y", 1}};
  LaurentPoly img_x = LaurentPoly::monomial(kAZ, {1, -1}, 1);    // a/z
  LaurentPoly img_y = LaurentPoly::monomial(kAZ, {-1, -1}, -1);  // -1/(a*z)
  for (const LinkDiagram& d : sample_diagrams()) {
    LaurentPoly g = homfly_regular(d).mul_monomial({-d.writhe(), 0}, 1);
    CHECK(g == homfly(d).substitute(kAZ, {{"x", img_x}, {"y", img_y}}));
  }
}

TEST_CASE("axiom checks pass for the built-in algebras") {
  auto lrep = check_kauffman_axioms(kauffman_L_algebra(), az_samples());
  CHECK(lrep.ok());
  CHECK(lrep.passed.size() == 6);

  auto jrep = check_kauffman_axioms(jck_algebra(), atz_samples());
  CHECK(jrep.ok());
  CHECK(jrep.passed.size() == 6);
}

TEST_CASE("asymmetric unoriented operation is caught with a witness") {
  auto broken = jck_algebra();
  LaurentPoly tt = LaurentPoly::single(kATZ, "t", 1);
  LaurentPoly zz = LaurentPoly::single(kATZ, "z", 1);
  broken.star_u = [tt, zz](const LaurentPoly& b, const LaurentPoly& c, const LaurentPoly& d) {
    return tt * c + zz * d - b;
  };
  auto rep = check_kauffman_axioms(broken, atz_samples());
  CHECK_FALSE(rep.ok());
  bool k6 = false;
  for (const auto& f : rep.failures) {
    CHECK_FALSE(f.witness.empty());
    if (f.axiom == "K6") k6 = true;
  }
  CHECK(k6);
}

TEST_CASE("cache and parallel modes agree with the serial evaluator") {
  LinkDiagram g = closure("s1^-2 s2^3 s1^-2 s2");
  LaurentPoly ref = kauffman_L(g);
  LaurentPoly jref = jck(g);

  EvalOptions cached;
  cached.cache = true;
  EvalStats stats;
  cached.stats = &stats;
  CHECK(kauffman_L(g, cached) == ref);
  CHECK(stats.branches > 0);
  CHECK(stats.leaves > 0);

  EvalOptions par;
  par.parallel = true;
  CHECK(kauffman_L(g, par) == ref);
  CHECK(jck(g, par) == jref);
  CHECK(homfly_regular(g, par) == homfly_regular(g));

  EvalOptions both;
  both.parallel = true;
  both.cache = true;
  CHECK(jck(g, both) == jref);
}

TEST_CASE("evaluators reject invalid diagrams") {
  LinkDiagram opend;
  opend.crossings.push_back({1, 2, 3, 4, 1});
  CHECK_THROWS_AS(kauffman_L(opend), DiagramError);
  CHECK_THROWS_AS(homfly_regular(opend), DiagramError);
}
