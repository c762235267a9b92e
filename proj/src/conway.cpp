#include "conwaykit/conway.hpp"

#include <charconv>
#include <sstream>

namespace ck {

long long ResolvingTree::leaf_count() const {
  long long n = 0;
  for (const auto& node : nodes)
    if (node.is_leaf()) ++n;
  return n;
}

int ResolvingTree::depth() const {
  // nodes are appended parent-first, so a single backward pass suffices
  std::vector<int> h(nodes.size(), 0);
  int best = 0;
  for (size_t i = nodes.size(); i-- > 0;) {
    const Node& nd = nodes[i];
    if (!nd.is_leaf()) h[i] = 1 + std::max(h[nd.switch_child], h[nd.smooth_child]);
    best = std::max(best, h[i]);
  }
  return best;
}

ResolvingTree build_resolving_tree(const LinkDiagram& d, long long max_nodes) {
  validate(d);
  ResolvingTree tree;
  tree.nodes.push_back({d, {}, -1, 0, -1, -1});
  for (size_t i = 0; i < tree.nodes.size(); ++i) {
    if (static_cast<long long>(tree.nodes.size()) > max_nodes)
      throw DiagramError("resolving tree exceeds the node limit");
    LinkDiagram cur = tree.nodes[i].diagram;
    TraversalReport t = traverse(cur);
    if (t.descending) {
      tree.nodes[i].form = {static_cast<int>(t.components.size()), t.writhe};
      continue;
    }
    int p = t.bad.front();
    int sw = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({switch_crossing(cur, p), {}, -1, 0, -1, -1});
    int sm = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({smooth_oriented(cur, p), {}, -1, 0, -1, -1});
    tree.nodes[i].crossing = p;
    tree.nodes[i].sign = cur.crossings[p].sign;
    tree.nodes[i].switch_child = sw;
    tree.nodes[i].smooth_child = sm;
  }
  return tree;
}

// --- built-in algebras --------------------------------------------------------

namespace {

const std::vector<VarSpec> kXY{{"x", 1}, {"y", 1}};
const std::vector<VarSpec> kZ{{"z", 1}};
const std::vector<VarSpec> kT2{{"t", 2}};
const std::vector<VarSpec> kXYZ{{"x", 1}, {"y", 1}, {"z", 1}};

LaurentPoly mono(const std::vector<VarSpec>& vars, const std::vector<int>& exps, long long c) {
  return LaurentPoly::monomial(vars, exps, Int(c));
}

}  // namespace

ConwayAlgebra<LaurentPoly> homfly_algebra() {
  LaurentPoly xinv = mono(kXY, {-1, 0}, 1);
  LaurentPoly xinv_y = mono(kXY, {-1, 1}, 1);
  LaurentPoly yinv = mono(kXY, {0, -1}, 1);
  LaurentPoly x_yinv = mono(kXY, {1, -1}, 1);
  LaurentPoly xy = LaurentPoly::single(kXY, "x", 1) + LaurentPoly::single(kXY, "y", 1);
  ConwayAlgebra<LaurentPoly> alg;
  alg.name = "homfly";
  alg.constant = [xy](int n) { return xy.pow(static_cast<unsigned>(n - 1)); };
  alg.bar = [xinv, xinv_y](const LaurentPoly& b, const LaurentPoly& c) {
    return xinv * c - xinv_y * b;
  };
  alg.star = [yinv, x_yinv](const LaurentPoly& b, const LaurentPoly& c) {
    return yinv * c - x_yinv * b;
  };
  return alg;
}

ConwayAlgebra<LaurentPoly> conway_poly_algebra() {
  LaurentPoly z = LaurentPoly::single(kZ, "z", 1);
  LaurentPoly one = LaurentPoly::constant(kZ, 1);
  LaurentPoly zero = LaurentPoly::zero(kZ);
  ConwayAlgebra<LaurentPoly> alg;
  alg.name = "conway";
  alg.constant = [one, zero](int n) { return n == 1 ? one : zero; };
  alg.bar = [z](const LaurentPoly& b, const LaurentPoly& c) { return b + z * c; };
  alg.star = [z](const LaurentPoly& b, const LaurentPoly& c) { return b - z * c; };
  return alg;
}

ConwayAlgebra<LaurentPoly> jones_algebra() {
  // exponents live on the half-integer grid: entry k means t^(k/2)
  auto tp = [](int halves, long long c) {
    return LaurentPoly::monomial(kT2, {halves}, Int(c));
  };
  LaurentPoly mu = tp(1, -1) + tp(-1, -1);             // -(sqrt(t) + 1/sqrt(t))
  LaurentPoly bar_b = tp(-4, 1);                       // 1/t^2
  LaurentPoly bar_c = tp(-1, -1) + tp(-3, 1);          // -(t^(-1/2) - t^(-3/2))
  LaurentPoly star_b = tp(4, 1);                       // t^2
  LaurentPoly star_c = tp(3, 1) + tp(1, -1);           // t^(3/2) - t^(1/2)
  ConwayAlgebra<LaurentPoly> alg;
  alg.name = "jones";
  alg.constant = [mu](int n) { return mu.pow(static_cast<unsigned>(n - 1)); };
  alg.bar = [bar_b, bar_c](const LaurentPoly& b, const LaurentPoly& c) {
    return bar_b * b + bar_c * c;
  };
  alg.star = [star_b, star_c](const LaurentPoly& b, const LaurentPoly& c) {
    return star_b * b + star_c * c;
  };
  return alg;
}

ConwayAlgebra<LaurentPoly> three_var_algebra() {
  LaurentPoly xy = LaurentPoly::single(kXYZ, "x", 1) + LaurentPoly::single(kXYZ, "y", 1);
  LaurentPoly z = LaurentPoly::single(kXYZ, "z", 1);
  LaurentPoly xinv = mono(kXYZ, {-1, 0, 0}, 1);
  LaurentPoly xinv_y = mono(kXYZ, {-1, 1, 0}, 1);
  LaurentPoly xinv_z = mono(kXYZ, {-1, 0, 1}, 1);
  LaurentPoly yinv = mono(kXYZ, {0, -1, 0}, 1);
  LaurentPoly x_yinv = mono(kXYZ, {1, -1, 0}, 1);
  LaurentPoly yinv_z = mono(kXYZ, {0, -1, 1}, 1);
  ConwayAlgebra<LaurentPoly> alg;
  alg.name = "three_var";
  alg.constant = [xy, z](int n) {
    LaurentPoly geom = LaurentPoly::zero(kXYZ);
    for (int k = 0; k <= n - 2; ++k) geom += xy.pow(static_cast<unsigned>(k));
    return xy.pow(static_cast<unsigned>(n - 1)) + z * geom;
  };
  alg.bar = [xinv, xinv_y, xinv_z](const LaurentPoly& b, const LaurentPoly& c) {
    return xinv * c - xinv_z - xinv_y * b;
  };
  alg.star = [yinv, x_yinv, yinv_z](const LaurentPoly& b, const LaurentPoly& c) {
    return yinv * c - yinv_z - x_yinv * b;
  };
  return alg;
}

ConwayAlgebra<LkValue> component_linking_algebra() {
  ConwayAlgebra<LkValue> alg;
  alg.name = "component_linking";
  alg.constant = [](int n) { return LkValue{n, 0}; };
  alg.bar = [](const LkValue& b, const LkValue& c) {
    return LkValue{b.components, b.linking + (b.components > c.components ? 1 : 0)};
  };
  alg.star = [](const LkValue& b, const LkValue& c) {
    return LkValue{b.components, b.linking - (b.components > c.components ? 1 : 0)};
  };
  return alg;
}

LaurentPoly homfly(const LinkDiagram& d, const EvalOptions& opt) {
  return evaluate(d, homfly_algebra(), opt);
}
LaurentPoly conway_poly(const LinkDiagram& d, const EvalOptions& opt) {
  return evaluate(d, conway_poly_algebra(), opt);
}
LaurentPoly jones(const LinkDiagram& d, const EvalOptions& opt) {
  return evaluate(d, jones_algebra(), opt);
}
LaurentPoly three_var_invariant(const LinkDiagram& d, const EvalOptions& opt) {
  return evaluate(d, three_var_algebra(), opt);
}

// --- finite tables --------------------------------------------------------------

int FiniteAlgebra::constant(int k) const {
  if (k < 1) throw AlgebraUndefined("constant index must be positive");
  if (constants.empty()) throw AlgebraUndefined("no constants listed");
  int len = static_cast<int>(constants.size());
  int p = period > 0 && period <= len ? period : len;
  if (k <= len) return constants[k - 1];
  return constants[len - p + (k - len - 1) % p];
}

std::optional<int> FiniteAlgebra::bar_peek(int a, int b) const {
  if (a < 1 || a > n || b < 1 || b > n) throw AlgebraUndefined("element out of range");
  int v = bar_table[a - 1][b - 1];
  if (v == 0) return std::nullopt;
  return v;
}

std::optional<int> FiniteAlgebra::star_peek(int a, int b) const {
  if (a < 1 || a > n || b < 1 || b > n) throw AlgebraUndefined("element out of range");
  int v = star_table[a - 1][b - 1];
  if (v == 0) return std::nullopt;
  return v;
}

int FiniteAlgebra::bar_at(int a, int b) const {
  auto v = bar_peek(a, b);
  if (!v)
    throw AlgebraUndefined("bar undefined at (" + std::to_string(a) + ", " + std::to_string(b) +
                           ")");
  return *v;
}

int FiniteAlgebra::star_at(int a, int b) const {
  auto v = star_peek(a, b);
  if (!v)
    throw AlgebraUndefined("star undefined at (" + std::to_string(a) + ", " + std::to_string(b) +
                           ")");
  return *v;
}

std::string FiniteAlgebra::to_text() const {
  std::ostringstream out;
  out << n << "\n";
  auto dump = [&](const std::vector<std::vector<int>>& t) {
    for (const auto& row : t) {
      for (size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
      out << "\n";
    }
  };
  dump(bar_table);
  dump(star_table);
  int len = static_cast<int>(constants.size());
  int p = period > 0 && period < len ? period : 0;  // annotate only a strict tail
  for (int j = 0; j < len; ++j) {
    if (j) out << " ";
    if (p && j == len - p) out << "( ";
    out << constants[j];
  }
  if (p) out << " )";
  out << "\n";
  return out.str();
}

FiniteAlgebra FiniteAlgebra::parse(const std::string& text) {
  std::istringstream in(text);
  FiniteAlgebra t;
  if (!(in >> t.n) || t.n < 1 || t.n > 64)
    throw AlgebraUndefined("table size must be between 1 and 64");
  auto read_table = [&](std::vector<std::vector<int>>& tab) {
    tab.assign(t.n, std::vector<int>(t.n, 0));
    for (auto& row : tab)
      for (auto& v : row) {
        if (!(in >> v)) throw AlgebraUndefined("truncated operation table");
        if (v < 0 || v > t.n) throw AlgebraUndefined("table entry out of range");
      }
  };
  read_table(t.bar_table);
  read_table(t.star_table);
  std::string tok;
  bool in_tail = false, closed = false;
  int tail = 0;
  while (in >> tok) {
    if (tok == "(") {
      if (in_tail || closed) throw AlgebraUndefined("misplaced repeating-tail marker");
      in_tail = true;
      continue;
    }
    if (tok == ")") {
      if (!in_tail || tail == 0) throw AlgebraUndefined("empty repeating tail");
      in_tail = false;
      closed = true;
      continue;
    }
    if (closed) throw AlgebraUndefined("tokens after the repeating tail");
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw AlgebraUndefined("bad constant token: " + tok);
    if (v < 1 || v > t.n) throw AlgebraUndefined("constant out of range");
    t.constants.push_back(v);
    if (in_tail) ++tail;
  }
  if (in_tail) throw AlgebraUndefined("unterminated repeating tail");
  t.period = closed ? tail : 0;
  if (t.constants.empty()) throw AlgebraUndefined("missing constants line");
  if (t.constants[0] != 1) throw AlgebraUndefined("first constant must be element 1");
  if (t.n >= 2 && t.constants.size() >= 2 && t.constants[1] != 2)
    throw AlgebraUndefined("second constant must be element 2");
  return t;
}

ConwayAlgebra<int> FiniteAlgebra::algebra() const {
  ConwayAlgebra<int> alg;
  alg.name = name.empty() ? "finite" : name;
  FiniteAlgebra t = *this;
  alg.constant = [t](int k) { return t.constant(k); };
  alg.bar = [t](const int& a, const int& b) { return t.bar_at(a, b); };
  alg.star = [t](const int& a, const int& b) { return t.star_at(a, b); };
  return alg;
}

FiniteAlgebra first_element_algebra(int n) {
  if (n < 1 || n > 64) throw AlgebraUndefined("size out of range");
  FiniteAlgebra t;
  t.name = "first_element_" + std::to_string(n);
  t.n = n;
  t.bar_table.assign(n, std::vector<int>(n));
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) t.bar_table[a - 1][b - 1] = a;
  t.star_table = t.bar_table;
  for (int k = 1; k <= n; ++k) t.constants.push_back(k);
  return t;
}

FiniteAlgebra mod_three_algebra() {
  FiniteAlgebra t;
  t.name = "mod_three";
  t.n = 3;
  t.bar_table.assign(3, std::vector<int>(3));
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      int v = ((1 - a - b) % 3 + 3) % 3;
      t.bar_table[a - 1][b - 1] = v == 0 ? 3 : v;
    }
  t.star_table = t.bar_table;
  t.constants = {1, 2, 3};
  return t;
}

FiniteAlgebra four_element_algebra() {
  FiniteAlgebra t;
  t.name = "four_element";
  t.n = 4;
  t.bar_table = {{2, 1, 4, 3}, {3, 4, 1, 2}, {1, 2, 3, 4}, {4, 3, 2, 1}};
  t.star_table = {{3, 1, 2, 4}, {1, 3, 4, 2}, {2, 4, 3, 1}, {4, 2, 1, 3}};
  t.constants = {1, 2, 4};
  return t;
}

// --- axiom checking --------------------------------------------------------------

namespace {

struct AxiomScan {
  const FiniteAlgebra& t;
  AxiomReport& rep;

  // evaluates a closed expression; nullopt when a needed cell is undefined
  using Val = std::optional<int>;
  Val bar(Val a, Val b) const {
    if (!a || !b) return std::nullopt;
    return t.bar_peek(*a, *b);
  }
  Val star(Val a, Val b) const {
    if (!a || !b) return std::nullopt;
    return t.star_peek(*a, *b);
  }

  void record(const std::string& axiom, bool& failed, Val lhs, Val rhs,
              const std::string& witness) {
    if (!lhs || !rhs) {
      ++rep.skipped_undefined;
      return;
    }
    if (*lhs != *rhs && !failed) {
      failed = true;
      rep.failures.push_back({axiom, witness});
    }
  }
};

std::string wit(std::initializer_list<std::pair<const char*, int>> parts) {
  std::string s;
  for (const auto& [k, v] : parts) {
    if (!s.empty()) s += " ";
    s += k;
    s += "=";
    s += std::to_string(v);
  }
  return s;
}

}  // namespace

AxiomReport check_axioms(const FiniteAlgebra& t) {
  AxiomReport rep;
  AxiomScan s{t, rep};
  int n = t.n;
  int len = static_cast<int>(t.constants.size());
  int period = t.period > 0 && t.period <= len ? t.period : len;
  std::set<std::string> ok;

  auto finish = [&](const std::string& axiom, bool failed) {
    if (!failed) {
      rep.passed.push_back(axiom);
      ok.insert(axiom);
    }
  };

  bool f1 = false, f2 = false;
  for (int k = 1; k <= len + 2 * period + 1; ++k) {
    s.record("C1", f1, s.bar(t.constant(k), t.constant(k + 1)), t.constant(k),
             wit({{"n", k}}));
    s.record("C2", f2, s.star(t.constant(k), t.constant(k + 1)), t.constant(k),
             wit({{"n", k}}));
  }
  finish("C1", f1);
  finish("C2", f2);

  bool f3 = false, f4 = false, f5 = false;
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      for (int c = 1; c <= n; ++c)
        for (int d = 1; d <= n; ++d) {
          auto w = wit({{"a", a}, {"b", b}, {"c", c}, {"d", d}});
          s.record("C3", f3, s.bar(s.bar(a, b), s.bar(c, d)), s.bar(s.bar(a, c), s.bar(b, d)), w);
          s.record("C4", f4, s.star(s.bar(a, b), s.bar(c, d)), s.bar(s.star(a, c), s.star(b, d)),
                   w);
          s.record("C5", f5, s.star(s.star(a, b), s.star(c, d)),
                   s.star(s.star(a, c), s.star(b, d)), w);
        }
  finish("C3", f3);
  finish("C4", f4);
  finish("C5", f5);

  bool f6 = false, f7 = false;
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      auto w = wit({{"a", a}, {"b", b}});
      s.record("C6", f6, s.star(s.bar(a, b), b), a, w);
      s.record("C7", f7, s.bar(s.star(a, b), b), a, w);
    }
  finish("C6", f6);
  finish("C7", f7);

  // dependencies among the axioms: conclusions already forced by passed ones
  const std::vector<std::pair<std::vector<std::string>, std::string>> deps = {
      {{"C1", "C6"}, "C2"}, {{"C2", "C7"}, "C1"}, {{"C6", "C4"}, "C7"}, {{"C7", "C4"}, "C6"},
      {{"C6", "C4"}, "C5"}, {{"C7", "C4"}, "C3"}, {{"C5", "C6", "C7"}, "C4"},
      {{"C3", "C6", "C7"}, "C4"}};
  std::set<std::string> noted;
  for (const auto& [premises, conclusion] : deps) {
    bool all = true;
    for (const auto& p : premises) all = all && ok.count(p);
    if (!all || !ok.count(conclusion) || noted.count(conclusion)) continue;
    noted.insert(conclusion);
    std::string line = conclusion + " follows from ";
    for (size_t i = 0; i < premises.size(); ++i) line += (i ? ", " : "") + premises[i];
    rep.implied.push_back(line);
  }
  return rep;
}

std::string AxiomReport::summary() const {
  std::ostringstream out;
  if (ok())
    out << "all axioms hold";
  else {
    out << failures.size() << " violation(s):";
    for (const auto& f : failures) out << " " << f.axiom << " at " << f.witness << ";";
  }
  if (skipped_undefined > 0) out << " (" << skipped_undefined << " tuples skipped as undefined)";
  for (const auto& line : implied) out << "\n" << line;
  return out.str();
}

std::optional<std::vector<int>> find_mirror_involution(const FiniteAlgebra& t) {
  int n = t.n;
  std::vector<int> tau(n + 1);
  std::vector<int> rest;
  for (int i = 3; i <= n; ++i) rest.push_back(i);
  std::sort(rest.begin(), rest.end());
  do {
    tau[0] = 0;
    if (n >= 1) tau[1] = 1;
    if (n >= 2) tau[2] = 2;
    for (size_t i = 0; i < rest.size(); ++i) tau[3 + i] = rest[i];
    bool good = true;
    for (size_t k = 0; k < t.constants.size() && good; ++k)
      good = tau[t.constants[k]] == t.constants[k];
    for (int a = 1; a <= n && good; ++a)
      for (int b = 1; b <= n && good; ++b) {
        auto lhs = t.bar_peek(a, b);
        auto rhs = t.star_peek(tau[a], tau[b]);
        if (lhs && rhs && tau[*lhs] != *rhs) good = false;
        auto lhs2 = t.star_peek(a, b);
        auto rhs2 = t.bar_peek(tau[a], tau[b]);
        if (lhs2 && rhs2 && tau[*lhs2] != *rhs2) good = false;
      }
    if (good) return std::vector<int>(tau.begin() + 1, tau.end());
  } while (std::next_permutation(rest.begin(), rest.end()));
  return std::nullopt;
}

WeightedSimplex<long long> lk_weighted_simplex(const LinkDiagram& d) {
  std::function<long long(const LinkDiagram&)> total = [](const LinkDiagram& s) {
    auto m = linking_matrix(s);
    long long sum = 0;
    for (size_t i = 0; i < m.size(); ++i)
      for (size_t j = i + 1; j < m.size(); ++j) sum += m[i][j];
    return sum;
  };
  return weighted_simplex<long long>(d, total);
}

}  // namespace ck
