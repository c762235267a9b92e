#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "conwaykit/algsearch.hpp"

using namespace ck;

namespace {

LinkDiagram closure(const std::string& word, int strands = 0) {
  return braid_closure(parse_braid(word, strands));
}

LinkDiagram unlink(int n) { return closure("", n); }

// relabel a table by a bijection sigma (sigma[old] = new) fixing 1 and 2
FiniteAlgebra relabeled(const FiniteAlgebra& t, const std::vector<int>& sigma) {
  FiniteAlgebra out = t;
  for (int a = 1; a <= t.n; ++a)
    for (int b = 1; b <= t.n; ++b) {
      out.bar_table[sigma[a] - 1][sigma[b] - 1] = sigma[t.bar_table[a - 1][b - 1]];
      out.star_table[sigma[a] - 1][sigma[b] - 1] = sigma[t.star_table[a - 1][b - 1]];
    }
  for (auto& c : out.constants) c = sigma[c];
  return out;
}

std::set<std::string> rep_texts(const CensusResult& r) {
  std::set<std::string> out;
  for (const auto& t : r.representatives) out.insert(t.to_text());
  return out;
}

}  // namespace

TEST_CASE("census counts for sizes 2 through 4") {
  int expected[] = {0, 0, 2, 9, 51};
  for (int n = 2; n <= 4; ++n) {
    CensusResult res = enumerate_algebras(n);
    CHECK(res.size == n);
    CHECK(res.count == expected[n]);
    CHECK(static_cast<int>(res.representatives.size()) == res.count);
    CHECK(res.short_chain_extras.empty());
    CHECK(res.notes.empty());
  }
}

TEST_CASE("census size is range checked") {
  CHECK_THROWS_AS(enumerate_algebras(1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_algebras(6), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_algebras_brute(4), std::invalid_argument);
}

TEST_CASE("every representative passes the axiom check") {
  for (int n = 2; n <= 4; ++n)
    for (const auto& rep : enumerate_algebras(n).representatives) {
      AxiomReport ax = check_axioms(rep);
      CHECK_MESSAGE(ax.ok(), rep.name, ": ", ax.summary());
      CHECK(canonical_form(rep).to_text() == rep.to_text());
      FiniteAlgebra back = FiniteAlgebra::parse(rep.to_text());
      CHECK(back.bar_table == rep.bar_table);
      CHECK(back.star_table == rep.star_table);
      CHECK(back.constants == rep.constants);
      CHECK(back.period == rep.period);
    }
}

TEST_CASE("brute-force census agrees with the structured search") {
  for (int n = 2; n <= 3; ++n) {
    CensusResult brute = enumerate_algebras_brute(n);
    CensusResult fast = enumerate_algebras(n);
    CHECK(brute.count == fast.count);
    CHECK(rep_texts(brute) == rep_texts(fast));
    CHECK(brute.short_chain_extras.size() == fast.short_chain_extras.size());
  }
}

TEST_CASE("serial and parallel censuses coincide") {
  CensusResult serial = enumerate_algebras(4, false);
  CensusResult parallel = enumerate_algebras(4, true);
  CHECK(serial.count == parallel.count);
  CHECK(rep_texts(serial) == rep_texts(parallel));
}

TEST_CASE("built-in tables appear among the representatives") {
  auto texts3 = rep_texts(enumerate_algebras(3));
  CHECK(texts3.count(canonical_form(mod_three_algebra()).to_text()) == 1);
  CHECK(texts3.count(canonical_form(first_element_algebra(3)).to_text()) == 1);
  auto texts4 = rep_texts(enumerate_algebras(4));
  CHECK(texts4.count(canonical_form(four_element_algebra()).to_text()) == 1);
}

TEST_CASE("canonical form is stable and identifies relabelings") {
  FiniteAlgebra m = mod_three_algebra();
  FiniteAlgebra cm = canonical_form(m);
  CHECK(canonical_form(cm).to_text() == cm.to_text());

  FiniteAlgebra f = four_element_algebra();
  FiniteAlgebra swapped = relabeled(f, {0, 1, 2, 4, 3});
  CHECK(swapped.bar_table != f.bar_table);
  CHECK(canonical_form(swapped).to_text() == canonical_form(f).to_text());

  CHECK(canonical_form(first_element_algebra(3)).to_text() != cm.to_text());
}

TEST_CASE("canonical form rejects malformed tables") {
  FiniteAlgebra bad = mod_three_algebra();
  bad.bar_table.pop_back();
  CHECK_THROWS_AS(canonical_form(bad), AlgebraUndefined);
}

TEST_CASE("invariant battery on the built-in tables") {
  LinkDiagram right = closure("s1^3");
  LinkDiagram left = closure("s1^-3");
  CHECK(invariant_battery(mod_three_algebra(), {unlink(1), right}) == std::vector<int>{1, 2});
  CHECK(invariant_battery(four_element_algebra(), {right, left}) == std::vector<int>{4, 3});
}

TEST_CASE("invariant battery maps trivial links to the constants") {
  std::vector<LinkDiagram> trivial;
  for (int k = 1; k <= 4; ++k) trivial.push_back(unlink(k));
  for (const auto& rep : enumerate_algebras(3).representatives) {
    std::vector<int> vals = invariant_battery(rep, trivial);
    for (int k = 1; k <= 4; ++k) CHECK(vals[k - 1] == rep.constant(k));
  }
}

TEST_CASE("invariant battery refuses tables that fail an axiom") {
  FiniteAlgebra broken = mod_three_algebra();
  broken.constants = {1, 3};
  CHECK_THROWS_AS(invariant_battery(broken, {unlink(1)}), AlgebraUndefined);
}

TEST_CASE("constants with a non-repeating prefix round-trip") {
  CensusResult res = enumerate_algebras(2);
  const FiniteAlgebra* tail = nullptr;
  for (const auto& rep : res.representatives)
    if (rep.period > 0 && rep.period < static_cast<int>(rep.constants.size())) tail = &rep;
  REQUIRE(tail != nullptr);
  CHECK(tail->constants == std::vector<int>{1, 2});
  CHECK(tail->period == 1);
  CHECK(tail->to_text().find("( 2 )") != std::string::npos);
  for (int k = 2; k <= 6; ++k) CHECK(tail->constant(k) == 2);

  FiniteAlgebra back = FiniteAlgebra::parse(tail->to_text());
  CHECK(back.constants == tail->constants);
  CHECK(back.period == tail->period);
  CHECK(check_axioms(back).ok());
}

TEST_CASE("repeating-tail markers are validated on parse") {
  std::string base = "2\n1 1\n2 2\n1 1\n2 2\n";
  CHECK(FiniteAlgebra::parse(base + "1 2\n").period == 0);
  CHECK(FiniteAlgebra::parse(base + "1 ( 2 )\n").period == 1);
  CHECK_THROWS_AS(FiniteAlgebra::parse(base + "1 ( 2\n"), AlgebraUndefined);
  CHECK_THROWS_AS(FiniteAlgebra::parse(base + "1 ( ) 2\n"), AlgebraUndefined);
  CHECK_THROWS_AS(FiniteAlgebra::parse(base + "1 ( 2 ) 2\n"), AlgebraUndefined);

  // a tail spanning the whole list is just a purely periodic sequence
  FiniteAlgebra whole = FiniteAlgebra::parse(base + "( 1 2 )\n");
  CHECK(whole.constants == std::vector<int>{1, 2});
  CHECK(whole.to_text().find('(') == std::string::npos);
  CHECK(whole.constant(7) == 1);
}

TEST_CASE("size-5 census reports both convention counts") {
  CensusResult res = enumerate_algebras(5);
  CHECK(res.count == 202);
  REQUIRE(res.short_chain_extras.size() == 2);
  CHECK(res.count + static_cast<int>(res.short_chain_extras.size()) == 204);
  REQUIRE(res.notes.size() == 1);
  CHECK(res.notes[0].find("202") != std::string::npos);
  CHECK(res.notes[0].find("204") != std::string::npos);

  for (const auto& rep : res.representatives) CHECK(check_axioms(rep).ok());
  for (const auto& extra : res.short_chain_extras) {
    CHECK(extra.constants == std::vector<int>{1, 2});
    AxiomReport ax = check_axioms(extra);
    CHECK_FALSE(ax.ok());
    bool constants_broke = false;
    for (const auto& f : ax.failures) constants_broke |= f.axiom == "C1" || f.axiom == "C2";
    CHECK(constants_broke);
    CHECK(canonical_form(extra).to_text() == extra.to_text());
  }

  int counts[] = {0, 0, 2, 9, 51, 202};
  for (int n = 3; n <= 5; ++n) CHECK(counts[n] > counts[n - 1]);
}
