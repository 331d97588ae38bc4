#include "doctest.h"
#include "qmon/cylindric.hpp"
#include "qmon/tensor_cylindric.hpp"
#include "support.hpp"

using namespace qmon;

namespace {

AxiomState state(const CylindricReport& r, const std::string& name) {
  for (const auto& a : r.axioms)
    if (a.name == name) return a.state;
  FAIL("no axiom " << name);
  return AxiomState::Fail;
}

Subspace e(std::size_t d, std::size_t k) { return Subspace::coordinate(d, {k}); }

}  // namespace

TEST_SUITE("cylindric") {

TEST_CASE("one dimension, d00 = 1") {
  auto m = lattices::mo(2);
  CylindricStructure c{m, {quantifier_from_subalgebra(m, {m.zero(), m.one()})}, {{m.one()}}};
  auto r = check_cylindric(c, CylMode::Full);
  CHECK(r.weak_ok());
  CHECK(r.full_ok());
}

TEST_CASE("classical set algebra over X = {0,1}, I = {0,1}") {
  auto c = classical_cyl_set_algebra(2, 2);
  CHECK(c.base.size() == 16);
  CHECK(check_cylindric(c, CylMode::Full).full_ok());
  CHECK(c.d(0, 1) == classical_element(2, 2, {{0, 0}, {1, 1}}));
  CHECK(c.cyl[0][classical_element(2, 2, {{0, 1}})] == classical_element(2, 2, {{0, 1}, {1, 1}}));
  for (std::size_t i = 0; i < 2; ++i) CHECK(c.cyl[i][c.base.zero()] == c.base.zero());
}

TEST_CASE("classical set algebras up to |X| = 3") {
  for (std::size_t x = 1; x <= 3; ++x)
    for (std::size_t i = 1; i <= 2; ++i) CHECK(check_cylindric(classical_cyl_set_algebra(x, i), CylMode::Full).full_ok());
  CHECK_THROWS_AS(classical_cyl_set_algebra(3, 3), SizeGuardError);
}

TEST_CASE("classical substitution") {
  auto c = classical_cyl_set_algebra(2, 2);
  const Element x = classical_element(2, 2, {{0, 1}});
  CHECK(substitution_classical(c, 0, 0, x) == x);
  CHECK(substitution_classical(c, 0, 1, x) == c.base.zero());
  CHECK(substitution_classical(c, 0, 1, classical_element(2, 2, {{1, 1}})) ==
        classical_element(2, 2, {{0, 1}, {1, 1}}));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(check_substitution(c, i, j, Substitution::Classical).boolean_endomorphism());
      for (Element y = 0; y < c.base.size(); ++y)
        CHECK(substitution_sasaki(c, i, j, y) == substitution_classical(c, i, j, y));
    }
}

TEST_CASE("Sasaki substitution at x = 1 and join preservation") {
  auto t = as_cylindric_structure(TensorLayout({2, 2}), {Subspace::span(4, {{1, 0, 0, 1}})});
  const auto& c = t.structure;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      if (i != j) CHECK(substitution_sasaki(c, i, j, c.base.one()) == c.cyl[i][c.d(i, j)]);
      for (Element x = 0; x < c.base.size(); ++x)
        for (Element y = 0; y < c.base.size(); ++y)
          CHECK(substitution_sasaki(c, i, j, c.base.join(x, y)) ==
                c.base.join(substitution_sasaki(c, i, j, x), substitution_sasaki(c, i, j, y)));
    }
}

TEST_CASE("substitution needs diagonals") {
  auto m = lattices::mo(2);
  CylindricStructure c{m, {quantifier_from_subalgebra(m, {m.zero(), m.one()})}, {}};
  CHECK_THROWS_AS(substitution_classical(c, 0, 0, m.one()), PreconditionError);
}

TEST_CASE("diagonal-free structures skip C3-C5") {
  auto m = lattices::mo(2);
  CylindricStructure c{m, {quantifier_from_subalgebra(m, {m.zero(), m.one()})}, {}};
  auto r = check_cylindric(c, CylMode::Full);
  CHECK(state(r, "C3") == AxiomState::Skipped);
  CHECK(state(r, "C5") == AxiomState::Skipped);
  CHECK(state(r, "C5") != AxiomState::Fail);
}

TEST_CASE("block quantifiers of MO2 commute") {
  // each sends everything outside its block to 1
  auto m = lattices::mo(2);
  auto a = quantifier_from_subalgebra(m, qmon::test::elements(m, {"0", "1", "a", "a'"}));
  auto b = quantifier_from_subalgebra(m, qmon::test::elements(m, {"0", "1", "b", "b'"}));
  CHECK(check_cylindric(CylindricStructure{m, {a, b}, {}}, CylMode::Weak).weak_ok());
}

TEST_CASE("C2 failure is witnessed") {
  // partitions {01|2} and {0|12} of three atoms
  auto b = lattices::boolean(3);
  auto s = quantifier_from_subalgebra(b, subalgebra_closure(b, {0b011}));
  auto t = quantifier_from_subalgebra(b, subalgebra_closure(b, {0b110}));
  CylindricStructure c{b, {s, t}, {}};
  auto r = check_cylindric(c, CylMode::Weak);
  CHECK(state(r, "C1") == AxiomState::Pass);
  CHECK(state(r, "C2") == AxiomState::Fail);
  CHECK_FALSE(r.weak_ok());
  const auto& w = r.axioms[1].witness;
  REQUIRE(w.size() == 3);
  CHECK(c.cyl[w[0]][c.cyl[w[1]][w[2]]] != c.cyl[w[1]][c.cyl[w[0]][w[2]]]);
}

TEST_CASE("malformed structures") {
  auto m = lattices::mo(2);
  CylindricStructure c{m, {UnaryMap{0, 1}}, {}};
  CHECK_THROWS_AS(require_well_formed(c), StructureError);
}

TEST_CASE("tensor closures") {
  TensorLayout l({2, 2});
  auto empty = as_cylindric_structure(l, {});
  CHECK(check_cylindric(empty.structure, CylMode::Full).full_ok());

  auto bell = as_cylindric_structure(l, {Subspace::span(4, {{1, 0, 0, 1}})});
  auto rb = check_cylindric(bell.structure, CylMode::Full);
  CHECK(rb.weak_ok());
  CHECK(state(rb, "C5") == AxiomState::Fail);

  std::vector<Subspace> gens{tensor_subspace(e(2, 0), Subspace::full(2)), tensor_subspace(Subspace::full(2), e(2, 0))};
  auto free = as_cylindric_structure(l, gens, false);
  CHECK(free.structure.base.size() == 16);
  CHECK(is_boolean(free.structure.base));
  CHECK(check_cylindric(free.structure, CylMode::Full).full_ok());
  // with the diagonal added the closure grows and C5 fails
  auto with_d = as_cylindric_structure(l, gens, true);
  CHECK(with_d.structure.base.size() > 16);
  CHECK(check_cylindric(with_d.structure, CylMode::Weak).weak_ok());
  CHECK_FALSE(check_cylindric(with_d.structure, CylMode::Full).full_ok());
}

TEST_CASE("dim-3 closure: weak passes, C5 fails at the generator") {
  TensorLayout l({3, 3});
  GQVector v(9);
  v[l.index({0, 1})] = 1;
  v[l.index({1, 0})] = 1;
  auto s = Subspace::span(9, {v});
  auto t = as_cylindric_structure(l, {s});
  auto r = check_cylindric(t.structure, CylMode::Full);
  CHECK(r.weak_ok());
  const auto& c5 = r.axioms.back();
  REQUIRE(c5.state == AxiomState::Fail);
  auto x = find_element(t, s);
  REQUIRE(x);
  CHECK(c5.witness == std::vector<Element>{0, 1, *x});
}

}
