#include <cmath>

#include "doctest.h"
#include "qmon/subspace.hpp"
#include "qmon/quantifiers.hpp"
#include "qmon/tensor_cylindric.hpp"

using namespace qmon;

namespace {

Subspace line(std::initializer_list<long> v) {
  GQVector g;
  for (long x : v) g.push_back(x);
  return Subspace::span(g.size(), {g});
}

Subspace e(std::size_t d, std::size_t k) { return Subspace::coordinate(d, {k}); }

}  // namespace

TEST_SUITE("subspace") {

TEST_CASE("Gaussian rationals parse and print exactly") {
  CHECK(GQ::parse("1/2+3/4i") == GQ(mpq_class(1, 2), mpq_class(3, 4)));
  CHECK(GQ::parse("-i") == GQ(0, -1));
  CHECK(GQ::parse("2") == GQ(2));
  CHECK(GQ::parse("1/2+3/4i").str() == "1/2+3/4i");
  CHECK(GQ::parse(GQ(mpq_class(-5, 3), mpq_class(1, 7)).str()) == GQ(mpq_class(-5, 3), mpq_class(1, 7)));
  CHECK_THROWS_AS(GQ::parse("1/0"), ParseError);
  CHECK_THROWS_AS(GQ::parse("abc"), ParseError);
  GQ z(mpq_class(1, 2), 3);
  CHECK(z * z.inverse() == GQ(1));
}

TEST_CASE("lattice operations") {
  auto a = line({1, 2, 0});
  CHECK(meet(a, ortho(a)).is_zero());
  CHECK(join(a, ortho(a)).is_full());
  CHECK(join(e(2, 0), e(2, 1)).is_full());
  CHECK(meet(line({1, 1}), line({1, -1})).is_zero());
  CHECK(ortho(line({1, 1})) == line({1, -1}));
  CHECK(ortho(Subspace::span(2, {{GQ(1), GQ(0, 1)}})) == Subspace::span(2, {{GQ(1), GQ(0, -1)}}));
  CHECK(Subspace::span(3, {{2, 4, 0}, {1, 2, 0}}) == line({1, 2, 0}));
}

TEST_CASE("tensor products of subspaces") {
  CHECK(tensor_subspace(Subspace::full(2), line({1, 1})).rank() == 2);
  CHECK(tensor_subspace(e(2, 0), e(2, 1)) == e(4, 1));
  CHECK(tensor_subspace(line({1, 1}), e(2, 0)) == line({1, 0, 1, 0}));
}

TEST_CASE("embedding H_i (x) B") {
  TensorLayout l({2, 2});
  CHECK(embed_alpha(l, 1, Subspace::zero(2)).is_zero());
  CHECK(embed_alpha(l, 1, Subspace::full(2)).is_full());
  // factor 1 free, B on factor 0
  CHECK(embed_alpha(l, 1, e(2, 0)) == Subspace::coordinate(4, {0, 1}));
  TensorLayout l3({3, 3});
  SubspaceSampler s(7);
  for (int k = 0; k < 10; ++k) {
    auto b = s.next(3);
    auto c = s.next(3);
    CHECK(embed_alpha(l3, 0, ortho(b)) == ortho(embed_alpha(l3, 0, b)));
    CHECK(embed_alpha(l3, 0, meet(b, c)) == meet(embed_alpha(l3, 0, b), embed_alpha(l3, 0, c)));
    CHECK(embed_alpha(l3, 0, join(b, c)) == join(embed_alpha(l3, 0, b), embed_alpha(l3, 0, c)));
    CHECK((embed_alpha(l3, 0, b) == embed_alpha(l3, 0, c)) == (b == c));
  }
}

TEST_CASE("component spans") {
  TensorLayout l({2, 2});
  CHECK(component_span(l, 0, line({1, 0, 0, 1})).is_full());
  CHECK(component_span(l, 0, tensor_subspace(e(2, 0), e(2, 1))) == e(2, 1));
  TensorLayout l3({3, 3});
  GQVector v(9);
  v[l3.index({0, 1})] = 1;
  v[l3.index({1, 0})] = 1;
  CHECK(component_span(l3, 0, Subspace::span(9, {v})) == Subspace::coordinate(3, {0, 1}));
}

TEST_CASE("exists and forall over a factor") {
  TensorLayout l({2, 2});
  CHECK(exists_factor(l, 0, Subspace::full(4)).is_full());
  CHECK(forall_factor(l, 0, Subspace::zero(4)).is_zero());
  auto bell = line({1, 0, 0, 1});
  CHECK(exists_factor(l, 0, bell).is_full());
  CHECK(forall_factor(l, 0, bell).is_zero());
  auto pure = tensor_subspace(e(2, 0), e(2, 1));
  CHECK(exists_factor(l, 0, pure) == tensor_subspace(Subspace::full(2), e(2, 1)));
  CHECK(forall_factor(l, 0, pure).is_zero());
}

TEST_CASE("exists is least in the image above S; forall agrees with the direct form") {
  TensorLayout l({2, 3});
  SubspaceSampler s(11);
  for (int k = 0; k < 20; ++k) {
    auto x = s.next(6);
    for (std::size_t i = 0; i < 2; ++i) {
      auto ex = exists_factor(l, i, x);
      CHECK(x.leq(ex));
      CHECK(forall_factor(l, i, x) == forall_factor_direct(l, i, x));
      CHECK(forall_factor(l, i, x).leq(x));
      auto t = embed_alpha(l, i, s.next(l.without({i}).ambient_dim()));
      if (x.leq(t)) CHECK(ex.leq(t));
      CHECK(ex.leq(join(ex, t)));
    }
  }
}

TEST_CASE("commutation of exists over factors") {
  TensorLayout l({2, 2, 2});
  CHECK(check_commutation(l, 0, 1, Subspace::zero(8)).holds);
  CHECK(check_commutation(l, 0, 1, Subspace::full(8)).holds);
  GQVector ghz(8);
  ghz[0] = 1;
  ghz[7] = 1;
  auto c = check_commutation(l, 0, 1, Subspace::span(8, {ghz}));
  CHECK(c.holds);
  CHECK(exists_factor(l, 2, c.grouped).is_full());
}

TEST_CASE("diagonals") {
  TensorLayout l({2, 2});
  CHECK(diagonal(l, {0, 0}).is_full());
  auto d = diagonal(l, {0, 1});
  CHECK(d.rank() == 3);
  CHECK(d == Subspace::span(4, {{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 1, 1, 0}}));
  CHECK(diagonal(TensorLayout({2, 2, 2}), {0, 1, 2}).rank() == 4);
  CHECK_THROWS_AS(diagonal(TensorLayout({2, 3}), {0, 1}), PreconditionError);
  for (std::size_t d0 = 1; d0 <= 3; ++d0)
    for (std::size_t n = 2; n <= 4 && std::pow(d0, n) <= 81; ++n) {
      TensorLayout t(std::vector<std::size_t>(n, d0));
      for (std::size_t k = 2; k <= n; ++k) {
        std::vector<std::size_t> f;
        for (std::size_t x = 0; x < k; ++x) f.push_back(x);
        CHECK(diagonal(t, f).rank() == diagonal_rank_formula(t, f));
      }
    }
}

TEST_CASE("diagonal meets and composition") {
  CHECK(check_diagonal_meet(TensorLayout({2, 2, 2}), 0, 0, 0));
  CHECK(check_diagonal_meet(TensorLayout({2, 2, 2}), 0, 1, 2));
  CHECK(check_diagonal_meet(TensorLayout({3, 3, 3}), 0, 1, 2));
  CHECK(diagonal(TensorLayout({3, 3, 3}), {0, 1, 2}).rank() == 10);
  CHECK(check_diagonal_composition(TensorLayout({2, 2, 2}), 0, 2, 1));
  CHECK(check_diagonal_composition(TensorLayout({2, 2, 2, 2}), 0, 2, 1));
  CHECK(check_diagonal_composition(TensorLayout({3, 3, 3}), 0, 1, 2));
}

TEST_CASE("C5 counterexample") {
  for (std::size_t d : {3, 4}) {
    auto w = c5_counterexample(d);
    CHECK(w.reproduced);
    CHECK(w.first_contains_h_e01);
    CHECK(w.second_contains_h_e0);
    CHECK(w.expected_floor.leq(w.meet));
    CHECK(w.meet.rank() >= d);
  }
  CHECK_THROWS_AS(c5_counterexample(2), PreconditionError);
}

TEST_CASE("exists on an exists-closed finite sublattice is a quantifier") {
  auto t = as_cylindric_structure(TensorLayout({2, 2}), {line({1, 0, 0, 1})});
  for (const auto& c : t.structure.cyl) CHECK(is_quantifier(t.structure.base, c));
  CHECK(check_orthomodular(t.structure.base).is_oml);
}

TEST_CASE("size guard") {
  CHECK_THROWS_AS(as_cylindric_structure(TensorLayout({3, 3}), {line({1, 2, 3, 0, 1, 0, 0, 0, 1})}, true, 8),
                  SizeGuardError);
}

}
