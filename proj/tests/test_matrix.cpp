#include "doctest.h"
#include "qmon/errors.hpp"
#include "qmon/star_algebra.hpp"

using namespace qmon;

namespace {

GQMatrix diag(std::initializer_list<GQ> v) {
  GQMatrix m(v.size(), v.size());
  std::size_t k = 0;
  for (const auto& x : v) m(k, k) = x, ++k;
  return m;
}

GQ q(long a, long b) { return GQ(mpq_class(a, b)); }

StarAlgebra diagonal_algebra(std::size_t d) {
  std::vector<GQMatrix> g;
  for (std::size_t i = 0; i < d; ++i) g.push_back(matrix_unit(d, i, i));
  return build_algebra(d, g);
}

GQMatrix half_ones() { return GQMatrix::from_rows({{q(1, 2), q(1, 2)}, {q(1, 2), q(1, 2)}}, 2); }

}  // namespace

TEST_SUITE("matrix") {

TEST_CASE("exact PSD certificates") {
  auto c = psd_certificate(GQMatrix::from_rows({{2, 1}, {1, 2}}, 2));
  CHECK(c.psd);
  CHECK(verify_certificate(GQMatrix::from_rows({{2, 1}, {1, 2}}, 2), c));
  auto bad = GQMatrix::from_rows({{1, 2}, {2, 1}}, 2);
  auto n = psd_certificate(bad);
  CHECK_FALSE(n.psd);
  CHECK(verify_certificate(bad, n));
  auto offdiag = GQMatrix::from_rows({{0, GQ(0, 1)}, {GQ(0, -1), 0}}, 2);
  auto o = psd_certificate(offdiag);
  CHECK_FALSE(o.psd);
  CHECK(o.value == GQ(-2));
  CHECK(is_psd(GQMatrix(3, 3)));
  CHECK_THROWS_AS(psd_certificate(GQMatrix::from_rows({{1, 1}, {0, 1}}, 2)), PreconditionError);
}

TEST_CASE("building algebras") {
  CHECK(build_algebra(2, {}).dim() == 1);
  CHECK(build_algebra(2, {matrix_unit(2, 0, 0), matrix_unit(2, 0, 1), matrix_unit(2, 1, 0), matrix_unit(2, 1, 1)}).dim() == 4);
  CHECK(build_algebra(2, {diag({1, 0})}).dim() == 2);
  CHECK_THROWS_AS(build_algebra(17, {}), SizeGuardError);
}

TEST_CASE("commutants") {
  CHECK(commutant(full_algebra(3)) == scalar_algebra(3));
  CHECK(commutant(scalar_algebra(3)) == full_algebra(3));
  CHECK(commutant(diagonal_algebra(2)) == diagonal_algebra(2));
  for (const auto& m : {diagonal_algebra(3), tensor_algebra(full_algebra(2), scalar_algebra(2)),
                        build_algebra(3, {GQMatrix::from_rows({{1, 1, 0}, {1, 1, 0}, {0, 0, 0}}, 3)})})
    CHECK(commutant(commutant(m)) == m);
}

TEST_CASE("least projection of M above p") {
  auto d = diagonal_algebra(2);
  CHECK(exists_alg(d, diag({1, 0})) == diag({1, 0}));
  CHECK(exists_alg(d, half_ones()) == GQMatrix::identity(2));
  CHECK(exists_alg(scalar_algebra(3), rank_one_projection({1, 2, 0})) == GQMatrix::identity(3));
  CHECK_THROWS_AS(exists_alg(d, diag({2, 0})), PreconditionError);
}

TEST_CASE("range projections") {
  auto r = range_projection(diag({q(1, 2), 0}));
  CHECK(r.p == diag({1, 0}));
  CHECK(r.dominates);
  CHECK(r.fixes);
  CHECK(r.polynomial);
  CHECK(range_projection(half_ones()).p == half_ones());
  CHECK(range_projection(diag({1, 0})).p == diag({1, 0}));
  CHECK_THROWS_AS(range_projection(diag({1, -1})), PreconditionError);
}

TEST_CASE("conditional expectations") {
  auto d = diagonal_algebra(2);
  CHECK(conditional_expectation(d, diag({3, 4})) == diag({3, 4}));
  CHECK(conditional_expectation(d, half_ones()) == diag({q(1, 2), q(1, 2)}));
  auto x = GQMatrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, GQ(9, 1)}}, 3);
  CHECK(conditional_expectation(scalar_algebra(3), x) == GQMatrix::identity(3) * (x.trace() * q(1, 3)));
  for (const auto& n : {d, scalar_algebra(2), full_algebra(2)}) CHECK(verify_conditional_expectation(n, 3).ok());
  CHECK(verify_conditional_expectation(tensor_algebra(full_algebra(2), scalar_algebra(2)), 5).ok());
}

TEST_CASE("exists equals range of expectation") {
  auto d = diagonal_algebra(2);
  auto r = check_exists_equals_range_of_expectation(d, diag({1, 0}));
  CHECK(r.all_equal);
  CHECK(r.exists_p == diag({1, 0}));
  auto s = check_exists_equals_range_of_expectation(d, half_ones());
  CHECK(s.all_equal);
  CHECK(s.exists_p == GQMatrix::identity(2));
  auto n = tensor_algebra(full_algebra(2), scalar_algebra(2));
  auto b = check_exists_equals_range_of_expectation(n, bell_projection());
  CHECK(b.all_equal);
  CHECK(b.exists_p == GQMatrix::identity(4));
}

TEST_CASE("Pimsner-Popa") {
  auto n = tensor_algebra(full_algebra(2), scalar_algebra(2));
  CHECK(check_pimsner_popa(full_algebra(2), half_ones(), GQ(1)).holds);
  CHECK(check_pimsner_popa(n, bell_projection(), q(1, 4)).holds);
  auto f = check_pimsner_popa(n, bell_projection(), q(1, 2));
  CHECK_FALSE(f.holds);
  REQUIRE(f.certificate.witness);
  CHECK(verify_certificate(f.difference, f.certificate));
  CHECK_THROWS_AS(check_pimsner_popa(n, bell_projection(), GQ(2)), PreconditionError);
}

TEST_CASE("central carriers") {
  CHECK(central_carrier(full_algebra(3), diag({1, 0, 0})) == GQMatrix::identity(3));
  std::vector<GQMatrix> g;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if ((i < 2) == (j < 2)) g.push_back(matrix_unit(4, i, j));
  auto blocks = build_algebra(4, g);
  CHECK(central_carrier(blocks, matrix_unit(4, 0, 0)) == diag({1, 1, 0, 0}));
  CHECK_THROWS_AS(central_carrier(diagonal_algebra(2), half_ones()), PreconditionError);
}

TEST_CASE("commuting squares") {
  auto triv = check_commuting_square(scalar_algebra(2), full_algebra(2), scalar_algebra(2), full_algebra(2), 1, 5);
  CHECK(triv.inclusions);
  CHECK(triv.expectations_commute);
  auto m = tensor_algebra(full_algebra(2), scalar_algebra(2));
  auto n = tensor_algebra(scalar_algebra(2), full_algebra(2));
  auto sq = check_commuting_square(scalar_algebra(4), m, n, full_algebra(4), 0, 20);
  CHECK(sq.inclusions);
  CHECK(sq.expectations_commute);
  REQUIRE(sq.quantifiers_commute);
  CHECK(*sq.quantifiers_commute);
  CHECK(sq.projections_tested == 20);
  CHECK(sq.intersection_is_k);
  // the swap algebra is unbiased to the diagonal one, so that square commutes
  auto swap = build_algebra(2, {GQMatrix::from_rows({{0, 1}, {1, 0}}, 2)});
  CHECK(check_commuting_square(scalar_algebra(2), diagonal_algebra(2), swap, full_algebra(2), 0, 5).expectations_commute);
  auto skew = build_algebra(2, {GQMatrix::from_rows({{1, 2}, {2, 4}}, 2) * q(1, 5)});
  auto bad = check_commuting_square(scalar_algebra(2), diagonal_algebra(2), skew, full_algebra(2), 0, 5);
  CHECK_FALSE(bad.expectations_commute);
  CHECK(bad.witness);
  CHECK_THROWS_AS(check_commuting_square(full_algebra(2), diagonal_algebra(2), skew, full_algebra(2), 0, 5),
                  PreconditionError);
}

TEST_CASE("exists_alg restricted to a finite family is a quantifier") {
  // projections of M4 built from a fixed basis: all coordinate projections
  auto n = tensor_algebra(full_algebra(2), scalar_algebra(2));
  for (unsigned mask = 0; mask < 16; ++mask) {
    GQMatrix p(4, 4);
    for (std::size_t k = 0; k < 4; ++k)
      if (mask >> k & 1) p(k, k) = 1;
    auto e = exists_alg(n, p);
    CHECK(projection_leq(p, e));
    CHECK(exists_alg(n, e) == e);
    CHECK(n.contains(e));
  }
}

}
