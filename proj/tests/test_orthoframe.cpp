#include "doctest.h"
#include "qmon/orthoframe.hpp"
#include "support.hpp"

using namespace qmon;

namespace {

Orthoframe frame(std::size_t n, Relation perp, std::vector<Relation> r) {
  Orthoframe f;
  for (std::size_t x = 0; x < n; ++x) f.points.push_back("x" + std::to_string(x));
  f.perp = std::move(perp);
  f.r = std::move(r);
  return f;
}

Relation from_mask(std::size_t n, std::uint64_t mask) {
  Relation r(n, Bits(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (mask >> (x * n + y) & 1) r[x].set(y);
  return r;
}

}  // namespace

TEST_SUITE("orthoframe") {

TEST_CASE("closed sets") {
  auto f = frame(3, classical_perp(3), {identity_relation(3)});
  CHECK(closed_set_lattice(f).sets.size() == 8);
  auto g = frame(3, Relation(3, Bits(3)), {identity_relation(3)});
  auto c = closed_set_lattice(g);
  CHECK(c.sets.size() == 2);
  CHECK(validate_ortholattice(c.lattice).ok());
  // a 4-cycle of orthogonality gives MO2
  auto h = frame(4, perp_from_pairs(4, {{0, 1}, {2, 3}}), {identity_relation(4)});
  auto mo = closed_set_lattice(h);
  CHECK(mo.sets.size() == 6);
  CHECK(check_orthomodular(mo.lattice).is_oml);
  CHECK_FALSE(is_boolean(mo.lattice));
}

TEST_CASE("perp must be irreflexive") {
  CHECK_THROWS_AS(perp_from_pairs(3, {{0, 1}, {2, 2}}), StructureError);
  CHECK_THROWS_AS(perp_from_pairs(3, {{0, 5}}), StructureError);
}

TEST_CASE("classical frames: M1-M3 iff R is an equivalence") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::uint64_t count = std::uint64_t{1} << (n * n);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      auto r = from_mask(n, mask);
      auto f = frame(n, classical_perp(n), {r});
      const bool eq = is_reflexive(r) && is_transitive(r) && is_symmetric(r);
      CHECK(check_monadic_frame(f, 0).ok() == eq);
    }
  }
}

TEST_CASE("a non-symmetric preorder fails M3") {
  auto f = frame(2, classical_perp(2), {relation_from_pairs(2, {{0, 0}, {1, 1}, {0, 1}})});
  auto r = check_monadic_frame(f, 0);
  CHECK(r.axioms[0].holds);
  CHECK(r.axioms[1].holds);
  CHECK_FALSE(r.axioms[2].holds);
}

TEST_CASE("exists over R and the complex algebra") {
  auto f = frame(4, classical_perp(4), {relation_from_pairs(4, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}, {3, 3}})});
  PointSet a(4);
  a.set(0);
  auto e = exists_r(f, 0, a);
  CHECK(to_set(e) == ElementSet{0, 1});
  auto m = complex_algebra(f, 0);
  CHECK(check_quantifier(m.closed.lattice, m.exists).is_quantifier);
  auto g = frame(3, Relation(3, Bits(3)), {identity_relation(3)});
  PointSet one(3);
  one.set(0);
  CHECK_THROWS_AS(exists_r(g, 0, one), PreconditionError);
}

TEST_CASE("R-image closure laws on generated frames") {
  auto frames = random_monadic_frames(6, 15, 3);
  CHECK(frames.size() == 15);
  for (const auto& f : frames) {
    CHECK(check_image_closure(f, 0).ok());
    auto m = complex_algebra(f, 0);
    CHECK(check_quantifier(m.closed.lattice, m.exists).is_quantifier);
  }
}

TEST_CASE("canonical frame of MO2 with S = {0, a, a', 1}") {
  auto l = lattices::mo(2);
  auto e = quantifier_from_subalgebra(l, test::elements(l, {"0", "1", "a", "a'"}));
  auto cf = canonical_frame(l, e);
  CHECK(cf.frame.size() == 5);
  auto c = verify_canonical_frame(l, {e}, cf);
  CHECK(c.frame_ok);
  CHECK(c.embedding);
  CHECK(c.onto);
  CHECK(c.preserves_exists);
  UnaryMap bad(l.size(), l.one());
  CHECK_THROWS_AS(canonical_frame(l, bad), PreconditionError);
}

TEST_CASE("canonical frames of every subalgebra quantifier") {
  for (const auto& l : {lattices::boolean(2), lattices::mo(2), lattices::mo(3)})
    for (const auto& s : all_subalgebras(l)) {
      auto e = quantifier_from_subalgebra(l, s);
      CHECK(verify_canonical_frame(l, {e}, canonical_frame(l, e)).isomorphism());
    }
}

TEST_CASE("weak cylindric frames") {
  auto c = classical_cyl_set_algebra(2, 2);
  auto cf = canonical_frame(c);
  auto w = check_weak_cylindric_frame(cf.frame);
  CHECK(w.frame.ok());
  REQUIRE(w.complex);
  CHECK(w.complex->weak_ok());
  CHECK(verify_canonical_frame(c.base, c.cyl, cf).isomorphism());
  // dropping symmetry of D breaks W3
  auto broken = cf.frame;
  broken.d[{1, 0}] = broken.empty_set();
  CHECK_FALSE(check_weak_cylindric_frame(broken).frame.axioms[2].holds);
}

}
