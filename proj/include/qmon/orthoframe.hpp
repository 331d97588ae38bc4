#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qmon/cylindric.hpp"

namespace qmon {

using PointSet = Bits;
using Relation = std::vector<Bits>;  // row x = successors of x

/// (X, ⊥, R_i, D_ij). perp is symmetric and irreflexive; D may be empty.
struct Orthoframe {
  std::vector<std::string> points;
  Relation perp;
  std::vector<Relation> r;
  std::map<std::pair<std::size_t, std::size_t>, PointSet> d;

  std::size_t size() const noexcept { return points.size(); }
  PointSet empty_set() const { return PointSet(size()); }
  PointSet all() const { return ~PointSet(size()); }
};

/// Builds the perp relation from pairs, adding the mirror of each pair.
/// StructureError for a reflexive pair or an index out of range.
Relation perp_from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs);
Relation relation_from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs);
/// perp = ≠.
Relation classical_perp(std::size_t n);
Relation identity_relation(std::size_t n);
/// Throws StructureError unless perp is symmetric and irreflexive and every
/// relation is n x n.
void require_valid(const Orthoframe& f);

PointSet perp_of(const Orthoframe& f, const PointSet& a);
PointSet biortho(const Orthoframe& f, const PointSet& a);
bool is_closed(const Orthoframe& f, const PointSet& a);
/// R[A].
PointSet image(const Relation& r, const PointSet& a);

struct ClosedSetLattice {
  FiniteOL lattice;
  std::vector<PointSet> sets;  // element index -> closed set
  std::map<PointSet, Element> index;
  Element element_of(const PointSet& a) const;
};
/// Closed sets are the intersections of the sets {x}⊥ (X being the empty
/// intersection). SizeGuardError past max_size.
ClosedSetLattice closed_set_lattice(const Orthoframe& f, std::size_t max_size = kDefaultMaxElements);

struct FrameReport {
  std::vector<AxiomStatus> axioms;
  bool ok() const;
};
/// M1, M2, M3 for relation i. Witnesses are points.
FrameReport check_monadic_frame(const Orthoframe& f, std::size_t i);

/// R_i[A]⊥⊥. PreconditionError(NotClosed) unless A is closed.
PointSet exists_r(const Orthoframe& f, std::size_t i, const PointSet& a);

struct MonadicComplex {
  ClosedSetLattice closed;
  UnaryMap exists;
};
MonadicComplex complex_algebra(const Orthoframe& f, std::size_t i, std::size_t max_size = kDefaultMaxElements);

/// Parts (1)-(3) over every subset when |X| <= exhaustive_limit, else over
/// `samples` seeded subsets. Witnesses are the points of A.
FrameReport check_image_closure(const Orthoframe& f, std::size_t i, std::size_t exhaustive_limit = 12,
                          std::uint64_t seed = 0, std::size_t samples = 4096);

struct CanonicalFrame {
  Orthoframe frame;
  std::vector<Element> element_of_point;  // L* = L \ {0}
};
/// x ⊥ y iff x ≤ y⊥; x R_i y iff y ≤ c_i x; D_ij = ↓d_ij. PreconditionError(NotQuantifier).
CanonicalFrame canonical_frame(const FiniteOL& l, const UnaryMap& e);
CanonicalFrame canonical_frame(const CylindricStructure& c);

struct CanonicalCheck {
  bool frame_ok = false;         // monadic frame for every relation
  bool embedding = false;        // α(a) = ↓a preserves 0, 1, ∧, ∨, ⊥ and is injective
  bool onto = false;
  bool preserves_exists = false; // α(c_i a) = ∃_{R_i} α(a)
  bool isomorphism() const { return frame_ok && embedding && onto && preserves_exists; }
};
CanonicalCheck verify_canonical_frame(const FiniteOL& l, const std::vector<UnaryMap>& cyl, const CanonicalFrame& cf);

struct WeakCylindricFrameReport {
  FrameReport frame;                     // W1..W4
  std::optional<CylindricReport> complex;  // weak check of L(X), when W1..W4 pass
  bool ok() const { return frame.ok() && (!complex || complex->weak_ok()); }
};
WeakCylindricFrameReport check_weak_cylindric_frame(const Orthoframe& f, std::size_t max_size = kDefaultMaxElements);
/// L(X) with ∃_{R_i} and diagonals D_ij (when present).
CylindricStructure cylindric_complex_algebra(const Orthoframe& f, std::size_t max_size = kDefaultMaxElements);

/// Random perp and the reflexive-transitive closure of a random relation.
Orthoframe random_frame(std::size_t n, std::mt19937_64& rng, bool classical_perp = false);
/// Random frames that pass M1..M3, `count` of them unless `attempts` run out.
std::vector<Orthoframe> random_monadic_frames(std::size_t n, std::size_t count, std::uint64_t seed,
                                              std::size_t attempts = 10000);

bool is_reflexive(const Relation& r);
bool is_transitive(const Relation& r);
bool is_symmetric(const Relation& r);

std::string format_set(const Orthoframe& f, const PointSet& a);

}  // namespace qmon
