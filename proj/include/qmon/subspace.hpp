#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qmon/gq_matrix.hpp"

namespace qmon {

/// A subspace of GQ^d held as the rows of its reduced row echelon basis.
/// The echelon form is unique, so equality is matrix identity.
class Subspace {
 public:
  Subspace() = default;
  /// Span of the given rows (any spanning set; it is reduced here).
  static Subspace span(std::size_t ambient_dim, const std::vector<GQVector>& rows);
  static Subspace span(const GQMatrix& rows);
  static Subspace zero(std::size_t ambient_dim);
  static Subspace full(std::size_t ambient_dim);
  /// Span of standard basis vectors e_k for k in `indices`.
  static Subspace coordinate(std::size_t ambient_dim, const std::vector<std::size_t>& indices);

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t rank() const noexcept { return basis_.rows(); }
  bool is_zero() const noexcept { return rank() == 0; }
  bool is_full() const noexcept { return rank() == ambient_; }
  const GQMatrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(std::span<const GQ> v) const;
  /// this ⊆ other.
  bool leq(const Subspace& other) const;

  /// Stable textual key of the canonical matrix (for hashing and dedup).
  std::string key() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  std::size_t ambient_ = 0;
  GQMatrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace join(const Subspace& a, const Subspace& b);
/// Intersection, computed from the left nullspace of the stacked bases.
Subspace meet(const Subspace& a, const Subspace& b);
/// Hermitian orthogonal complement.
Subspace ortho(const Subspace& a);

/// Orthogonal projection matrix onto the subspace: B (B^*B)^{-1} B^* with the
/// basis vectors as columns of B.
GQMatrix projection_matrix(const Subspace& s);
/// Column space of a matrix.
Subspace column_space(const GQMatrix& m);

/// Coordinates of H_1 ⊗ ... ⊗ H_n: tuples (i_1..i_n) in row-major order, so
/// the standard basis e_{i_1} ⊗ ... ⊗ e_{i_n} is the standard basis of the
/// ambient space. Factors are numbered from 0.
class TensorLayout {
 public:
  TensorLayout() = default;
  explicit TensorLayout(std::vector<std::size_t> factor_dims);

  std::size_t factors() const noexcept { return dims_.size(); }
  std::size_t dim(std::size_t i) const { return dims_.at(i); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t ambient_dim() const noexcept { return ambient_; }

  std::size_t index(const std::vector<std::size_t>& tuple) const;
  std::vector<std::size_t> tuple(std::size_t index) const;
  /// The layout with the listed factors removed (order kept).
  TensorLayout without(const std::vector<std::size_t>& removed) const;

  friend bool operator==(const TensorLayout& a, const TensorLayout& b) { return a.dims_ == b.dims_; }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::size_t ambient_ = 1;
};

/// A ⊗ B in the Kronecker (row-major) ordering.
Subspace tensor_subspace(const Subspace& a, const Subspace& b);

/// α_i(B) = H_i ⊗ B, where B lives on the remaining factors.
Subspace embed_alpha(const TensorLayout& layout, std::size_t i, const Subspace& b);
/// Multi-factor version: H_F ⊗ B with B on the factors outside F.
Subspace embed_alpha(const TensorLayout& layout, const std::vector<std::size_t>& factors, const Subspace& b);

/// S^{H_i}: span of the components v_k of each basis vector v = Σ e_k ⊗ v_k.
/// Spanning over a basis of S suffices because the component span of ⟨S⟩
/// equals that of S.
Subspace component_span(const TensorLayout& layout, std::size_t i, const Subspace& s);
Subspace component_span(const TensorLayout& layout, const std::vector<std::size_t>& factors, const Subspace& s);
/// Component span taken against the orthonormal basis given by the columns of
/// `onb` (a unitary on factor i) instead of the standard basis.
Subspace component_span_in_basis(const TensorLayout& layout, std::size_t i, const Subspace& s, const GQMatrix& onb);

/// ∃_{H_i} S = H_i ⊗ S^{H_i}: least subspace of the form H_i ⊗ T above S.
Subspace exists_factor(const TensorLayout& layout, std::size_t i, const Subspace& s);
/// ∃ over a group of factors at once.
Subspace exists_factors(const TensorLayout& layout, const std::vector<std::size_t>& factors, const Subspace& s);
/// ∀_{H_i} S = (∃_{H_i} S^⊥)^⊥.
Subspace forall_factor(const TensorLayout& layout, std::size_t i, const Subspace& s);
/// S_{H_i} = {w : e_k ⊗ w ∈ S for every k}, on the remaining factors.
Subspace forall_slice(const TensorLayout& layout, std::size_t i, const Subspace& s);
/// H_i ⊗ S_{H_i}, computed from the membership description directly.
Subspace forall_factor_direct(const TensorLayout& layout, std::size_t i, const Subspace& s);

/// Applies the d_i x d_i matrix u to factor i of every basis vector of S.
Subspace apply_on_factor(const TensorLayout& layout, std::size_t i, const GQMatrix& u, const Subspace& s);

/// D_F: tensors whose coefficients are invariant under permuting the positions
/// in F. Throws PreconditionError(DimensionMismatch) for unequal factor dims.
Subspace diagonal(const TensorLayout& layout, const std::vector<std::size_t>& f);
/// dim D_F = C(d+|F|-1, |F|) · Π_{k∉F} d_k.
std::uint64_t diagonal_rank_formula(const TensorLayout& layout, const std::vector<std::size_t>& f);

struct CommutationCheck {
  Subspace ij;       // ∃_i ∃_j S
  Subspace ji;       // ∃_j ∃_i S
  Subspace grouped;  // ∃_{i,j} S
  bool holds = false;
};
CommutationCheck check_commutation(const TensorLayout& layout, std::size_t i, std::size_t j, const Subspace& s);

/// D_{i,j} ∩ D_{j,k} = D_{i,j,k}.
bool check_diagonal_meet(const TensorLayout& layout, std::size_t i, std::size_t j, std::size_t k);
/// D_{i,k} = ∃_{H_j}(D_{i,j} ∩ D_{j,k}) for j ∉ {i,k}.
bool check_diagonal_composition(const TensorLayout& layout, std::size_t i, std::size_t j, std::size_t k);

struct C5Witness {
  TensorLayout layout;
  Subspace s;           // ⟨e0⊗e1 + e1⊗e0⟩
  Subspace diagonal;    // D_{0,1}
  Subspace first_term;  // ∃_0(D ∩ S)
  Subspace second_term; // ∃_0(D ∩ S^⊥)
  Subspace meet;        // their meet, nonzero
  Subspace expected_floor;  // H ⊗ ⟨e0⟩, contained in the meet
  bool first_contains_h_e01 = false;   // first_term ⊇ H ⊗ ⟨e0, e1⟩
  bool second_contains_h_e0 = false;   // second_term ⊇ H ⊗ ⟨e0⟩
  bool reproduced = false;
};
/// Builds the failure of C5 in H ⊗ H with dim H = d ≥ 3.
C5Witness c5_counterexample(std::size_t d);

/// Seeded pseudo-random subspace: integer matrix with entries in [-3, 3]
/// (Gaussian integers when `complex`), row-reduced. Rank is drawn from
/// [1, ambient-1] unless given.
class SubspaceSampler {
 public:
  explicit SubspaceSampler(std::uint64_t seed);
  Subspace next(std::size_t ambient_dim, bool complex = false);
  Subspace next_with_rank(std::size_t ambient_dim, std::size_t rank, bool complex = false);
  GQVector vector(std::size_t dim, bool complex = false);

 private:
  std::mt19937_64 rng_;
  long entry();
};

}  // namespace qmon
