#include "qmon/subspace.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "qmon/errors.hpp"

namespace qmon {

namespace {

void require_same_ambient(const Subspace& a, const Subspace& b, const char* op) {
  if (a.ambient_dim() != b.ambient_dim())
    throw PreconditionError("DimensionMismatch", std::string(op) + ": ambient dimensions differ");
}

std::vector<std::size_t> normalized(std::vector<std::size_t> f) {
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

// For each ambient index: the flat index of its F-coordinates (within the
// sub-layout of F) and of its remaining coordinates (within layout.without(F)).
struct FactorSplit {
  TensorLayout inside;
  TensorLayout outside;
  std::vector<std::size_t> inside_index;
  std::vector<std::size_t> outside_index;
  // full index for (inside, outside)
  std::vector<std::size_t> full_index;
};

FactorSplit split_factors(const TensorLayout& layout, const std::vector<std::size_t>& f) {
  for (auto k : f)
    if (k >= layout.factors()) throw PreconditionError("DimensionMismatch", "factor index out of range");
  std::vector<std::size_t> in_dims;
  for (auto k : f) in_dims.push_back(layout.dim(k));
  FactorSplit sp{TensorLayout(in_dims), layout.without(f), {}, {}, {}};
  const std::size_t n = layout.ambient_dim();
  sp.inside_index.resize(n);
  sp.outside_index.resize(n);
  sp.full_index.assign(sp.inside.ambient_dim() * sp.outside.ambient_dim(), 0);
  std::vector<bool> in_f(layout.factors(), false);
  for (auto k : f) in_f[k] = true;
  for (std::size_t idx = 0; idx < n; ++idx) {
    auto t = layout.tuple(idx);
    std::vector<std::size_t> tin, tout;
    for (std::size_t k = 0; k < t.size(); ++k) (in_f[k] ? tin : tout).push_back(t[k]);
    sp.inside_index[idx] = sp.inside.index(tin);
    sp.outside_index[idx] = sp.outside.index(tout);
    sp.full_index[sp.inside_index[idx] * sp.outside.ambient_dim() + sp.outside_index[idx]] = idx;
  }
  return sp;
}

}  // namespace

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<GQVector>& rows) {
  return span(GQMatrix::from_rows(rows, ambient_dim));
}

Subspace Subspace::span(const GQMatrix& rows) {
  if (rows.cols() > kMaxAmbientDim) throw SizeGuardError("ambient dimension exceeds " + std::to_string(kMaxAmbientDim));
  Subspace s;
  s.ambient_ = rows.cols();
  s.basis_ = rows;
  s.pivots_ = rref_in_place(s.basis_);
  return s;
}

Subspace Subspace::zero(std::size_t ambient_dim) { return span(GQMatrix(0, ambient_dim)); }

Subspace Subspace::full(std::size_t ambient_dim) { return span(GQMatrix::identity(ambient_dim)); }

Subspace Subspace::coordinate(std::size_t ambient_dim, const std::vector<std::size_t>& indices) {
  std::vector<GQVector> rows;
  for (auto k : indices) {
    if (k >= ambient_dim) throw PreconditionError("DimensionMismatch", "coordinate index out of range");
    GQVector v(ambient_dim);
    v[k] = 1;
    rows.push_back(std::move(v));
  }
  return span(ambient_dim, rows);
}

bool Subspace::contains(std::span<const GQ> v) const {
  if (v.size() != ambient_) throw PreconditionError("DimensionMismatch", "vector length differs from ambient dimension");
  GQVector w(v.begin(), v.end());
  for (std::size_t r = 0; r < basis_.rows(); ++r) {
    const std::size_t p = pivots_[r];
    if (w[p].is_zero()) continue;
    const GQ f = w[p];
    for (std::size_t c = p; c < ambient_; ++c)
      if (!basis_(r, c).is_zero()) w[c] -= f * basis_(r, c);
  }
  return std::all_of(w.begin(), w.end(), [](const GQ& z) { return z.is_zero(); });
}

bool Subspace::leq(const Subspace& other) const {
  require_same_ambient(*this, other, "leq");
  if (rank() > other.rank()) return false;
  for (std::size_t r = 0; r < rank(); ++r)
    if (!other.contains(basis_.row(r))) return false;
  return true;
}

std::string Subspace::key() const {
  std::string k = std::to_string(ambient_) + ":";
  for (const auto& z : basis_.data()) {
    k += z.str();
    k += ',';
  }
  return k;
}

Subspace join(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "join");
  if (a.is_zero() || b.is_full()) return b;
  if (b.is_zero() || a.is_full()) return a;
  GQMatrix stacked(a.rank() + b.rank(), a.ambient_dim());
  for (std::size_t r = 0; r < a.rank(); ++r)
    for (std::size_t c = 0; c < a.ambient_dim(); ++c) stacked(r, c) = a.basis()(r, c);
  for (std::size_t r = 0; r < b.rank(); ++r)
    for (std::size_t c = 0; c < b.ambient_dim(); ++c) stacked(a.rank() + r, c) = b.basis()(r, c);
  return Subspace::span(stacked);
}

Subspace meet(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "meet");
  const std::size_t d = a.ambient_dim();
  if (a.is_zero() || b.is_full()) return a;
  if (b.is_zero() || a.is_full()) return b;
  // x^T A = y^T B  <=>  [A; -B]^T (x, y) = 0.
  const std::size_t ra = a.rank(), rb = b.rank();
  GQMatrix system(d, ra + rb);
  for (std::size_t r = 0; r < ra; ++r)
    for (std::size_t c = 0; c < d; ++c) system(c, r) = a.basis()(r, c);
  for (std::size_t r = 0; r < rb; ++r)
    for (std::size_t c = 0; c < d; ++c) system(c, ra + r) = -b.basis()(r, c);
  GQMatrix coeffs = nullspace(system);
  std::vector<GQVector> rows;
  for (std::size_t k = 0; k < coeffs.rows(); ++k) {
    GQVector v(d);
    for (std::size_t r = 0; r < ra; ++r) {
      const GQ& x = coeffs(k, r);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < d; ++c)
        if (!a.basis()(r, c).is_zero()) v[c] += x * a.basis()(r, c);
    }
    rows.push_back(std::move(v));
  }
  return Subspace::span(d, rows);
}

Subspace ortho(const Subspace& a) {
  if (a.is_zero()) return Subspace::full(a.ambient_dim());
  if (a.is_full()) return Subspace::zero(a.ambient_dim());
  return Subspace::span(nullspace(a.basis().conj()));
}

GQMatrix projection_matrix(const Subspace& s) {
  const std::size_t d = s.ambient_dim();
  if (s.is_zero()) return GQMatrix(d, d);
  if (s.is_full()) return GQMatrix::identity(d);
  GQMatrix b = s.basis().transpose();  // columns are basis vectors
  GQMatrix bstar = b.adjoint();
  auto ginv = inverse(bstar * b);
  if (!ginv) throw Error("singular Gram matrix in projection (basis not independent)");
  return b * *ginv * bstar;
}

Subspace column_space(const GQMatrix& m) { return Subspace::span(m.transpose()); }

TensorLayout::TensorLayout(std::vector<std::size_t> factor_dims) : dims_(std::move(factor_dims)) {
  strides_.assign(dims_.size(), 1);
  ambient_ = 1;
  for (std::size_t k = dims_.size(); k-- > 0;) {
    if (dims_[k] == 0) throw PreconditionError("DimensionMismatch", "tensor factor of dimension zero");
    strides_[k] = ambient_;
    ambient_ *= dims_[k];
    if (ambient_ > kMaxAmbientDim)
      throw SizeGuardError("tensor layout ambient dimension exceeds " + std::to_string(kMaxAmbientDim));
  }
}

std::size_t TensorLayout::index(const std::vector<std::size_t>& tuple) const {
  if (tuple.size() != dims_.size()) throw PreconditionError("DimensionMismatch", "tuple length differs from factor count");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    if (tuple[k] >= dims_[k]) throw PreconditionError("DimensionMismatch", "tuple coordinate out of range");
    idx += tuple[k] * strides_[k];
  }
  return idx;
}

std::vector<std::size_t> TensorLayout::tuple(std::size_t index) const {
  std::vector<std::size_t> t(dims_.size());
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    t[k] = (index / strides_[k]) % dims_[k];
  }
  return t;
}

TensorLayout TensorLayout::without(const std::vector<std::size_t>& removed) const {
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < dims_.size(); ++k)
    if (std::find(removed.begin(), removed.end(), k) == removed.end()) kept.push_back(dims_[k]);
  return TensorLayout(kept);
}

Subspace tensor_subspace(const Subspace& a, const Subspace& b) {
  const std::size_t d = a.ambient_dim() * b.ambient_dim();
  if (d > kMaxAmbientDim) throw SizeGuardError("tensor product ambient dimension exceeds " + std::to_string(kMaxAmbientDim));
  std::vector<GQVector> rows;
  for (std::size_t r = 0; r < a.rank(); ++r)
    for (std::size_t s = 0; s < b.rank(); ++s) rows.push_back(kron(a.basis().row_vector(r), b.basis().row_vector(s)));
  return Subspace::span(d, rows);
}

Subspace embed_alpha(const TensorLayout& layout, std::size_t i, const Subspace& b) {
  return embed_alpha(layout, std::vector<std::size_t>{i}, b);
}

Subspace embed_alpha(const TensorLayout& layout, const std::vector<std::size_t>& factors, const Subspace& b) {
  auto f = normalized(factors);
  FactorSplit sp = split_factors(layout, f);
  if (b.ambient_dim() != sp.outside.ambient_dim())
    throw PreconditionError("DimensionMismatch", "embedded subspace does not live on the remaining factors");
  std::vector<GQVector> rows;
  for (std::size_t k = 0; k < sp.inside.ambient_dim(); ++k)
    for (std::size_t r = 0; r < b.rank(); ++r) {
      GQVector v(layout.ambient_dim());
      for (std::size_t o = 0; o < sp.outside.ambient_dim(); ++o)
        v[sp.full_index[k * sp.outside.ambient_dim() + o]] = b.basis()(r, o);
      rows.push_back(std::move(v));
    }
  return Subspace::span(layout.ambient_dim(), rows);
}

Subspace component_span(const TensorLayout& layout, std::size_t i, const Subspace& s) {
  return component_span(layout, std::vector<std::size_t>{i}, s);
}

Subspace component_span(const TensorLayout& layout, const std::vector<std::size_t>& factors, const Subspace& s) {
  if (s.ambient_dim() != layout.ambient_dim())
    throw PreconditionError("DimensionMismatch", "subspace does not live in the tensor space");
  auto f = normalized(factors);
  FactorSplit sp = split_factors(layout, f);
  const std::size_t outside = sp.outside.ambient_dim();
  std::vector<GQVector> rows;
  for (std::size_t r = 0; r < s.rank(); ++r)
    for (std::size_t k = 0; k < sp.inside.ambient_dim(); ++k) {
      GQVector c(outside);
      bool nonzero = false;
      for (std::size_t o = 0; o < outside; ++o) {
        c[o] = s.basis()(r, sp.full_index[k * outside + o]);
        nonzero = nonzero || !c[o].is_zero();
      }
      if (nonzero) rows.push_back(std::move(c));
    }
  return Subspace::span(outside, rows);
}

Subspace component_span_in_basis(const TensorLayout& layout, std::size_t i, const Subspace& s, const GQMatrix& onb) {
  const std::size_t di = layout.dim(i);
  if (onb.rows() != di || onb.cols() != di) throw PreconditionError("DimensionMismatch", "basis change has wrong size");
  if (onb.adjoint() * onb != GQMatrix::identity(di)) throw PreconditionError("NotUnitary", "basis change is not unitary");
  FactorSplit sp = split_factors(layout, {i});
  const std::size_t outside = sp.outside.ambient_dim();
  std::vector<GQVector> rows;
  for (std::size_t r = 0; r < s.rank(); ++r)
    for (std::size_t k = 0; k < di; ++k) {
      // v'_k = Σ_j conj(U_{jk}) v_j
      GQVector c(outside);
      for (std::size_t j = 0; j < di; ++j) {
        const GQ w = onb(j, k).conj();
        if (w.is_zero()) continue;
        for (std::size_t o = 0; o < outside; ++o) {
          const GQ& x = s.basis()(r, sp.full_index[j * outside + o]);
          if (!x.is_zero()) c[o] += w * x;
        }
      }
      rows.push_back(std::move(c));
    }
  return Subspace::span(outside, rows);
}

Subspace exists_factor(const TensorLayout& layout, std::size_t i, const Subspace& s) {
  return embed_alpha(layout, i, component_span(layout, i, s));
}

Subspace exists_factors(const TensorLayout& layout, const std::vector<std::size_t>& factors, const Subspace& s) {
  return embed_alpha(layout, factors, component_span(layout, factors, s));
}

Subspace forall_factor(const TensorLayout& layout, std::size_t i, const Subspace& s) {
  return ortho(exists_factor(layout, i, ortho(s)));
}

Subspace forall_slice(const TensorLayout& layout, std::size_t i, const Subspace& s) {
  if (s.ambient_dim() != layout.ambient_dim())
    throw PreconditionError("DimensionMismatch", "subspace does not live in the tensor space");
  FactorSplit sp = split_factors(layout, {i});
  const std::size_t outside = sp.outside.ambient_dim();
  Subspace perp = ortho(s);
  if (perp.is_zero()) return Subspace::full(outside);
  // e_k ⊗ w ∈ S  <=>  <u, e_k ⊗ w> = 0 for every u spanning S^⊥.
  GQMatrix constraints(perp.rank() * layout.dim(i), outside);
  std::size_t row = 0;
  for (std::size_t r = 0; r < perp.rank(); ++r)
    for (std::size_t k = 0; k < layout.dim(i); ++k, ++row)
      for (std::size_t o = 0; o < outside; ++o) constraints(row, o) = perp.basis()(r, sp.full_index[k * outside + o]).conj();
  return Subspace::span(nullspace(constraints));
}

Subspace forall_factor_direct(const TensorLayout& layout, std::size_t i, const Subspace& s) {
  return embed_alpha(layout, i, forall_slice(layout, i, s));
}

Subspace apply_on_factor(const TensorLayout& layout, std::size_t i, const GQMatrix& u, const Subspace& s) {
  const std::size_t di = layout.dim(i);
  if (u.rows() != di || u.cols() != di) throw PreconditionError("DimensionMismatch", "factor operator has wrong size");
  if (s.ambient_dim() != layout.ambient_dim())
    throw PreconditionError("DimensionMismatch", "subspace does not live in the tensor space");
  FactorSplit sp = split_factors(layout, {i});
  const std::size_t outside = sp.outside.ambient_dim();
  std::vector<GQVector> rows;
  for (std::size_t r = 0; r < s.rank(); ++r) {
    GQVector v(layout.ambient_dim());
    for (std::size_t a = 0; a < di; ++a)
      for (std::size_t b = 0; b < di; ++b) {
        if (u(a, b).is_zero()) continue;
        for (std::size_t o = 0; o < outside; ++o) {
          const GQ& x = s.basis()(r, sp.full_index[b * outside + o]);
          if (!x.is_zero()) v[sp.full_index[a * outside + o]] += u(a, b) * x;
        }
      }
    rows.push_back(std::move(v));
  }
  return Subspace::span(layout.ambient_dim(), rows);
}

Subspace diagonal(const TensorLayout& layout, const std::vector<std::size_t>& f_in) {
  auto f = normalized(f_in);
  for (auto k : f) {
    if (k >= layout.factors()) throw PreconditionError("DimensionMismatch", "diagonal factor index out of range");
    if (layout.dim(k) != layout.dim(f.front()))
      throw PreconditionError("DimensionMismatch", "diagonal over factors of unequal dimension");
  }
  const std::size_t n = layout.ambient_dim();
  if (f.size() <= 1) return Subspace::full(n);
  // Each orbit of Perm(F) on coordinate tuples contributes the sum of its basis vectors.
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> orbits;
  for (std::size_t idx = 0; idx < n; ++idx) {
    auto t = layout.tuple(idx);
    std::vector<std::size_t> vals;
    for (auto k : f) vals.push_back(t[k]);
    std::sort(vals.begin(), vals.end());
    for (std::size_t m = 0; m < f.size(); ++m) t[f[m]] = vals[m];
    orbits[t].push_back(idx);
  }
  std::vector<GQVector> rows;
  rows.reserve(orbits.size());
  for (const auto& [rep, members] : orbits) {
    GQVector v(n);
    for (auto idx : members) v[idx] = 1;
    rows.push_back(std::move(v));
  }
  return Subspace::span(n, rows);
}

std::uint64_t diagonal_rank_formula(const TensorLayout& layout, const std::vector<std::size_t>& f_in) {
  auto f = normalized(f_in);
  std::uint64_t free_part = 1;
  for (std::size_t k = 0; k < layout.factors(); ++k)
    if (std::find(f.begin(), f.end(), k) == f.end()) free_part *= layout.dim(k);
  if (f.empty()) return free_part;
  const std::uint64_t d = layout.dim(f.front());
  const std::uint64_t m = f.size();
  // C(d + m - 1, m)
  std::uint64_t binom = 1;
  for (std::uint64_t k = 1; k <= m; ++k) binom = binom * (d - 1 + k) / k;
  return binom * free_part;
}

CommutationCheck check_commutation(const TensorLayout& layout, std::size_t i, std::size_t j, const Subspace& s) {
  if (i == j) throw PreconditionError("DimensionMismatch", "commutation check needs two distinct factors");
  CommutationCheck c;
  c.ij = exists_factor(layout, i, exists_factor(layout, j, s));
  c.ji = exists_factor(layout, j, exists_factor(layout, i, s));
  c.grouped = exists_factors(layout, {i, j}, s);
  c.holds = c.ij == c.ji && c.ji == c.grouped;
  return c;
}

bool check_diagonal_meet(const TensorLayout& layout, std::size_t i, std::size_t j, std::size_t k) {
  return meet(diagonal(layout, {i, j}), diagonal(layout, {j, k})) == diagonal(layout, {i, j, k});
}

bool check_diagonal_composition(const TensorLayout& layout, std::size_t i, std::size_t j, std::size_t k) {
  if (j == i || j == k) throw PreconditionError("DimensionMismatch", "composition needs j outside {i, k}");
  Subspace both = meet(diagonal(layout, {i, j}), diagonal(layout, {j, k}));
  return exists_factor(layout, j, both) == diagonal(layout, {i, k});
}

C5Witness c5_counterexample(std::size_t d) {
  if (d < 3) throw PreconditionError("DimensionTooSmall", "C5 witness needs three distinct basis vectors (d >= 3)");
  C5Witness w;
  w.layout = TensorLayout({d, d});
  const std::size_t n = w.layout.ambient_dim();
  GQVector v(n);
  v[w.layout.index({0, 1})] = 1;
  v[w.layout.index({1, 0})] = 1;
  w.s = Subspace::span(n, {v});
  w.diagonal = diagonal(w.layout, {0, 1});
  w.first_term = exists_factor(w.layout, 0, meet(w.diagonal, w.s));
  w.second_term = exists_factor(w.layout, 0, meet(w.diagonal, ortho(w.s)));
  w.meet = meet(w.first_term, w.second_term);
  w.expected_floor = embed_alpha(w.layout, 0, Subspace::coordinate(d, {0}));
  Subspace h_e01 = embed_alpha(w.layout, 0, Subspace::coordinate(d, {0, 1}));
  w.first_contains_h_e01 = h_e01.leq(w.first_term);
  w.second_contains_h_e0 = w.expected_floor.leq(w.second_term);
  w.reproduced = w.first_contains_h_e01 && w.second_contains_h_e0 && w.expected_floor.leq(w.meet) && !w.meet.is_zero();
  return w;
}

SubspaceSampler::SubspaceSampler(std::uint64_t seed) : rng_(seed) {}

long SubspaceSampler::entry() { return static_cast<long>(rng_() % 7) - 3; }

GQVector SubspaceSampler::vector(std::size_t dim, bool complex) {
  GQVector v(dim);
  for (auto& z : v) {
    const long re = entry();
    const long im = complex ? entry() : 0;
    z = GQ(re, im);
  }
  return v;
}

Subspace SubspaceSampler::next(std::size_t ambient_dim, bool complex) {
  const std::size_t hi = ambient_dim > 1 ? ambient_dim - 1 : 1;
  const std::size_t r = 1 + static_cast<std::size_t>(rng_() % hi);
  return next_with_rank(ambient_dim, r, complex);
}

Subspace SubspaceSampler::next_with_rank(std::size_t ambient_dim, std::size_t rank, bool complex) {
  std::vector<GQVector> rows;
  for (std::size_t k = 0; k < rank; ++k) rows.push_back(vector(ambient_dim, complex));
  return Subspace::span(ambient_dim, rows);
}

}  // namespace qmon
