#include "qmon/orthoframe.hpp"

#include <algorithm>
#include <set>

namespace qmon {

Relation perp_from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Relation p(n, Bits(n));
  for (const auto& [x, y] : pairs) {
    if (x >= n || y >= n) throw StructureError("perp pair refers to a missing point", {x, y});
    if (x == y) throw StructureError("perp relates a point to itself", {x, y});
    p[x].set(y);
    p[y].set(x);
  }
  return p;
}

Relation relation_from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Relation r(n, Bits(n));
  for (const auto& [x, y] : pairs) {
    if (x >= n || y >= n) throw StructureError("relation pair refers to a missing point", {x, y});
    r[x].set(y);
  }
  return r;
}

Relation classical_perp(std::size_t n) {
  Relation p(n, ~Bits(n));
  for (std::size_t x = 0; x < n; ++x) p[x].reset(x);
  return p;
}

Relation identity_relation(std::size_t n) {
  Relation r(n, Bits(n));
  for (std::size_t x = 0; x < n; ++x) r[x].set(x);
  return r;
}

void require_valid(const Orthoframe& f) {
  const std::size_t n = f.size();
  if (f.perp.size() != n) throw StructureError("perp has wrong number of rows");
  for (std::size_t x = 0; x < n; ++x) {
    if (f.perp[x].size() != n) throw StructureError("perp row has wrong width", {x});
    if (f.perp[x][x]) throw StructureError("perp relates a point to itself", {x, x});
    for (std::size_t y = 0; y < n; ++y)
      if (f.perp[x][y] && !f.perp[y][x]) throw StructureError("perp is not symmetric", {x, y});
  }
  for (std::size_t i = 0; i < f.r.size(); ++i) {
    if (f.r[i].size() != n) throw StructureError("relation has wrong number of rows", {i});
    for (const auto& row : f.r[i])
      if (row.size() != n) throw StructureError("relation row has wrong width", {i});
  }
  for (const auto& [ij, set] : f.d)
    if (set.size() != n || ij.first >= f.r.size() || ij.second >= f.r.size())
      throw StructureError("diagonal has wrong shape", {ij.first, ij.second});
}

PointSet perp_of(const Orthoframe& f, const PointSet& a) {
  PointSet out = f.all();
  for (auto x = a.find_first(); x != PointSet::npos; x = a.find_next(x)) out &= f.perp[x];
  return out;
}

PointSet biortho(const Orthoframe& f, const PointSet& a) { return perp_of(f, perp_of(f, a)); }

bool is_closed(const Orthoframe& f, const PointSet& a) { return biortho(f, a) == a; }

PointSet image(const Relation& r, const PointSet& a) {
  PointSet out(a.size());
  for (auto x = a.find_first(); x != PointSet::npos; x = a.find_next(x)) out |= r[x];
  return out;
}

std::string format_set(const Orthoframe& f, const PointSet& a) {
  std::string s = "{";
  for (auto x = a.find_first(); x != PointSet::npos; x = a.find_next(x)) s += (s.size() > 1 ? "," : "") + f.points[x];
  return s + "}";
}

Element ClosedSetLattice::element_of(const PointSet& a) const {
  auto it = index.find(a);
  if (it == index.end()) throw PreconditionError("NotClosed", "set is not biorthogonally closed");
  return it->second;
}

ClosedSetLattice closed_set_lattice(const Orthoframe& f, std::size_t max_size) {
  require_valid(f);
  const std::size_t n = f.size();
  std::set<PointSet> found{f.all()};
  std::vector<PointSet> work{f.all()};
  while (!work.empty()) {
    PointSet s = std::move(work.back());
    work.pop_back();
    for (std::size_t x = 0; x < n; ++x) {
      PointSet t = s & f.perp[x];
      if (found.insert(t).second) {
        if (found.size() > max_size) throw SizeGuardError("more than " + std::to_string(max_size) + " closed sets");
        work.push_back(std::move(t));
      }
    }
  }
  ClosedSetLattice c;
  c.sets.assign(found.begin(), found.end());
  std::stable_sort(c.sets.begin(), c.sets.end(), [](const PointSet& a, const PointSet& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a[k] != b[k]) return a[k] > b[k];
    return false;
  });
  const std::size_t m = c.sets.size();
  for (std::size_t e = 0; e < m; ++e) c.index.emplace(c.sets[e], e);
  std::vector<std::string> labels(m);
  std::vector<Bits> up(m, Bits(m));
  std::vector<Element> ortho(m);
  for (std::size_t a = 0; a < m; ++a) {
    labels[a] = format_set(f, c.sets[a]);
    ortho[a] = c.element_of(perp_of(f, c.sets[a]));
    for (std::size_t b = 0; b < m; ++b)
      if (c.sets[a].is_subset_of(c.sets[b])) up[a].set(b);
  }
  c.lattice = FiniteOL::from_leq(std::move(labels), std::move(up), std::move(ortho), max_size);
  return c;
}

bool FrameReport::ok() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomStatus& a) { return a.holds; });
}

bool is_reflexive(const Relation& r) {
  for (std::size_t x = 0; x < r.size(); ++x)
    if (!r[x][x]) return false;
  return true;
}

bool is_transitive(const Relation& r) {
  for (std::size_t x = 0; x < r.size(); ++x)
    if (!image(r, r[x]).is_subset_of(r[x])) return false;
  return true;
}

bool is_symmetric(const Relation& r) {
  for (std::size_t x = 0; x < r.size(); ++x)
    for (auto y = r[x].find_first(); y != Bits::npos; y = r[x].find_next(y))
      if (!r[y][x]) return false;
  return true;
}

FrameReport check_monadic_frame(const Orthoframe& f, std::size_t i) {
  if (i >= f.r.size()) throw PreconditionError("DimensionMismatch", "frame has no relation " + std::to_string(i));
  const std::size_t n = f.size();
  const Relation& r = f.r[i];
  FrameReport rep;
  rep.axioms = {{"M1", true, {}}, {"M2", true, {}}, {"M3", true, {}}};
  auto fail = [&](std::size_t k, std::vector<Element> w) {
    if (rep.axioms[k].holds) rep.axioms[k].holds = false, rep.axioms[k].witness = std::move(w);
  };
  for (std::size_t x = 0; x < n; ++x) {
    if (f.perp[x][x]) fail(0, {x, x});
    for (std::size_t y = 0; y < n; ++y)
      if (f.perp[x][y] != f.perp[y][x]) fail(0, {x, y});
  }
  // scratch sets reused across points; this runs inside exhaustive sweeps
  PointSet img(n), o(n);
  auto image_into = [&](const PointSet& a, PointSet& out) {
    out.reset();
    for (auto y = a.find_first(); y != PointSet::npos; y = a.find_next(y)) out |= r[y];
  };
  for (std::size_t x = 0; x < n; ++x) {
    if (!r[x][x]) fail(1, {x});
    image_into(r[x], img);
    img -= r[x];
    if (img.any()) fail(1, {x, img.find_first()});
  }
  for (std::size_t x = 0; x < n; ++x) {
    // {x}⊥ of R[x]: meet of the perp rows over R[x]
    o.set();
    for (auto y = r[x].find_first(); y != PointSet::npos; y = r[x].find_next(y)) o &= f.perp[y];
    image_into(o, img);
    img -= o;
    if (img.any()) fail(2, {x, img.find_first()});
  }
  return rep;
}

PointSet exists_r(const Orthoframe& f, std::size_t i, const PointSet& a) {
  if (i >= f.r.size()) throw PreconditionError("DimensionMismatch", "frame has no relation " + std::to_string(i));
  if (!is_closed(f, a)) throw PreconditionError("NotClosed", "argument is not biorthogonally closed");
  return biortho(f, image(f.r[i], a));
}

MonadicComplex complex_algebra(const Orthoframe& f, std::size_t i, std::size_t max_size) {
  MonadicComplex m{closed_set_lattice(f, max_size), {}};
  for (const auto& s : m.closed.sets) m.exists.push_back(m.closed.element_of(exists_r(f, i, s)));
  return m;
}

FrameReport check_image_closure(const Orthoframe& f, std::size_t i, std::size_t exhaustive_limit, std::uint64_t seed,
                          std::size_t samples) {
  const std::size_t n = f.size();
  const Relation& r = f.r.at(i);
  FrameReport rep;
  rep.axioms = {{"R[A]^perp closed under R", true, {}},
                {"R[A]^perp perp closed under R", true, {}},
                {"R[A^perp perp] within R[A]^perp perp", true, {}}};
  auto test = [&](const PointSet& a) {
    const PointSet ra = image(r, a);
    const PointSet o = perp_of(f, ra);
    const PointSet oo = perp_of(f, o);
    auto w = [&] { return to_set(a); };
    if (!image(r, o).is_subset_of(o) && rep.axioms[0].holds) rep.axioms[0].holds = false, rep.axioms[0].witness = w();
    if (!image(r, oo).is_subset_of(oo) && rep.axioms[1].holds) rep.axioms[1].holds = false, rep.axioms[1].witness = w();
    if (!image(r, biortho(f, a)).is_subset_of(oo) && rep.axioms[2].holds)
      rep.axioms[2].holds = false, rep.axioms[2].witness = w();
  };
  if (n <= exhaustive_limit) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      PointSet a(n, mask);
      test(a);
    }
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
      PointSet a(n);
      for (std::size_t x = 0; x < n; ++x)
        if (rng() & 1) a.set(x);
      test(a);
    }
  }
  return rep;
}

namespace {

CanonicalFrame canonical_core(const FiniteOL& l, const std::vector<UnaryMap>& cyl) {
  for (const auto& e : cyl)
    if (!is_quantifier(l, e)) throw PreconditionError("NotQuantifier", "map fails Q1-Q5");
  CanonicalFrame cf;
  std::vector<std::size_t> point_of(l.size(), l.size());
  for (std::size_t x = 0; x < l.size(); ++x)
    if (x != l.zero()) {
      point_of[x] = cf.element_of_point.size();
      cf.element_of_point.push_back(x);
      cf.frame.points.push_back(l.label(x));
    }
  const std::size_t n = cf.element_of_point.size();
  cf.frame.perp.assign(n, Bits(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (l.leq(cf.element_of_point[a], l.ortho(cf.element_of_point[b]))) cf.frame.perp[a].set(b);
  for (const auto& e : cyl) {
    Relation r(n, Bits(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (l.leq(cf.element_of_point[b], e[cf.element_of_point[a]])) r[a].set(b);
    cf.frame.r.push_back(std::move(r));
  }
  return cf;
}

PointSet down_points(const FiniteOL& l, const CanonicalFrame& cf, Element a) {
  PointSet s(cf.element_of_point.size());
  for (std::size_t p = 0; p < cf.element_of_point.size(); ++p)
    if (l.leq(cf.element_of_point[p], a)) s.set(p);
  return s;
}

}  // namespace

CanonicalFrame canonical_frame(const FiniteOL& l, const UnaryMap& e) { return canonical_core(l, {e}); }

CanonicalFrame canonical_frame(const CylindricStructure& c) {
  CanonicalFrame cf = canonical_core(c.base, c.cyl);
  if (c.has_diagonals())
    for (std::size_t i = 0; i < c.dims(); ++i)
      for (std::size_t j = 0; j < c.dims(); ++j) cf.frame.d[{i, j}] = down_points(c.base, cf, c.d(i, j));
  return cf;
}

CanonicalCheck verify_canonical_frame(const FiniteOL& l, const std::vector<UnaryMap>& cyl, const CanonicalFrame& cf) {
  const Orthoframe& f = cf.frame;
  CanonicalCheck r;
  r.frame_ok = true;
  for (std::size_t i = 0; i < f.r.size(); ++i) r.frame_ok = r.frame_ok && check_monadic_frame(f, i).ok();
  const std::size_t n = l.size();
  std::vector<PointSet> alpha(n);
  for (std::size_t a = 0; a < n; ++a) alpha[a] = down_points(l, cf, a);
  r.embedding = alpha[l.zero()].none() && alpha[l.one()] == f.all();
  std::set<PointSet> distinct;
  for (std::size_t a = 0; a < n && r.embedding; ++a) {
    r.embedding = is_closed(f, alpha[a]) && alpha[l.ortho(a)] == perp_of(f, alpha[a]) && distinct.insert(alpha[a]).second;
    for (std::size_t b = 0; b < n && r.embedding; ++b)
      r.embedding = alpha[l.meet(a, b)] == (alpha[a] & alpha[b]) && alpha[l.join(a, b)] == biortho(f, alpha[a] | alpha[b]);
  }
  r.onto = r.embedding && closed_set_lattice(f).sets.size() == n;
  r.preserves_exists = true;
  for (std::size_t i = 0; i < cyl.size(); ++i)
    for (std::size_t a = 0; a < n && r.preserves_exists; ++a)
      r.preserves_exists = alpha[cyl[i][a]] == exists_r(f, i, alpha[a]);
  return r;
}

namespace {

// D_ij with the defaults D_ii = X and D_ji = D_ij; nullopt when absent.
std::optional<PointSet> diag(const Orthoframe& f, std::size_t i, std::size_t j) {
  if (auto it = f.d.find({i, j}); it != f.d.end()) return it->second;
  if (auto it = f.d.find({j, i}); it != f.d.end()) return it->second;
  if (i == j) return f.all();
  return std::nullopt;
}

bool has_diagonals(const Orthoframe& f) {
  for (const auto& [ij, s] : f.d)
    if (ij.first != ij.second) return true;
  return false;
}

}  // namespace

WeakCylindricFrameReport check_weak_cylindric_frame(const Orthoframe& f, std::size_t max_size) {
  require_valid(f);
  const std::size_t n = f.size(), dims = f.r.size();
  WeakCylindricFrameReport rep;
  auto& ax = rep.frame.axioms;
  ax = {{"W1", true, {}}, {"W2", true, {}}, {"W3", true, {}}, {"W4", true, {}}};
  auto fail = [&](std::size_t k, std::vector<Element> w) {
    if (ax[k].holds) ax[k].holds = false, ax[k].witness = std::move(w);
  };
  for (std::size_t i = 0; i < dims; ++i) {
    auto m = check_monadic_frame(f, i);
    for (const auto& a : m.axioms)
      if (!a.holds) {
        std::vector<Element> w{i};
        w.insert(w.end(), a.witness.begin(), a.witness.end());
        fail(0, w);
      }
  }
  for (std::size_t i = 0; i < dims; ++i)
    for (std::size_t j = i + 1; j < dims; ++j)
      for (std::size_t x = 0; x < n; ++x)
        if (image(f.r[j], f.r[i][x]) != image(f.r[i], f.r[j][x])) fail(1, {i, j, x});
  const bool diagonals = has_diagonals(f);
  if (diagonals || dims <= 1) {
    for (std::size_t i = 0; i < dims; ++i)
      for (std::size_t j = 0; j < dims; ++j) {
        auto dij = diag(f, i, j), dji = diag(f, j, i);
        if (!dij || !dji) throw StructureError("diagonal missing for an index pair", {i, j});
        if (*dij != *dji || !is_closed(f, *dij)) fail(2, {i, j});
        if (i == j && *dij != f.all()) fail(2, {i, i});
      }
    for (std::size_t i = 0; i < dims; ++i)
      for (std::size_t j = 0; j < dims; ++j)
        for (std::size_t k = 0; k < dims; ++k) {
          if (j == i || j == k) continue;
          if (image(f.r[j], *diag(f, i, j) & *diag(f, j, k)) != *diag(f, i, k)) fail(3, {i, j, k});
        }
  }
  if (rep.frame.ok()) rep.complex = check_cylindric(cylindric_complex_algebra(f, max_size), CylMode::Weak);
  return rep;
}

CylindricStructure cylindric_complex_algebra(const Orthoframe& f, std::size_t max_size) {
  CylindricStructure c;
  ClosedSetLattice cl = closed_set_lattice(f, max_size);
  c.base = cl.lattice;
  for (std::size_t i = 0; i < f.r.size(); ++i) {
    UnaryMap e;
    for (const auto& s : cl.sets) e.push_back(cl.element_of(exists_r(f, i, s)));
    c.cyl.push_back(std::move(e));
  }
  if (has_diagonals(f) || (f.r.size() == 1 && !f.d.empty())) {
    const std::size_t dims = f.r.size();
    c.diagonals.assign(dims, std::vector<Element>(dims, 0));
    for (std::size_t i = 0; i < dims; ++i)
      for (std::size_t j = 0; j < dims; ++j) {
        auto dij = diag(f, i, j);
        if (!dij) throw StructureError("diagonal missing for an index pair", {i, j});
        c.diagonals[i][j] = cl.element_of(biortho(f, *dij));
      }
  }
  return c;
}

Orthoframe random_frame(std::size_t n, std::mt19937_64& rng, bool classical) {
  Orthoframe f;
  for (std::size_t x = 0; x < n; ++x) f.points.push_back("x" + std::to_string(x));
  if (classical) {
    f.perp = classical_perp(n);
  } else {
    f.perp.assign(n, Bits(n));
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y)
        if (rng() % 2) f.perp[x].set(y), f.perp[y].set(x);
  }
  Relation r = identity_relation(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (rng() % 4 == 0) r[x].set(y);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t x = 0; x < n; ++x)
      if (r[x][k]) r[x] |= r[k];
  f.r.push_back(std::move(r));
  return f;
}

std::vector<Orthoframe> random_monadic_frames(std::size_t n, std::size_t count, std::uint64_t seed, std::size_t attempts) {
  std::mt19937_64 rng(seed);
  std::vector<Orthoframe> out;
  for (std::size_t a = 0; a < attempts && out.size() < count; ++a) {
    Orthoframe f = random_frame(n, rng, a % 5 == 4);
    if (check_monadic_frame(f, 0).ok()) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace qmon
