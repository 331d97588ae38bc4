#include "qmon/cylindric.hpp"

#include <algorithm>

namespace qmon {

void require_well_formed(const CylindricStructure& c) {
  for (const auto& m : c.cyl) require_total(c.base, m);
  if (!c.has_diagonals()) return;
  if (c.diagonals.size() != c.dims()) throw StructureError("diagonal table has wrong size");
  for (std::size_t i = 0; i < c.dims(); ++i) {
    if (c.diagonals[i].size() != c.dims()) throw StructureError("diagonal table row has wrong size", {i});
    for (std::size_t j = 0; j < c.dims(); ++j)
      if (c.diagonals[i][j] >= c.base.size()) throw StructureError("diagonal is not an element", {i, j});
  }
}

bool CylindricReport::weak_ok() const {
  return std::none_of(axioms.begin(), axioms.begin() + 4, [](const CylAxiom& a) { return a.state == AxiomState::Fail; });
}

bool CylindricReport::full_ok() const {
  return std::none_of(axioms.begin(), axioms.end(), [](const CylAxiom& a) { return a.state == AxiomState::Fail; });
}

CylindricReport check_cylindric(const CylindricStructure& c, CylMode mode) {
  require_well_formed(c);
  const FiniteOL& l = c.base;
  const std::size_t n = l.size(), dims = c.dims();
  CylindricReport r;
  r.axioms = {{"C1", AxiomState::Pass, {}, ""}, {"C2", AxiomState::Pass, {}, ""}, {"C3", AxiomState::Pass, {}, ""},
              {"C4", AxiomState::Pass, {}, ""}, {"C5", AxiomState::Pass, {}, ""}};
  auto fail = [&](std::size_t k, std::vector<Element> w, std::string note = "") {
    auto& a = r.axioms[k];
    if (a.state == AxiomState::Pass) a.state = AxiomState::Fail, a.witness = std::move(w), a.note = std::move(note);
  };

  for (std::size_t i = 0; i < dims; ++i) {
    auto q = check_quantifier(l, c.cyl[i]);
    for (int k = 1; k <= 5 && q.is_quantifier == false; ++k)
      if (!q.q(k).holds) {
        std::vector<Element> w{i};
        w.insert(w.end(), q.q(k).witness.begin(), q.q(k).witness.end());
        fail(0, w, "c_" + std::to_string(i) + " fails " + q.q(k).name);
        break;
      }
  }
  for (std::size_t i = 0; i < dims; ++i)
    for (std::size_t j = i + 1; j < dims; ++j)
      for (std::size_t x = 0; x < n; ++x)
        if (c.cyl[i][c.cyl[j][x]] != c.cyl[j][c.cyl[i][x]]) fail(1, {i, j, x});

  if (!c.has_diagonals()) {
    for (std::size_t k = 2; k < 5; ++k) r.axioms[k].state = AxiomState::Skipped, r.axioms[k].note = "no diagonals";
    if (mode == CylMode::Weak) r.axioms[4].note = "weak mode";
    return r;
  }
  for (std::size_t i = 0; i < dims; ++i) {
    if (c.d(i, i) != l.one()) fail(2, {i, i});
    for (std::size_t j = 0; j < dims; ++j)
      if (c.d(i, j) != c.d(j, i)) fail(2, {i, j});
  }
  for (std::size_t i = 0; i < dims; ++i)
    for (std::size_t j = 0; j < dims; ++j)
      for (std::size_t k = 0; k < dims; ++k) {
        if (j == i || j == k) continue;
        if (c.d(i, k) != c.cyl[j][l.meet(c.d(i, j), c.d(j, k))]) fail(3, {i, j, k});
      }
  if (mode == CylMode::Weak) {
    r.axioms[4].state = AxiomState::Skipped;
    r.axioms[4].note = "weak mode";
    return r;
  }
  for (std::size_t i = 0; i < dims; ++i)
    for (std::size_t j = 0; j < dims; ++j) {
      if (i == j) continue;
      const Element d = c.d(i, j);
      for (std::size_t x = 0; x < n; ++x)
        if (l.meet(c.cyl[i][l.meet(d, x)], c.cyl[i][l.meet(d, l.ortho(x))]) != l.zero()) fail(4, {i, j, x});
    }
  return r;
}

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

Element classical_element(std::size_t x_size, std::size_t i_size, const std::vector<std::vector<std::size_t>>& points) {
  Element e = 0;
  for (const auto& p : points) {
    if (p.size() != i_size) throw PreconditionError("DimensionMismatch", "point has wrong arity");
    std::size_t idx = 0;
    for (auto v : p) {
      if (v >= x_size) throw PreconditionError("DimensionMismatch", "coordinate outside the ground set");
      idx = idx * x_size + v;
    }
    e |= Element{1} << idx;
  }
  return e;
}

CylindricStructure classical_cyl_set_algebra(std::size_t x_size, std::size_t i_size, std::size_t max_size) {
  if (x_size == 0) throw PreconditionError("DimensionTooSmall", "ground set is empty");
  const std::size_t points = ipow(x_size, i_size);
  if (points >= 20 || (std::size_t{1} << points) > max_size)
    throw SizeGuardError("powerset of " + std::to_string(points) + " points exceeds the element limit");
  const std::size_t n = std::size_t{1} << points;

  std::vector<std::vector<std::size_t>> tuple(points, std::vector<std::size_t>(i_size));
  for (std::size_t p = 0; p < points; ++p)
    for (std::size_t k = 0, rest = p; k < i_size; ++k) {
      tuple[p][i_size - 1 - k] = rest % x_size;
      rest /= x_size;
    }
  auto point_name = [&](std::size_t p) {
    std::string s;
    for (auto v : tuple[p]) s += (x_size > 10 && !s.empty() ? "." : "") + std::to_string(v);
    return s;
  };

  std::vector<std::string> labels(n);
  std::vector<Bits> up(n, Bits(n));
  std::vector<Element> ortho(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::string s = "{";
    for (std::size_t p = 0; p < points; ++p)
      if (x >> p & 1) s += (s.size() > 1 ? "," : "") + point_name(p);
    labels[x] = s + "}";
    ortho[x] = (n - 1) & ~x;
    for (std::size_t y = 0; y < n; ++y)
      if ((x & ~y) == 0) up[x].set(y);
  }

  CylindricStructure c;
  c.base = FiniteOL::from_leq(std::move(labels), std::move(up), std::move(ortho), max_size);
  // cyl of a single point: every point agreeing off coordinate i.
  std::vector<std::vector<Element>> point_cyl(i_size, std::vector<Element>(points, 0));
  for (std::size_t i = 0; i < i_size; ++i)
    for (std::size_t p = 0; p < points; ++p)
      for (std::size_t q = 0; q < points; ++q) {
        bool agree = true;
        for (std::size_t k = 0; k < i_size && agree; ++k) agree = k == i || tuple[p][k] == tuple[q][k];
        if (agree) point_cyl[i][p] |= Element{1} << q;
      }
  c.cyl.assign(i_size, UnaryMap(n, 0));
  for (std::size_t i = 0; i < i_size; ++i)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t p = 0; p < points; ++p)
        if (x >> p & 1) c.cyl[i][x] |= point_cyl[i][p];
  c.diagonals.assign(i_size, std::vector<Element>(i_size, 0));
  for (std::size_t i = 0; i < i_size; ++i)
    for (std::size_t j = 0; j < i_size; ++j)
      for (std::size_t p = 0; p < points; ++p)
        if (tuple[p][i] == tuple[p][j]) c.diagonals[i][j] |= Element{1} << p;
  return c;
}

namespace {

void require_diagonals(const CylindricStructure& c, std::size_t i, std::size_t j) {
  if (!c.has_diagonals()) throw PreconditionError("NoDiagonals", "structure is diagonal-free");
  if (i >= c.dims() || j >= c.dims()) throw PreconditionError("DimensionMismatch", "index out of range", {i, j});
}

}  // namespace

Element substitution_classical(const CylindricStructure& c, std::size_t i, std::size_t j, Element x) {
  require_diagonals(c, i, j);
  if (i == j) return x;
  return c.cyl[i][c.base.meet(c.d(i, j), x)];
}

Element substitution_sasaki(const CylindricStructure& c, std::size_t i, std::size_t j, Element x) {
  require_diagonals(c, i, j);
  if (i == j) return x;
  return c.cyl[i][sasaki_product(c.base, c.d(i, j), x)];
}

EndomorphismCheck check_substitution(const CylindricStructure& c, std::size_t i, std::size_t j, Substitution kind) {
  const FiniteOL& l = c.base;
  auto s = [&](Element x) {
    return kind == Substitution::Classical ? substitution_classical(c, i, j, x) : substitution_sasaki(c, i, j, x);
  };
  EndomorphismCheck r;
  auto fail = [&](bool& flag, const char* what, std::vector<Element> w) {
    if (!flag) return;
    flag = false;
    if (r.failed.empty()) r.failed = what, r.witness = std::move(w);
  };
  const std::size_t n = l.size();
  std::vector<Element> img(n);
  for (std::size_t x = 0; x < n; ++x) img[x] = s(x);
  if (img[l.zero()] != l.zero()) fail(r.zero, "preserves 0", {l.zero()});
  if (img[l.one()] != l.one()) fail(r.one, "preserves 1", {l.one()});
  for (std::size_t x = 0; x < n; ++x) {
    if (img[l.ortho(x)] != l.ortho(img[x])) fail(r.ortho, "preserves ortho", {x});
    for (std::size_t y = 0; y < n; ++y) {
      if (img[l.meet(x, y)] != l.meet(img[x], img[y])) fail(r.meet, "preserves meets", {x, y});
      if (img[l.join(x, y)] != l.join(img[x], img[y])) fail(r.join, "preserves joins", {x, y});
    }
  }
  return r;
}

}  // namespace qmon
