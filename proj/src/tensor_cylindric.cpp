#include "qmon/tensor_cylindric.hpp"

#include <unordered_map>

namespace qmon {

namespace {

std::string subspace_label(const Subspace& s) {
  if (s.is_zero()) return "0";
  if (s.is_full()) return "1";
  return s.basis().str();
}

}  // namespace

TensorCylindric as_cylindric_structure(const TensorLayout& layout, const std::vector<Subspace>& generators,
                                       bool with_diagonals, std::size_t max_size) {
  const std::size_t d = layout.ambient_dim();
  const std::size_t dims = layout.factors();
  TensorCylindric t;
  t.layout = layout;
  std::vector<Subspace>& el = t.elements;
  std::unordered_map<std::string, Element> index;
  // meet/join for pairs (i, j) with j <= i, filled as each element is processed
  std::vector<std::vector<Element>> meet_row, join_row;

  auto add = [&](Subspace s) -> Element {
    if (s.ambient_dim() != d) throw PreconditionError("DimensionMismatch", "generator lives in the wrong space");
    auto key = s.key();
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (el.size() >= max_size) throw SizeGuardError("closure exceeds " + std::to_string(max_size) + " elements");
    index.emplace(std::move(key), el.size());
    el.push_back(std::move(s));
    return el.size() - 1;
  };

  add(Subspace::zero(d));
  add(Subspace::full(d));
  std::vector<std::vector<Element>> diag_index;
  if (with_diagonals) {
    diag_index.assign(dims, std::vector<Element>(dims, 1));
    for (std::size_t i = 0; i < dims; ++i)
      for (std::size_t j = i + 1; j < dims; ++j) diag_index[i][j] = diag_index[j][i] = add(diagonal(layout, {i, j}));
  }
  for (const auto& g : generators) add(g);

  std::vector<Element> ortho_of;
  std::vector<std::vector<Element>> cyl_of(dims);
  for (std::size_t i = 0; i < el.size(); ++i) {
    const Subspace cur = el[i];
    ortho_of.push_back(add(ortho(cur)));
    for (std::size_t f = 0; f < dims; ++f) cyl_of[f].push_back(add(exists_factor(layout, f, cur)));
    meet_row.emplace_back();
    join_row.emplace_back();
    for (std::size_t j = 0; j <= i; ++j) {
      const Element m = add(meet(cur, el[j]));
      const Element jn = add(join(cur, el[j]));
      meet_row[i].push_back(m);
      join_row[i].push_back(jn);
    }
  }

  const std::size_t n = el.size();
  std::vector<std::string> labels(n);
  std::vector<Bits> up(n, Bits(n));
  for (std::size_t x = 0; x < n; ++x) {
    labels[x] = subspace_label(el[x]);
    for (std::size_t y = 0; y < n; ++y) {
      const Element m = x >= y ? meet_row[x][y] : meet_row[y][x];
      if (m == x) up[x].set(y);
    }
  }
  CylindricStructure& c = t.structure;
  c.base = FiniteOL::from_leq(std::move(labels), std::move(up), std::move(ortho_of), max_size);
  c.cyl = std::move(cyl_of);
  c.diagonals = std::move(diag_index);
  // The closure's tables must agree with the lattice derived from its order.
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y <= x; ++y)
      if (c.base.meet(x, y) != meet_row[x][y] || c.base.join(x, y) != join_row[x][y])
        throw StructureError("closure tables disagree with its order", {x, y});
  return t;
}

std::optional<Element> find_element(const TensorCylindric& t, const Subspace& s) {
  for (std::size_t k = 0; k < t.elements.size(); ++k)
    if (t.elements[k] == s) return k;
  return std::nullopt;
}

}  // namespace qmon
