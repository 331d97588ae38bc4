#pragma once

#include <vector>

#include "qmon/cylindric.hpp"
#include "qmon/subspace.hpp"

namespace qmon {

struct TensorCylindric {
  TensorLayout layout;
  std::vector<Subspace> elements;  // element index -> subspace
  CylindricStructure structure;    // c_i = exists over factor i
};

/// Finite sub-OL of C(H_1 ⊗ .. ⊗ H_n) generated by `generators` (and the
/// diagonals D_{i,j} when `with_diagonals`) under meet, join, ortho and every
/// exists_factor. SizeGuardError past `max_size` elements.
TensorCylindric as_cylindric_structure(const TensorLayout& layout, const std::vector<Subspace>& generators,
                                       bool with_diagonals = true, std::size_t max_size = kDefaultMaxElements);

/// Index of a subspace in the closure, if present.
std::optional<Element> find_element(const TensorCylindric& t, const Subspace& s);

}  // namespace qmon
