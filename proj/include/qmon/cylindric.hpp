#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmon/quantifiers.hpp"

namespace qmon {

/// An OL with cylindrifications c_0..c_{n-1} and, optionally, diagonals.
/// `diagonals` is either empty (diagonal-free) or an n x n table.
struct CylindricStructure {
  FiniteOL base;
  std::vector<UnaryMap> cyl;
  std::vector<std::vector<Element>> diagonals;

  std::size_t dims() const noexcept { return cyl.size(); }
  bool has_diagonals() const noexcept { return !diagonals.empty(); }
  Element d(std::size_t i, std::size_t j) const { return diagonals.at(i).at(j); }
};

/// Throws StructureError for maps or diagonal tables of the wrong shape.
void require_well_formed(const CylindricStructure& c);

enum class CylMode { Weak, Full };

enum class AxiomState { Pass, Fail, Skipped };

struct CylAxiom {
  std::string name;
  AxiomState state = AxiomState::Pass;
  std::vector<Element> witness;  // index/element tuple, see check_cylindric
  std::string note;
};

struct CylindricReport {
  std::vector<CylAxiom> axioms;  // C1..C5
  bool weak_ok() const;          // C1..C4 not failed
  bool full_ok() const;          // C1..C5 not failed
  bool ok(CylMode m) const { return m == CylMode::Weak ? weak_ok() : full_ok(); }
};

/// Witness shapes: C1 (i, x[, y]) from the failing quantifier axiom, C2 (i, j, x),
/// C3 (i, j), C4 (i, j, k), C5 (i, j, x). C3..C5 are skipped without diagonals,
/// C5 in weak mode.
CylindricReport check_cylindric(const CylindricStructure& c, CylMode mode);

/// All subsets of X^I, |X| = x_size, |I| = i_size. Points are the tuples
/// (f(0),..,f(n-1)) in row-major order; an element is a bitmask of points.
CylindricStructure classical_cyl_set_algebra(std::size_t x_size, std::size_t i_size,
                                             std::size_t max_size = kDefaultMaxElements);
/// Index of the element given by a list of points (tuples).
Element classical_element(std::size_t x_size, std::size_t i_size, const std::vector<std::vector<std::size_t>>& points);

/// S^i_j x = c_i(d_ij ∧ x) for i ≠ j, x for i = j.
Element substitution_classical(const CylindricStructure& c, std::size_t i, std::size_t j, Element x);
/// c_i(d_ij ∧ (d_ij⊥ ∨ x)) for i ≠ j, x for i = j.
Element substitution_sasaki(const CylindricStructure& c, std::size_t i, std::size_t j, Element x);

struct EndomorphismCheck {
  bool zero = true, one = true, meet = true, join = true, ortho = true;
  std::string failed;
  std::vector<Element> witness;
  bool boolean_endomorphism() const { return zero && one && meet && join && ortho; }
};
enum class Substitution { Classical, Sasaki };
EndomorphismCheck check_substitution(const CylindricStructure& c, std::size_t i, std::size_t j, Substitution kind);

}  // namespace qmon
