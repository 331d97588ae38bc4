#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "qmon/cylindric.hpp"
#include "qmon/orthoframe.hpp"
#include "qmon/star_algebra.hpp"
#include "qmon/subspace.hpp"

namespace qmon::io {

using json = nlohmann::ordered_json;

/// Reads and parses a JSON file. ParseError on I/O or syntax trouble.
json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);

// Lattices: { "elements": [...], "covers" | "leq": [[i,j]...], "ortho": [...] }
FiniteOL lattice_from_json(const json& j, std::size_t max_size = kDefaultMaxElements);
json lattice_to_json(const FiniteOL& l);

// Quantifiers: { "lattice": <inline or path>, "map": [...] }. A relative
// lattice path is resolved against `base_dir`.
struct QuantifierFile {
  FiniteOL lattice;
  UnaryMap map;
};
QuantifierFile quantifier_from_json(const json& j, const std::filesystem::path& base_dir = {},
                                    std::size_t max_size = kDefaultMaxElements);
json quantifier_to_json(const FiniteOL& l, const UnaryMap& e);

// Cylindric: quantifier format plus "cylindrifications": {"0": map, ...} and
// "diagonals": {"i,j": element}. A lone "map" is read as c_0.
CylindricStructure cylindric_from_json(const json& j, const std::filesystem::path& base_dir = {},
                                       std::size_t max_size = kDefaultMaxElements);
json cylindric_to_json(const CylindricStructure& c);

// Scalars and matrices in the a/b+c/d i syntax.
GQ scalar_from_json(const json& j);
json vector_to_json(std::span<const GQ> v);
json matrix_to_json(const GQMatrix& m);
GQMatrix matrix_from_json(const json& j);

// Subspaces: { "factors": [...], "basis": [[...], ...] }. Several subspaces
// may be given as "generators": [basis, ...] (used by the tensor closure).
struct SubspaceFile {
  TensorLayout layout;
  std::vector<Subspace> subspaces;
  bool with_diagonals = true;
};
SubspaceFile subspace_from_json(const json& j);
json subspace_to_json(const TensorLayout& layout, const Subspace& s);

// Algebras: { "dim": d, "generators": [matrix, ...] }.
struct AlgebraFile {
  std::size_t dim = 0;
  std::vector<GQMatrix> generators;
  std::vector<GQMatrix> projections;  // optional "projections" to test ∃ on
};
AlgebraFile algebra_from_json(const json& j);

// Frames: { "points": [...], "perp": [[i,j]...], "R": {"0": [[i,j]...]}, "D": {"0,1": [...]} }.
Orthoframe frame_from_json(const json& j);
json frame_to_json(const Orthoframe& f);

}  // namespace qmon::io
