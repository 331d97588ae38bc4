#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qmon/lattice.hpp"

namespace qmon {

/// Blocks of atoms; atoms shared between blocks carry the same token.
struct GreechieDiagram {
  std::vector<std::vector<std::string>> blocks;
};

/// One block per line, atoms separated by whitespace. Blank lines and lines
/// starting with '#' are skipped.
GreechieDiagram parse_greechie(std::string_view text);
std::string format_greechie(const GreechieDiagram& d);

/// The orthoposet obtained by pasting the Boolean algebras 2^block. Elements
/// are subsets of blocks; a subset is identified with a subset of another
/// block when they have the same atoms or the same in-block complement.
/// Throws StructureError when the pasting is not a lattice.
FiniteOL build_greechie(const GreechieDiagram& d, std::size_t max_size = kDefaultMaxElements);

/// Diagrams of 3-atom blocks, atoms numbered 0.., any two blocks sharing at
/// most one atom, new atoms introduced in increasing order, blocks strictly
/// increasing in lexicographic order. Visited by block count, then
/// lexicographically. Return false from `visit` to stop.
void enumerate_greechie(std::size_t max_blocks, const std::function<bool(const GreechieDiagram&)>& visit);

}  // namespace qmon
