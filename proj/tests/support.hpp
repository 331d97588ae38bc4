#pragma once

#include <algorithm>
#include <set>
#include <string>

#include "doctest.h"
#include "qmon/lattice.hpp"

namespace qmon::test {

inline Element at(const FiniteOL& l, const std::string& label) {
  auto e = l.find(label);
  REQUIRE_MESSAGE(e.has_value(), "no element " << label);
  return *e;
}

inline ElementSet elements(const FiniteOL& l, std::initializer_list<const char*> labels) {
  ElementSet s;
  for (const char* x : labels) s.push_back(at(l, x));
  std::sort(s.begin(), s.end());
  return s;
}

inline ElementSet all_of(const FiniteOL& l) {
  ElementSet s(l.size());
  for (Element x = 0; x < l.size(); ++x) s[x] = x;
  return s;
}

}  // namespace qmon::test
