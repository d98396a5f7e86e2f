// JSON input formats for spaces and grids.
#pragma once

#include <optional>
#include <string>

#include "olab/grid.hpp"

namespace olab {

struct ParsedInput {
  // Exactly one of the two is set.
  std::optional<FiniteSpace> space;
  std::optional<GridSpacetime> grid;
  // Designated regions (grid inputs only; empty when absent).
  Mask region_a = 0;
  Mask region_u = 0;
};

ParsedInput parse_input_json(const std::string& text);

std::string space_to_json(const FiniteSpace& s);
std::string grid_to_json(const GridSpacetime& g, Mask a, Mask u);

}  // namespace olab
