#pragma once

#include <string>

#include "lvt/potentials.hpp"

namespace lvt {

struct RenderOptions {
  bool grid = true;    // lattice grid behind planar polygons
  bool labels = true;  // affine lengths next to the edges
};

// SVG drawing of the Newton polytope of the record's potential. Two
// variables: the polygon over its lattice grid with edge lengths. Three
// variables: a fixed isometric projection of the wireframe. The output
// depends only on the inputs. Throws UnsupportedDim otherwise.
std::string render_svg(const PotentialRecord& record, const RenderOptions& options = {});

}  // namespace lvt
