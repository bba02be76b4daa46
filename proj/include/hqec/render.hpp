#pragma once

#include <string>

#include "hqec/gf2.hpp"
#include "hqec/lattice.hpp"

namespace hqec {

// The arrangement can be drawn two ways: as the triangle gasket
// (qudits are unit up-triangles; the holes appear as the missing
// down-triangles) or as the boundary ring (qudits on a circle in ring
// order, gate edges as chords).
enum class Geometry { Fractal, Boundary };

// SVG drawing with optional highlighted qudit sets, emitted as layered
// groups: id="lattice" (the geometry itself), id="regions" (`region`
// tinted), id="wedges" (`wedge` outlined on top). Null pointers skip
// the corresponding layer. Both sets index qudits by ring position.
std::string render_svg(const Lattice& lat, Geometry geometry,
                       const gf2::BitVec* region = nullptr,
                       const gf2::BitVec* wedge = nullptr);

}  // namespace hqec
