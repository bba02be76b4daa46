#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hqec {

// Sierpinski arrangement of four-level qudits.
//
// One qudit per unit up-triangle of a level-`level` gasket. Vertex
// coordinates (i,j): j = row (0 at apex, grows downward), i = skew
// column; the unit up-triangle with apex (i,j) has base corners
// (i,j+1) and (i+1,j+1). Qudit ids follow a depth-first traversal
// with child order [top, bottom-right, bottom-left], which coincides
// with clockwise order around the outer boundary of the gasket, so a
// qudit id is also its boundary ring position.

enum class EdgeKind { SameBlock, CrossBlock };

// One of the three sides of a qudit's triangle, named by the opposite
// corner: side tau sits opposite the corner with rotation index tau.
// Rotation index 1 is the corner that does not touch the hole of the
// qudit's smallest enclosing 3-qudit block; 2 and 3 follow clockwise.
struct SideRef {
  int qudit = -1;
  int tau = 0;  // 1..3
  friend bool operator==(const SideRef&, const SideRef&) = default;
};

struct Qudit {
  int id = -1;                // == ring position on the outer boundary
  int ax = 0, ay = 0;         // apex vertex
  std::vector<int> address;   // digits root..leaf: 0=top, 1=bottom-right, 2=bottom-left
  int corner1 = 0;            // geometric corner carrying rotation index 1: 0=top, 1=br, 2=bl
  int degree = 0;
};

// Two-body gate between edge-sharing qudits. The gate applies
// S^sigma[0] on qudit q[0] and S^sigma[1] on q[1]. Each edge belongs
// to exactly one hole (`owner_hole`) and sits at one of that hole's
// three loop corners; `corner_slot` j in 1..3 marks the corner
// opposite hole lateral j.
struct GateEdge {
  int id = -1;
  std::array<int, 2> q{-1, -1};
  std::array<int, 2> sigma{0, 0};
  EdgeKind kind = EdgeKind::SameBlock;
  int owner_hole = -1;
  int corner_slot = 0;
};

struct Hole {
  int id = -1;
  int scale = 0;              // 1..level; loop has 3*2^(scale-1) unit sides
  int bx = 0, by = 0;         // apex of the block the hole is centered in
  int bsize = 0;              // block side length, 2^scale
  std::array<std::vector<SideRef>, 3> lateral;  // lateral[j] = loop lateral j+1
  std::array<int, 3> corner_gate{-1, -1, -1};   // corner_gate[j] = edge at corner opposite lateral j+1
};

// Every triangle side lies on exactly one hole loop or one lattice
// lateral; this records which.
struct SideOwner {
  bool lattice = false;
  int index = -1;    // hole id, or lattice lateral 0..2
  int lateral = -1;  // 0..2 within the hole loop; unused for lattice sides
};

struct Lattice {
  int level = 0;
  int N = 0;   // qudits, 3^level
  int K = 0;   // holes, (3^level - 1) / 2
  int N0 = 0;  // boundary sites of the dual view, 2^level
  std::vector<Qudit> qudits;
  std::vector<GateEdge> edges;
  std::vector<Hole> holes;                            // pre-order; holes[0] is the central one
  std::array<std::vector<SideRef>, 3> lattice_lateral;  // 1=bottom, 2=left, 3=right
  std::vector<std::array<SideOwner, 4>> side_owner;     // [qudit][tau], tau in 1..3
  std::vector<std::vector<int>> edges_at;               // incident edge ids per qudit

  int central_hole() const { return 0; }

  // Ring positions of a block given by an address prefix: the block's
  // qudits occupy the contiguous range [first, first + 3^(level-depth)).
  int block_first(const std::vector<int>& prefix) const;
  int block_size(int depth) const;

  // Geometric corner (0=top, 1=br, 2=bl) holding rotation index k on
  // qudit q, and the inverse map from geometric side to tau. Geometric
  // sides are named by the opposite geometric corner: side opposite
  // top = bottom, opposite br = left, opposite bl = right.
  int corner_of_index(int q, int k) const;
  int tau_of_geom_side(int q, int geom_corner_opposite) const;

  int qudit_at(int ax, int ay) const;  // -1 if no up-triangle has this apex

 private:
  friend Lattice build_lattice(int level);
  std::map<std::pair<int, int>, int> apex_to_qudit_;
};

// Builds the full arrangement. Throws std::invalid_argument outside
// 1 <= level <= 8.
Lattice build_lattice(int level);

}  // namespace hqec
