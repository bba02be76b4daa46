#include "hqec/lattice.hpp"

#include <algorithm>
#include <stdexcept>

#include "hqec/check.hpp"

namespace hqec {

using detail::check;

namespace {

int pow3(int e) {
  int r = 1;
  while (e-- > 0) r *= 3;
  return r;
}

// Apex of child block `digit` of the block at (ax, ay) with side s.
std::pair<int, int> child_apex(int ax, int ay, int s, int digit) {
  int h = s / 2;
  switch (digit) {
    case 0: return {ax, ay};          // top
    case 1: return {ax + h, ay + h};  // bottom-right
    default: return {ax, ay + h};     // bottom-left
  }
}

struct Builder {
  Lattice lat;
  std::map<std::vector<int>, int> hole_of_prefix;

  void emit_qudits(int ax, int ay, int s, std::vector<int>& addr) {
    if (s == 1) {
      Qudit q;
      q.id = static_cast<int>(lat.qudits.size());
      q.ax = ax;
      q.ay = ay;
      q.address = addr;
      q.corner1 = addr.back();  // last split direction: 0=top, 1=br, 2=bl
      lat.qudits.push_back(std::move(q));
      return;
    }
    for (int d : {0, 1, 2}) {
      auto [cx, cy] = child_apex(ax, ay, s, d);
      addr.push_back(d);
      emit_qudits(cx, cy, s / 2, addr);
      addr.pop_back();
    }
  }

  void emit_holes(int ax, int ay, int s, std::vector<int>& prefix) {
    if (s == 1) return;
    Hole h;
    h.id = static_cast<int>(lat.holes.size());
    h.scale = 0;
    for (int t = s; t > 1; t /= 2) h.scale++;
    h.bx = ax;
    h.by = ay;
    h.bsize = s;
    hole_of_prefix[prefix] = h.id;
    lat.holes.push_back(std::move(h));
    for (int d : {0, 1, 2}) {
      auto [cx, cy] = child_apex(ax, ay, s, d);
      prefix.push_back(d);
      emit_holes(cx, cy, s / 2, prefix);
      prefix.pop_back();
    }
  }

  // Vertices of qudit q: geometric corner 0=top, 1=br, 2=bl.
  std::pair<int, int> corner_vertex(const Qudit& q, int geom) const {
    switch (geom) {
      case 0: return {q.ax, q.ay};
      case 1: return {q.ax + 1, q.ay + 1};
      default: return {q.ax, q.ay + 1};
    }
  }

  void build_edges() {
    // which (qudit, geometric corner) pairs meet at each vertex
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> at_vertex;
    for (const Qudit& q : lat.qudits)
      for (int g = 0; g < 3; g++) at_vertex[corner_vertex(q, g)].push_back({q.id, g});

    lat.edges_at.assign(lat.N, {});
    for (const auto& [v, occ] : at_vertex) {
      check(occ.size() <= 2, "vertex shared by more than two qudits");
      if (occ.size() < 2) continue;
      auto [qa, ga] = occ[0];
      auto [qb, gb] = occ[1];
      const auto& A = lat.qudits[qa].address;
      const auto& B = lat.qudits[qb].address;
      int p = 0;
      while (A[p] == B[p]) p++;

      GateEdge e;
      e.id = static_cast<int>(lat.edges.size());
      if (p == lat.level - 1) {
        // both qudits in one 3-qudit block: digit a passes sigma=2,
        // its clockwise successor passes sigma=3
        e.kind = EdgeKind::SameBlock;
        int da = A[p], db = B[p];
        if ((da + 1) % 3 == db) {
          e.q = {qa, qb};
        } else {
          check((db + 1) % 3 == da, "same-block digits not adjacent");
          e.q = {qb, qa};
        }
        e.sigma = {2, 3};
      } else {
        // block-joining contact: the shared vertex is the rotation-1
        // corner of both qudits, and both pass sigma=1
        check(ga == lat.qudits[qa].corner1 && gb == lat.qudits[qb].corner1,
              "cross-block contact not at rotation-1 corners");
        e.kind = EdgeKind::CrossBlock;
        e.q = {std::min(qa, qb), std::max(qa, qb)};
        e.sigma = {1, 1};
      }

      std::vector<int> prefix(A.begin(), A.begin() + p);
      auto it = hole_of_prefix.find(prefix);
      check(it != hole_of_prefix.end(), "edge owner block has no hole");
      e.owner_hole = it->second;
      // differing digits fix which loop corner of the owner this is:
      // {1,2} -> corner opposite lateral 1, {0,2} -> 2, {0,1} -> 3
      int dsum = A[p] + B[p];
      e.corner_slot = (dsum == 3) ? 1 : (dsum == 2 ? 2 : 3);

      lat.edges_at[qa].push_back(e.id);
      lat.edges_at[qb].push_back(e.id);
      lat.edges.push_back(std::move(e));
    }

    check(static_cast<int>(lat.edges.size()) == 3 * lat.K, "edge count != 3K");
    for (auto& h : lat.holes) h.corner_gate = {-1, -1, -1};
    for (const GateEdge& e : lat.edges) {
      int& slot = lat.holes[e.owner_hole].corner_gate[e.corner_slot - 1];
      check(slot == -1, "two edges claim one loop corner");
      slot = e.id;
    }
    for (const Hole& h : lat.holes)
      for (int g : h.corner_gate) check(g >= 0, "hole loop corner without edge");

    for (Qudit& q : lat.qudits) q.degree = static_cast<int>(lat.edges_at[q.id].size());
  }

  SideRef side_from_geom(int ax, int ay, int geom) const {
    int q = lat.qudit_at(ax, ay);
    check(q >= 0, "lateral references missing qudit");
    return {q, lat.tau_of_geom_side(q, geom)};
  }

  void build_laterals() {
    // hole loop laterals; geometric sides named by opposite corner
    // (0 = bottom, 1 = left, 2 = right of the unit triangle)
    for (Hole& h : lat.holes) {
      int i = h.bx, j = h.by, half = h.bsize / 2;
      for (int x = i; x < i + half; x++)  // top child's bottom row
        h.lateral[0].push_back(side_from_geom(x, j + half - 1, 0));
      for (int y = j + half; y < j + h.bsize; y++)  // br child's left column
        h.lateral[1].push_back(side_from_geom(i + half, y, 1));
      for (int d = 0; d < half; d++)  // bl child's right diagonal
        h.lateral[2].push_back(side_from_geom(i + d, j + half + d, 2));
    }

    int M = lat.N0;
    for (int x = 0; x < M; x++) lat.lattice_lateral[0].push_back(side_from_geom(x, M - 1, 0));
    for (int y = 0; y < M; y++) lat.lattice_lateral[1].push_back(side_from_geom(0, y, 1));
    for (int d = 0; d < M; d++) lat.lattice_lateral[2].push_back(side_from_geom(d, d, 2));

    lat.side_owner.assign(lat.N, {});
    auto claim = [&](SideRef s, SideOwner o) {
      SideOwner& cur = lat.side_owner[s.qudit][s.tau];
      check(cur.index == -1, "triangle side on two laterals");
      cur = o;
    };
    for (const Hole& h : lat.holes)
      for (int j = 0; j < 3; j++)
        for (SideRef s : h.lateral[j]) claim(s, {false, h.id, j});
    for (int j = 0; j < 3; j++)
      for (SideRef s : lat.lattice_lateral[j]) claim(s, {true, j, -1});
    for (int q = 0; q < lat.N; q++)
      for (int tau = 1; tau <= 3; tau++)
        check(lat.side_owner[q][tau].index != -1, "triangle side on no lateral");
  }
};

}  // namespace

int Lattice::block_first(const std::vector<int>& prefix) const {
  int first = 0;
  for (size_t k = 0; k < prefix.size(); k++)
    first += prefix[k] * pow3(level - 1 - static_cast<int>(k));
  return first;
}

int Lattice::block_size(int depth) const { return pow3(level - depth); }

int Lattice::corner_of_index(int q, int k) const {
  return (qudits[q].corner1 + k - 1) % 3;
}

int Lattice::tau_of_geom_side(int q, int geom_corner_opposite) const {
  return (geom_corner_opposite - qudits[q].corner1 + 3) % 3 + 1;
}

int Lattice::qudit_at(int ax, int ay) const {
  auto it = apex_to_qudit_.find({ax, ay});
  return it == apex_to_qudit_.end() ? -1 : it->second;
}

Lattice build_lattice(int level) {
  if (level < 1 || level > 8)
    throw std::invalid_argument("build_lattice: level must be in [1, 8]");

  Builder b;
  b.lat.level = level;
  b.lat.N = pow3(level);
  b.lat.K = (b.lat.N - 1) / 2;
  b.lat.N0 = 1 << level;

  std::vector<int> addr;
  b.emit_qudits(0, 0, b.lat.N0, addr);
  check(static_cast<int>(b.lat.qudits.size()) == b.lat.N, "qudit count");
  for (const Qudit& q : b.lat.qudits) b.lat.apex_to_qudit_[{q.ax, q.ay}] = q.id;

  std::vector<int> prefix;
  b.emit_holes(0, 0, b.lat.N0, prefix);
  check(static_cast<int>(b.lat.holes.size()) == b.lat.K, "hole count");

  b.build_edges();
  b.build_laterals();
  return std::move(b.lat);
}

}  // namespace hqec
