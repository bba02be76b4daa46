#include "hqec/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hqec/circuit.hpp"
#include "hqec/duality.hpp"
#include "hqec/probes.hpp"
#include "hqec/render.hpp"
#include "hqec/rt.hpp"

namespace hqec {
namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------- helpers

bool write_file(const std::string& path, const std::string& content, std::ostream& err) {
  std::ofstream f(path);
  if (!f) {
    err << "cannot open for writing: " << path << "\n";
    return false;
  }
  f << content;
  return true;
}

std::optional<int> parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// `--arc a..b` (ring interval, inclusive, wraps) or `--qudits 1,4,7`.
std::optional<gf2::BitVec> parse_region(const Lattice& lat, const std::string& arc,
                                        const std::string& qudits, std::string& error) {
  if (!arc.empty()) {
    const std::size_t pos = arc.find("..");
    const std::optional<int> a = pos == std::string::npos
                                     ? std::nullopt
                                     : parse_int(arc.substr(0, pos));
    const std::optional<int> b = pos == std::string::npos
                                     ? std::nullopt
                                     : parse_int(arc.substr(pos + 2));
    if (!a || !b) {
      error = "--arc wants the form a..b (ring positions, inclusive)";
      return std::nullopt;
    }
    if (*a < 0 || *a >= lat.N || *b < 0 || *b >= lat.N) {
      error = "--arc endpoints must be ring positions in [0, " + std::to_string(lat.N) + ")";
      return std::nullopt;
    }
    const int size = (*b - *a + lat.N) % lat.N + 1;
    return arc_region(lat.N, *a, size);
  }
  if (!qudits.empty()) {
    gf2::BitVec region(lat.N);
    std::stringstream ss(qudits);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::optional<int> q = parse_int(item);
      if (!q || *q < 0 || *q >= lat.N) {
        error = "--qudits wants comma-separated ring positions in [0, " +
                std::to_string(lat.N) + ")";
        return std::nullopt;
      }
      region.set(*q, true);
    }
    if (!region.any()) {
      error = "--qudits named no qudit";
      return std::nullopt;
    }
    return region;
  }
  error = "a region is required: --arc a..b or --qudits 1,4,7";
  return std::nullopt;
}

std::optional<int> parse_hole(const Lattice& lat, const std::string& s, std::string& error) {
  if (s == "central") return lat.central_hole();
  const std::optional<int> x = parse_int(s);
  if (!x || *x < 0 || *x >= lat.K) {
    error = "--hole wants 'central' or a hole id in [0, " + std::to_string(lat.K) + ")";
    return std::nullopt;
  }
  return x;
}

Geometry parse_geometry(const std::string& s) {
  return s == "boundary" ? Geometry::Boundary : Geometry::Fractal;
}

json region_json(const gf2::BitVec& region) { return json(region_qudits(region)); }

std::string region_text(const gf2::BitVec& region) {
  std::string s;
  for (int q : region_qudits(region)) {
    if (!s.empty()) s += ',';
    s += std::to_string(q);
  }
  return s;
}

const char* split_name(SplitType t) {
  switch (t) {
    case SplitType::FullHere: return "full-here";
    case SplitType::FullThere: return "full-there";
    case SplitType::Type1Here: return "type1-here";
    case SplitType::Type1There: return "type1-there";
    case SplitType::Type2Here: return "type2-here";
    case SplitType::Type2There: return "type2-there";
    case SplitType::Type3: return "type3";
    case SplitType::Classical: return "classical";
    case SplitType::SharedPair: return "shared-pair";
    case SplitType::SharedFull: return "shared-full";
  }
  return "?";
}

const char* family_name(RecoveryFamily f) {
  switch (f) {
    case RecoveryFamily::ThreeCorner: return "three-corner";
    case RecoveryFamily::MixedCorner: return "mixed-corner";
    case RecoveryFamily::TwoFacing: return "two-facing";
    case RecoveryFamily::SharedBlock: return "shared-block";
  }
  return "?";
}

// Ring positions of the block a hole is centered in.
gf2::BitVec hole_block(const Lattice& lat, int hole) {
  const Hole& h = lat.holes[hole];
  const GateEdge& e = lat.edges[h.corner_gate[0]];
  const std::vector<int>& addr = lat.qudits[e.q[0]].address;
  const std::vector<int> prefix(addr.begin(), addr.end() - h.scale);
  int size = 1;
  for (int s = 0; s < h.scale; ++s) size *= 3;
  const int first = lat.block_first(prefix);
  gf2::BitVec region(lat.N);
  for (int i = 0; i < size; ++i) region.set(first + i, true);
  return region;
}

// ------------------------------------------------------------ subcommands

struct CommonOpts {
  int level = 2;
  std::string arc, qudits;
  std::string geometry = "fractal";
  std::string out_path, svg_path;
};

int cmd_build(const CommonOpts& o, std::ostream& out, std::ostream& err) {
  const Lattice lat = build_lattice(o.level);
  out << "level " << lat.level << ": N=" << lat.N << " qudits, K=" << lat.K
      << " holes, N0=" << lat.N0 << " dual boundary sites, " << lat.edges.size()
      << " gate edges\n";
  if (!o.out_path.empty()) {
    json qudits = json::array();
    for (const Qudit& q : lat.qudits)
      qudits.push_back({{"id", q.id},
                        {"apex", {q.ax, q.ay}},
                        {"address", q.address},
                        {"corner1", q.corner1},
                        {"degree", q.degree}});
    json edges = json::array();
    for (const GateEdge& e : lat.edges)
      edges.push_back({{"id", e.id},
                       {"qudits", {e.q[0], e.q[1]}},
                       {"sigma", {e.sigma[0], e.sigma[1]}},
                       {"kind", e.kind == EdgeKind::SameBlock ? "same-block" : "cross-block"},
                       {"owner_hole", e.owner_hole},
                       {"corner_slot", e.corner_slot}});
    json holes = json::array();
    for (const Hole& h : lat.holes)
      holes.push_back({{"id", h.id},
                       {"scale", h.scale},
                       {"block_apex", {h.bx, h.by}},
                       {"block_side", h.bsize},
                       {"corner_gates", h.corner_gate},
                       {"block_qudits", region_json(hole_block(lat, h.id))}});
    std::vector<int> ring(lat.N);
    for (int q = 0; q < lat.N; ++q) ring[q] = q;
    const json doc = {{"schema_version", kSchemaVersion}, {"level", lat.level},
                      {"N", lat.N},                       {"K", lat.K},
                      {"N0", lat.N0},                     {"qudits", qudits},
                      {"edges", edges},                   {"holes", holes},
                      {"boundary_order", ring}};
    if (!write_file(o.out_path, doc.dump(2) + "\n", err)) return 2;
  }
  if (!o.svg_path.empty() &&
      !write_file(o.svg_path, render_svg(lat, parse_geometry(o.geometry)), err))
    return 2;
  return 0;
}

struct VerifyOpts {
  int level = 2;
  bool full = false;
  std::string out_path;
};

int cmd_verify_code(const VerifyOpts& o, std::ostream& out, std::ostream& err) {
  const Lattice lat = build_lattice(o.level);
  const PatternEngine eng(lat);
  const PsiBasis psi = enumerate_psi(eng);
  const IsometryReport iso = verify_isometry(psi);
  const ProjectorReport proj = verify_code_projector(psi);
  out << "isometry: " << (iso.ok() ? "ok" : "FAIL") << " (" << iso.states_checked
      << " states)\n";
  out << "projector: " << (proj.ok() ? "ok" : "FAIL") << " (" << proj.columns_checked
      << " columns)\n";

  // One sweep per unordered bipartition, always from the smaller side.
  std::vector<gf2::BitVec> sweeps;
  if (o.full) {
    for (std::uint64_t mask = 1; mask + 1 < (1ull << lat.N); ++mask) {
      const int size = __builtin_popcountll(mask);
      if (2 * size > lat.N) continue;  // the complement handles this pair
      sweeps.push_back(gf2::from_word(lat.N, mask));
    }
  } else {
    for (int first = 0; first < lat.N; ++first)
      for (int size = 1; 2 * size <= lat.N; ++size)
        sweeps.push_back(arc_region(lat.N, first, size));
  }
  std::vector<std::string> failures;
  for (const gf2::BitVec& swept : sweeps) {
    const RecoveryCheck rc = verify_complementary_recovery(psi, swept);
    const WedgeReport wr = compute_wedges(eng, swept);
    const CenterCheck cc = verify_center(psi, wr);
    if (!rc.ok() || !cc.commutes) failures.push_back(region_text(swept));
  }
  out << "complementary recovery: " << sweeps.size() << " bipartitions swept ("
      << (o.full ? "all" : "arcs") << "), " << failures.size() << " failures\n";
  const bool ok = iso.ok() && proj.ok() && failures.empty();
  out << (ok ? "all checks passed\n" : "VERIFICATION FAILED\n");
  if (!o.out_path.empty()) {
    const json doc = {{"schema_version", kSchemaVersion},
                      {"level", o.level},
                      {"isometry",
                       {{"pattern_count_ok", iso.pattern_count_ok},
                        {"fiber_sizes_ok", iso.fiber_sizes_ok},
                        {"fibers_are_orbits", iso.fibers_are_orbits},
                        {"gram_identity", iso.gram_identity},
                        {"states_checked", iso.states_checked}}},
                      {"projector",
                       {{"matches_encoder_columns", proj.matches_encoder_columns},
                        {"idempotent", proj.idempotent},
                        {"columns_checked", proj.columns_checked}}},
                      {"bipartitions",
                       {{"swept", sweeps.size()},
                        {"scope", o.full ? "all" : "arcs"},
                        {"failures", failures}}},
                      {"ok", ok}};
    if (!write_file(o.out_path, doc.dump(2) + "\n", err)) return 2;
  }
  return ok ? 0 : 1;
}

int cmd_wedges(const CommonOpts& o, std::ostream& out, std::ostream& err) {
  const Lattice lat = build_lattice(o.level);
  const PatternEngine eng(lat);
  std::string error;
  const std::optional<gf2::BitVec> region = parse_region(lat, o.arc, o.qudits, error);
  if (!region) {
    err << error << "\n";
    return 2;
  }
  const WedgeReport wr = compute_wedges(eng, *region);
  const std::vector<CenterGenerator> cg = center_generators(wr);
  out << "region {" << region_text(*region) << "}\n";
  out << "wedge here: " << wr.wedge_here.size() << " holes, wedge there: "
      << wr.wedge_there.size() << ", on the surface: " << wr.edge_holes.size() << "\n";
  out << "product split: " << (wr.product_split ? "yes" : "no")
      << ", geometric complementarity: " << (wr.geometric_complementarity() ? "yes" : "no")
      << ", center generators: " << cg.size() << "\n";
  if (!o.out_path.empty()) {
    json splits = json::array();
    for (const HoleSplit& s : wr.splits)
      splits.push_back({{"hole", s.hole},
                        {"type", split_name(s.type)},
                        {"achievable_mask", s.s.mask},
                        {"confusion_mask", s.c.mask},
                        {"sigma", s.sigma},
                        {"u", s.u},
                        {"v", s.v},
                        {"dim_here", s.dim_here()},
                        {"dim_there", s.dim_there()},
                        {"n_sectors", s.n_sectors()},
                        {"dim_center", s.dim_center()}});
    json centers = json::array();
    for (const CenterGenerator& g : cg)
      centers.push_back({{"hole", g.hole}, {"type", g.type}, {"sigma", g.sigma}});
    const json doc = {{"schema_version", kSchemaVersion},
                      {"level", o.level},
                      {"region", region_json(*region)},
                      {"splits", splits},
                      {"wedge_here", wr.wedge_here},
                      {"wedge_there", wr.wedge_there},
                      {"edge_holes", wr.edge_holes},
                      {"product_split", wr.product_split},
                      {"geometric_complementarity", wr.geometric_complementarity()},
                      {"center_generators", centers}};
    if (!write_file(o.out_path, doc.dump(2) + "\n", err)) return 2;
  }
  if (!o.svg_path.empty()) {
    gf2::BitVec wedge(lat.N);
    for (int x : wr.wedge_here) wedge ^= hole_block(lat, x);
    if (!write_file(o.svg_path,
                    render_svg(lat, parse_geometry(o.geometry), &*region, &wedge), err))
      return 2;
  }
  return 0;
}

struct RtOpts {
  int level = 2;
  std::string arc, qudits;
  std::string states = "random:8";
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string out_path;
};

int cmd_rt(const RtOpts& o, std::ostream& out, std::ostream& err) {
  const Lattice lat = build_lattice(o.level);
  const PatternEngine eng(lat);
  std::string error;
  const std::optional<gf2::BitVec> region = parse_region(lat, o.arc, o.qudits, error);
  if (!region) {
    err << error << "\n";
    return 2;
  }
  const std::size_t colon = o.states.find(':');
  const std::string kind = o.states.substr(0, colon);
  const std::optional<int> n =
      colon == std::string::npos ? std::optional<int>(1) : parse_int(o.states.substr(colon + 1));
  if (!n || *n < 1 || (kind != "random" && kind != "mixture" && kind != "pattern")) {
    err << "--states wants random:N, mixture:N, or pattern:P\n";
    return 2;
  }
  const PsiBasis psi = enumerate_psi(eng);
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> wdist(0.25, 0.75);

  out << "region {" << region_text(*region) << "}, states " << o.states << ", seed " << o.seed
      << "\n";
  out << std::fixed << std::setprecision(12);
  out << "state  area_bits  S_here          S_algebra_here  residual_here   residual_there\n";
  json rows = json::array();
  bool all_close = true;
  const int count = kind == "pattern" ? 1 : *n;
  for (int i = 0; i < count; ++i) {
    BulkMixture rho;
    if (kind == "random") {
      rho = pure_mixture(random_bulk_state(lat.K, rng));
    } else if (kind == "mixture") {
      const double w = wdist(rng);
      rho.weight = {w, 1.0 - w};
      rho.component = {random_bulk_state(lat.K, rng), random_bulk_state(lat.K, rng)};
    } else {
      const std::uint64_t p = static_cast<std::uint64_t>(*n);
      if (lat.K < 32 && (p >> (2 * lat.K)) != 0) {
        err << "--states pattern:P wants P < 4^K\n";
        return 2;
      }
      rho = pure_mixture(pattern_bulk_state(lat.K, p));
    }
    const RtReport rep = verify_rt(psi, rho, *region);
    all_close = all_close && rep.closes(o.tol);
    out << std::setw(5) << i << "  " << std::setw(9) << rep.area.area_bits() << "  "
        << rep.s_boundary_here << "  " << rep.s_algebra_here << "  " << rep.residual_here
        << "  " << rep.residual_there << "\n";
    rows.push_back({{"state", i},
                    {"area_bits", rep.area.area_bits()},
                    {"area_nats", rep.area.area_nats()},
                    {"torn_structures", rep.area.torn_structures},
                    {"s_boundary_here", rep.s_boundary_here},
                    {"s_boundary_there", rep.s_boundary_there},
                    {"s_algebra_here", rep.s_algebra_here},
                    {"s_algebra_there", rep.s_algebra_there},
                    {"residual_here", rep.residual_here},
                    {"residual_there", rep.residual_there},
                    {"closes", rep.closes(o.tol)}});
  }
  out << (all_close ? "entropy identity closes on both sides\n"
                    : "ENTROPY IDENTITY FAILED\n");
  if (!o.out_path.empty()) {
    const json doc = {{"schema_version", kSchemaVersion},
                      {"level", o.level},
                      {"region", region_json(*region)},
                      {"states", o.states},
                      {"seed", o.seed},
                      {"tolerance", o.tol},
                      {"rows", rows},
                      {"all_close", all_close}};
    if (!write_file(o.out_path, doc.dump(2) + "\n", err)) return 2;
  }
  return all_close ? 0 : 1;
}

struct DistanceOpts {
  int level = 3;
  std::string hole = "central";
  std::string out_path, csv_path;
};

int cmd_distance(const DistanceOpts& o, std::ostream& out, std::ostream& err) {
  const Lattice lat = build_lattice(o.level);
  const PatternEngine eng(lat);
  std::vector<int> holes;
  if (o.hole == "all") {
    holes.resize(lat.K);
    for (int x = 0; x < lat.K; ++x) holes[x] = x;
  } else {
    std::string error;
    const std::optional<int> x = parse_hole(lat, o.hole, error);
    if (!x) {
      err << error << "\n";
      return 2;
    }
    holes.push_back(*x);
  }
  out << "hole  scale  d  d_c  d_gate  price\n";
  json records = json::array();
  std::ostringstream csv;
  csv << "hole,scale,d,d_c,p\n";
  for (int x : holes) {
    const DistanceRecord rec = distance_record(eng, x);
    const int price = connected_price(eng, x);
    const int scale = lat.holes[x].scale;
    out << std::setw(4) << x << "  " << std::setw(5) << scale << "  " << rec.d_any << "  "
        << std::setw(3) << rec.d_connected << "  " << std::setw(6) << rec.d_gate << "  "
        << std::setw(5) << price << "\n";
    csv << x << ',' << scale << ',' << rec.d_any << ',' << rec.d_connected << ',' << price
        << "\n";
    records.push_back({{"hole", x},
                       {"scale", scale},
                       {"d", rec.d_any},
                       {"d_connected", rec.d_connected},
                       {"d_gate", rec.d_gate},
                       {"price", price},
                       {"witness_connected", region_json(rec.witness_connected)},
                       {"witness_any", region_json(rec.witness_any)}});
  }
  if (!o.csv_path.empty() && !write_file(o.csv_path, csv.str(), err)) return 2;
  if (!o.out_path.empty()) {
    const json doc = {{"schema_version", kSchemaVersion},
                      {"level", o.level},
                      {"records", records}};
    if (!write_file(o.out_path, doc.dump(2) + "\n", err)) return 2;
  }
  return 0;
}

struct RecoverOpts {
  int level = 2;
  std::string hole = "central";
  bool all = false;
  std::string geometry = "fractal";
  std::string out_path, svg_path;
};

int cmd_recover(const RecoverOpts& o, std::ostream& out, std::ostream& err) {
  const Lattice lat = build_lattice(o.level);
  const PatternEngine eng(lat);
  std::string error;
  const std::optional<int> x = parse_hole(lat, o.hole, error);
  if (!x) {
    err << error << "\n";
    return 2;
  }
  std::vector<MinimalRecovery> recs;
  if (o.all)
    recs = minimal_recoveries(eng, *x);
  else
    recs.push_back(smallest_recovery(eng, *x));
  bool ok = true;
  json rows = json::array();
  for (const MinimalRecovery& r : recs) {
    ok = ok && r.recovers && r.minimal;
    out << family_name(r.family) << " size " << r.size() << " {" << region_text(r.region)
        << "} recovers=" << (r.recovers ? "yes" : "NO")
        << " minimal=" << (r.minimal ? "yes" : "NO") << "\n";
    rows.push_back({{"family", family_name(r.family)},
                    {"qudits", region_json(r.region)},
                    {"size", r.size()},
                    {"recovers", r.recovers},
                    {"minimal", r.minimal}});
  }
  out << recs.size() << " recovery region" << (recs.size() == 1 ? "" : "s") << " for hole "
      << *x << (ok ? "" : " — VERIFICATION FAILED") << "\n";
  if (!o.out_path.empty()) {
    const json doc = {{"schema_version", kSchemaVersion},
                      {"level", o.level},
                      {"hole", *x},
                      {"recoveries", rows}};
    if (!write_file(o.out_path, doc.dump(2) + "\n", err)) return 2;
  }
  if (!o.svg_path.empty() &&
      !write_file(o.svg_path,
                  render_svg(lat, parse_geometry(o.geometry), &recs.front().region), err))
    return 2;
  return ok ? 0 : 1;
}

struct CircuitOpts {
  int level = 2;
  std::uint64_t pattern = 0;
  std::string format = "text";
  bool verify = false;
  std::string out_path;
};

int cmd_circuit(const CircuitOpts& o, std::ostream& out, std::ostream& err) {
  const Lattice lat = build_lattice(o.level);
  if (lat.K < 32 && (o.pattern >> (2 * lat.K)) != 0) {
    err << "--pattern wants a packed pattern below 4^K\n";
    return 2;
  }
  const PatternEngine eng(lat);
  const PrepCircuit circ = emit_prep_circuit(eng, o.pattern);
  out << "level " << o.level << " pattern " << o.pattern << ": depth " << circ.depth()
      << " (depth/N0 = " << std::fixed << std::setprecision(4)
      << static_cast<double>(circ.depth()) / lat.N0 << "), " << circ.gate_count() << " gates ("
      << circ.single_qudit_count() << " splits, " << circ.controlled_count()
      << " controlled)\n";
  const std::string artifact = o.format == "json" ? to_json(circ) + "\n" : to_text(circ);
  if (o.out_path.empty())
    out << artifact;
  else if (!write_file(o.out_path, artifact, err))
    return 2;
  if (o.verify) {
    if (o.level > 2) {
      err << "--verify compares against the dense encoder and wants --level 1 or 2\n";
      return 2;
    }
    const PsiBasis psi = enumerate_psi(eng);
    const bool ok = verify_prep(psi, circ);
    out << "prepared state " << (ok ? "matches" : "DOES NOT MATCH") << " the encoded basis state\n";
    return ok ? 0 : 1;
  }
  return 0;
}

int cmd_render(const CommonOpts& o, const std::string& hole, std::ostream& out,
               std::ostream& err) {
  const Lattice lat = build_lattice(o.level);
  std::optional<gf2::BitVec> region;
  if (!o.arc.empty() || !o.qudits.empty()) {
    std::string error;
    region = parse_region(lat, o.arc, o.qudits, error);
    if (!region) {
      err << error << "\n";
      return 2;
    }
  }
  std::optional<gf2::BitVec> wedge;
  if (!hole.empty()) {
    std::string error;
    const std::optional<int> x = parse_hole(lat, hole, error);
    if (!x) {
      err << error << "\n";
      return 2;
    }
    wedge = hole_block(lat, *x);
  }
  const std::string svg = render_svg(lat, parse_geometry(o.geometry),
                                     region ? &*region : nullptr, wedge ? &*wedge : nullptr);
  if (o.svg_path.empty() && o.out_path.empty())
    out << svg;
  else if (!write_file(o.svg_path.empty() ? o.out_path : o.svg_path, svg, err))
    return 2;
  return 0;
}

struct SweepOpts {
  int level = 2;
  int count = 50;
  std::uint64_t seed = 0;
  std::string out_path;
};

int cmd_sweep(const SweepOpts& o, std::ostream& out, std::ostream& err) {
  const Lattice lat = build_lattice(o.level);
  const PatternEngine eng(lat);
  const PsiBasis psi = enumerate_psi(eng);
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<std::uint64_t> dist(1, (1ull << lat.N) - 2);
  std::ostringstream csv;
  csv << "region,size,wedge_here,wedge_there,edge_holes,product_split,dims_agree,"
         "sector_complete,center_ok\n";
  bool all_ok = true;
  for (int i = 0; i < o.count; ++i) {
    // audit each bipartition from its smaller side, where the dense region
    // algebra is enumerable; the per-hole splits are the same either way
    std::uint64_t mask = dist(rng);
    if (2 * __builtin_popcountll(mask) > lat.N) mask ^= (1ull << lat.N) - 1;
    const gf2::BitVec region = gf2::from_word(lat.N, mask);
    const StructureReport sr = structure_report(psi, region);
    const CenterCheck cc = verify_center(psi, sr.wedges);
    const bool ok = sr.dims_agree && sr.sector_completeness && cc.commutes;
    all_ok = all_ok && ok;
    csv << '"' << region_text(region) << "\"," << region.popcount() << ','
        << sr.wedges.wedge_here.size() << ',' << sr.wedges.wedge_there.size() << ','
        << sr.wedges.edge_holes.size() << ',' << (sr.wedges.product_split ? 1 : 0) << ','
        << (sr.dims_agree ? 1 : 0) << ',' << (sr.sector_completeness ? 1 : 0) << ','
        << (cc.commutes ? 1 : 0) << "\n";
  }
  if (o.out_path.empty())
    out << csv.str();
  else if (!write_file(o.out_path, csv.str(), err))
    return 2;
  out << o.count << " bipartitions sampled (seed " << o.seed << "): "
      << (all_ok ? "splits and commutants all verified\n" : "VERIFICATION FAILED\n");
  return all_ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Holographic code toolkit: builds the fractal ququart arrangement, "
               "verifies its code properties, and reports distances, wedges, entropies, "
               "and preparation circuits."};
  app.name("hqec");
  app.require_subcommand(1);

  CommonOpts build_o;
  CLI::App* build = app.add_subcommand("build", "Construct the arrangement and dump it");
  build->add_option("--level", build_o.level, "gasket level")->check(CLI::Range(1, 8));
  build->add_option("--out", build_o.out_path, "write the lattice as JSON");
  build->add_option("--svg", build_o.svg_path, "write a drawing");
  build->add_option("--geometry", build_o.geometry, "drawing geometry")
      ->check(CLI::IsMember({"fractal", "boundary"}));

  VerifyOpts verify_o;
  CLI::App* verify =
      app.add_subcommand("verify-code", "Run the isometry, projector, and recovery suites");
  verify->add_option("--level", verify_o.level, "gasket level (dense checks)")
      ->check(CLI::Range(1, 2));
  verify->add_flag("--full", verify_o.full, "sweep every bipartition, not just arcs");
  verify->add_option("--out", verify_o.out_path, "write the report as JSON");

  CommonOpts wedges_o;
  CLI::App* wedges = app.add_subcommand("wedges", "Entanglement wedges and splits of a region");
  wedges->add_option("--level", wedges_o.level, "gasket level")->check(CLI::Range(1, 8));
  CLI::Option* warc = wedges->add_option("--arc", wedges_o.arc, "region as ring arc a..b");
  wedges->add_option("--qudits", wedges_o.qudits, "region as qudit list")->excludes(warc);
  wedges->add_option("--out", wedges_o.out_path, "write the report as JSON");
  wedges->add_option("--svg", wedges_o.svg_path, "write a drawing with the wedge overlay");
  wedges->add_option("--geometry", wedges_o.geometry, "drawing geometry")
      ->check(CLI::IsMember({"fractal", "boundary"}));

  RtOpts rt_o;
  CLI::App* rt = app.add_subcommand("rt", "Entropy identity: area term plus algebraic entropy");
  rt->add_option("--level", rt_o.level, "gasket level (dense checks)")->check(CLI::Range(1, 2));
  CLI::Option* rarc = rt->add_option("--arc", rt_o.arc, "region as ring arc a..b");
  rt->add_option("--qudits", rt_o.qudits, "region as qudit list")->excludes(rarc);
  rt->add_option("--states", rt_o.states, "random:N, mixture:N, or pattern:P");
  rt->add_option("--seed", rt_o.seed, "random state seed");
  rt->add_option("--tol", rt_o.tol, "residual tolerance");
  rt->add_option("--out", rt_o.out_path, "write the residual table as JSON");

  DistanceOpts dist_o;
  CLI::App* dist = app.add_subcommand("distance", "Code distances and price of a hole");
  dist->add_option("--level", dist_o.level, "gasket level")->check(CLI::Range(1, 8));
  dist->add_option("--hole", dist_o.hole, "'central', a hole id, or 'all'");
  dist->add_option("--out", dist_o.out_path, "write records with witnesses as JSON");
  dist->add_option("--csv", dist_o.csv_path, "write the distance table as CSV");

  RecoverOpts rec_o;
  CLI::App* rec = app.add_subcommand("recover", "Smallest disconnected recovery regions");
  rec->add_option("--level", rec_o.level, "gasket level")->check(CLI::Range(2, 8));
  rec->add_option("--hole", rec_o.hole, "'central' or a hole id");
  rec->add_flag("--all", rec_o.all, "list every canonical minimal recovery");
  rec->add_option("--out", rec_o.out_path, "write the recoveries as JSON");
  rec->add_option("--svg", rec_o.svg_path, "write a drawing of the smallest recovery");
  rec->add_option("--geometry", rec_o.geometry, "drawing geometry")
      ->check(CLI::IsMember({"fractal", "boundary"}));

  CircuitOpts circ_o;
  CLI::App* circ = app.add_subcommand("circuit", "Emit the layered preparation circuit");
  circ->add_option("--level", circ_o.level, "gasket level")->check(CLI::Range(1, 8));
  circ->add_option("--pattern", circ_o.pattern, "packed hole pattern (two bits per hole)");
  circ->add_option("--format", circ_o.format, "artifact format")
      ->check(CLI::IsMember({"text", "json"}));
  circ->add_flag("--verify", circ_o.verify, "simulate and compare against the encoder");
  circ->add_option("--out", circ_o.out_path, "write the circuit to a file");

  CommonOpts render_o;
  std::string render_hole;
  CLI::App* render = app.add_subcommand("render", "Draw the arrangement");
  render->add_option("--level", render_o.level, "gasket level")->check(CLI::Range(1, 8));
  CLI::Option* xarc = render->add_option("--arc", render_o.arc, "highlight a ring arc a..b");
  render->add_option("--qudits", render_o.qudits, "highlight a qudit list")->excludes(xarc);
  render->add_option("--hole", render_hole, "overlay a hole's block");
  render->add_option("--geometry", render_o.geometry, "drawing geometry")
      ->check(CLI::IsMember({"fractal", "boundary"}));
  render->add_option("--out", render_o.out_path, "write the drawing (default: stdout)");
  render->add_option("--svg", render_o.svg_path, "alias for --out");

  SweepOpts sweep_o;
  CLI::App* sweep = app.add_subcommand("sweep", "Sample bipartitions; verify splits/commutants");
  sweep->add_option("--level", sweep_o.level, "gasket level (dense checks)")
      ->check(CLI::Range(1, 2));
  sweep->add_option("--count", sweep_o.count, "number of sampled bipartitions")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sweep_o.seed, "sampling seed");
  sweep->add_option("--out", sweep_o.out_path, "write the table as CSV (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (build->parsed()) return cmd_build(build_o, out, err);
    if (verify->parsed()) return cmd_verify_code(verify_o, out, err);
    if (wedges->parsed()) return cmd_wedges(wedges_o, out, err);
    if (rt->parsed()) return cmd_rt(rt_o, out, err);
    if (dist->parsed()) return cmd_distance(dist_o, out, err);
    if (rec->parsed()) return cmd_recover(rec_o, out, err);
    if (circ->parsed()) return cmd_circuit(circ_o, out, err);
    if (render->parsed()) return cmd_render(render_o, render_hole, out, err);
    if (sweep->parsed()) return cmd_sweep(sweep_o, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;  // unreachable with require_subcommand(1)
}

}  // namespace hqec
