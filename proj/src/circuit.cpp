#include "hqec/circuit.hpp"

#include <bit>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "hqec/check.hpp"
#include "hqec/reconstruction.hpp"

namespace hqec {
namespace {

// Greedy earliest-layer packing that keeps the per-qudit gate order, so
// the layered circuit equals the emitted sequence up to swaps of
// disjointly supported (hence commuting) gates.
void schedule(PrepCircuit& circ, const std::vector<PrepGate>& seq, int N) {
  std::vector<int> last(N, -1);
  for (const PrepGate& gate : seq) {
    int layer = 0;
    for (int q : gate.support()) layer = std::max(layer, last[q] + 1);
    if (layer >= static_cast<int>(circ.layers.size())) circ.layers.resize(layer + 1);
    circ.layers[layer].gates.push_back(gate);
    for (int q : gate.support()) last[q] = layer;
  }
}

}  // namespace

PrepGate PrepGate::single(int qudit, int alpha) {
  PrepGate g;
  g.kind = Kind::SingleQudit;
  g.target = qudit;
  g.alpha = alpha;
  return g;
}

PrepGate PrepGate::controlled(int control, int trigger, int target, int sigma) {
  PrepGate g;
  g.kind = Kind::ControlledS;
  g.control = control;
  g.trigger = trigger;
  g.target = target;
  g.alpha = sigma;
  return g;
}

std::vector<int> PrepGate::support() const {
  if (kind == Kind::SingleQudit) return {target};
  return {control, target};
}

int PrepCircuit::gate_count() const {
  int n = 0;
  for (const PrepLayer& layer : layers) n += static_cast<int>(layer.gates.size());
  return n;
}

int PrepCircuit::single_qudit_count() const {
  int n = 0;
  for (const PrepLayer& layer : layers)
    for (const PrepGate& g : layer.gates)
      if (g.kind == PrepGate::Kind::SingleQudit) ++n;
  return n;
}

int PrepCircuit::controlled_count() const { return gate_count() - single_qudit_count(); }

PrepCircuit emit_prep_circuit(const PatternEngine& eng, std::uint64_t pattern) {
  const Lattice& lat = eng.lattice();
  detail::check(pattern == 0 || lat.K <= 32, "packed patterns need at most 32 holes");
  PrepCircuit circ;
  circ.level = lat.level;
  circ.pattern = pattern;

  std::vector<PrepGate> seq;

  // One (1 + T(x))/sqrt(2) factor per hole. The factors commute, so any
  // sweep order prepares the same state; what the order must provide is
  // a support qudit no earlier gate has touched, which is then in |0>
  // on every branch and serves as the control.
  std::vector<std::vector<int>> support(lat.K);
  for (int x = 0; x < lat.K; ++x) {
    const Config& tau = eng.hole_translation(x);
    for (int q = 0; q < lat.N; ++q)
      if (eng.alpha(tau, q) != 0) support[x].push_back(q);
    detail::check(static_cast<int>(support[x].size()) - 1 <= 5,
                  "a hole factor fans out to at most five controlled gates");
  }

  // Fixed sweeps can deadlock (a hole firing early can eat a neighbor's
  // last free qudit), so the order is planned fail-first: always prefer
  // the hole with the fewest untouched qudits left, backtracking when a
  // choice strands another hole. `rep_marks` flags qudits the pattern
  // representative rotates out of |0>; controls avoid them when
  // possible because a rotation on a control must be deferred until
  // after its hole fires, which costs extra gates.
  std::vector<int> fire_order, fire_control;
  const auto try_plan = [&](const gf2::BitVec& rep_marks) -> bool {
    fire_order.clear();
    fire_control.clear();
    gf2::BitVec touched(lat.N);
    std::vector<bool> fired(lat.K, false);
    long budget = 300L * lat.K;
    const auto plan = [&](const auto& self) -> bool {
      if (static_cast<int>(fire_order.size()) == lat.K) return true;
      if (--budget < 0) return false;
      // A hole with no untouched qudit is already stranded and firing
      // others only touches more, so prune immediately.
      std::vector<std::pair<int, int>> cands;
      for (int x = 0; x < lat.K; ++x) {
        if (fired[x]) continue;
        int options = 0;
        for (int q : support[x])
          if (!touched.get(q)) ++options;
        if (options == 0) return false;
        cands.emplace_back(options, x);
      }
      std::sort(cands.begin(), cands.end(), [&](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first
                                  : support[a.second].back() < support[b.second].back();
      });
      for (const auto& [options, x] : cands) {
        int control = -1, fallback = -1;
        for (int q : support[x])
          if (!touched.get(q)) {
            fallback = q;
            if (!rep_marks.get(q)) control = q;
          }
        if (control == -1) control = fallback;
        std::vector<int> newly;
        for (int q : support[x])
          if (!touched.get(q)) {
            touched.set(q, true);
            newly.push_back(q);
          }
        fired[x] = true;
        fire_order.push_back(x);
        fire_control.push_back(control);
        if (self(self)) return true;
        fire_order.pop_back();
        fire_control.pop_back();
        fired[x] = false;
        for (int q : newly) touched.set(q, false);
      }
      return false;
    };
    return plan(plan);
  };

  // Pick a representative configuration of `pattern`. It is only
  // determined up to the pattern-trivial hole products; take the
  // smallest-support coset member so the prologue rotates as few
  // qudits as possible.
  Config rep = eng.zero_config();
  gf2::BitVec rep_marks(lat.N);
  const auto marks_of = [&](const Config& c) {
    gf2::BitVec marks(lat.N);
    for (int q = 0; q < lat.N; ++q)
      if (eng.alpha(c, q) != 0) marks.set(q, true);
    return marks;
  };
  if (pattern != 0) {
    gf2::BitVec logical(2 * lat.K);
    for (int x = 0; x < lat.K; ++x) {
      const int a = static_cast<int>(pattern >> (2 * x) & 3);
      logical.set(2 * x, a == 1 || a == 3);
      logical.set(2 * x + 1, a == 1 || a == 2);
    }
    const RegionEngine whole(eng, complement_region(gf2::BitVec(lat.N)));
    const std::optional<gf2::BitVec> gates = whole.solve_gates(logical);
    detail::check(gates.has_value(), "every pattern is a gate-product rotation of |0...0>");
    const Config base = eng.gate_translation(*gates);
    const auto materialize = [&](std::uint32_t mask) {
      Config c = base;
      for (int x = 0; x < lat.K; ++x)
        if (mask >> x & 1) c = c ^ eng.hole_translation(x);
      return c;
    };
    detail::check(lat.K <= 13, "representative search enumerates at most 2^13 coset members");
    int best_size = lat.N + 1;
    std::uint32_t best_mask = 0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << lat.K); ++mask) {
      const gf2::BitVec marks = marks_of(materialize(mask));
      int n = 0;
      for (int q = 0; q < lat.N; ++q)
        if (marks.get(q)) ++n;
      if (n < best_size) {
        best_size = n;
        best_mask = mask;
      }
    }
    rep = materialize(best_mask);
    rep_marks = marks_of(rep);
  }
  detail::check(try_plan(rep_marks), "every hole factor needs an untouched control qudit");

  // Branch-value tracking: vals[q] is a bitmask (superset) of the
  // states qudit q takes across branches. A rotation is applied
  // uniformly by driving it from the qudit with the fewest branch
  // values — one controlled gate per value, so exactly one fires in
  // each branch regardless of entanglement.
  std::vector<std::uint8_t> vals(lat.N, 1);
  const auto shifted = [](std::uint8_t m, int sigma) {
    std::uint8_t out = 0;
    for (int a = 0; a < 4; ++a)
      if (m >> a & 1) out |= static_cast<std::uint8_t>(1u << (a ^ sigma));
    return out;
  };
  const auto push = [&](const PrepGate& g) {
    if (g.kind == PrepGate::Kind::SingleQudit) {
      detail::check(vals[g.target] == 1, "a single-qudit gate needs |0> on every branch");
      vals[g.target] = static_cast<std::uint8_t>(1u | (1u << g.alpha));
    } else if (vals[g.control] == (1u << g.trigger)) {
      vals[g.target] = shifted(vals[g.target], g.alpha);
    } else if (vals[g.control] >> g.trigger & 1) {
      vals[g.target] |= shifted(vals[g.target], g.alpha);
    }
    seq.push_back(g);
  };
  const auto rotate_uniformly = [&](int target, int beta) {
    int driver = -1, best = 5;
    for (int q = 0; q < lat.N; ++q) {
      if (q == target) continue;
      const int pc = std::popcount(vals[q]);
      if (pc < best) {
        best = pc;
        driver = q;
      }
    }
    detail::check(driver >= 0, "a rotation needs a driver qudit");
    for (int v = 0; v < 4; ++v)
      if (vals[driver] >> v & 1) push(PrepGate::controlled(driver, v, target, beta));
  };

  // Prologue: rotate the representative qudits that never serve as
  // hole controls; everything is still |0>, so each costs one gate.
  std::vector<bool> is_control(lat.N, false);
  for (int c : fire_control) is_control[c] = true;
  for (int q = 0; q < lat.N; ++q)
    if (rep_marks.get(q) && !is_control[q]) rotate_uniformly(q, eng.alpha(rep, q));

  for (std::size_t k = 0; k < fire_order.size(); ++k) {
    const int x = fire_order[k];
    const int control = fire_control[k];
    const Config& tau = eng.hole_translation(x);
    const int trigger = eng.alpha(tau, control);
    push(PrepGate::single(control, trigger));
    for (int q : support[x])
      if (q != control) push(PrepGate::controlled(control, trigger, q, eng.alpha(tau, q)));
    // Deferred rotation of a control the representative moves; a later
    // hole's control (still |0>) usually drives it in one gate.
    if (rep_marks.get(control)) rotate_uniformly(control, eng.alpha(rep, control));
  }

  schedule(circ, seq, lat.N);
  for (const PrepLayer& layer : circ.layers) {
    gf2::BitVec used(lat.N);
    for (const PrepGate& g : layer.gates)
      for (int q : g.support()) {
        detail::check(!used.get(q), "gates within a layer must have disjoint supports");
        used.set(q, true);
      }
  }
  return circ;
}

double SimState::amplitude() const { return std::pow(2.0, -0.5 * halvings); }

SimState simulate(const PatternEngine& eng, const PrepCircuit& circuit) {
  constexpr std::size_t kMaxBranches = std::size_t(1) << 22;
  SimState st;
  st.branches.push_back(eng.zero_config());
  for (const PrepLayer& layer : circuit.layers)
    for (const PrepGate& gate : layer.gates) {
      if (gate.kind == PrepGate::Kind::SingleQudit) {
        if (st.branches.size() * 2 > kMaxBranches)
          throw std::runtime_error("simulate: branch tracking capped at 2^22 configurations");
        std::vector<Config> split;
        split.reserve(st.branches.size() * 2);
        for (const Config& c : st.branches) {
          detail::check(eng.alpha(c, gate.target) == 0,
                        "single-qudit gate must act on a qudit still in |0>");
          split.push_back(c);
          Config moved = c;
          eng.set_alpha(moved, gate.target, gate.alpha);
          split.push_back(std::move(moved));
        }
        st.branches = std::move(split);
        st.halvings += 1;
      } else {
        for (Config& c : st.branches)
          if (eng.alpha(c, gate.control) == gate.trigger) eng.apply_S(c, gate.target, gate.alpha);
      }
    }
  return st;
}

bool verify_prep(const PsiBasis& psi, const PrepCircuit& circuit, double tol) {
  const PatternEngine& eng = *psi.eng;
  const SimState st = simulate(eng, circuit);
  std::vector<double> sim(psi.size(), 0.0);
  for (const Config& c : st.branches) {
    const int ord = psi.find(c.word0());
    detail::check(ord >= 0, "simulated branch left the classical support");
    sim[static_cast<std::size_t>(ord)] += st.amplitude();
  }
  const BoundaryState enc = encode(psi, pattern_bulk_state(psi.K, circuit.pattern));
  double dev = 0.0;
  for (std::uint32_t i = 0; i < psi.size(); ++i)
    dev = std::max(dev, std::abs(std::complex<double>(sim[i]) - enc.amp[i]));
  return dev <= tol;
}

std::string to_text(const PrepCircuit& circuit) {
  std::ostringstream out;
  for (std::size_t t = 0; t < circuit.layers.size(); ++t) {
    if (t > 0) out << "---\n";
    for (const PrepGate& g : circuit.layers[t].gates) {
      if (g.kind == PrepGate::Kind::SingleQudit)
        out << "SQ " << g.target << ' ' << g.alpha << '\n';
      else
        out << "CS " << g.control << ' ' << g.trigger << ' ' << g.target << ' ' << g.alpha << '\n';
    }
  }
  return out.str();
}

PrepCircuit from_text(const std::string& text) {
  PrepCircuit circ;
  std::istringstream in(text);
  std::string line;
  bool any = false;
  PrepLayer layer;
  while (std::getline(in, line)) {
    std::istringstream tokens(line);
    std::string kind;
    if (!(tokens >> kind)) continue;  // blank line
    any = true;
    if (kind == "---") {
      circ.layers.push_back(std::move(layer));
      layer = PrepLayer{};
      continue;
    }
    PrepGate g;
    if (kind == "SQ") {
      int qudit = 0, alpha = 0;
      if (!(tokens >> qudit >> alpha)) throw std::invalid_argument("bad SQ line: " + line);
      g = PrepGate::single(qudit, alpha);
    } else if (kind == "CS") {
      int control = 0, trigger = 0, target = 0, sigma = 0;
      if (!(tokens >> control >> trigger >> target >> sigma))
        throw std::invalid_argument("bad CS line: " + line);
      g = PrepGate::controlled(control, trigger, target, sigma);
    } else {
      throw std::invalid_argument("unknown gate kind: " + kind);
    }
    std::string extra;
    if (tokens >> extra) throw std::invalid_argument("trailing tokens: " + line);
    layer.gates.push_back(g);
  }
  if (any) circ.layers.push_back(std::move(layer));
  return circ;
}

std::string to_json(const PrepCircuit& circuit) {
  nlohmann::json layers = nlohmann::json::array();
  for (const PrepLayer& layer : circuit.layers) {
    nlohmann::json gates = nlohmann::json::array();
    for (const PrepGate& g : layer.gates) {
      if (g.kind == PrepGate::Kind::SingleQudit)
        gates.push_back({{"kind", "SQ"}, {"qudit", g.target}, {"alpha", g.alpha}});
      else
        gates.push_back({{"kind", "CS"},
                         {"control", g.control},
                         {"trigger", g.trigger},
                         {"target", g.target},
                         {"sigma", g.alpha}});
    }
    layers.push_back(std::move(gates));
  }
  const nlohmann::json doc = {{"schema_version", 1},
                              {"level", circuit.level},
                              {"pattern", circuit.pattern},
                              {"depth", circuit.depth()},
                              {"gate_count", circuit.gate_count()},
                              {"layers", std::move(layers)}};
  return doc.dump(2);
}

}  // namespace hqec
