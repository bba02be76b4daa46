#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hqec/codespace.hpp"

namespace hqec {

// Layered preparation circuit for code basis states.
//
// Each (1 + T(x))/sqrt(2) factor becomes one single-qudit gate on a
// control qudit still in |0> plus one controlled-S per remaining
// support qudit: the single-qudit gate splits |0> into
// (|0> + |alpha>)/sqrt(2), and each controlled gate applies S^sigma to
// its target exactly when the control sits in the trigger state,
// acting as identity on the three other control states. Nonzero
// patterns additionally rotate a representative configuration out of
// |0...0> with deterministic controlled gates: one trigger-0 gate per
// qudit while everything is definite, or a short fan of gates keyed on
// a driver qudit's possible states once branches exist.

struct PrepGate {
  enum class Kind { SingleQudit, ControlledS };
  Kind kind = Kind::SingleQudit;
  int control = -1;  // ControlledS only
  int trigger = 0;   // ControlledS: control state that fires the gate
  int target = -1;   // the qudit acted on
  int alpha = 0;     // SingleQudit: the split branch; ControlledS: sigma

  static PrepGate single(int qudit, int alpha);
  static PrepGate controlled(int control, int trigger, int target, int sigma);
  std::vector<int> support() const;
  friend bool operator==(const PrepGate&, const PrepGate&) = default;
};

struct PrepLayer {
  std::vector<PrepGate> gates;
  friend bool operator==(const PrepLayer&, const PrepLayer&) = default;
};

struct PrepCircuit {
  int level = 0;
  std::uint64_t pattern = 0;
  std::vector<PrepLayer> layers;

  int depth() const { return static_cast<int>(layers.size()); }
  int gate_count() const;
  int single_qudit_count() const;
  int controlled_count() const;
};

// Builds the circuit preparing the code basis state of `pattern`
// (packed two bits per hole; 0 = the all-zero pattern). The hole sweep
// order is planned so that each control is a support qudit no earlier
// gate has touched, making it |0> on every branch when its
// single-qudit gate fires. Layers are packed greedily while keeping
// the per-qudit gate order, which only reorders commuting gates.
PrepCircuit emit_prep_circuit(const PatternEngine& eng, std::uint64_t pattern = 0);

// Exact simulation. The state stays an equal-weight superposition of
// product configurations with amplitude 2^(-halvings/2); branches at
// most double per single-qudit gate. Throws std::runtime_error when
// the branch count would exceed the tracking capability (2^22).
struct SimState {
  std::vector<Config> branches;
  int halvings = 0;
  double amplitude() const;
};
SimState simulate(const PatternEngine& eng, const PrepCircuit& circuit);

// Dense comparison against the encoder on the enumerated code
// (level <= 2): max amplitude deviation at most `tol`.
bool verify_prep(const PsiBasis& psi, const PrepCircuit& circuit, double tol = 1e-12);

// One gate per line, `SQ <qudit> <alpha>` or
// `CS <control> <trigger-alpha> <target> <sigma>`, layers separated by
// a line `---`.
std::string to_text(const PrepCircuit& circuit);
// Parses the gate/layer structure back; level and pattern are not part
// of the text format and are left zero. Throws std::invalid_argument
// on malformed lines.
PrepCircuit from_text(const std::string& text);

std::string to_json(const PrepCircuit& circuit);

}  // namespace hqec
