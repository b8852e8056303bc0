#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

// Gate-list circuit IR and a dense state-vector simulator.
//
// Qubit 0 is the least-significant bit of the amplitude index (little-endian),
// and bit strings are printed with bit i at position i from the right.
// Histograms are sampled with std::mt19937_64 and 53-bit uniform doubles
// ((x >> 11) * 2^-53), so identical seeds give identical histograms on any
// platform with IEEE-754 doubles.

namespace qnv {

class CircuitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simulator width ceiling: past this, simulate something smaller.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxSimQubits = 26;

enum class GateKind { X, H, Z, RY, CX, CZ, MCX, MCZ, Reset };

struct Gate {
  GateKind kind = GateKind::X;
  int target = 0;
  std::vector<int> controls;
  double angle = 0.0;  // RY only

  static Gate x(int target) { return {GateKind::X, target, {}, 0.0}; }
  static Gate h(int target) { return {GateKind::H, target, {}, 0.0}; }
  static Gate z(int target) { return {GateKind::Z, target, {}, 0.0}; }
  static Gate ry(int target, double angle) {
    return {GateKind::RY, target, {}, angle};
  }
  static Gate cx(int control, int target) {
    return {GateKind::CX, target, {control}, 0.0};
  }
  static Gate cz(int control, int target) {
    return {GateKind::CZ, target, {control}, 0.0};
  }
  static Gate mcx(std::vector<int> controls, int target) {
    return {GateKind::MCX, target, std::move(controls), 0.0};
  }
  static Gate mcz(std::vector<int> controls, int target) {
    return {GateKind::MCZ, target, std::move(controls), 0.0};
  }
  static Gate reset(int target) { return {GateKind::Reset, target, {}, 0.0}; }

  bool is_phase_kind() const {
    return kind == GateKind::Z || kind == GateKind::CZ ||
           kind == GateKind::MCZ;
  }
  /// Inverse gate; throws for Reset.
  Gate inverted() const;

  bool operator==(const Gate&) const = default;
};

/// Throws CircuitError unless indices are in range, controls are distinct
/// and disjoint from the target, and the control count fits the kind.
void validate_gate(const Gate& gate, int width);

struct Circuit {
  int width = 0;
  std::vector<Gate> gates;

  explicit Circuit(int width = 0) : width(width) {}

  void push(Gate gate);
  void append(const Circuit& other);  // widths must match
  /// Same gates on a wider register.
  Circuit widened(int new_width) const;
  /// Gates reversed and inverted; throws if the circuit contains Reset.
  Circuit inverted() const;

  /// Line-oriented dump: `GATE target [controls] [angle]`, one gate per line.
  std::string dump() const;
};

class StateVector {
 public:
  /// |0...0> on `width` qubits. Throws ResourceLimitError past the ceiling.
  explicit StateVector(int width);
  static StateVector basis(int width, std::uint64_t index);

  int width() const { return width_; }
  std::uint64_t size() const { return std::uint64_t{1} << width_; }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
  std::complex<double> amplitude(std::uint64_t index) const {
    return amps_[index];
  }
  double norm() const;

  void apply(const Gate& gate);
  void run(const Circuit& circuit);
  /// Negates the amplitudes at the given basis indices (diagonal phases).
  void apply_phase_flips(const std::vector<std::uint64_t>& indices);

  /// Exact marginal probabilities over the listed qubits; element i of the
  /// result is the probability that the register reads i (qubits[j] supplies
  /// bit j).
  std::vector<double> marginal(const std::vector<int>& qubits) const;
  /// Marginal as a bit-string-keyed map (register of at most 20 qubits).
  std::map<std::string, double> probabilities(
      const std::vector<int>& qubits) const;

  /// Samples `shots` outcomes of the listed qubits i.i.d. from the marginal.
  std::map<std::string, std::uint64_t> measure(const std::vector<int>& qubits,
                                               std::uint64_t shots,
                                               std::uint64_t seed) const;
  std::map<std::string, std::uint64_t> measure_all(std::uint64_t shots,
                                                   std::uint64_t seed) const;

 private:
  int width_;
  std::vector<std::complex<double>> amps_;
};

/// Basis-state action of a circuit built from classical-reversible and phase
/// gates only (X/CX/MCX, Z/CZ/MCZ, Reset). Exact: the register stays a basis
/// state throughout, so this is the cheap route for oracle equivalence
/// sweeps. Throws CircuitError on H or RY.
struct BasisEffect {
  std::uint64_t index = 0;
  int phase = 1;  // +1 or -1
};
BasisEffect replay_basis(const Circuit& circuit, std::uint64_t input);

}  // namespace qnv
