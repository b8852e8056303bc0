#include "qnv/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "qnv/netmodel.hpp"

namespace qnv {

namespace {

const char* kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::X:
      return "X";
    case GateKind::H:
      return "H";
    case GateKind::Z:
      return "Z";
    case GateKind::RY:
      return "RY";
    case GateKind::CX:
      return "CX";
    case GateKind::CZ:
      return "CZ";
    case GateKind::MCX:
      return "MCX";
    case GateKind::MCZ:
      return "MCZ";
    case GateKind::Reset:
      return "RESET";
  }
  return "?";
}

std::uint64_t control_mask(const Gate& gate) {
  std::uint64_t mask = 0;
  for (int c : gate.controls) mask |= std::uint64_t{1} << c;
  return mask;
}

// 53-bit uniform double in [0, 1).
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Gate Gate::inverted() const {
  if (kind == GateKind::Reset) {
    throw CircuitError("Reset has no inverse");
  }
  Gate inv = *this;
  if (kind == GateKind::RY) inv.angle = -angle;
  return inv;  // X/H/Z and the controlled variants are involutions
}

void validate_gate(const Gate& gate, int width) {
  auto check_index = [width](int q) {
    if (q < 0 || q >= width) {
      throw CircuitError("qubit index " + std::to_string(q) +
                         " out of range for width " + std::to_string(width));
    }
  };
  check_index(gate.target);
  std::uint64_t seen = std::uint64_t{1} << gate.target;
  for (int c : gate.controls) {
    check_index(c);
    const std::uint64_t bit = std::uint64_t{1} << c;
    if (seen & bit) {
      throw CircuitError("controls must be distinct and disjoint from target");
    }
    seen |= bit;
  }
  switch (gate.kind) {
    case GateKind::X:
    case GateKind::H:
    case GateKind::Z:
    case GateKind::RY:
    case GateKind::Reset:
      if (!gate.controls.empty()) {
        throw CircuitError(std::string(kind_name(gate.kind)) +
                           " takes no controls");
      }
      break;
    case GateKind::CX:
    case GateKind::CZ:
      if (gate.controls.size() != 1) {
        throw CircuitError(std::string(kind_name(gate.kind)) +
                           " takes exactly one control");
      }
      break;
    case GateKind::MCX:
    case GateKind::MCZ:
      if (gate.controls.empty()) {
        throw CircuitError(std::string(kind_name(gate.kind)) +
                           " needs at least one control");
      }
      break;
  }
}

void Circuit::push(Gate gate) {
  validate_gate(gate, width);
  gates.push_back(std::move(gate));
}

void Circuit::append(const Circuit& other) {
  if (other.width != width) {
    throw CircuitError("appending circuit of width " +
                       std::to_string(other.width) + " to width " +
                       std::to_string(width));
  }
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

Circuit Circuit::widened(int new_width) const {
  if (new_width < width) {
    throw CircuitError("cannot narrow a circuit");
  }
  Circuit out(new_width);
  out.gates = gates;
  return out;
}

Circuit Circuit::inverted() const {
  Circuit out(width);
  out.gates.reserve(gates.size());
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    out.gates.push_back(it->inverted());
  }
  return out;
}

std::string Circuit::dump() const {
  std::string out;
  for (const Gate& gate : gates) {
    out += kind_name(gate.kind);
    out += ' ';
    out += std::to_string(gate.target);
    if (!gate.controls.empty()) {
      out += " [";
      for (std::size_t i = 0; i < gate.controls.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(gate.controls[i]);
      }
      out += ']';
    }
    if (gate.kind == GateKind::RY) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), " %.17g", gate.angle);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

StateVector::StateVector(int width) : width_(width) {
  if (width < 1) throw CircuitError("state needs at least one qubit");
  if (width > kMaxSimQubits) {
    throw ResourceLimitError("state of " + std::to_string(width) +
                             " qubits exceeds the simulator ceiling of " +
                             std::to_string(kMaxSimQubits));
  }
  amps_.assign(std::uint64_t{1} << width, {0.0, 0.0});
  amps_[0] = {1.0, 0.0};
}

StateVector StateVector::basis(int width, std::uint64_t index) {
  StateVector s(width);
  if (index >= s.size()) throw CircuitError("basis index out of range");
  s.amps_[0] = {0.0, 0.0};
  s.amps_[index] = {1.0, 0.0};
  return s;
}

double StateVector::norm() const {
  double total = 0.0;
  for (const auto& a : amps_) total += std::norm(a);
  return total;
}

void StateVector::apply(const Gate& gate) {
  validate_gate(gate, width_);
  const std::uint64_t n = size();
  const std::uint64_t tmask = std::uint64_t{1} << gate.target;
  const std::uint64_t cmask = control_mask(gate);

  switch (gate.kind) {
    case GateKind::X:
    case GateKind::CX:
    case GateKind::MCX: {
      const std::uint64_t half = tmask;
      for (std::uint64_t base = 0; base < n; base += half << 1) {
        for (std::uint64_t i = base; i < base + half; ++i) {
          if ((i & cmask) == cmask) std::swap(amps_[i], amps_[i | tmask]);
        }
      }
      return;
    }
    case GateKind::Z:
    case GateKind::CZ:
    case GateKind::MCZ: {
      const std::uint64_t all = cmask | tmask;
      for (std::uint64_t i = 0; i < n; ++i) {
        if ((i & all) == all) amps_[i] = -amps_[i];
      }
      return;
    }
    case GateKind::H: {
      constexpr double inv_sqrt2 = 0.70710678118654752440;
      const std::uint64_t half = tmask;
      for (std::uint64_t base = 0; base < n; base += half << 1) {
        for (std::uint64_t i = base; i < base + half; ++i) {
          const auto a = amps_[i];
          const auto b = amps_[i | tmask];
          amps_[i] = (a + b) * inv_sqrt2;
          amps_[i | tmask] = (a - b) * inv_sqrt2;
        }
      }
      return;
    }
    case GateKind::RY: {
      const double c = std::cos(gate.angle / 2.0);
      const double s = std::sin(gate.angle / 2.0);
      const std::uint64_t half = tmask;
      for (std::uint64_t base = 0; base < n; base += half << 1) {
        for (std::uint64_t i = base; i < base + half; ++i) {
          const auto a = amps_[i];
          const auto b = amps_[i | tmask];
          amps_[i] = a * c - b * s;
          amps_[i | tmask] = a * s + b * c;
        }
      }
      return;
    }
    case GateKind::Reset: {
      double p0 = 0.0;
      for (std::uint64_t i = 0; i < n; ++i) {
        if (!(i & tmask)) p0 += std::norm(amps_[i]);
      }
      if (p0 < 1e-12) {
        throw CircuitError("Reset on qubit " + std::to_string(gate.target) +
                           " with zero probability of 0");
      }
      const double scale = 1.0 / std::sqrt(p0);
      for (std::uint64_t i = 0; i < n; ++i) {
        if (i & tmask) {
          amps_[i] = {0.0, 0.0};
        } else {
          amps_[i] *= scale;
        }
      }
      return;
    }
  }
}

void StateVector::apply_phase_flips(const std::vector<std::uint64_t>& indices) {
  for (std::uint64_t i : indices) {
    if (i >= size()) throw CircuitError("phase-flip index out of range");
    amps_[i] = -amps_[i];
  }
}

void StateVector::run(const Circuit& circuit) {
  if (circuit.width != width_) {
    throw CircuitError("circuit width " + std::to_string(circuit.width) +
                       " does not match state width " +
                       std::to_string(width_));
  }
  for (const Gate& gate : circuit.gates) apply(gate);
}

namespace {

void check_register(const std::vector<int>& qubits, int width) {
  if (qubits.empty()) throw CircuitError("register must be nonempty");
  std::uint64_t seen = 0;
  for (int q : qubits) {
    if (q < 0 || q >= width) {
      throw CircuitError("register qubit " + std::to_string(q) +
                         " out of range");
    }
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (seen & bit) throw CircuitError("register qubits must be distinct");
    seen |= bit;
  }
}

bool is_full_identity_register(const std::vector<int>& qubits, int width) {
  if (static_cast<int>(qubits.size()) != width) return false;
  for (int j = 0; j < width; ++j) {
    if (qubits[static_cast<std::size_t>(j)] != j) return false;
  }
  return true;
}

}  // namespace

std::vector<double> StateVector::marginal(const std::vector<int>& qubits)
    const {
  check_register(qubits, width_);
  const int r = static_cast<int>(qubits.size());
  std::vector<double> probs(std::uint64_t{1} << r, 0.0);
  if (is_full_identity_register(qubits, width_)) {
    for (std::uint64_t i = 0; i < size(); ++i) probs[i] = std::norm(amps_[i]);
    return probs;
  }
  for (std::uint64_t i = 0; i < size(); ++i) {
    std::uint64_t key = 0;
    for (int j = 0; j < r; ++j) {
      key |= ((i >> qubits[static_cast<std::size_t>(j)]) & 1ULL) << j;
    }
    probs[key] += std::norm(amps_[i]);
  }
  return probs;
}

std::map<std::string, double> StateVector::probabilities(
    const std::vector<int>& qubits) const {
  if (qubits.size() > 20) {
    throw CircuitError("probability map limited to 20-qubit registers");
  }
  const std::vector<double> probs = marginal(qubits);
  const int r = static_cast<int>(qubits.size());
  std::map<std::string, double> out;
  for (std::uint64_t v = 0; v < probs.size(); ++v) {
    out[format_bits(v, r)] = probs[v];
  }
  return out;
}

std::map<std::string, std::uint64_t> StateVector::measure(
    const std::vector<int>& qubits, std::uint64_t shots,
    std::uint64_t seed) const {
  if (shots < 1) throw CircuitError("shots must be >= 1");
  const std::vector<double> probs = marginal(qubits);
  const int r = static_cast<int>(qubits.size());

  std::mt19937_64 rng(seed);
  std::vector<double> draws(shots);
  for (std::uint64_t s = 0; s < shots; ++s) draws[s] = next_uniform(rng);
  std::sort(draws.begin(), draws.end());

  // One cumulative sweep over the bins; leftover draws past the accumulated
  // mass (floating-point shortfall) land in the last populated bin.
  std::map<std::string, std::uint64_t> hist;
  std::uint64_t next_draw = 0;
  double cum = 0.0;
  std::uint64_t last_populated = 0;
  bool any = false;
  for (std::uint64_t v = 0; v < probs.size() && next_draw < shots; ++v) {
    if (probs[v] <= 0.0) continue;
    cum += probs[v];
    last_populated = v;
    any = true;
    std::uint64_t count = 0;
    while (next_draw < shots && draws[next_draw] < cum) {
      ++count;
      ++next_draw;
    }
    if (count) hist[format_bits(v, r)] += count;
  }
  if (next_draw < shots) {
    if (!any) {
      // Only possible for a zero state, which the invariants exclude.
      throw CircuitError("cannot sample from an unnormalized zero state");
    }
    hist[format_bits(last_populated, r)] += shots - next_draw;
  }
  return hist;
}

std::map<std::string, std::uint64_t> StateVector::measure_all(
    std::uint64_t shots, std::uint64_t seed) const {
  std::vector<int> all(static_cast<std::size_t>(width_));
  for (int q = 0; q < width_; ++q) all[static_cast<std::size_t>(q)] = q;
  return measure(all, shots, seed);
}

BasisEffect replay_basis(const Circuit& circuit, std::uint64_t input) {
  if (circuit.width < 1 || circuit.width > 63) {
    throw CircuitError("replay supports 1..63 qubits");
  }
  if (input >> circuit.width) {
    throw CircuitError("basis index out of range");
  }
  BasisEffect eff{input, 1};
  for (const Gate& gate : circuit.gates) {
    validate_gate(gate, circuit.width);
    const std::uint64_t tmask = std::uint64_t{1} << gate.target;
    const std::uint64_t cmask = control_mask(gate);
    switch (gate.kind) {
      case GateKind::X:
      case GateKind::CX:
      case GateKind::MCX:
        if ((eff.index & cmask) == cmask) eff.index ^= tmask;
        break;
      case GateKind::Z:
      case GateKind::CZ:
      case GateKind::MCZ:
        if ((eff.index & (cmask | tmask)) == (cmask | tmask)) {
          eff.phase = -eff.phase;
        }
        break;
      case GateKind::Reset:
        if (eff.index & tmask) {
          throw CircuitError("Reset on qubit " + std::to_string(gate.target) +
                             " with zero probability of 0");
        }
        break;
      case GateKind::H:
      case GateKind::RY:
        throw CircuitError("replay requires classical-reversible gates only");
    }
  }
  return eff;
}

}  // namespace qnv
