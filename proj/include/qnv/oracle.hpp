#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <vector>

#include "qnv/circuit.hpp"
#include "qnv/classical.hpp"

// Phase-oracle compilation: turns the verifier f into a circuit (or phase
// table) acting as |x> -> (-1)^f(x) |x>, with ancillas restored to |0...0>.
//
// Two backends:
//  - Diagonal: exact phase table from one classical sweep of all 2^n
//    instances. Semantic reference; always available within the brute-force
//    limit.
//  - GateLevel: constructive compilation of the instance generator, protocol
//    emulation, and property check into reversible gates. Demonstrates the
//    pipeline; equivalence-tested against the Diagonal backend.

namespace qnv {

/// Instances already confirmed as solutions and to be rejected by f so that
/// repeated searches surface new ones.
struct ExclusionSet {
  std::set<std::uint64_t> seen;

  ExclusionSet() = default;
  explicit ExclusionSet(std::set<std::uint64_t> values)
      : seen(std::move(values)) {}
  bool contains(std::uint64_t x) const { return seen.count(x) != 0; }
};

struct CompileOptions {
  /// Reclaim per-hop scratch ancillas with Reset instead of allocating fresh
  /// pools per hop block.
  bool midcircuit_reset = true;
  int max_qubits = kMaxSimQubits;
};

enum class OracleBackend { Diagonal, GateLevel };

struct CompiledOracle {
  OracleBackend backend = OracleBackend::Diagonal;
  int input_bits = 0;
  int total_qubits = 0;

  /// Diagonal backend: sorted instances with phase -1 (solutions minus
  /// exclusions).
  std::vector<std::uint64_t> marked;
  /// GateLevel backend: full oracle circuit over total_qubits.
  Circuit circuit;

  std::shared_ptr<const Verifier> verifier;
  std::vector<std::uint64_t> exclusions;  // sorted

  std::vector<int> input_register() const;
  std::vector<int> ancilla_register() const;
  bool excluded(std::uint64_t x) const;
  /// Classical truth of the compiled predicate: f(x) = 1 and x not excluded.
  bool marks(std::uint64_t x) const;
  /// Sorted marked set (computed classically for the GateLevel backend).
  std::vector<std::uint64_t> marked_set() const;

  /// Applies the phase action to a state of exactly total_qubits qubits.
  void apply(StateVector& state) const;
};

/// Phase table from one classical sweep of 2^n evaluations.
CompiledOracle compile_diagonal(const Verifier& verifier,
                                const ExclusionSet& exclusions = {},
                                int limit = kBruteForceLimit);

/// Hop-bounded reachability (ReachWithin) compiled to gates: per-hop rule
/// blocks over header/location registers, destination comparator, phase
/// flip, full uncompute. The destination is absorbing, matching the
/// early-stop semantics of the classical walk.
CompiledOracle compile_gate_dataplane(const DataPlaneNetwork& net,
                                      const Property& prop,
                                      const CompileOptions& options = {});

/// Disconnection compiled to gates: R-1 rounds of frontier expansion over
/// the edge bits, optional failure-count comparator, phase flip on
/// (not reached(dst)) and (failures <= max_failures), full uncompute.
CompiledOracle compile_gate_controlplane(const ControlPlaneNetwork& net,
                                         const Property& prop,
                                         const CompileOptions& options = {});

/// Oracle with additional instances rejected. Members that are not actual
/// solutions are ignored (their phase is already +1). GateLevel oracles get
/// one phase flip over the input register per newly excluded solution.
CompiledOracle add_exclusion(const CompiledOracle& oracle,
                             const ExclusionSet& seen);

}  // namespace qnv
