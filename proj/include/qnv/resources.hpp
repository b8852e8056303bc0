#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Closed-form qubit-count estimates for the compiled verification circuits,
// as a function of problem size, plus the parameter sweeps behind the
// scaling curves. All logarithms are base-2 ceilings. These formulas
// describe the reference circuit architecture, not the ancilla accounting
// of this repo's gate-level compilers.

namespace qnv {

struct DataPlaneParams {
  std::uint64_t headers = 0;    // n: number of possible headers
  std::uint64_t wildcards = 0;  // l: unique wildcard expressions
  std::uint64_t ports = 0;      // P: unique ports
  std::uint64_t max_hops = 0;   // k
  std::uint64_t iterates = 0;   // G

  /// Sweep convention: l = P = routers * rules_per_router, k = routers.
  static DataPlaneParams conventional(std::uint64_t headers,
                                      std::uint64_t routers,
                                      std::uint64_t rules_per_router,
                                      std::uint64_t iterates);
};

struct ControlPlaneParams {
  std::uint64_t routers = 0;   // R
  std::uint64_t edges = 0;     // n: input bits
  std::uint64_t diameter = 0;  // D
  std::uint64_t iterates = 0;  // G

  /// Sweep convention: D = R - 1, G = R.
  static ControlPlaneParams conventional(std::uint64_t routers,
                                         std::uint64_t edges);
};

/// (1+l)ceil(log n) + (P + k + G(2k-1))ceil(log P) + 2max(l,P) + P + l,
/// or with mid-circuit reset (1+l)ceil(log n) + (1+P)ceil(log P)
/// + 2max(l,P) + P + l.
std::uint64_t dataplane_qubits(const DataPlaneParams& params,
                               bool midcircuit_reset);

/// ceil(log R) + n(R-1)D + G, or with mid-circuit reset ceil(log R) + n + R.
std::uint64_t controlplane_qubits(const ControlPlaneParams& params,
                                  bool midcircuit_reset);

struct SweepRow {
  std::uint64_t x = 0;
  std::uint64_t qubits = 0;
  std::string variant;
};

/// Qubits vs header-count exponent (x = log2 headers), one row per exponent.
std::vector<SweepRow> sweep_dataplane_headers(int exponent_from,
                                              int exponent_to,
                                              std::uint64_t routers,
                                              std::uint64_t rules_per_router,
                                              std::uint64_t iterates,
                                              bool midcircuit_reset);

/// Qubits vs router count at fixed rules per router and header count.
std::vector<SweepRow> sweep_dataplane_routers(std::uint64_t routers_from,
                                              std::uint64_t routers_to,
                                              std::uint64_t rules_per_router,
                                              std::uint64_t headers,
                                              std::uint64_t iterates,
                                              bool midcircuit_reset);

/// Qubits vs edge count under the control-plane sweep convention.
std::vector<SweepRow> sweep_controlplane_edges(std::uint64_t edges_from,
                                               std::uint64_t edges_to,
                                               std::uint64_t routers,
                                               bool midcircuit_reset);

/// Header row `x,qubits,variant`, then one row per sweep point.
std::string to_csv(const std::vector<SweepRow>& rows);

}  // namespace qnv
