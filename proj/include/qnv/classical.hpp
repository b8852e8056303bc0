#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "qnv/netmodel.hpp"

// Classical implementation of the verifier f: instance generation, protocol
// emulation, and the property check, plus the O(2^n) brute-force baseline.
// This is the ground truth every quantum result is confirmed against.

namespace qnv {

enum class TraceEnd { ReachedDestination, Stuck, HopBudgetExhausted };

/// Record of a packet walk: routers visited and the header after each hop.
/// hops[0] is the source; headers[i] is the header held at hops[i].
struct PathTrace {
  std::vector<RouterId> hops;
  std::vector<std::uint64_t> headers;
  TraceEnd terminated = TraceEnd::Stuck;
};

/// Applies the first matching rule at `at`; nullopt when the packet is stuck.
std::optional<std::pair<RouterId, std::uint64_t>> forward_step(
    const DataPlaneNetwork& net, RouterId at, std::uint64_t header);

/// Walks forward_step from src for up to k hops, stopping early when stuck
/// or on arriving at `dst` (when supplied; arrival at hop 0 counts).
PathTrace simulate_dataplane(const DataPlaneNetwork& net, RouterId src,
                             std::uint64_t header, int hop_budget,
                             std::optional<RouterId> dst = std::nullopt);

/// Shortest-path next hops per (router, destination) over the operational
/// edges. Unreachable pairs hold no entry.
class RoutingTable {
 public:
  explicit RoutingTable(int router_count);

  std::optional<RouterId> next_hop(RouterId from, RouterId dst) const;
  bool reachable(RouterId from, RouterId dst) const;
  void set_next_hop(RouterId from, RouterId dst, RouterId via);

 private:
  int router_count_;
  std::vector<RouterId> next_;  // -1 = unreachable
};

/// Removes failed edges and computes per-destination shortest-path trees
/// (Dijkstra, ties broken toward the lowest-encoded neighbor).
RoutingTable igp_routes(const ControlPlaneNetwork& net,
                        const FailureInstance& fail);

/// A network/property pair: the verifier f over n-bit instances.
struct Verifier {
  std::variant<DataPlaneNetwork, ControlPlaneNetwork> network;
  Property property;

  Verifier(DataPlaneNetwork net, Property prop);
  Verifier(ControlPlaneNetwork net, Property prop);

  /// Number of input bits n (header width, or edge count).
  int input_bits() const;
  bool is_dataplane() const {
    return std::holds_alternative<DataPlaneNetwork>(network);
  }
  bool evaluate(std::uint64_t instance) const;
};

bool evaluate(const DataPlaneNetwork& net, const Property& prop,
              std::uint64_t instance);
bool evaluate(const ControlPlaneNetwork& net, const Property& prop,
              std::uint64_t instance);

inline constexpr int kBruteForceLimit = 24;

/// Exact solution set { x : f(x) = 1 } in ascending order.
/// Throws ConfigError when n exceeds the limit.
std::vector<std::uint64_t> brute_force(const Verifier& verifier,
                                       int limit = kBruteForceLimit);

}  // namespace qnv
