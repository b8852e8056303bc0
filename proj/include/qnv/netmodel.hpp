#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Network models and the properties checked against them. A verification
// problem is an n-bit instance space (packet headers for the data plane,
// link-failure combinations for the control plane) plus a property; the
// classical verifier over those instances lives in classical.hpp.
//
// Bit strings are displayed little-endian: bit i of an instance is printed
// at position i from the right, so "011" has bits 0 and 1 set.

namespace qnv {

/// Configuration / validation failure (malformed document, unknown router,
/// width mismatch).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense router encoding: position in the network's router list.
using RouterId = int;

std::string format_bits(std::uint64_t value, int width);

/// Parses a bit string in display order (leftmost char = highest bit).
/// Throws ConfigError on characters outside {0,1}.
std::uint64_t parse_bits(const std::string& text);

/// Fixed-width packet header.
struct Header {
  std::uint64_t value = 0;
  int width = 0;

  std::string str() const { return format_bits(value, width); }
};

/// Match pattern over {0,1,*}; '*' matches either bit value.
struct WildcardPattern {
  std::uint64_t mask = 0;   // 1 where the symbol is literal
  std::uint64_t value = 0;  // literal bits (subset of mask)
  int width = 0;

  static WildcardPattern parse(const std::string& symbols);
  std::string str() const;

  bool operator==(const WildcardPattern&) const = default;
};

/// True iff every non-* symbol equals the corresponding header bit.
/// Throws ConfigError on width mismatch.
bool wildcard_match(const WildcardPattern& pattern, const Header& header);

/// Per-bit rewrite applied when a rule forwards: keep, force 0, force 1.
/// Text form is a string over {'.','0','1'} with '.' = keep.
struct RewriteSpec {
  std::uint64_t force_mask = 0;
  std::uint64_t force_value = 0;
  int width = 0;

  static RewriteSpec parse(const std::string& actions);
  std::uint64_t apply(std::uint64_t header) const {
    return (header & ~force_mask) | force_value;
  }
  bool is_identity() const { return force_mask == 0; }
  std::string str() const;

  bool operator==(const RewriteSpec&) const = default;
};

struct ForwardingRule {
  RouterId router = 0;
  WildcardPattern match;
  RouterId next_hop = 0;
  RewriteSpec rewrite;

  bool operator==(const ForwardingRule&) const = default;
};

/// Forwarding network: instances are packet headers of width header_width.
/// Rule order is declaration order; the first rule at the packet's router
/// whose pattern matches wins, and a packet with no matching rule stays put.
struct DataPlaneNetwork {
  int header_width = 0;
  std::vector<std::string> routers;
  std::vector<ForwardingRule> rules;
  RouterId source = 0;
  std::optional<RouterId> destination;

  int router_count() const { return static_cast<int>(routers.size()); }
  RouterId router_index(const std::string& name) const;
  const std::string& router_name(RouterId id) const;
  /// Bits needed for a location register (ceil(log2 R), at least 1).
  int location_bits() const;

  bool operator==(const DataPlaneNetwork&) const = default;
};

struct Edge {
  RouterId a = 0;
  RouterId b = 0;
  int weight = 1;

  bool operator==(const Edge&) const = default;
};

/// Weighted undirected graph whose edges can fail; instance bit i governs
/// edge i (1 = operational, 0 = failed).
struct ControlPlaneNetwork {
  std::vector<std::string> routers;
  std::vector<Edge> edges;

  int router_count() const { return static_cast<int>(routers.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  RouterId router_index(const std::string& name) const;
  const std::string& router_name(RouterId id) const;

  bool operator==(const ControlPlaneNetwork&) const = default;
};

/// Link-failure combination; width equals the network's edge count.
struct FailureInstance {
  std::uint64_t bits = 0;
  int width = 0;

  bool link_up(int edge) const { return (bits >> edge) & 1ULL; }
  int failed_count() const;
  std::string str() const { return format_bits(bits, width); }
};

enum class PropertyKind {
  ReachWithin,     // data plane: dst reached from src within k hops
  ExceedsHops,     // data plane: still traveling after k hops
  AvoidsWaypoint,  // control plane: dst reached without visiting waypoint
  Disconnected,    // control plane: dst unreachable from src
};

/// The predicate the verifier checks. Router references are stored by name
/// and resolved against a concrete network at evaluation time.
struct Property {
  PropertyKind kind = PropertyKind::ReachWithin;
  std::string src;
  std::string dst;
  std::string waypoint;
  int hop_bound = 1;      // k, for the data-plane kinds
  int max_failures = 0;   // failure-count cutoff, for the control-plane kinds

  static Property reach_within(std::string src, std::string dst, int k);
  static Property exceeds_hops(std::string src, int k);
  static Property avoids_waypoint(std::string src, std::string dst,
                                  std::string waypoint, int max_failures);
  static Property disconnected(std::string src, std::string dst,
                               int max_failures);

  bool is_dataplane() const {
    return kind == PropertyKind::ReachWithin ||
           kind == PropertyKind::ExceedsHops;
  }
  bool is_controlplane() const { return !is_dataplane(); }

  std::string describe() const;

  bool operator==(const Property&) const = default;
};

// JSON configuration documents (schemas in the README).
DataPlaneNetwork parse_dataplane(const std::string& text);
ControlPlaneNetwork parse_controlplane(const std::string& text);
Property parse_property(const std::string& text);

std::string serialize(const DataPlaneNetwork& net);
std::string serialize(const ControlPlaneNetwork& net);
std::string serialize(const Property& prop);

}  // namespace qnv
