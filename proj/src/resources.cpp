#include "qnv/resources.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace qnv {

namespace {

std::uint64_t ceil_log2(std::uint64_t v) {
  if (v == 0) throw std::invalid_argument("ceil_log2 of 0");
  return static_cast<std::uint64_t>(std::bit_width(v - 1));
}

void check_positive(std::uint64_t v, const char* name) {
  if (v == 0) {
    throw std::invalid_argument(std::string(name) + " must be positive");
  }
}

}  // namespace

DataPlaneParams DataPlaneParams::conventional(std::uint64_t headers,
                                              std::uint64_t routers,
                                              std::uint64_t rules_per_router,
                                              std::uint64_t iterates) {
  check_positive(routers, "routers");
  check_positive(rules_per_router, "rules_per_router");
  DataPlaneParams p;
  p.headers = headers;
  p.wildcards = routers * rules_per_router;
  p.ports = routers * rules_per_router;
  p.max_hops = routers;
  p.iterates = iterates;
  return p;
}

ControlPlaneParams ControlPlaneParams::conventional(std::uint64_t routers,
                                                    std::uint64_t edges) {
  check_positive(routers, "routers");
  ControlPlaneParams p;
  p.routers = routers;
  p.edges = edges;
  p.diameter = routers > 1 ? routers - 1 : 1;
  p.iterates = routers;
  return p;
}

std::uint64_t dataplane_qubits(const DataPlaneParams& params,
                               bool midcircuit_reset) {
  check_positive(params.headers, "headers");
  check_positive(params.wildcards, "wildcards");
  check_positive(params.ports, "ports");
  check_positive(params.max_hops, "max_hops");
  const std::uint64_t input = (1 + params.wildcards) * ceil_log2(params.headers);
  const std::uint64_t location_registers =
      midcircuit_reset
          ? (1 + params.ports)
          : params.ports + params.max_hops +
                params.iterates * (2 * params.max_hops - 1);
  return input + location_registers * ceil_log2(params.ports) +
         2 * std::max(params.wildcards, params.ports) + params.ports +
         params.wildcards;
}

std::uint64_t controlplane_qubits(const ControlPlaneParams& params,
                                  bool midcircuit_reset) {
  check_positive(params.routers, "routers");
  check_positive(params.edges, "edges");
  if (midcircuit_reset) {
    return ceil_log2(params.routers) + params.edges + params.routers;
  }
  check_positive(params.diameter, "diameter");
  return ceil_log2(params.routers) +
         params.edges * (params.routers - 1) * params.diameter +
         params.iterates;
}

std::vector<SweepRow> sweep_dataplane_headers(int exponent_from,
                                              int exponent_to,
                                              std::uint64_t routers,
                                              std::uint64_t rules_per_router,
                                              std::uint64_t iterates,
                                              bool midcircuit_reset) {
  if (exponent_from < 1 || exponent_to < exponent_from || exponent_to > 62) {
    throw std::invalid_argument("header exponents must satisfy 1 <= from <= to <= 62");
  }
  std::vector<SweepRow> rows;
  for (int e = exponent_from; e <= exponent_to; ++e) {
    const DataPlaneParams p = DataPlaneParams::conventional(
        std::uint64_t{1} << e, routers, rules_per_router, iterates);
    rows.push_back({static_cast<std::uint64_t>(e),
                    dataplane_qubits(p, midcircuit_reset),
                    midcircuit_reset ? "reset" : "plain"});
  }
  return rows;
}

std::vector<SweepRow> sweep_dataplane_routers(std::uint64_t routers_from,
                                              std::uint64_t routers_to,
                                              std::uint64_t rules_per_router,
                                              std::uint64_t headers,
                                              std::uint64_t iterates,
                                              bool midcircuit_reset) {
  if (routers_from < 1 || routers_to < routers_from) {
    throw std::invalid_argument("router range must satisfy 1 <= from <= to");
  }
  std::vector<SweepRow> rows;
  for (std::uint64_t r = routers_from; r <= routers_to; ++r) {
    const DataPlaneParams p =
        DataPlaneParams::conventional(headers, r, rules_per_router, iterates);
    rows.push_back({r, dataplane_qubits(p, midcircuit_reset),
                    midcircuit_reset ? "reset" : "plain"});
  }
  return rows;
}

std::vector<SweepRow> sweep_controlplane_edges(std::uint64_t edges_from,
                                               std::uint64_t edges_to,
                                               std::uint64_t routers,
                                               bool midcircuit_reset) {
  if (edges_from < 1 || edges_to < edges_from) {
    throw std::invalid_argument("edge range must satisfy 1 <= from <= to");
  }
  std::vector<SweepRow> rows;
  for (std::uint64_t n = edges_from; n <= edges_to; ++n) {
    const ControlPlaneParams p = ControlPlaneParams::conventional(routers, n);
    rows.push_back({n, controlplane_qubits(p, midcircuit_reset),
                    midcircuit_reset ? "reset" : "plain"});
  }
  return rows;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "x,qubits,variant\n";
  for (const SweepRow& row : rows) {
    out += std::to_string(row.x);
    out += ',';
    out += std::to_string(row.qubits);
    out += ',';
    out += row.variant;
    out += '\n';
  }
  return out;
}

}  // namespace qnv
