#include "qnv/classical.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <thread>

namespace qnv {

std::optional<std::pair<RouterId, std::uint64_t>> forward_step(
    const DataPlaneNetwork& net, RouterId at, std::uint64_t header) {
  if (at < 0 || at >= net.router_count()) {
    throw ConfigError("router id out of range");
  }
  const Header h{header, net.header_width};
  for (const ForwardingRule& rule : net.rules) {
    if (rule.router != at) continue;
    if (wildcard_match(rule.match, h)) {
      return std::make_pair(rule.next_hop, rule.rewrite.apply(header));
    }
  }
  return std::nullopt;
}

PathTrace simulate_dataplane(const DataPlaneNetwork& net, RouterId src,
                             std::uint64_t header, int hop_budget,
                             std::optional<RouterId> dst) {
  if (hop_budget < 1) throw ConfigError("hop budget must be >= 1");
  PathTrace trace;
  trace.hops.push_back(src);
  trace.headers.push_back(header);
  if (dst && src == *dst) {
    trace.terminated = TraceEnd::ReachedDestination;
    return trace;
  }
  RouterId at = src;
  for (int hop = 0; hop < hop_budget; ++hop) {
    const auto step = forward_step(net, at, header);
    if (!step) {
      trace.terminated = TraceEnd::Stuck;
      return trace;
    }
    at = step->first;
    header = step->second;
    trace.hops.push_back(at);
    trace.headers.push_back(header);
    if (dst && at == *dst) {
      trace.terminated = TraceEnd::ReachedDestination;
      return trace;
    }
  }
  trace.terminated = TraceEnd::HopBudgetExhausted;
  return trace;
}

RoutingTable::RoutingTable(int router_count)
    : router_count_(router_count),
      next_(static_cast<std::size_t>(router_count) *
                static_cast<std::size_t>(router_count),
            -1) {}

std::optional<RouterId> RoutingTable::next_hop(RouterId from,
                                               RouterId dst) const {
  const RouterId via = next_[static_cast<std::size_t>(from) *
                                 static_cast<std::size_t>(router_count_) +
                             static_cast<std::size_t>(dst)];
  if (via < 0) return std::nullopt;
  return via;
}

bool RoutingTable::reachable(RouterId from, RouterId dst) const {
  return from == dst || next_hop(from, dst).has_value();
}

void RoutingTable::set_next_hop(RouterId from, RouterId dst, RouterId via) {
  next_[static_cast<std::size_t>(from) *
            static_cast<std::size_t>(router_count_) +
        static_cast<std::size_t>(dst)] = via;
}

RoutingTable igp_routes(const ControlPlaneNetwork& net,
                        const FailureInstance& fail) {
  if (fail.width != net.edge_count()) {
    throw ConfigError("failure instance width does not match edge count");
  }
  const int R = net.router_count();
  RoutingTable table(R);

  // Adjacency over operational edges only.
  std::vector<std::vector<std::pair<RouterId, int>>> adj(
      static_cast<std::size_t>(R));
  for (int e = 0; e < net.edge_count(); ++e) {
    if (!fail.link_up(e)) continue;
    const Edge& edge = net.edges[static_cast<std::size_t>(e)];
    adj[static_cast<std::size_t>(edge.a)].emplace_back(edge.b, edge.weight);
    adj[static_cast<std::size_t>(edge.b)].emplace_back(edge.a, edge.weight);
  }

  constexpr long long kInf = std::numeric_limits<long long>::max();
  std::vector<long long> dist(static_cast<std::size_t>(R));
  for (RouterId dst = 0; dst < R; ++dst) {
    std::fill(dist.begin(), dist.end(), kInf);
    dist[static_cast<std::size_t>(dst)] = 0;
    using Item = std::pair<long long, RouterId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.emplace(0, dst);
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (d > dist[static_cast<std::size_t>(v)]) continue;
      for (const auto& [u, w] : adj[static_cast<std::size_t>(v)]) {
        if (d + w < dist[static_cast<std::size_t>(u)]) {
          dist[static_cast<std::size_t>(u)] = d + w;
          heap.emplace(d + w, u);
        }
      }
    }
    table.set_next_hop(dst, dst, dst);
    for (RouterId v = 0; v < R; ++v) {
      if (v == dst || dist[static_cast<std::size_t>(v)] == kInf) continue;
      // Lowest-encoded neighbor on a shortest path toward dst.
      RouterId best = -1;
      for (const auto& [u, w] : adj[static_cast<std::size_t>(v)]) {
        if (dist[static_cast<std::size_t>(u)] == kInf) continue;
        if (dist[static_cast<std::size_t>(u)] + w ==
            dist[static_cast<std::size_t>(v)]) {
          if (best < 0 || u < best) best = u;
        }
      }
      table.set_next_hop(v, dst, best);
    }
  }
  return table;
}

namespace {

bool evaluate_controlplane(const ControlPlaneNetwork& net,
                           const Property& prop, std::uint64_t instance) {
  const FailureInstance fail{instance, net.edge_count()};
  // Cutoff first: too many failures means the instance is never marked.
  if (fail.failed_count() > prop.max_failures) return false;
  const RouterId src = net.router_index(prop.src);
  const RouterId dst = net.router_index(prop.dst);
  const RoutingTable table = igp_routes(net, fail);
  if (prop.kind == PropertyKind::Disconnected) {
    return !table.reachable(src, dst);
  }
  // AvoidsWaypoint: walk the traced shortest path from src.
  const RouterId waypoint = net.router_index(prop.waypoint);
  RouterId at = src;
  while (true) {
    if (at == dst) return true;
    if (at == waypoint) return false;
    const auto via = table.next_hop(at, dst);
    if (!via) return false;  // dst unreachable
    at = *via;
  }
}

bool evaluate_dataplane(const DataPlaneNetwork& net, const Property& prop,
                        std::uint64_t instance) {
  if (instance >> net.header_width) {
    throw ConfigError("instance exceeds header width");
  }
  const RouterId src = net.router_index(prop.src);
  if (prop.kind == PropertyKind::ReachWithin) {
    const RouterId dst = net.router_index(prop.dst);
    const PathTrace trace =
        simulate_dataplane(net, src, instance, prop.hop_bound, dst);
    return trace.terminated == TraceEnd::ReachedDestination;
  }
  // ExceedsHops: still traveling after k hops. The network's own destination,
  // when present, absorbs packets that arrive there.
  const PathTrace trace = simulate_dataplane(net, src, instance,
                                             prop.hop_bound, net.destination);
  return trace.terminated == TraceEnd::HopBudgetExhausted;
}

}  // namespace

bool evaluate(const DataPlaneNetwork& net, const Property& prop,
              std::uint64_t instance) {
  if (!prop.is_dataplane()) {
    throw ConfigError("property '" + prop.describe() +
                      "' does not apply to a data-plane network");
  }
  return evaluate_dataplane(net, prop, instance);
}

bool evaluate(const ControlPlaneNetwork& net, const Property& prop,
              std::uint64_t instance) {
  if (!prop.is_controlplane()) {
    throw ConfigError("property '" + prop.describe() +
                      "' does not apply to a control-plane network");
  }
  if (net.edge_count() < 1) {
    throw ConfigError("control-plane verification needs at least one edge");
  }
  if (instance >> net.edge_count()) {
    throw ConfigError("instance exceeds edge count");
  }
  return evaluate_controlplane(net, prop, instance);
}

Verifier::Verifier(DataPlaneNetwork net, Property prop)
    : network(std::move(net)), property(std::move(prop)) {
  const auto& dp = std::get<DataPlaneNetwork>(network);
  if (!property.is_dataplane()) {
    throw ConfigError("property '" + property.describe() +
                      "' does not apply to a data-plane network");
  }
  // Resolve names now so bad references fail at construction.
  dp.router_index(property.src);
  if (property.kind == PropertyKind::ReachWithin) {
    dp.router_index(property.dst);
  }
}

Verifier::Verifier(ControlPlaneNetwork net, Property prop)
    : network(std::move(net)), property(std::move(prop)) {
  const auto& cp = std::get<ControlPlaneNetwork>(network);
  if (!property.is_controlplane()) {
    throw ConfigError("property '" + property.describe() +
                      "' does not apply to a control-plane network");
  }
  if (cp.edge_count() < 1) {
    throw ConfigError("control-plane verification needs at least one edge");
  }
  cp.router_index(property.src);
  cp.router_index(property.dst);
  if (property.kind == PropertyKind::AvoidsWaypoint) {
    cp.router_index(property.waypoint);
  }
}

int Verifier::input_bits() const {
  if (const auto* dp = std::get_if<DataPlaneNetwork>(&network)) {
    return dp->header_width;
  }
  return std::get<ControlPlaneNetwork>(network).edge_count();
}

bool Verifier::evaluate(std::uint64_t instance) const {
  if (const auto* dp = std::get_if<DataPlaneNetwork>(&network)) {
    return qnv::evaluate(*dp, property, instance);
  }
  return qnv::evaluate(std::get<ControlPlaneNetwork>(network), property,
                       instance);
}

std::vector<std::uint64_t> brute_force(const Verifier& verifier, int limit) {
  const int n = verifier.input_bits();
  if (n > limit) {
    throw ConfigError("instance space 2^" + std::to_string(n) +
                      " exceeds the brute-force limit 2^" +
                      std::to_string(limit));
  }
  const std::uint64_t total = 1ULL << n;

  // Partition the domain into contiguous ranges; concatenating the per-range
  // results in range order keeps the output ascending and deterministic.
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (total < (1ULL << 14)) workers = 1;
  workers = std::min<unsigned>(workers, 8);

  std::vector<std::vector<std::uint64_t>> parts(workers);
  std::vector<std::thread> threads;
  const std::uint64_t chunk = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = w * chunk;
    const std::uint64_t end = std::min(total, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&verifier, &parts, w, begin, end] {
      for (std::uint64_t x = begin; x < end; ++x) {
        if (verifier.evaluate(x)) parts[w].push_back(x);
      }
    });
  }
  for (std::thread& t : threads) t.join();

  std::vector<std::uint64_t> solutions;
  for (const auto& part : parts) {
    solutions.insert(solutions.end(), part.begin(), part.end());
  }
  return solutions;
}

}  // namespace qnv
