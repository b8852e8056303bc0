#include "qnv/classical.hpp"

#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "random_nets.hpp"

using namespace qnv;
using qnv::testing::naive_solutions;
using qnv::testing::toy_dataplane;
using qnv::testing::triangle_controlplane;

namespace {

DataPlaneNetwork self_loop_net() {
  return parse_dataplane(R"({
    "header_width": 2,
    "routers": ["A", "B"],
    "source": "A",
    "rules": [ { "router": "A", "match": "**", "next_hop": "A" } ]
  })");
}

}  // namespace

TEST_CASE("forward_step applies the first matching rule") {
  const DataPlaneNetwork net = toy_dataplane();
  const RouterId a = net.router_index("A");
  const RouterId b = net.router_index("B");

  const auto step = forward_step(net, a, 0b00);
  REQUIRE(step.has_value());
  CHECK(step->first == b);
  CHECK(step->second == 0b00);

  CHECK_FALSE(forward_step(net, a, 0b01).has_value());

  const DataPlaneNetwork empty = parse_dataplane(R"({
    "header_width": 2, "routers": ["A"], "source": "A", "rules": []
  })");
  CHECK_FALSE(forward_step(empty, 0, 0b11).has_value());
}

TEST_CASE("first-match priority respects declaration order") {
  const DataPlaneNetwork net = parse_dataplane(R"({
    "header_width": 2,
    "routers": ["A", "B", "C"],
    "source": "A",
    "rules": [
      { "router": "A", "match": "*1", "next_hop": "B" },
      { "router": "A", "match": "**", "next_hop": "C" }
    ]
  })");
  CHECK(forward_step(net, 0, 0b01)->first == net.router_index("B"));
  CHECK(forward_step(net, 0, 0b00)->first == net.router_index("C"));
}

TEST_CASE("rewrites are applied on forwarding") {
  const DataPlaneNetwork net = parse_dataplane(R"({
    "header_width": 2,
    "routers": ["A", "B"],
    "source": "A",
    "rules": [ { "router": "A", "match": "*1", "next_hop": "B", "rewrite": "10" } ]
  })");
  const auto step = forward_step(net, 0, 0b01);
  REQUIRE(step.has_value());
  CHECK(step->second == 0b10);
}

TEST_CASE("simulate_dataplane walks, gets stuck, or exhausts the budget") {
  const DataPlaneNetwork net = toy_dataplane();
  const RouterId a = net.router_index("A");
  const RouterId c = net.router_index("C");

  const PathTrace reach = simulate_dataplane(net, a, 0b00, 2, c);
  CHECK(reach.hops == std::vector<RouterId>{0, 1, 2});
  CHECK(reach.terminated == TraceEnd::ReachedDestination);

  const PathTrace stuck = simulate_dataplane(net, a, 0b01, 2, c);
  CHECK(stuck.hops == std::vector<RouterId>{0});
  CHECK(stuck.terminated == TraceEnd::Stuck);

  const PathTrace loop = simulate_dataplane(self_loop_net(), 0, 0b00, 1);
  CHECK(loop.hops == std::vector<RouterId>{0, 0});
  CHECK(loop.terminated == TraceEnd::HopBudgetExhausted);

  CHECK_THROWS_AS(simulate_dataplane(net, a, 0, 0), ConfigError);
}

TEST_CASE("path traces never exceed hop budget + 1 routers") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const DataPlaneNetwork net = toy_dataplane();
    const int k = 1 + static_cast<int>(rng() % 6);
    const std::uint64_t h = rng() % 4;
    const PathTrace trace = simulate_dataplane(net, 0, h, k, 2);
    CHECK(trace.hops.size() <= static_cast<std::size_t>(k) + 1);
    CHECK(trace.hops.size() == trace.headers.size());
    if (trace.terminated == TraceEnd::ReachedDestination) {
      CHECK(trace.hops.back() == 2);
    }
  }
}

TEST_CASE("igp_routes computes shortest paths with deterministic ties") {
  const ControlPlaneNetwork net = triangle_controlplane();
  const RouterId a = net.router_index("A");
  const RouterId b = net.router_index("B");
  const RouterId c = net.router_index("C");

  const RoutingTable all_up = igp_routes(net, FailureInstance{0b111, 3});
  CHECK(all_up.next_hop(a, c) == c);  // direct edge beats the 2-hop detour

  const RoutingTable e2_down = igp_routes(net, FailureInstance{0b011, 3});
  CHECK(e2_down.next_hop(a, c) == b);

  const RoutingTable none = igp_routes(net, FailureInstance{0b000, 3});
  CHECK_FALSE(none.next_hop(a, c).has_value());
  CHECK_FALSE(none.reachable(a, c));
  CHECK(none.reachable(a, a));
}

TEST_CASE("equal-cost ties break toward the lowest-encoded neighbor") {
  // Two parallel 2-hop paths of equal weight from S to T.
  const ControlPlaneNetwork net = parse_controlplane(R"({
    "routers": ["S", "M", "N", "T"],
    "edges": [
      { "id": 0, "a": "S", "b": "M", "weight": 1 },
      { "id": 1, "a": "S", "b": "N", "weight": 1 },
      { "id": 2, "a": "M", "b": "T", "weight": 1 },
      { "id": 3, "a": "N", "b": "T", "weight": 1 }
    ]
  })");
  const RoutingTable table = igp_routes(net, FailureInstance{0b1111, 4});
  CHECK(table.next_hop(net.router_index("S"), net.router_index("T")) ==
        net.router_index("M"));
}

TEST_CASE("evaluate marks the documented instances") {
  const Verifier toy(toy_dataplane(), Property::reach_within("A", "C", 2));
  CHECK(toy.evaluate(0b10));
  CHECK(toy.evaluate(0b00));
  CHECK_FALSE(toy.evaluate(0b01));
  CHECK_FALSE(toy.evaluate(0b11));

  const Verifier tri(triangle_controlplane(),
                     Property::disconnected("A", "C", 3));
  CHECK_FALSE(tri.evaluate(0b011));  // reachable via B
  CHECK(tri.evaluate(0b000));

  const Verifier cutoff(triangle_controlplane(),
                        Property::disconnected("A", "C", 1));
  CHECK_FALSE(cutoff.evaluate(0b000));  // three failures exceed the cutoff
  CHECK_FALSE(cutoff.evaluate(0b010));  // two failures also exceed it
  CHECK_FALSE(cutoff.evaluate(0b011));  // one failure, but still connected
}

TEST_CASE("exceeds_hops marks headers still traveling after k hops") {
  const Verifier looping(self_loop_net(), Property::exceeds_hops("A", 100));
  CHECK(looping.evaluate(0b00));  // self-loop forever

  const Verifier toy(toy_dataplane(), Property::exceeds_hops("A", 2));
  CHECK_FALSE(toy.evaluate(0b01));  // stuck immediately
  CHECK(toy.evaluate(0b00));        // A -> B -> C, still moving at hop 2

  // With the network's destination declared, arriving there stops the walk.
  DataPlaneNetwork with_dst = toy_dataplane();
  with_dst.destination = with_dst.router_index("C");
  const Verifier absorbed(with_dst, Property::exceeds_hops("A", 2));
  CHECK_FALSE(absorbed.evaluate(0b00));
}

TEST_CASE("avoids_waypoint follows the traced route") {
  const ControlPlaneNetwork net = parse_controlplane(
      qnv::testing::read_file(qnv::testing::data_path(
          "diamond_controlplane.json")));
  const Property prop = parse_property(qnv::testing::read_file(
      qnv::testing::data_path("avoids_e.json")));
  const Verifier v(net, prop);
  // All links up: C -> E -> D costs 2 and goes through E.
  CHECK_FALSE(v.evaluate(0b1111));
  // e0 (C-E) failed: route is C -> F -> D, avoiding E.
  CHECK(v.evaluate(0b1110));
  // e0 and e2 failed: D is unreachable.
  CHECK_FALSE(v.evaluate(0b1010));
}

TEST_CASE("brute force returns the documented solution sets") {
  const Verifier toy(toy_dataplane(), Property::reach_within("A", "C", 2));
  CHECK(brute_force(toy) == std::vector<std::uint64_t>{0b00, 0b10});

  const Verifier tri(triangle_controlplane(),
                     Property::disconnected("A", "C", 3));
  CHECK(brute_force(tri) == std::vector<std::uint64_t>{0b000, 0b001, 0b010});

  // A router trivially reaches itself, so disconnected(src, src) never marks.
  const Verifier self(triangle_controlplane(),
                      Property::disconnected("A", "A", 3));
  CHECK(brute_force(self).empty());
}

TEST_CASE("brute force equals a straight-line re-evaluation") {
  const Verifier tri(triangle_controlplane(),
                     Property::disconnected("A", "C", 2));
  CHECK(brute_force(tri) == naive_solutions(tri));

  const Verifier toy(toy_dataplane(), Property::reach_within("A", "C", 1));
  CHECK(brute_force(toy) == naive_solutions(toy));
}

TEST_CASE("brute force rejects oversized instance spaces") {
  const Verifier tri(triangle_controlplane(),
                     Property::disconnected("A", "C", 3));
  CHECK_THROWS_AS(brute_force(tri, 2), ConfigError);
}

TEST_CASE("evaluate is deterministic and width-checked") {
  const Verifier tri(triangle_controlplane(),
                     Property::disconnected("A", "C", 3));
  for (std::uint64_t x = 0; x < 8; ++x) {
    CHECK(tri.evaluate(x) == tri.evaluate(x));
  }
  CHECK_THROWS_AS(tri.evaluate(0b1000), ConfigError);
}

TEST_CASE("plane mismatches between property and network are rejected") {
  CHECK_THROWS_AS(
      Verifier(toy_dataplane(), Property::disconnected("A", "C", 1)),
      ConfigError);
  CHECK_THROWS_AS(
      Verifier(triangle_controlplane(), Property::reach_within("A", "C", 2)),
      ConfigError);
  CHECK_THROWS_AS(
      Verifier(toy_dataplane(), Property::reach_within("A", "Z", 2)),
      ConfigError);
}

TEST_CASE("disconnection is monotone in the failure set without cutoff") {
  // More failures can only preserve or create disconnection. Exhaustive over
  // the triangle plus random networks.
  auto check_monotone = [](const ControlPlaneNetwork& net, const Property& p) {
    const int n = net.edge_count();
    Property no_cutoff = p;
    no_cutoff.max_failures = n;  // disable the cutoff
    for (std::uint64_t x = 0; x < (1ULL << n); ++x) {
      if (!evaluate(net, no_cutoff, x)) continue;
      for (int i = 0; i < n; ++i) {
        if (!(x >> i & 1ULL)) continue;
        const std::uint64_t worse = x & ~(1ULL << i);  // fail one more link
        CHECK(evaluate(net, no_cutoff, worse));
      }
    }
  };
  check_monotone(triangle_controlplane(), Property::disconnected("A", "C", 3));

  std::mt19937_64 rng(515);
  for (int trial = 0; trial < 10; ++trial) {
    const Verifier v = qnv::testing::random_controlplane_problem(rng);
    check_monotone(std::get<ControlPlaneNetwork>(v.network), v.property);
  }
}
