#include "qnv/netmodel.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace qnv {

using nlohmann::json;

std::string format_bits(std::uint64_t value, int width) {
  std::string out(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if ((value >> i) & 1ULL) out[width - 1 - i] = '1';
  }
  return out;
}

std::uint64_t parse_bits(const std::string& text) {
  if (text.empty() || text.size() > 64) {
    throw ConfigError("bit string must have 1..64 characters: '" + text + "'");
  }
  std::uint64_t value = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw ConfigError("invalid bit character in '" + text + "'");
    }
    value = (value << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return value;
}

WildcardPattern WildcardPattern::parse(const std::string& symbols) {
  if (symbols.empty() || symbols.size() > 64) {
    throw ConfigError("pattern must have 1..64 symbols: '" + symbols + "'");
  }
  WildcardPattern p;
  p.width = static_cast<int>(symbols.size());
  for (std::size_t j = 0; j < symbols.size(); ++j) {
    const int bit = p.width - 1 - static_cast<int>(j);
    switch (symbols[j]) {
      case '*':
        break;
      case '0':
        p.mask |= 1ULL << bit;
        break;
      case '1':
        p.mask |= 1ULL << bit;
        p.value |= 1ULL << bit;
        break;
      default:
        throw ConfigError("invalid pattern symbol in '" + symbols + "'");
    }
  }
  return p;
}

std::string WildcardPattern::str() const {
  std::string out(static_cast<std::size_t>(width), '*');
  for (int i = 0; i < width; ++i) {
    if ((mask >> i) & 1ULL) {
      out[width - 1 - i] = ((value >> i) & 1ULL) ? '1' : '0';
    }
  }
  return out;
}

bool wildcard_match(const WildcardPattern& pattern, const Header& header) {
  if (pattern.width != header.width) {
    throw ConfigError("pattern width " + std::to_string(pattern.width) +
                      " does not match header width " +
                      std::to_string(header.width));
  }
  return (header.value & pattern.mask) == pattern.value;
}

RewriteSpec RewriteSpec::parse(const std::string& actions) {
  if (actions.empty() || actions.size() > 64) {
    throw ConfigError("rewrite must have 1..64 actions: '" + actions + "'");
  }
  RewriteSpec r;
  r.width = static_cast<int>(actions.size());
  for (std::size_t j = 0; j < actions.size(); ++j) {
    const int bit = r.width - 1 - static_cast<int>(j);
    switch (actions[j]) {
      case '.':
        break;
      case '0':
        r.force_mask |= 1ULL << bit;
        break;
      case '1':
        r.force_mask |= 1ULL << bit;
        r.force_value |= 1ULL << bit;
        break;
      default:
        throw ConfigError("invalid rewrite action in '" + actions + "'");
    }
  }
  return r;
}

std::string RewriteSpec::str() const {
  std::string out(static_cast<std::size_t>(width), '.');
  for (int i = 0; i < width; ++i) {
    if ((force_mask >> i) & 1ULL) {
      out[width - 1 - i] = ((force_value >> i) & 1ULL) ? '1' : '0';
    }
  }
  return out;
}

namespace {

RouterId lookup_router(const std::vector<std::string>& routers,
                       const std::string& name) {
  for (std::size_t i = 0; i < routers.size(); ++i) {
    if (routers[i] == name) return static_cast<RouterId>(i);
  }
  throw ConfigError("unknown router '" + name + "'");
}

void check_router_names(const std::vector<std::string>& routers) {
  if (routers.empty()) throw ConfigError("network needs at least one router");
  std::unordered_set<std::string> seen;
  for (const auto& name : routers) {
    if (name.empty()) throw ConfigError("router names must be nonempty");
    if (!seen.insert(name).second) {
      throw ConfigError("duplicate router name '" + name + "'");
    }
  }
}

json parse_json(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("malformed JSON document");
  return doc;
}

template <typename T>
T require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw ConfigError(std::string("missing required key '") + key + "'");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("key '") + key + "' has the wrong type");
  }
}

}  // namespace

RouterId DataPlaneNetwork::router_index(const std::string& name) const {
  return lookup_router(routers, name);
}

const std::string& DataPlaneNetwork::router_name(RouterId id) const {
  return routers.at(static_cast<std::size_t>(id));
}

int DataPlaneNetwork::location_bits() const {
  const unsigned top = static_cast<unsigned>(router_count() - 1);
  return std::max(1, static_cast<int>(std::bit_width(top)));
}

RouterId ControlPlaneNetwork::router_index(const std::string& name) const {
  return lookup_router(routers, name);
}

const std::string& ControlPlaneNetwork::router_name(RouterId id) const {
  return routers.at(static_cast<std::size_t>(id));
}

int FailureInstance::failed_count() const {
  int failed = 0;
  for (int i = 0; i < width; ++i) {
    if (!link_up(i)) ++failed;
  }
  return failed;
}

Property Property::reach_within(std::string src, std::string dst, int k) {
  if (k < 1) throw ConfigError("hop bound k must be >= 1");
  Property p;
  p.kind = PropertyKind::ReachWithin;
  p.src = std::move(src);
  p.dst = std::move(dst);
  p.hop_bound = k;
  return p;
}

Property Property::exceeds_hops(std::string src, int k) {
  if (k < 1) throw ConfigError("hop bound k must be >= 1");
  Property p;
  p.kind = PropertyKind::ExceedsHops;
  p.src = std::move(src);
  p.hop_bound = k;
  return p;
}

Property Property::avoids_waypoint(std::string src, std::string dst,
                                   std::string waypoint, int max_failures) {
  if (max_failures < 0) throw ConfigError("max_failures must be >= 0");
  Property p;
  p.kind = PropertyKind::AvoidsWaypoint;
  p.src = std::move(src);
  p.dst = std::move(dst);
  p.waypoint = std::move(waypoint);
  p.max_failures = max_failures;
  return p;
}

Property Property::disconnected(std::string src, std::string dst,
                                int max_failures) {
  if (max_failures < 0) throw ConfigError("max_failures must be >= 0");
  Property p;
  p.kind = PropertyKind::Disconnected;
  p.src = std::move(src);
  p.dst = std::move(dst);
  p.max_failures = max_failures;
  return p;
}

std::string Property::describe() const {
  std::ostringstream out;
  switch (kind) {
    case PropertyKind::ReachWithin:
      out << "reach_within(" << src << " -> " << dst << ", k=" << hop_bound
          << ")";
      break;
    case PropertyKind::ExceedsHops:
      out << "exceeds_hops(" << src << ", k=" << hop_bound << ")";
      break;
    case PropertyKind::AvoidsWaypoint:
      out << "avoids_waypoint(" << src << " -> " << dst << " via " << waypoint
          << ", max_failures=" << max_failures << ")";
      break;
    case PropertyKind::Disconnected:
      out << "disconnected(" << src << " -> " << dst
          << ", max_failures=" << max_failures << ")";
      break;
  }
  return out.str();
}

DataPlaneNetwork parse_dataplane(const std::string& text) {
  const json doc = parse_json(text);
  DataPlaneNetwork net;
  net.header_width = require<int>(doc, "header_width");
  if (net.header_width < 1 || net.header_width > 48) {
    throw ConfigError("header_width must be in 1..48");
  }
  net.routers = require<std::vector<std::string>>(doc, "routers");
  check_router_names(net.routers);
  net.source = net.router_index(require<std::string>(doc, "source"));
  if (doc.contains("destination")) {
    net.destination =
        net.router_index(require<std::string>(doc, "destination"));
  }
  if (doc.contains("rules")) {
    if (!doc.at("rules").is_array()) throw ConfigError("rules must be a list");
    for (const json& entry : doc.at("rules")) {
      ForwardingRule rule;
      rule.router = net.router_index(require<std::string>(entry, "router"));
      rule.match = WildcardPattern::parse(require<std::string>(entry, "match"));
      rule.next_hop =
          net.router_index(require<std::string>(entry, "next_hop"));
      rule.rewrite = entry.contains("rewrite")
                         ? RewriteSpec::parse(
                               require<std::string>(entry, "rewrite"))
                         : RewriteSpec{0, 0, net.header_width};
      if (rule.match.width != net.header_width) {
        throw ConfigError("rule pattern '" + rule.match.str() +
                          "' does not match header_width " +
                          std::to_string(net.header_width));
      }
      if (rule.rewrite.width != net.header_width) {
        throw ConfigError("rule rewrite '" + rule.rewrite.str() +
                          "' does not match header_width " +
                          std::to_string(net.header_width));
      }
      net.rules.push_back(rule);
    }
  }
  return net;
}

ControlPlaneNetwork parse_controlplane(const std::string& text) {
  const json doc = parse_json(text);
  ControlPlaneNetwork net;
  net.routers = require<std::vector<std::string>>(doc, "routers");
  check_router_names(net.routers);
  const json& edges = doc.contains("edges") ? doc.at("edges") : json::array();
  if (!edges.is_array()) throw ConfigError("edges must be a list");
  if (edges.size() > 48) throw ConfigError("at most 48 failable edges");
  net.edges.resize(edges.size());
  std::vector<bool> seen(edges.size(), false);
  std::unordered_set<std::uint64_t> endpoint_pairs;
  for (const json& entry : edges) {
    const int id = require<int>(entry, "id");
    if (id < 0 || id >= static_cast<int>(edges.size())) {
      throw ConfigError("edge id " + std::to_string(id) +
                        " outside dense range 0.." +
                        std::to_string(edges.size() - 1));
    }
    if (seen[static_cast<std::size_t>(id)]) {
      throw ConfigError("duplicate edge id " + std::to_string(id));
    }
    seen[static_cast<std::size_t>(id)] = true;
    Edge edge;
    edge.a = net.router_index(require<std::string>(entry, "a"));
    edge.b = net.router_index(require<std::string>(entry, "b"));
    edge.weight = entry.contains("weight") ? require<int>(entry, "weight") : 1;
    if (edge.a == edge.b) throw ConfigError("self-loop edges not allowed");
    if (edge.weight < 1) throw ConfigError("edge weights must be positive");
    const std::uint64_t lo = static_cast<std::uint64_t>(
        std::min(edge.a, edge.b));
    const std::uint64_t hi = static_cast<std::uint64_t>(
        std::max(edge.a, edge.b));
    if (!endpoint_pairs.insert((hi << 32) | lo).second) {
      throw ConfigError("parallel edge between '" + net.router_name(edge.a) +
                        "' and '" + net.router_name(edge.b) + "'");
    }
    net.edges[static_cast<std::size_t>(id)] = edge;
  }
  return net;
}

Property parse_property(const std::string& text) {
  const json doc = parse_json(text);
  const std::string kind = require<std::string>(doc, "kind");
  if (kind == "reach_within") {
    return Property::reach_within(require<std::string>(doc, "src"),
                                  require<std::string>(doc, "dst"),
                                  require<int>(doc, "k"));
  }
  if (kind == "exceeds_hops") {
    return Property::exceeds_hops(require<std::string>(doc, "src"),
                                  require<int>(doc, "k"));
  }
  if (kind == "avoids_waypoint") {
    return Property::avoids_waypoint(require<std::string>(doc, "src"),
                                     require<std::string>(doc, "dst"),
                                     require<std::string>(doc, "waypoint"),
                                     require<int>(doc, "max_failures"));
  }
  if (kind == "disconnected") {
    return Property::disconnected(require<std::string>(doc, "src"),
                                  require<std::string>(doc, "dst"),
                                  require<int>(doc, "max_failures"));
  }
  throw ConfigError("unknown property kind '" + kind + "'");
}

std::string serialize(const DataPlaneNetwork& net) {
  json doc;
  doc["header_width"] = net.header_width;
  doc["routers"] = net.routers;
  doc["source"] = net.router_name(net.source);
  if (net.destination) doc["destination"] = net.router_name(*net.destination);
  json rules = json::array();
  for (const ForwardingRule& rule : net.rules) {
    json entry;
    entry["router"] = net.router_name(rule.router);
    entry["match"] = rule.match.str();
    entry["next_hop"] = net.router_name(rule.next_hop);
    entry["rewrite"] = rule.rewrite.str();
    rules.push_back(entry);
  }
  doc["rules"] = rules;
  return doc.dump(2);
}

std::string serialize(const ControlPlaneNetwork& net) {
  json doc;
  doc["routers"] = net.routers;
  json edges = json::array();
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    json entry;
    entry["id"] = static_cast<int>(i);
    entry["a"] = net.router_name(net.edges[i].a);
    entry["b"] = net.router_name(net.edges[i].b);
    entry["weight"] = net.edges[i].weight;
    edges.push_back(entry);
  }
  doc["edges"] = edges;
  return doc.dump(2);
}

std::string serialize(const Property& prop) {
  json doc;
  switch (prop.kind) {
    case PropertyKind::ReachWithin:
      doc["kind"] = "reach_within";
      doc["src"] = prop.src;
      doc["dst"] = prop.dst;
      doc["k"] = prop.hop_bound;
      break;
    case PropertyKind::ExceedsHops:
      doc["kind"] = "exceeds_hops";
      doc["src"] = prop.src;
      doc["k"] = prop.hop_bound;
      break;
    case PropertyKind::AvoidsWaypoint:
      doc["kind"] = "avoids_waypoint";
      doc["src"] = prop.src;
      doc["dst"] = prop.dst;
      doc["waypoint"] = prop.waypoint;
      doc["max_failures"] = prop.max_failures;
      break;
    case PropertyKind::Disconnected:
      doc["kind"] = "disconnected";
      doc["src"] = prop.src;
      doc["dst"] = prop.dst;
      doc["max_failures"] = prop.max_failures;
      break;
  }
  return doc.dump(2);
}

}  // namespace qnv
