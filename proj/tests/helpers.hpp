#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "qnv/classical.hpp"
#include "qnv/netmodel.hpp"

namespace qnv::testing {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline std::string data_path(const std::string& name) {
  return std::string(QNV_DATA_DIR) + "/" + name;
}

inline DataPlaneNetwork toy_dataplane() {
  return parse_dataplane(read_file(data_path("toy_dataplane.json")));
}

inline ControlPlaneNetwork triangle_controlplane() {
  return parse_controlplane(read_file(data_path("triangle_controlplane.json")));
}

inline Property toy_reach_property() {
  return parse_property(read_file(data_path("reach_a_to_c.json")));
}

inline Property triangle_disconnected_property() {
  return parse_property(read_file(data_path("disconnected_a_c.json")));
}

/// Straight-line re-evaluation of every instance; the reference the
/// threaded brute force is checked against.
inline std::vector<std::uint64_t> naive_solutions(const Verifier& verifier) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << verifier.input_bits());
       ++x) {
    if (verifier.evaluate(x)) out.push_back(x);
  }
  return out;
}

}  // namespace qnv::testing
