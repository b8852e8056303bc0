// Command-line front end: express a verification problem as a search over
// n-bit instances, run Grover on the embedded simulator (or the classical
// brute force), and emit a machine-readable JSON report.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qnv/classical.hpp"
#include "qnv/grover.hpp"
#include "qnv/netmodel.hpp"
#include "qnv/oracle.hpp"
#include "qnv/resources.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitSolutionsFound = 0;
constexpr int kExitInputError = 2;
constexpr int kExitResourceLimit = 3;
constexpr int kExitNoSolutions = 10;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qnv::ConfigError("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct ProblemArgs {
  std::string network_file;
  std::string property_file;
  std::string mode;
};

void add_problem_flags(CLI::App* cmd, ProblemArgs& args) {
  cmd->add_option("--network", args.network_file, "network JSON file")
      ->required();
  cmd->add_option("--property", args.property_file, "property JSON file")
      ->required();
  cmd->add_option("--mode", args.mode, "dataplane or controlplane")
      ->required()
      ->check(CLI::IsMember({"dataplane", "controlplane"}));
}

qnv::Verifier load_verifier(const ProblemArgs& args) {
  const qnv::Property prop =
      qnv::parse_property(read_file(args.property_file));
  if (args.mode == "dataplane") {
    return qnv::Verifier(qnv::parse_dataplane(read_file(args.network_file)),
                         prop);
  }
  return qnv::Verifier(qnv::parse_controlplane(read_file(args.network_file)),
                       prop);
}

json property_json(const qnv::Property& prop) {
  return json::parse(qnv::serialize(prop));
}

void write_report(const json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw qnv::ConfigError("cannot write '" + out_path + "'");
    out << report.dump(2) << "\n";
  }
}

void render_histogram(const std::map<std::string, std::uint64_t>& histogram) {
  if (!isatty(fileno(stderr)) || histogram.empty()) return;
  std::uint64_t peak = 0;
  for (const auto& [bits, count] : histogram) peak = std::max(peak, count);
  for (const auto& [bits, count] : histogram) {
    const int bar =
        peak ? static_cast<int>((40 * count + peak - 1) / peak) : 0;
    std::fprintf(stderr, "  %s |%-40s| %llu\n", bits.c_str(),
                 std::string(static_cast<std::size_t>(bar), '#').c_str(),
                 static_cast<unsigned long long>(count));
  }
}

struct VerifyArgs {
  ProblemArgs problem;
  std::string backend = "diagonal";
  std::string init = "uniform";
  double p = 0.5;
  std::optional<int> iterates;
  std::optional<std::uint64_t> k_hint;
  bool all = false;
  bool check = false;
  std::uint64_t shots = 10000;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string dump_circuit_path;
};

int run_verify(const VerifyArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const qnv::Verifier verifier = load_verifier(args.problem);
  const int n = verifier.input_bits();

  qnv::InitSpec init = args.init == "biased" ? qnv::InitSpec::biased(args.p)
                                             : qnv::InitSpec::uniform();

  json report;
  report["problem"] = {
      {"mode", args.problem.mode},
      {"network", args.problem.network_file},
      {"input_bits", n},
      {"property", property_json(verifier.property)},
      {"init", {{"kind", args.init}, {"p", args.p}}},
      {"shots", args.shots},
  };
  report["backend"] = args.backend;
  report["seed"] = args.seed;

  std::vector<std::string> confirmed_bits;
  json warnings = json::array();

  if (args.all) {
    // Exclusion loop over the diagonal backend until nothing new turns up.
    qnv::FindAllOptions opts;
    opts.budget = 1 << n;
    opts.shots = args.shots;
    opts.seed = args.seed;
    opts.init = init;
    const qnv::FindAllResult trace = qnv::find_all_trace(verifier, opts);
    report["strategy"] = "find-all";
    report["rounds"] = trace.rounds;
    report["grover_iterates"] = trace.total_iterates;
    report["histogram"] = trace.merged_histogram;
    report["exact_success"] = trace.first_round_exact_success;
    for (std::uint64_t x : trace.found) {
      confirmed_bits.push_back(qnv::format_bits(x, n));
    }
    render_histogram(trace.merged_histogram);
  } else {
    qnv::GroverPlan plan;
    plan.oracle = [&] {
      if (args.backend == "diagonal") return qnv::compile_diagonal(verifier);
      if (verifier.is_dataplane()) {
        return qnv::compile_gate_dataplane(
            std::get<qnv::DataPlaneNetwork>(verifier.network),
            verifier.property);
      }
      return qnv::compile_gate_controlplane(
          std::get<qnv::ControlPlaneNetwork>(verifier.network),
          verifier.property);
    }();
    plan.init = init;
    plan.iterates = args.iterates;
    plan.k_hint = args.k_hint;
    plan.shots = args.shots;
    plan.seed = args.seed;

    if (!args.dump_circuit_path.empty()) {
      std::ofstream dump(args.dump_circuit_path);
      if (!dump) {
        throw qnv::ConfigError("cannot write '" + args.dump_circuit_path +
                               "'");
      }
      dump << plan.oracle.circuit.dump();
    }

    qnv::SearchResult result;
    if (!args.iterates && !args.k_hint) {
      // No solution-count information: exponential iterate schedule.
      result = qnv::bbht_search(plan);
      report["strategy"] = "bbht";
    } else {
      result = qnv::search(plan);
      report["strategy"] = "fixed";
    }
    report["grover_iterates"] = result.iterates;
    report["histogram"] = result.histogram;
    report["exact_success"] = result.exact_success;
    report["success_fraction"] = result.success_fraction;
    if (result.iterates_floored) {
      warnings.push_back(
          "optimal iterate count rounded to zero; ran one iterate, which "
          "may over-rotate");
    }
    for (std::uint64_t x : result.confirmed) {
      confirmed_bits.push_back(qnv::format_bits(x, n));
    }
    render_histogram(result.histogram);
  }

  report["confirmed"] = confirmed_bits;
  if (args.check) {
    json solutions = json::array();
    for (std::uint64_t x : qnv::brute_force(verifier)) {
      solutions.push_back(qnv::format_bits(x, n));
    }
    report["brute_force"] = solutions;
  }
  if (!warnings.empty()) report["warnings"] = warnings;
  report["duration_ms"] =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - start)
          .count();

  write_report(report, args.out_path);
  return confirmed_bits.empty() ? kExitNoSolutions : kExitSolutionsFound;
}

struct BruteForceArgs {
  ProblemArgs problem;
  std::string out_path;
};

int run_bruteforce(const BruteForceArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const qnv::Verifier verifier = load_verifier(args.problem);
  const int n = verifier.input_bits();
  const std::vector<std::uint64_t> solutions = qnv::brute_force(verifier);

  json report;
  report["problem"] = {
      {"mode", args.problem.mode},
      {"network", args.problem.network_file},
      {"input_bits", n},
      {"property", property_json(verifier.property)},
  };
  json bits = json::array();
  for (std::uint64_t x : solutions) bits.push_back(qnv::format_bits(x, n));
  report["solutions"] = bits;
  report["count"] = solutions.size();
  report["duration_ms"] =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - start)
          .count();

  write_report(report, args.out_path);
  return solutions.empty() ? kExitNoSolutions : kExitSolutionsFound;
}

struct EstimateArgs {
  std::string kind;
  std::uint64_t routers = 10;
  std::uint64_t rules = 5;
  std::uint64_t headers = 1ULL << 16;
  std::uint64_t edges = 20;
  std::optional<std::uint64_t> iterates;
  std::optional<std::uint64_t> wildcards;
  std::optional<std::uint64_t> ports;
  std::optional<std::uint64_t> max_hops;
  std::optional<std::uint64_t> diameter;
  bool reset = false;
  std::string sweep;
  int from = 0;
  int to = 0;
};

int run_estimate(const EstimateArgs& args) {
  if (args.kind == "dataplane") {
    auto params = [&](std::uint64_t headers, std::uint64_t routers) {
      qnv::DataPlaneParams p = qnv::DataPlaneParams::conventional(
          headers, routers, args.rules, args.iterates.value_or(5));
      if (args.wildcards) p.wildcards = *args.wildcards;
      if (args.ports) p.ports = *args.ports;
      if (args.max_hops) p.max_hops = *args.max_hops;
      return p;
    };
    if (args.sweep.empty()) {
      std::cout << qnv::dataplane_qubits(params(args.headers, args.routers),
                                         args.reset)
                << "\n";
    } else if (args.sweep == "headers") {
      std::cout << qnv::to_csv(qnv::sweep_dataplane_headers(
          args.from, args.to, args.routers, args.rules,
          args.iterates.value_or(5), args.reset));
    } else if (args.sweep == "routers") {
      std::cout << qnv::to_csv(qnv::sweep_dataplane_routers(
          static_cast<std::uint64_t>(args.from),
          static_cast<std::uint64_t>(args.to), args.rules, args.headers,
          args.iterates.value_or(5), args.reset));
    } else {
      throw qnv::ConfigError("data-plane sweeps: headers or routers");
    }
    return 0;
  }

  // control plane
  auto params = [&] {
    qnv::ControlPlaneParams p =
        qnv::ControlPlaneParams::conventional(args.routers, args.edges);
    if (args.diameter) p.diameter = *args.diameter;
    if (args.iterates) p.iterates = *args.iterates;
    return p;
  };
  if (args.sweep.empty()) {
    std::cout << qnv::controlplane_qubits(params(), args.reset) << "\n";
  } else if (args.sweep == "edges") {
    std::cout << qnv::to_csv(qnv::sweep_controlplane_edges(
        static_cast<std::uint64_t>(args.from),
        static_cast<std::uint64_t>(args.to), args.routers, args.reset));
  } else {
    throw qnv::ConfigError("control-plane sweeps: edges");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "network verification as quantum unstructured search "
      "(simulator-backed)"};
  app.require_subcommand(1);

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand(
      "verify", "search for property-violating instances with Grover");
  add_problem_flags(verify, verify_args.problem);
  verify->add_option("--backend", verify_args.backend,
                     "oracle backend (default diagonal)")
      ->check(CLI::IsMember({"diagonal", "gate"}));
  verify->add_option("--init", verify_args.init,
                     "input preparation (default uniform)")
      ->check(CLI::IsMember({"uniform", "biased"}));
  verify->add_option("--p", verify_args.p,
                     "per-bit probability of measuring 0 for --init biased");
  verify->add_option("--iterates", verify_args.iterates,
                     "explicit Grover iterate count");
  verify->add_option("--k-hint", verify_args.k_hint,
                     "assumed solution count (sets the iterate count)");
  verify->add_flag("--all", verify_args.all,
                   "iterate with exclusions until no new solutions appear");
  verify->add_flag("--check", verify_args.check,
                   "include the brute-force solution set in the report");
  verify->add_option("--shots", verify_args.shots, "measurement shots");
  verify->add_option("--seed", verify_args.seed, "PRNG seed")->required();
  verify->add_option("--out", verify_args.out_path,
                     "write the JSON report here instead of stdout");
  verify->add_option("--dump-circuit", verify_args.dump_circuit_path,
                     "write the compiled oracle's gate list to this file");

  BruteForceArgs brute_args;
  CLI::App* brute = app.add_subcommand(
      "bruteforce", "enumerate the exact solution set classically");
  add_problem_flags(brute, brute_args.problem);
  brute->add_option("--out", brute_args.out_path, "report output file");

  EstimateArgs est_args;
  CLI::App* estimate = app.add_subcommand(
      "estimate", "closed-form qubit counts for the compiled circuits");
  estimate->add_option("kind", est_args.kind, "dataplane or controlplane")
      ->required()
      ->check(CLI::IsMember({"dataplane", "controlplane"}));
  estimate->add_option("--routers", est_args.routers, "router count R");
  estimate->add_option("--rules", est_args.rules, "rules per router r");
  estimate->add_option("--headers", est_args.headers, "header count n");
  estimate->add_option("--edges", est_args.edges, "edge count n");
  estimate->add_option("--iterates", est_args.iterates, "Grover iterates G");
  estimate->add_option("--wildcards", est_args.wildcards,
                       "unique wildcard expressions (default R*r)");
  estimate->add_option("--ports", est_args.ports,
                       "unique ports (default R*r)");
  estimate->add_option("--max-hops", est_args.max_hops,
                       "hop bound k (default R)");
  estimate->add_option("--diameter", est_args.diameter,
                       "network diameter D (default R-1)");
  estimate->add_flag("--reset", est_args.reset,
                     "assume mid-circuit reset gates");
  estimate->add_option("--sweep", est_args.sweep,
                       "sweep variable: headers, routers, or edges");
  estimate->add_option("--from", est_args.from, "sweep range start");
  estimate->add_option("--to", est_args.to, "sweep range end");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return run_verify(verify_args);
    if (brute->parsed()) return run_bruteforce(brute_args);
    return run_estimate(est_args);
  } catch (const qnv::ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResourceLimit;
  } catch (const qnv::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
