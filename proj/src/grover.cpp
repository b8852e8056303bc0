#include "qnv/grover.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qnv {

InitSpec InitSpec::biased(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ConfigError("bias p must be strictly between 0 and 1");
  }
  return {Kind::Biased, p};
}

Circuit prep_circuit(int n, const InitSpec& init) {
  if (n < 1) throw CircuitError("need at least one input qubit");
  Circuit prep(n);
  if (init.kind == InitSpec::Kind::Uniform) {
    for (int q = 0; q < n; ++q) prep.push(Gate::h(q));
  } else {
    const double theta = 2.0 * std::acos(std::sqrt(init.p));
    for (int q = 0; q < n; ++q) prep.push(Gate::ry(q, theta));
  }
  return prep;
}

StateVector prepare_init(int n, const InitSpec& init) {
  StateVector state(n);
  state.run(prep_circuit(n, init));
  return state;
}

Circuit diffuser(const Circuit& prep, int n) {
  if (prep.width != n) {
    throw CircuitError("preparation circuit must act on the n input qubits");
  }
  Circuit out(n);
  out.append(prep.inverted());
  for (int q = 0; q < n; ++q) out.push(Gate::x(q));
  if (n == 1) {
    out.push(Gate::z(0));
  } else {
    std::vector<int> controls;
    for (int q = 1; q < n; ++q) controls.push_back(q);
    out.push(Gate::mcz(std::move(controls), 0));
  }
  for (int q = 0; q < n; ++q) out.push(Gate::x(q));
  // X-MCZ-X reflects |0...0>; four more gates flip the global sign so the
  // operator is 2|psi><psi| - I rather than its negative.
  out.push(Gate::x(0));
  out.push(Gate::z(0));
  out.push(Gate::x(0));
  out.push(Gate::z(0));
  out.append(prep);
  return out;
}

int optimal_iterates(int n, std::uint64_t k) {
  if (n < 1 || n > 62) throw ConfigError("n must be in 1..62");
  const std::uint64_t total = std::uint64_t{1} << n;
  if (k < 1 || k > total) {
    throw ConfigError("solution count must be in 1..2^n");
  }
  if (k == total) return 0;
  const double raw = (std::acos(-1.0) / 4.0) *
                     std::sqrt(static_cast<double>(total) /
                               static_cast<double>(k));
  return std::max(1, static_cast<int>(std::floor(raw)));
}

double success_probability(int n, std::uint64_t k, int iterates) {
  if (n < 1 || n > 62) throw ConfigError("n must be in 1..62");
  const std::uint64_t total = std::uint64_t{1} << n;
  if (k < 1 || k > total) {
    throw ConfigError("solution count must be in 1..2^n");
  }
  const double theta =
      std::asin(std::sqrt(static_cast<double>(k) / static_cast<double>(total)));
  const double s = std::sin((2.0 * iterates + 1.0) * theta);
  return s * s;
}

namespace {

struct ResolvedIterates {
  int count = 0;
  bool floored = false;
};

ResolvedIterates resolve_iterates(const GroverPlan& plan) {
  if (plan.iterates) {
    if (*plan.iterates < 0) throw ConfigError("iterates must be >= 0");
    return {*plan.iterates, false};
  }
  if (!plan.k_hint) {
    throw ConfigError("plan needs either an iterate count or a k hint");
  }
  const int n = plan.oracle.input_bits;
  const std::uint64_t total = std::uint64_t{1} << n;
  const int g = optimal_iterates(n, *plan.k_hint);
  const double raw = (std::acos(-1.0) / 4.0) *
                     std::sqrt(static_cast<double>(total) /
                               static_cast<double>(*plan.k_hint));
  return {g, *plan.k_hint < total && std::floor(raw) < 1.0};
}

SearchResult run_plan(const CompiledOracle& oracle, const InitSpec& init,
                      int iterates, std::uint64_t shots, std::uint64_t seed) {
  const int n = oracle.input_bits;
  StateVector state(oracle.total_qubits);
  const Circuit prep = prep_circuit(n, init);
  state.run(prep.widened(oracle.total_qubits));
  const Circuit diff = diffuser(prep, n).widened(oracle.total_qubits);
  for (int g = 0; g < iterates; ++g) {
    oracle.apply(state);
    state.run(diff);
  }

  SearchResult result;
  result.iterates = iterates;
  const std::vector<std::uint64_t> marked = oracle.marked_set();
  const std::vector<double> probs = state.marginal(oracle.input_register());
  for (std::uint64_t x : marked) result.exact_success += probs[x];

  result.histogram = state.measure(oracle.input_register(), shots, seed);
  std::uint64_t confirmed_shots = 0;
  for (const auto& [bits, count] : result.histogram) {
    const std::uint64_t x = parse_bits(bits);
    if (std::binary_search(marked.begin(), marked.end(), x)) {
      result.confirmed.push_back(x);
      confirmed_shots += count;
    }
  }
  std::sort(result.confirmed.begin(), result.confirmed.end());
  result.success_fraction =
      static_cast<double>(confirmed_shots) / static_cast<double>(shots);
  return result;
}

}  // namespace

SearchResult search(const GroverPlan& plan) {
  const ResolvedIterates g = resolve_iterates(plan);
  SearchResult result =
      run_plan(plan.oracle, plan.init, g.count, plan.shots, plan.seed);
  result.iterates_floored = g.floored;
  return result;
}

FindAllResult find_all_trace(const Verifier& verifier,
                             const FindAllOptions& options) {
  if (options.budget < 1) {
    throw std::invalid_argument("find_all budget must be >= 1");
  }
  std::mt19937_64 seeder(options.seed);
  FindAllResult trace;
  for (int round = 0; round < options.budget; ++round) {
    const CompiledOracle oracle =
        compile_diagonal(verifier, ExclusionSet{trace.found}, options.limit);
    const std::uint64_t remaining = oracle.marked.size();
    if (remaining == 0) break;  // nothing left to confirm
    GroverPlan plan;
    plan.oracle = oracle;
    plan.init = options.init;
    plan.k_hint = remaining;
    plan.shots = options.shots;
    plan.seed = seeder();
    const SearchResult result = search(plan);
    ++trace.rounds;
    trace.total_iterates += result.iterates;
    for (const auto& [bits, count] : result.histogram) {
      trace.merged_histogram[bits] += count;
    }
    if (round == 0) trace.first_round_exact_success = result.exact_success;
    if (result.confirmed.empty()) break;
    trace.found.insert(result.confirmed.begin(), result.confirmed.end());
  }
  return trace;
}

std::set<std::uint64_t> find_all(const Verifier& verifier,
                                 const FindAllOptions& options) {
  return find_all_trace(verifier, options).found;
}

SearchResult bbht_search(const GroverPlan& plan) {
  const int n = plan.oracle.input_bits;
  const double total = std::pow(2.0, n);
  const std::uint64_t m_cap =
      static_cast<std::uint64_t>(std::ceil(std::sqrt(total)));
  std::mt19937_64 rng(plan.seed);

  std::uint64_t m = 1;
  int saturated_attempts = 0;
  SearchResult last;
  while (true) {
    const int g = static_cast<int>(rng() % m);
    const std::uint64_t sub_seed = rng();
    last = run_plan(plan.oracle, plan.init, g, plan.shots, sub_seed);
    if (!last.confirmed.empty()) return last;
    if (m == m_cap) {
      if (++saturated_attempts >= 3) return last;  // schedule exhausted
    }
    m = std::min<std::uint64_t>(
        static_cast<std::uint64_t>(std::ceil(1.2 * static_cast<double>(m))),
        m_cap);
  }
}

}  // namespace qnv
