#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qnv/circuit.hpp"
#include "qnv/oracle.hpp"

// Grover driver: state preparation (uniform or biased), the diffuser,
// iterate scheduling, search, and iterative all-solutions discovery.

namespace qnv {

/// Input-register preparation. Biased(p) gives every bit probability p of
/// measuring 0 (a failed link), biasing outcomes toward instances with a
/// matching failure count.
struct InitSpec {
  enum class Kind { Uniform, Biased };
  Kind kind = Kind::Uniform;
  double p = 0.5;

  static InitSpec uniform() { return {Kind::Uniform, 0.5}; }
  static InitSpec biased(double p);
};

/// Preparation circuit A over the n input qubits: H per qubit, or
/// RY(2*arccos(sqrt(p))) per qubit so that |<0|A|0>|^2 = p per bit.
Circuit prep_circuit(int n, const InitSpec& init);
StateVector prepare_init(int n, const InitSpec& init);

/// Reflection about the prepared state: A (2|0><0| - I) A^dagger, built as
/// X^n / MCZ / X^n with the global sign fixed so the operator equals
/// 2|psi><psi| - I exactly. For Uniform this is the textbook H-X-MCZ-X-H
/// diffuser.
Circuit diffuser(const Circuit& prep, int n);

/// floor((pi/4) * sqrt(2^n / k)), floored at 1 while k < 2^n; 0 when every
/// instance is a solution. Throws on k outside 1..2^n.
int optimal_iterates(int n, std::uint64_t k);

/// sin^2((2G+1) * asin(sqrt(k / 2^n))) — exact success probability of
/// measuring a solution after G iterates from the uniform state.
double success_probability(int n, std::uint64_t k, int iterates);

struct GroverPlan {
  CompiledOracle oracle;
  InitSpec init = InitSpec::uniform();
  /// Explicit iterate count; wins over k_hint when set.
  std::optional<int> iterates;
  /// Known or assumed solution count; G derived via optimal_iterates.
  std::optional<std::uint64_t> k_hint;
  std::uint64_t shots = 10000;
  std::uint64_t seed = 0;
};

struct SearchResult {
  std::map<std::string, std::uint64_t> histogram;
  /// Sampled instances re-checked classically against f (and not excluded).
  std::vector<std::uint64_t> confirmed;
  double success_fraction = 0.0;
  /// Sum of marked-state probabilities in the final state vector.
  double exact_success = 0.0;
  int iterates = 0;
  /// The closed form rounded to 0 with solutions remaining; one iterate was
  /// run instead and may over-rotate.
  bool iterates_floored = false;
};

SearchResult search(const GroverPlan& plan);

struct FindAllOptions {
  int budget = 0;  // max rounds; must be >= 1
  std::uint64_t shots = 1000;
  std::uint64_t seed = 0;
  InitSpec init = InitSpec::uniform();
  int limit = kBruteForceLimit;
};

struct FindAllResult {
  std::set<std::uint64_t> found;
  int rounds = 0;
  int total_iterates = 0;
  /// Shot counts summed across every round's histogram.
  std::map<std::string, std::uint64_t> merged_histogram;
  /// Exact success of the first round (the search over the full problem).
  double first_round_exact_success = 0.0;
};

/// Repeated search with exclusions for everything already confirmed; stops
/// when a round confirms nothing new or the budget is exhausted. With enough
/// budget this returns exactly the brute-force solution set.
std::set<std::uint64_t> find_all(const Verifier& verifier,
                                 const FindAllOptions& options);
FindAllResult find_all_trace(const Verifier& verifier,
                             const FindAllOptions& options);

/// Exponentially growing iterate schedule for unknown solution counts:
/// G is drawn uniformly from [0, m), m grows by 1.2x up to ceil(sqrt(2^n)),
/// and the first classically confirmed solution stops the schedule.
SearchResult bbht_search(const GroverPlan& plan);

}  // namespace qnv
