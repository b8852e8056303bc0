#include "qnv/oracle.hpp"

#include <algorithm>
#include <bit>

namespace qnv {

namespace {

/// Control with polarity; negative controls are realized by X conjugation.
struct Ctrl {
  int qubit;
  bool positive;
};

void wrap_negatives(Circuit& c, const std::vector<Ctrl>& ctrls) {
  for (const Ctrl& k : ctrls) {
    if (!k.positive) c.push(Gate::x(k.qubit));
  }
}

/// target ^= AND of the controls; no controls means a plain X.
void emit_flip(Circuit& c, const std::vector<Ctrl>& ctrls, int target) {
  wrap_negatives(c, ctrls);
  if (ctrls.empty()) {
    c.push(Gate::x(target));
  } else if (ctrls.size() == 1) {
    c.push(Gate::cx(ctrls[0].qubit, target));
  } else {
    std::vector<int> qs;
    qs.reserve(ctrls.size());
    for (const Ctrl& k : ctrls) qs.push_back(k.qubit);
    c.push(Gate::mcx(std::move(qs), target));
  }
  wrap_negatives(c, ctrls);
}

/// Phase -1 exactly when all controls are satisfied.
void emit_phase(Circuit& c, const std::vector<Ctrl>& ctrls) {
  if (ctrls.empty()) throw CircuitError("phase condition must be nonempty");
  wrap_negatives(c, ctrls);
  if (ctrls.size() == 1) {
    c.push(Gate::z(ctrls[0].qubit));
  } else if (ctrls.size() == 2) {
    c.push(Gate::cz(ctrls[0].qubit, ctrls[1].qubit));
  } else {
    std::vector<int> qs;
    for (std::size_t i = 1; i < ctrls.size(); ++i) qs.push_back(ctrls[i].qubit);
    c.push(Gate::mcz(std::move(qs), ctrls[0].qubit));
  }
  wrap_negatives(c, ctrls);
}

void append_value_ctrls(std::vector<Ctrl>& ctrls, const std::vector<int>& reg,
                        std::uint64_t value) {
  for (std::size_t j = 0; j < reg.size(); ++j) {
    ctrls.push_back({reg[j], ((value >> j) & 1ULL) != 0});
  }
}

std::vector<int> span_register(int base, int count) {
  std::vector<int> reg(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) reg[static_cast<std::size_t>(i)] = base + i;
  return reg;
}

void append_resets(Circuit& c, int base, int count) {
  for (int i = 0; i < count; ++i) c.push(Gate::reset(base + i));
}

/// counter += 1 when `control` is satisfied (ripple increment, MSB first).
void emit_controlled_increment(Circuit& c, const Ctrl& control,
                               const std::vector<int>& counter) {
  for (int j = static_cast<int>(counter.size()) - 1; j >= 1; --j) {
    std::vector<Ctrl> ctrls{control};
    for (int b = 0; b < j; ++b) {
      ctrls.push_back({counter[static_cast<std::size_t>(b)], true});
    }
    emit_flip(c, ctrls, counter[static_cast<std::size_t>(j)]);
  }
  emit_flip(c, {control}, counter[0]);
}

}  // namespace

std::vector<int> CompiledOracle::input_register() const {
  return span_register(0, input_bits);
}

std::vector<int> CompiledOracle::ancilla_register() const {
  return span_register(input_bits, total_qubits - input_bits);
}

bool CompiledOracle::excluded(std::uint64_t x) const {
  return std::binary_search(exclusions.begin(), exclusions.end(), x);
}

bool CompiledOracle::marks(std::uint64_t x) const {
  if (backend == OracleBackend::Diagonal) {
    return std::binary_search(marked.begin(), marked.end(), x);
  }
  return verifier->evaluate(x) && !excluded(x);
}

std::vector<std::uint64_t> CompiledOracle::marked_set() const {
  if (backend == OracleBackend::Diagonal) return marked;
  std::vector<std::uint64_t> out = brute_force(*verifier);
  std::erase_if(out, [this](std::uint64_t x) { return excluded(x); });
  return out;
}

void CompiledOracle::apply(StateVector& state) const {
  if (state.width() != total_qubits) {
    throw CircuitError("oracle acts on " + std::to_string(total_qubits) +
                       " qubits, state has " + std::to_string(state.width()));
  }
  if (backend == OracleBackend::Diagonal) {
    state.apply_phase_flips(marked);
  } else {
    state.run(circuit);
  }
}

CompiledOracle compile_diagonal(const Verifier& verifier,
                                const ExclusionSet& exclusions, int limit) {
  CompiledOracle oracle;
  oracle.backend = OracleBackend::Diagonal;
  oracle.input_bits = verifier.input_bits();
  oracle.total_qubits = oracle.input_bits;
  oracle.verifier = std::make_shared<Verifier>(verifier);
  oracle.marked = brute_force(verifier, limit);
  for (std::uint64_t x : exclusions.seen) {
    if (x >> oracle.input_bits) {
      throw ConfigError("excluded instance wider than the input register");
    }
    const auto it =
        std::lower_bound(oracle.marked.begin(), oracle.marked.end(), x);
    if (it != oracle.marked.end() && *it == x) {
      oracle.marked.erase(it);
      oracle.exclusions.push_back(x);
    }
  }
  std::sort(oracle.exclusions.begin(), oracle.exclusions.end());
  return oracle;
}

CompiledOracle compile_gate_dataplane(const DataPlaneNetwork& net,
                                      const Property& prop,
                                      const CompileOptions& options) {
  if (prop.kind != PropertyKind::ReachWithin) {
    throw ConfigError(
        "the gate-level data-plane compiler supports reach_within only");
  }
  const int n = net.header_width;
  const int hops = prop.hop_bound;
  const int loc_bits = net.location_bits();
  const RouterId src = net.router_index(prop.src);
  const RouterId dst = net.router_index(prop.dst);
  const auto& rules = net.rules;
  const int rule_count = static_cast<int>(rules.size());
  const bool rewriting =
      std::any_of(rules.begin(), rules.end(), [](const ForwardingRule& r) {
        return !r.rewrite.is_identity();
      });
  // Scratch per hop: one fire flag per rule, an at-destination flag, and a
  // no-rule-fired flag for the stay-put default.
  const int scratch = rule_count == 0 ? 0 : rule_count + 2;
  const int scratch_pools = options.midcircuit_reset ? 1 : hops;

  int next = 0;
  auto alloc = [&next](int count) {
    const int base = next;
    next += count;
    return base;
  };
  const int header0 = alloc(n);
  std::vector<int> header_base(static_cast<std::size_t>(hops) + 1, header0);
  if (rewriting) {
    for (int d = 1; d <= hops; ++d) {
      header_base[static_cast<std::size_t>(d)] = alloc(n);
    }
  }
  std::vector<int> loc_base(static_cast<std::size_t>(hops) + 1);
  for (int d = 0; d <= hops; ++d) {
    loc_base[static_cast<std::size_t>(d)] = alloc(loc_bits);
  }
  std::vector<int> pool_base(static_cast<std::size_t>(scratch_pools));
  for (int p = 0; p < scratch_pools; ++p) {
    pool_base[static_cast<std::size_t>(p)] = alloc(scratch);
  }
  const int total = next;
  if (total > options.max_qubits) {
    throw ResourceLimitError("compiled data-plane oracle needs " +
                             std::to_string(total) + " qubits (limit " +
                             std::to_string(options.max_qubits) + ")");
  }

  auto header_reg = [&](int d) {
    return span_register(header_base[static_cast<std::size_t>(d)], n);
  };
  auto loc_reg = [&](int d) {
    return span_register(loc_base[static_cast<std::size_t>(d)], loc_bits);
  };
  auto pool_for = [&](int d) {
    return pool_base[options.midcircuit_reset
                         ? 0
                         : static_cast<std::size_t>(d) - 1];
  };

  // One hop: priority-resolved rule firing, location/header update into the
  // next registers, scratch fully uncomputed within the block. Reaching the
  // destination is absorbing (the at-destination flag suppresses every rule).
  auto hop_block = [&](int d) {
    Circuit block(total);
    const auto hprev = header_reg(d - 1);
    const auto hnext = header_reg(d);
    const auto lprev = loc_reg(d - 1);
    const auto lnext = loc_reg(d);
    if (rule_count == 0) {
      for (int b = 0; b < loc_bits; ++b) {
        block.push(Gate::cx(lprev[static_cast<std::size_t>(b)],
                            lnext[static_cast<std::size_t>(b)]));
      }
      return block;
    }
    const int pool = pool_for(d);
    const int at_dst = pool;
    const int stay = pool + 1;
    auto fire = [pool](int j) { return pool + 2 + j; };

    Circuit flags(total);
    {
      std::vector<Ctrl> cs;
      append_value_ctrls(cs, lprev, static_cast<std::uint64_t>(dst));
      emit_flip(flags, cs, at_dst);
    }
    for (int j = 0; j < rule_count; ++j) {
      const ForwardingRule& rule = rules[static_cast<std::size_t>(j)];
      std::vector<Ctrl> cs;
      for (int b = 0; b < n; ++b) {
        if ((rule.match.mask >> b) & 1ULL) {
          cs.push_back({hprev[static_cast<std::size_t>(b)],
                        ((rule.match.value >> b) & 1ULL) != 0});
        }
      }
      append_value_ctrls(cs, lprev, static_cast<std::uint64_t>(rule.router));
      cs.push_back({at_dst, false});
      for (int i = 0; i < j; ++i) {
        if (rules[static_cast<std::size_t>(i)].router == rule.router) {
          cs.push_back({fire(i), false});  // first matching rule wins
        }
      }
      emit_flip(flags, cs, fire(j));
    }
    {
      std::vector<Ctrl> cs;
      for (int j = 0; j < rule_count; ++j) cs.push_back({fire(j), false});
      emit_flip(flags, cs, stay);
    }

    block.append(flags);
    for (int j = 0; j < rule_count; ++j) {
      const ForwardingRule& rule = rules[static_cast<std::size_t>(j)];
      for (int b = 0; b < loc_bits; ++b) {
        if ((static_cast<std::uint64_t>(rule.next_hop) >> b) & 1ULL) {
          block.push(Gate::cx(fire(j), lnext[static_cast<std::size_t>(b)]));
        }
      }
    }
    for (int b = 0; b < loc_bits; ++b) {
      block.push(Gate::mcx({stay, lprev[static_cast<std::size_t>(b)]},
                           lnext[static_cast<std::size_t>(b)]));
    }
    if (rewriting) {
      for (int j = 0; j < rule_count; ++j) {
        const RewriteSpec& rw = rules[static_cast<std::size_t>(j)].rewrite;
        for (int b = 0; b < n; ++b) {
          if ((rw.force_mask >> b) & 1ULL) {
            if ((rw.force_value >> b) & 1ULL) {
              block.push(
                  Gate::cx(fire(j), hnext[static_cast<std::size_t>(b)]));
            }
            // forced to 0: the fresh target already reads 0
          } else {
            block.push(Gate::mcx({fire(j), hprev[static_cast<std::size_t>(b)]},
                                 hnext[static_cast<std::size_t>(b)]));
          }
        }
      }
      for (int b = 0; b < n; ++b) {
        block.push(Gate::mcx({stay, hprev[static_cast<std::size_t>(b)]},
                             hnext[static_cast<std::size_t>(b)]));
      }
    }
    block.append(flags.inverted());
    return block;
  };

  Circuit init(total);
  for (int b = 0; b < loc_bits; ++b) {
    if ((static_cast<std::uint64_t>(src) >> b) & 1ULL) {
      init.push(Gate::x(loc_reg(0)[static_cast<std::size_t>(b)]));
    }
  }

  std::vector<Circuit> blocks;
  blocks.reserve(static_cast<std::size_t>(hops));
  for (int d = 1; d <= hops; ++d) blocks.push_back(hop_block(d));

  Circuit circuit(total);
  circuit.append(init);
  for (int d = 1; d <= hops; ++d) {
    circuit.append(blocks[static_cast<std::size_t>(d - 1)]);
    if (options.midcircuit_reset && scratch > 0) {
      append_resets(circuit, pool_for(d), scratch);
    }
  }
  {
    std::vector<Ctrl> cs;
    append_value_ctrls(cs, loc_reg(hops), static_cast<std::uint64_t>(dst));
    emit_phase(circuit, cs);
  }
  for (int d = hops; d >= 1; --d) {
    circuit.append(blocks[static_cast<std::size_t>(d - 1)].inverted());
    if (options.midcircuit_reset && scratch > 0) {
      append_resets(circuit, pool_for(d), scratch);
    }
  }
  circuit.append(init.inverted());

  CompiledOracle oracle;
  oracle.backend = OracleBackend::GateLevel;
  oracle.input_bits = n;
  oracle.total_qubits = total;
  oracle.circuit = std::move(circuit);
  oracle.verifier = std::make_shared<Verifier>(net, prop);
  return oracle;
}

CompiledOracle compile_gate_controlplane(const ControlPlaneNetwork& net,
                                         const Property& prop,
                                         const CompileOptions& options) {
  if (prop.kind != PropertyKind::Disconnected) {
    throw ConfigError(
        "the gate-level control-plane compiler supports disconnected only");
  }
  const int n = net.edge_count();
  if (n < 1) throw ConfigError("network has no failable edges");
  const int router_count = net.router_count();
  const RouterId src = net.router_index(prop.src);
  const RouterId dst = net.router_index(prop.dst);

  CompiledOracle oracle;
  oracle.backend = OracleBackend::GateLevel;
  oracle.input_bits = n;
  oracle.verifier = std::make_shared<Verifier>(net, prop);

  if (src == dst) {
    // A router always reaches itself: f is identically 0.
    oracle.total_qubits = n;
    oracle.circuit = Circuit(n);
    return oracle;
  }

  // Rounds of frontier expansion; R-1 rounds cover the longest possible
  // shortest path that any failure pattern can leave behind.
  const int rounds = router_count - 1;
  const bool cutoff = prop.max_failures < n;
  const int counter_bits =
      cutoff ? static_cast<int>(std::bit_width(static_cast<unsigned>(n))) : 0;

  std::vector<std::vector<std::pair<RouterId, int>>> adj(
      static_cast<std::size_t>(router_count));
  for (int e = 0; e < n; ++e) {
    const Edge& edge = net.edges[static_cast<std::size_t>(e)];
    adj[static_cast<std::size_t>(edge.a)].emplace_back(edge.b, e);
    adj[static_cast<std::size_t>(edge.b)].emplace_back(edge.a, e);
  }
  int max_terms = 0;
  for (RouterId v = 0; v < router_count; ++v) {
    if (v == src) continue;
    int terms = 0;
    for (const auto& [u, e] : adj[static_cast<std::size_t>(v)]) {
      if (u != src) ++terms;
    }
    max_terms = std::max(max_terms, terms);
  }
  const int pool_count =
      rounds < 2 ? 0 : (options.midcircuit_reset ? 1 : rounds - 1);

  int next = n;
  auto alloc = [&next](int count) {
    const int base = next;
    next += count;
    return base;
  };
  // Rounds 1..rounds-1 hold a reached flag per non-source router; the final
  // round only needs the destination's flag.
  std::vector<int> round_base(static_cast<std::size_t>(rounds) + 1, -1);
  for (int d = 1; d < rounds; ++d) {
    round_base[static_cast<std::size_t>(d)] = alloc(router_count - 1);
  }
  const int reached_dst = alloc(1);
  std::vector<int> pool_base(static_cast<std::size_t>(pool_count));
  for (int p = 0; p < pool_count; ++p) {
    pool_base[static_cast<std::size_t>(p)] = alloc(max_terms);
  }
  const int counter = cutoff ? alloc(counter_bits) : -1;
  const int ok_flag = cutoff ? alloc(1) : -1;
  const int total = next;
  if (total > options.max_qubits) {
    throw ResourceLimitError("compiled control-plane oracle needs " +
                             std::to_string(total) + " qubits (limit " +
                             std::to_string(options.max_qubits) + ")");
  }

  auto slot = [&](int d, RouterId v) {
    if (d == rounds) return reached_dst;  // only dst is tracked
    const int offset = v < src ? v : v - 1;
    return round_base[static_cast<std::size_t>(d)] + offset;
  };
  auto pool_for = [&](int d) {
    return pool_base[options.midcircuit_reset ? 0
                                              : static_cast<std::size_t>(d) -
                                                    2];
  };

  // reached_d(v) = reached_{d-1}(v) OR any (reached_{d-1}(u) AND edge_uv);
  // the source is reached by definition, so its terms are plain edge bits.
  auto round_block = [&](int d) {
    Circuit block(total);
    std::vector<RouterId> targets;
    if (d == rounds) {
      targets.push_back(dst);
    } else {
      for (RouterId v = 0; v < router_count; ++v) {
        if (v != src) targets.push_back(v);
      }
    }
    for (RouterId v : targets) {
      if (d == 1) {
        for (const auto& [u, e] : adj[static_cast<std::size_t>(v)]) {
          if (u == src) block.push(Gate::cx(e, slot(1, v)));
        }
        continue;
      }
      Circuit terms(total);
      std::vector<Ctrl> or_terms;
      or_terms.push_back({slot(d - 1, v), true});
      int used = 0;
      for (const auto& [u, e] : adj[static_cast<std::size_t>(v)]) {
        if (u == src) {
          or_terms.push_back({e, true});
        } else {
          const int s = pool_for(d) + used++;
          terms.push(Gate::mcx({slot(d - 1, u), e}, s));
          or_terms.push_back({s, true});
        }
      }
      block.append(terms);
      {
        std::vector<Ctrl> cs;
        for (const Ctrl& t : or_terms) cs.push_back({t.qubit, false});
        emit_flip(block, cs, slot(d, v));
        block.push(Gate::x(slot(d, v)));
      }
      block.append(terms.inverted());
    }
    return block;
  };

  std::vector<Circuit> blocks;
  for (int d = 1; d <= rounds; ++d) blocks.push_back(round_block(d));

  Circuit weight_block(total);
  if (cutoff) {
    const auto counter_reg = span_register(counter, counter_bits);
    for (int e = 0; e < n; ++e) {
      emit_controlled_increment(weight_block, {e, false}, counter_reg);
    }
    // The counter holds exactly one value, so XOR-accumulating the accepted
    // values builds the comparator without extra scratch.
    for (int v = 0; v <= prop.max_failures; ++v) {
      std::vector<Ctrl> cs;
      append_value_ctrls(cs, counter_reg, static_cast<std::uint64_t>(v));
      emit_flip(weight_block, cs, ok_flag);
    }
  }

  Circuit circuit(total);
  for (int d = 1; d <= rounds; ++d) {
    circuit.append(blocks[static_cast<std::size_t>(d - 1)]);
    if (options.midcircuit_reset && d >= 2 && max_terms > 0) {
      append_resets(circuit, pool_for(d), max_terms);
    }
  }
  circuit.append(weight_block);
  if (cutoff) {
    std::vector<Ctrl> cs{{reached_dst, false}, {ok_flag, true}};
    emit_phase(circuit, cs);
  } else {
    std::vector<Ctrl> cs{{reached_dst, false}};
    emit_phase(circuit, cs);
  }
  circuit.append(weight_block.inverted());
  for (int d = rounds; d >= 1; --d) {
    circuit.append(blocks[static_cast<std::size_t>(d - 1)].inverted());
    if (options.midcircuit_reset && d >= 2 && max_terms > 0) {
      append_resets(circuit, pool_for(d), max_terms);
    }
  }

  oracle.total_qubits = total;
  oracle.circuit = std::move(circuit);
  return oracle;
}

CompiledOracle add_exclusion(const CompiledOracle& oracle,
                             const ExclusionSet& seen) {
  CompiledOracle out = oracle;
  for (std::uint64_t x : seen.seen) {
    if (x >> out.input_bits) {
      throw ConfigError("excluded instance wider than the input register");
    }
    if (out.excluded(x)) continue;
    const bool is_solution = out.backend == OracleBackend::Diagonal
                                 ? std::binary_search(out.marked.begin(),
                                                      out.marked.end(), x)
                                 : out.verifier->evaluate(x);
    if (!is_solution) continue;  // phase is already +1
    out.exclusions.insert(
        std::upper_bound(out.exclusions.begin(), out.exclusions.end(), x), x);
    if (out.backend == OracleBackend::Diagonal) {
      const auto it = std::lower_bound(out.marked.begin(), out.marked.end(), x);
      out.marked.erase(it);
    } else {
      std::vector<Ctrl> cs;
      append_value_ctrls(cs, out.input_register(), x);
      emit_phase(out.circuit, cs);
    }
  }
  return out;
}

}  // namespace qnv
