// Machine-driven system builders: the ten-neuron simulator, the six-neuron
// input encoder, their schedules, the output decoder and the verification
// harness.  Tape halves live as spike counts in radix z = 2^v; one simulated
// transition takes exactly v+9 timesteps between boundaries.

#include "snpsim/universal.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace snpsim {

namespace {

std::string pow_txt(std::uint64_t n) {
  return n == 1 ? std::string("s") : "s^" + std::to_string(n);
}

// {offset + k*base : k >= 0}, written with the star first.
std::string from_txt(std::uint64_t offset, std::uint64_t base) {
  return "(" + pow_txt(base) + ")*" + pow_txt(offset);
}

// {offset + k*base : k >= 0} with minimum spelled out front (offset >= base).
std::string min_txt(std::uint64_t offset, std::uint64_t base) {
  return pow_txt(offset) + "(" + pow_txt(base) + ")*";
}

struct delta_pair {
  int state = 0;
  int symbol = 0;
  tm_rule rule;
  std::uint64_t code = 0;
};

std::string pair_txt(const delta_pair& p) {
  std::ostringstream os;
  os << "q" << p.state << ",a" << p.symbol << " -> a" << p.rule.write << ","
     << (p.rule.move == tm_move::left ? "L" : "R") << ",q" << p.rule.next
     << " (code " << p.code << ")";
  return os.str();
}

// Appends rules to one neuron and records template provenance per rule.
struct neuron_builder {
  universal_system* out;
  int id;

  void add(const std::string& expr, bignat b, bignat p, std::uint64_t d,
           const std::string& note) {
    neuron_spec& n = out->system.neurons[id - 1];
    n.rules.push_back(make_rule(parse_expr(expr), std::move(b), std::move(p), d));
    out->provenance[{id, int(n.rules.size()) - 1}] = note;
  }
};

void require_valid(const tm_spec& spec) {
  const auto problems = validate_tm(spec);
  if (!problems.empty()) {
    std::string msg = "machine is not well formed:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw build_error(msg);
  }
}

}  // namespace

universal_system build_pi_m(const tm_spec& spec) {
  require_valid(spec);
  const encode_params_t params = encode_params(spec.states, spec.symbols);
  if (params.v > 31)
    throw build_error("state/symbol space too large for the radix arithmetic");
  const std::uint64_t z = params.z;
  const std::uint64_t v = std::uint64_t(params.v);
  const std::uint64_t zz = z * z;

  std::vector<delta_pair> left_pairs, right_pairs, all_pairs, halt_pairs;
  for (const auto& [key, rule] : spec.delta) {
    delta_pair p{key.first, key.second, rule,
                 state_code(key.first, spec.symbols) + sym_code(key.second)};
    all_pairs.push_back(p);
    (rule.move == tm_move::left ? left_pairs : right_pairs).push_back(p);
  }
  for (int a = 1; a <= spec.symbols; ++a) {
    delta_pair p{spec.states, a, {}, state_code(spec.states, spec.symbols) + sym_code(a)};
    halt_pairs.push_back(p);
    all_pairs.push_back(p);
  }

  universal_system u;
  u.params = params;
  u.system.name = spec.name + "_simulator";
  u.system.mode = snp_mode::exhaustive;
  u.system.convention = out_convention::emission_events;
  u.system.neurons.assign(10, neuron_spec{});
  u.system.neurons[9].initial_spikes = 31;
  u.system.input = 5;
  u.system.output = 3;
  for (auto [a, b] : {std::pair<int, int>{1, 5}, {2, 5}, {2, 3}, {5, 4}, {5, 6},
                      {5, 7}, {5, 8}, {5, 9}, {7, 10}, {9, 10}, {10, 6}, {10, 4},
                      {1, 4}, {4, 1}, {2, 6}, {6, 2}, {7, 8}, {8, 7}, {8, 9},
                      {9, 8}, {7, 9}, {9, 7}})
    u.system.synapses.insert({a, b});

  // Left-tape neuron: on a right move it hands the whole number off to the
  // multiplier cascade; on a left move it divides by the radix, timed so the
  // quotient lands after the cascade has finished.
  neuron_builder n1{&u, 1};
  for (const auto& p : right_pairs)
    n1.add(from_txt(p.code, z), 1, 1, 1, "template=hand-off-to-multiplier; " + pair_txt(p));
  for (const auto& p : left_pairs)
    n1.add(min_txt(2 * z + p.code, z), z, 1, v + 6,
           "template=divide-by-radix; applied one step after the boundary, fires at "
           "boundary+v+6; " + pair_txt(p));
  for (const auto& p : left_pairs)
    n1.add(pow_txt(z + p.code), z, z, v + 6,
           "template=divide-by-radix-regrow; single-cell half re-plants a blank; " +
               pair_txt(p));
  for (const auto& p : left_pairs)
    n1.add(pow_txt(p.code), 1, 0, 0, "template=discard-spent-code; " + pair_txt(p));

  // Right-tape neuron: mirror of neuron 1, with the halting codes also routed
  // through the hand-off rule so the result reaches the output neuron.
  neuron_builder n2{&u, 2};
  for (const auto& p : left_pairs)
    n2.add(from_txt(p.code, z), 1, 1, 1, "template=hand-off-to-multiplier; " + pair_txt(p));
  for (const auto& p : halt_pairs)
    n2.add(from_txt(p.code, z), 1, 1, 1,
           "template=hand-off-to-multiplier; halting pair q" + std::to_string(p.state) +
               ",a" + std::to_string(p.symbol) + " (code " + std::to_string(p.code) + ")");
  for (const auto& p : right_pairs)
    n2.add(min_txt(2 * z + p.code, z), z, 1, v + 6,
           "template=divide-by-radix; applied one step after the boundary, fires at "
           "boundary+v+6; " + pair_txt(p));
  for (const auto& p : right_pairs)
    n2.add(pow_txt(z + p.code), z, z, v + 6,
           "template=divide-by-radix-regrow; single-cell half re-plants a blank; " +
               pair_txt(p));
  for (const auto& p : right_pairs)
    n2.add(pow_txt(p.code), 1, 0, 0, "template=discard-spent-code; " + pair_txt(p));

  // Output neuron: emits the right-tape number on a halting code, swallows
  // every broadcast it sees otherwise.
  neuron_builder n3{&u, 3};
  for (const auto& p : halt_pairs)
    n3.add(from_txt(p.code, z), z, z, 1,
           "template=emit-result; halting pair q" + std::to_string(p.state) + ",a" +
               std::to_string(p.symbol) + " (code " + std::to_string(p.code) + ")");
  for (const auto& p : all_pairs)
    if (p.state != spec.states)
      n3.add(from_txt(p.code, z), 1, 0, 0, "template=swallow-nonhalt-broadcast; " + pair_txt(p));
  for (int a = 1; a <= spec.symbols; ++a)
    n3.add(from_txt(sym_code(a), z), 1, 0, 0,
           "template=swallow-quotient; symbol a" + std::to_string(a));
  n3.add(pow_txt(z), 1, 0, 0, "template=swallow-regrown-blank");

  // Left-side splitter: returns the loaded left number during start-up, copies
  // whole multiples through toward neuron 1, injects the boundary code, and
  // strips the newly scanned cell off the quotient.
  neuron_builder n4{&u, 4};
  n4.add(min_txt(2, z), z, z, 2, "template=capture-loaded-left; start-up only");
  n4.add("(" + pow_txt(z) + ")*", 1, 1, 1, "template=copy-through");
  n4.add(pow_txt(2), 2, 0, 0, "template=drop-load-marker; start-up only");
  for (const auto& p : all_pairs) {
    const bool halting = p.state == spec.states;
    n4.add(pow_txt(p.code), 1, 1, 1,
           "template=inject-code; " +
               (halting ? "halting pair (code " + std::to_string(p.code) + ")" : pair_txt(p)));
  }
  for (const auto& p : all_pairs) {
    const bool halting = p.state == spec.states;
    n4.add(min_txt(z + p.code, z), 1, 0, 0,
           "template=swallow-broadcast; " +
               (halting ? "halting pair (code " + std::to_string(p.code) + ")" : pair_txt(p)));
  }
  for (int a = 1; a <= spec.symbols; ++a)
    n4.add(pow_txt(sym_code(a)), sym_code(a), 0, 0,
           "template=drop-symbol-residue; symbol a" + std::to_string(a) +
               (a == 1 ? "; also clears the boundary-timer spike" : ""));
  for (int a = 1; a <= spec.symbols; ++a)
    n4.add(min_txt(z + sym_code(a), z), z, z, 1,
           "template=strip-new-head; symbol a" + std::to_string(a));

  // Broadcast hub (the input neuron): relays the three loading numbers, then
  // every boundary payload, and turns quotients into the new head symbol.
  neuron_builder n5{&u, 5};
  n5.add(min_txt(2, z), 1, 1, 1, "template=relay-loaded-left; start-up only");
  n5.add(min_txt(2 * z, z), 1, 1, 1, "template=relay-loaded-right; start-up only");
  for (const auto& p : all_pairs) {
    const bool halting = p.state == spec.states;
    n5.add(from_txt(p.code, z), 1, 1, 1,
           "template=broadcast-code-payload; " +
               (halting ? "halting pair (code " + std::to_string(p.code) + ")" : pair_txt(p)));
  }
  for (int a = 1; a <= spec.symbols; ++a)
    n5.add(min_txt(z + sym_code(a), z), z, 0, 0,
           "template=strip-quotient-to-head; symbol a" + std::to_string(a));
  n5.add(pow_txt(z), z - 1, 0, 0,
         "template=regrow-blank-head; a re-planted single-cell half scans the blank");
  for (int a = 1; a <= spec.symbols; ++a)
    n5.add(pow_txt(sym_code(a)), 1, 1, 1,
           "template=forward-new-head; symbol a" + std::to_string(a));

  // Right-side splitter: mirror of neuron 4 without the start-up capture.
  neuron_builder n6{&u, 6};
  n6.add(min_txt(2, z), 1, 0, 0, "template=drop-loaded-left; start-up only");
  n6.add("(" + pow_txt(z) + ")*", 1, 1, 1, "template=copy-through");
  for (const auto& p : all_pairs) {
    const bool halting = p.state == spec.states;
    n6.add(pow_txt(p.code), 1, 1, 1,
           "template=inject-code; " +
               (halting ? "halting pair (code " + std::to_string(p.code) + ")" : pair_txt(p)));
  }
  for (const auto& p : all_pairs) {
    const bool halting = p.state == spec.states;
    n6.add(min_txt(z + p.code, z), 1, 0, 0,
           "template=swallow-broadcast; " +
               (halting ? "halting pair (code " + std::to_string(p.code) + ")" : pair_txt(p)));
  }
  for (int a = 1; a <= spec.symbols; ++a)
    n6.add(pow_txt(sym_code(a)), sym_code(a), 0, 0,
           "template=drop-symbol-residue; symbol a" + std::to_string(a) +
               (a == 1 ? "; also clears the boundary-timer spike" : ""));
  for (int a = 1; a <= spec.symbols; ++a)
    n6.add(min_txt(z + sym_code(a), z), z, z, 1,
           "template=strip-new-head; symbol a" + std::to_string(a));

  // Multiplier cascade: three neurons in a triangle double the payload once
  // per step for v steps; everything else that reaches them is dropped.  The
  // doubling steps form one union rule so that stages whose residues coincide
  // never present as distinct choices.
  {
    std::string doubling;
    std::string codes;
    for (const auto& p : all_pairs) {
      if (p.state == spec.states) continue;
      for (std::uint64_t j = 0; j < v; ++j) {
        if (!doubling.empty()) doubling += "|";
        doubling += min_txt(z + (p.code << j), z);
      }
      if (!codes.empty()) codes += ",";
      codes += std::to_string(p.code);
    }
    const std::string doubling_note =
        "template=doubling-cascade; one union rule over multipliers 2^0..2^" +
        std::to_string(v - 1) + " for codes {" + codes +
        "}; collapsed into a single rule so coinciding stage residues cannot present "
        "as distinct choices";
    for (int id : {7, 8, 9}) {
      neuron_builder nb{&u, id};
      nb.add(min_txt(2, z), 1, 0, 0, "template=drop-loaded-left; start-up only");
      nb.add("(" + pow_txt(z) + ")*", 1, 0, 0, "template=drop-multiples");
      for (const auto& p : all_pairs) {
        const bool halting = p.state == spec.states;
        nb.add(pow_txt(p.code), 1, 0, 0,
               "template=drop-code-payload; " +
                   (halting ? "halting pair (code " + std::to_string(p.code) + ")"
                            : pair_txt(p)));
      }
      nb.add(doubling, 1, 1, 1, doubling_note);
      for (int a = 1; a <= spec.symbols; ++a)
        nb.add(pow_txt(sym_code(a)), sym_code(a), 0, 0,
               "template=drop-symbol-residue; symbol a" + std::to_string(a));
    }
  }

  // Sequencer: a start-up countdown, then one spike bounced once per macro
  // step whose long delay defines the boundary; the product of the cascade is
  // split back into tape number, written cell and next-state announcement.
  neuron_builder n10{&u, 10};
  n10.add(pow_txt(31), 16, 0, 0, "template=startup-countdown; 31 -> 15");
  n10.add(pow_txt(15), 8, 0, 0, "template=startup-countdown; 15 -> 7");
  n10.add(pow_txt(7), 4, 0, 0, "template=startup-countdown; 7 -> 3");
  n10.add(pow_txt(3), 2, 0, 0, "template=startup-countdown; 3 -> 1");
  n10.add("s", 1, 1, v + 3, "template=boundary-timer");
  for (const auto& p : all_pairs) {
    if (p.state == spec.states) continue;
    n10.add(from_txt(z * p.code, zz), zz, zz, 1,
            "template=split-product-emit-tape; " + pair_txt(p));
  }
  for (const auto& p : all_pairs) {
    if (p.state == spec.states) continue;
    const std::uint64_t next = state_code(p.rule.next, spec.symbols);
    n10.add(pow_txt(z * p.code), z * p.code - next - 1, bignat(z) * sym_code(p.rule.write), 1,
            "template=swap-code-for-written-cell; " + pair_txt(p));
  }
  {
    std::set<int> targets;
    for (const auto& p : all_pairs)
      if (p.state != spec.states) targets.insert(p.rule.next);
    for (int t : targets) {
      const std::uint64_t sc = state_code(t, spec.symbols);
      n10.add(pow_txt(sc + 1), sc, sc, 4,
              "template=announce-next-state; target q" + std::to_string(t));
    }
  }

  const auto problems = validate(u.system);
  if (!problems.empty()) {
    std::string msg = "generated simulator failed validation:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw build_error(msg);
  }
  return u;
}

macro_schedule build_schedule(const encoded_config& enc, const encode_params_t& params) {
  macro_schedule ms;
  ms.schedule[1] = enc.x + 2;
  ms.schedule[2] = enc.y;
  ms.schedule[4] = enc.code;
  ms.period = std::uint64_t(params.v) + 9;
  ms.offset = 5;
  return ms;
}

tm_config pad_for_pi_m(const tm_config& cfg) {
  tm_config padded = cfg;
  while (padded.right.size() < 2) padded.right.push_back(1);
  return padded;
}

encoded_config encode_for_pi_m(const tm_spec& spec, const tm_config& cfg) {
  return encode_config(spec, pad_for_pi_m(cfg));
}

universal_system build_pi_input(const tm_spec& spec) {
  require_valid(spec);
  const encode_params_t params = encode_params(spec.states, spec.symbols);
  const std::uint64_t z = params.z;
  const std::uint64_t v = std::uint64_t(params.v);

  universal_system u;
  u.params = params;
  u.system.name = spec.name + "_input_encoder";
  u.system.mode = snp_mode::exhaustive;
  u.system.convention = out_convention::emission_events;
  u.system.neurons.assign(6, neuron_spec{});
  u.system.input = 1;
  u.system.output = 6;
  for (auto [a, b] : {std::pair<int, int>{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3},
                      {3, 2}, {2, 4}, {4, 2}, {3, 4}, {4, 3}, {2, 5}, {4, 5}, {5, 6}})
    u.system.synapses.insert({a, b});

  neuron_builder n1{&u, 1};
  n1.add("(s)*", 1, 1, 1, "template=relay-input");
  for (int id : {2, 3, 4}) {
    neuron_builder nb{&u, id};
    nb.add("(s)*", 1, 1, 1, "template=doubling-pair");
  }
  neuron_builder n5{&u, 5};
  for (int a = 1; a <= spec.symbols; ++a)
    n5.add(from_txt(sym_code(a), z), 1, 1, v,
           "template=capture-cell; symbol a" + std::to_string(a) +
               "; the delay spans one doubling round");
  n5.add(from_txt(2, z), 1, 1, 1, "template=final-relay; end marker");
  neuron_builder n6{&u, 6};
  for (int a = 1; a <= spec.symbols; ++a)
    n6.add(from_txt(sym_code(a), z), 1, 0, 0,
           "template=drop-partial; symbol a" + std::to_string(a));
  n6.add(from_txt(2, z), z, z, 1, "template=emit-packed; end marker");

  const auto problems = validate(u.system);
  if (!problems.empty()) {
    std::string msg = "generated encoder failed validation:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw build_error(msg);
  }
  return u;
}

schedule_map build_input_word(const std::vector<int>& cells, const encode_params_t& params) {
  if (cells.empty()) throw build_error("input word needs at least one cell");
  const std::uint64_t v = std::uint64_t(params.v);
  schedule_map w;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] < 1 || sym_code(cells[i]) >= params.z)
      throw build_error("cell symbol out of range");
    w[i * v + 1] = sym_code(cells[i]);
  }
  w[cells.size() * v + 1] = 2;
  return w;
}

namespace {

std::vector<int> decode_digits(const bignat& emission, int symbols, std::uint64_t z,
                               int* stripped_out) {
  if (emission == 0) throw decode_error("emission is empty");
  bignat n = emission;
  int stripped = 0;
  while (mod_u64(n, z) == 0 && n != 0) {
    n /= z;
    ++stripped;
  }
  if (stripped < 1)
    throw decode_error("emission has a nonzero unit digit; not a tape encoding");
  if (stripped > 2)
    throw decode_error("emission has too many zero digits; not a tape encoding");
  std::vector<int> cells;
  while (n != 0) {
    const std::uint64_t digit = mod_u64(n, z);
    if (digit % 2 == 0 || digit > 2ull * std::uint64_t(symbols) - 1)
      throw decode_error("emission has a non-symbol digit");
    cells.push_back(int((digit + 1) / 2));
    n /= z;
  }
  if (stripped_out) *stripped_out = stripped;
  return cells;
}

}  // namespace

std::vector<int> decode_output(const bignat& emission, const tm_spec& spec) {
  const encode_params_t params = encode_params(spec.states, spec.symbols);
  return decode_digits(emission, spec.symbols, params.z, nullptr);
}

verify_report verify_against_oracle(const tm_spec& spec, const tm_config& initial,
                                    std::uint64_t n_steps) {
  require_valid(spec);
  {
    const auto problems = validate_config(spec, initial);
    if (!problems.empty()) {
      std::string msg = "initial configuration is not well formed:";
      for (const auto& p : problems) msg += " " + p + ";";
      throw build_error(msg);
    }
  }
  const tm_config padded = pad_for_pi_m(initial);
  const encode_params_t params = encode_params(spec.states, spec.symbols);

  // Iterate the transition arithmetic to get the expected boundary values.
  std::vector<encoded_config> expected{encode_config(spec, padded)};
  bool halted = false;
  for (std::uint64_t k = 0; k < n_steps; ++k) {
    if (split_code(spec, expected.back().code).first == spec.states) {
      halted = true;
      break;
    }
    expected.push_back(apply_transition_encoded(spec, expected.back()));
  }
  if (!halted && split_code(spec, expected.back().code).first == spec.states) halted = true;
  const std::uint64_t last = expected.size() - 1;  // last boundary index checked

  verify_report report;
  report.tm_halted = halted;

  const universal_system u = build_pi_m(spec);
  const macro_schedule ms = build_schedule(expected.front(), params);
  const std::uint64_t max_steps =
      halted ? ms.boundary(last) + ms.period + 2 : ms.boundary(last);
  const run_trace trace =
      run(u.system, ms.schedule, run_policy::strict(), max_steps, /*with_snapshots=*/true);
  report.steps_run = trace.steps;
  report.quiescent = trace.reason == halt_kind::quiescent;

  if (trace.violation) {
    report.ok = false;
    std::ostringstream os;
    os << "nondeterministic choice at step " << trace.violation->t << " in neuron "
       << trace.violation->neuron;
    report.detail = os.str();
    return report;
  }

  auto check = [&](std::uint64_t k, int neuron, const bignat& want) {
    const std::uint64_t t = ms.boundary(k);
    if (t > trace.steps) {
      report.ok = false;
      std::ostringstream os;
      os << "run ended at step " << trace.steps << " before boundary " << k;
      report.detail = os.str();
      return false;
    }
    const bignat& got = trace.snapshots[t - 1][neuron - 1];
    if (got != want) {
      report.ok = false;
      report.mismatch = verify_mismatch{k, t, neuron, want, got};
      std::ostringstream os;
      os << "boundary " << k << " (step " << t << "): neuron " << neuron << " holds "
         << to_string(got) << ", expected " << to_string(want);
      report.detail = os.str();
      return false;
    }
    return true;
  };

  for (std::uint64_t k = 0; k <= last; ++k) {
    if (!check(k, 1, expected[k].x) || !check(k, 2, expected[k].y) ||
        !check(k, 4, expected[k].code) || !check(k, 6, expected[k].code) ||
        !check(k, 10, 1))
      return report;
    ++report.boundaries_checked;
  }

  if (halted) {
    if (trace.outputs.size() != 1) {
      report.ok = false;
      report.detail = "expected exactly one emission after halting, saw " +
                      std::to_string(trace.outputs.size());
      return report;
    }
    const output_event& out = trace.outputs.front();
    report.emission_seen = true;
    report.emission = out.amount;
    if (out.t != ms.boundary(last) + 2) {
      report.ok = false;
      report.detail = "emission at step " + std::to_string(out.t) + ", expected step " +
                      std::to_string(ms.boundary(last) + 2);
      return report;
    }
    try {
      report.decoded_cells =
          decode_digits(out.amount, spec.symbols, params.z, &report.stripped_zero_digits);
    } catch (const decode_error& e) {
      report.ok = false;
      report.detail = std::string("emission does not decode: ") + e.what();
      return report;
    }
    const tm_config final_cfg = tm_run(spec, padded, last);
    if (report.decoded_cells != final_cfg.right) {
      report.ok = false;
      report.detail = "decoded emission disagrees with the machine's final right half";
      return report;
    }
    if (!report.quiescent) {
      report.ok = false;
      report.detail = "simulator did not go quiet after halting";
      return report;
    }
  } else if (!trace.outputs.empty()) {
    report.ok = false;
    report.detail = "unexpected emission before halting";
    return report;
  }

  return report;
}

}  // namespace snpsim
