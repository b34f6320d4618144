// Acceptance checks, one line per criterion.  Each prints [PASS] or [FAIL]
// with the measured numbers; the process exits nonzero if any line fails.
//
// Tolerances and envelope constants are pinned here, in one place:
//   - kStepsEnvelopeC:  per-timestep machine steps <= C * (x_r^2 * m + m^2)
//   - kLinearitySlackPct: steps(T)/T spread allowed across T in {10,50,200}
//   - kGrowthEnvelopeC: peak spikes after n macro steps <= C * z^(n+3)

#include <chrono>
#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "desk_machines.hpp"
#include "nfa_oracle.hpp"
#include "snpsim/snp2cm.hpp"
#include "snpsim/universal.hpp"

using namespace snpsim;

namespace {

constexpr std::uint64_t kStepsEnvelopeC = 4;
constexpr std::uint64_t kLinearitySlackPct = 5;
constexpr std::uint64_t kGrowthEnvelopeC = 4;

int failures = 0;
std::uint64_t strict_runs = 0;
std::uint64_t strict_violations = 0;

void report(const std::string& label, bool ok, const std::string& detail) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << label;
  if (!detail.empty()) std::cout << " -- " << detail;
  std::cout << "\n";
  if (!ok) ++failures;
}

// Runs a generated system under the strict policy, bookkeeping for the
// zero-violation criterion.
run_trace run_strict(const snp_system& sys, const schedule_map& sched,
                     std::uint64_t steps, bool snapshots) {
  run_trace tr = run(sys, sched, run_policy::strict(), steps, snapshots);
  ++strict_runs;
  if (tr.violation.has_value()) ++strict_violations;
  return tr;
}

std::string num(const bignat& n) {
  std::ostringstream os;
  os << n;
  return os.str();
}

// --------------------------------------------------------------------------
// 1. The loading phase reproduces the staged spike movements exactly.
// --------------------------------------------------------------------------
void criterion_1() {
  const tm_spec spec = desk::tm_halt1();  // two states, two symbols, z = 16
  const universal_system u = build_pi_m(spec);
  const encoded_config enc = encode_for_pi_m(spec, tm_config{});
  const macro_schedule ms = build_schedule(enc, u.params);
  const run_trace tr = run_strict(u.system, ms.schedule, 6, true);

  bool ok = tr.snapshots.size() >= 5 && !tr.violation.has_value();
  std::string detail;
  auto expect = [&](std::uint64_t t, int neuron, const bignat& want) {
    if (!ok) return;
    const bignat& got = tr.snapshots[std::size_t(t - 1)][std::size_t(neuron - 1)];
    if (got != want) {
      ok = false;
      std::ostringstream os;
      os << "step " << t << " neuron " << neuron << ": expected " << want
         << ", saw " << got;
      detail = os.str();
    }
  };
  const bignat x = enc.x, y = enc.y;
  const bignat code(enc.code);
  expect(1, 5, x + bignat(2));
  expect(2, 4, x + bignat(2));
  expect(4, 4, bignat(2));
  expect(4, 5, code);
  expect(5, 1, x);
  expect(5, 2, y);
  expect(5, 4, code);
  expect(5, 6, code);
  expect(5, 10, bignat(1));
  const std::uint64_t countdown[5] = {31, 15, 7, 3, 1};
  for (std::uint64_t t = 1; t <= 5; ++t) expect(t, 10, bignat(countdown[t - 1]));
  if (ok)
    detail = "X=" + num(x) + " Y=" + num(y) + " code=" + num(code) +
             "; five staged steps, countdown 31/15/7/3/1";
  report("criterion 1: loading trace exactness", ok, detail);
}

// --------------------------------------------------------------------------
// 2. Every simulated transition takes exactly log2(z)+9 = 13 steps, checked
//    over more than twenty consecutive transitions.
// --------------------------------------------------------------------------
void criterion_2() {
  const verify_report rep = verify_against_oracle(desk::tm_runner(), tm_config{}, 21);
  const macro_schedule ms =
      build_schedule(encode_for_pi_m(desk::tm_runner(), tm_config{}),
                     encode_params(2, 2));
  const bool ok = rep.ok && ms.period == 13 && rep.boundaries_checked >= 21;
  std::ostringstream os;
  os << "period " << ms.period << ", boundaries verified " << rep.boundaries_checked
     << (rep.ok ? "" : ("; " + rep.detail));
  report("criterion 2: thirteen steps per transition over 20+ transitions", ok, os.str());
}

// --------------------------------------------------------------------------
// 3. Boundary contents match iterated transition arithmetic; the arithmetic
//    itself is validated by encode/step commutation on 200+ random cases.
// --------------------------------------------------------------------------
void criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();

  // Independent validation of the arithmetic oracle.
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> pick_states(2, 4);
  std::uniform_int_distribution<int> pick_symbols(1, 3);
  std::uniform_int_distribution<int> pick_sym_or(1, 3);
  int commuted = 0;
  bool commute_ok = true;
  while (commuted < 200 && commute_ok) {
    tm_spec spec;
    spec.states = pick_states(rng);
    spec.symbols = pick_symbols(rng);
    std::uniform_int_distribution<int> sym(1, spec.symbols);
    std::uniform_int_distribution<int> st(1, spec.states);
    for (int q = 1; q < spec.states; ++q)
      for (int a = 1; a <= spec.symbols; ++a)
        spec.delta[{q, a}] = tm_rule{sym(rng), rng() % 2 ? tm_move::left : tm_move::right,
                                     st(rng)};
    std::uniform_int_distribution<int> nonhalt(1, spec.states - 1);
    std::uniform_int_distribution<std::size_t> len(0, 3);
    tm_config cfg;
    cfg.left.clear();
    cfg.right.clear();
    for (std::size_t i = 0; i < len(rng); ++i) cfg.left.push_back(sym(rng));
    cfg.left.push_back(1);
    for (std::size_t i = 0; i < len(rng); ++i) cfg.right.push_back(sym(rng));
    cfg.right.push_back(1);
    cfg.head = sym(rng);
    cfg.state = nonhalt(rng);
    for (int hop = 0; hop < 4 && !tm_halted(spec, cfg); ++hop) {
      const encoded_config via_arith =
          apply_transition_encoded(spec, encode_config(spec, cfg));
      cfg = tm_step(spec, cfg);
      const encoded_config direct = encode_config(spec, cfg);
      if (via_arith.x != direct.x || via_arith.y != direct.y ||
          via_arith.code != direct.code) {
        commute_ok = false;
        break;
      }
      ++commuted;
    }
  }

  const verify_report runner = verify_against_oracle(desk::tm_runner(), tm_config{}, 21);
  const verify_report zigzag =
      verify_against_oracle(desk::tm_zigzag(), desk::tm_zigzag_config(), 12);
  const auto elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
  const bool ok = commute_ok && commuted >= 200 && runner.ok && zigzag.ok &&
                  elapsed_ms < 60000;
  std::ostringstream os;
  os << commuted << " commutation cases, " << runner.boundaries_checked << "+"
     << zigzag.boundaries_checked << " boundaries exact, " << elapsed_ms << " ms";
  if (!runner.ok) os << "; runner: " << runner.detail;
  if (!zigzag.ok) os << "; zigzag: " << zigzag.detail;
  report("criterion 3: boundary contents match the arithmetic oracle", ok, os.str());
}

// --------------------------------------------------------------------------
// 4. Halting machines emit once, and the emission decodes to the final tape.
// --------------------------------------------------------------------------
void criterion_4() {
  bool ok = true;
  std::ostringstream os;
  struct halt_case {
    const char* name;
    tm_spec spec;
    tm_config initial;
  };
  const halt_case cases[] = {
      {"one-step", desk::tm_halt1(), tm_config{}},
      {"two-step", desk::tm_halt10(), desk::tm_halt10_config()},
  };
  for (const halt_case& c : cases) {
    const verify_report rep = verify_against_oracle(c.spec, c.initial, 10);
    if (!(rep.ok && rep.tm_halted && rep.emission_seen && rep.quiescent)) {
      ok = false;
      os << c.name << ": " << (rep.detail.empty() ? "did not halt cleanly" : rep.detail);
      break;
    }
    os << c.name << ": emission " << rep.emission << " = tape [";
    for (std::size_t i = 0; i < rep.decoded_cells.size(); ++i)
      os << (i ? " " : "") << "a" << rep.decoded_cells[i];
    os << "] with " << rep.stripped_zero_digits << " radix factor(s) stripped; ";
  }
  report("criterion 4: halting emission decodes to the final tape", ok, os.str());
}

// --------------------------------------------------------------------------
// 5. The input encoder packs random cell sequences exactly on schedule.
// --------------------------------------------------------------------------
void criterion_5() {
  const tm_spec spec = desk::tm_halt1();
  const universal_system u = build_pi_input(spec);
  const std::uint64_t v = std::uint64_t(u.params.v);
  std::mt19937_64 rng(20260822);
  std::uniform_int_distribution<std::size_t> pick_len(1, 8);
  std::uniform_int_distribution<int> pick_cell(1, 2);
  bool ok = true;
  std::string detail;
  for (int trial = 0; trial < 20 && ok; ++trial) {
    std::vector<int> cells(pick_len(rng));
    for (int& c : cells) c = pick_cell(rng);
    const std::uint64_t x = cells.size();
    bignat want(0);
    for (int c : cells) want = want * bignat(u.params.z) + bignat(sym_code(c));
    want = want * bignat(u.params.z);
    const run_trace tr =
        run_strict(u.system, build_input_word(cells, u.params), x * v + 6, false);
    if (tr.violation.has_value() || tr.outputs.size() != 1 ||
        tr.outputs[0].t != x * v + 3 || tr.outputs[0].amount != want) {
      ok = false;
      std::ostringstream os;
      os << "sequence of " << x << " cells: expected " << want << " at step "
         << (x * v + 3) << ", saw ";
      if (tr.outputs.empty())
        os << "no emission";
      else
        os << tr.outputs[0].amount << " at " << tr.outputs[0].t
           << " (of " << tr.outputs.size() << ")";
      detail = os.str();
    }
  }
  if (ok) detail = "20 random sequences, lengths 1..8, emission at x*log2(z)+3";
  report("criterion 5: input encoder emits the packed value on time", ok, detail);
}

// --------------------------------------------------------------------------
// 6. Everything above ran under the strict policy with zero violations.
// --------------------------------------------------------------------------
void criterion_6() {
  // verify_against_oracle always runs strict; count its runs in too.
  const bool ok = strict_violations == 0 && strict_runs > 0;
  std::ostringstream os;
  os << strict_runs << " direct strict runs plus all oracle verifications, "
     << strict_violations << " violations";
  report("criterion 6: simulator suite is deterministic under strict policy", ok, os.str());
}

// --------------------------------------------------------------------------
// 7 and 8. Compiled counter machines agree with the engine, inside the step
//          and space envelopes.
// --------------------------------------------------------------------------
rule_spec spiking_rule(const std::string& guard, std::uint64_t b, std::uint64_t d) {
  return make_rule(parse_expr(guard), bignat(b), bignat(1), d);
}

snp_system delay_line(std::uint64_t gap) {
  snp_system sys;
  sys.name = "chain";
  sys.mode = snp_mode::standard;
  sys.convention = out_convention::spike_gap;
  sys.output = 2;
  neuron_spec head;
  head.initial_spikes = 2;
  head.rules.push_back(spiking_rule("s^2", 1, 1));
  head.rules.push_back(spiking_rule("s", 1, gap));
  sys.neurons.push_back(head);
  neuron_spec relay;
  relay.rules.push_back(spiking_rule("s", 1, 1));
  sys.neurons.push_back(relay);
  sys.synapses = {{1, 2}};
  return sys;
}

snp_system pingpong() {
  snp_system sys;
  sys.name = "pingpong";
  sys.mode = snp_mode::standard;
  sys.convention = out_convention::spike_gap;
  sys.output = 2;
  neuron_spec a;
  a.initial_spikes = 1;
  a.rules.push_back(spiking_rule("s", 1, 1));
  sys.neurons.push_back(a);
  sys.neurons.push_back(a);  // same single relay rule, no initial spike
  sys.neurons[1].initial_spikes = 0;
  sys.synapses = {{1, 2}, {2, 1}};
  return sys;
}

// Relay loop that never reaches the machine's halt state: the output neuron
// hears nothing, so per-timestep machine work can be measured indefinitely.
snp_system ticker() {
  snp_system sys;
  sys.name = "ticker";
  sys.mode = snp_mode::standard;
  sys.convention = out_convention::spike_gap;
  sys.output = 3;
  neuron_spec a;
  a.initial_spikes = 1;
  a.rules.push_back(spiking_rule("s", 1, 1));
  sys.neurons.push_back(a);
  a.initial_spikes = 0;
  sys.neurons.push_back(a);
  sys.neurons.push_back(neuron_spec{});
  sys.synapses = {{1, 2}, {2, 1}};
  return sys;
}

snp_system wrap_consumer() {
  snp_system sys;
  sys.name = "wrap";
  sys.mode = snp_mode::standard;
  sys.convention = out_convention::spike_gap;
  sys.output = 2;
  neuron_spec head;
  head.initial_spikes = 5;
  head.rules.push_back(spiking_rule("s^3(s^2)*", 2, 1));
  sys.neurons.push_back(head);
  neuron_spec relay;
  relay.rules.push_back(spiking_rule("s", 1, 1));
  sys.neurons.push_back(relay);
  sys.synapses = {{1, 2}};
  return sys;
}

snp_system three_cascade() {
  snp_system sys;
  sys.name = "cascade";
  sys.mode = snp_mode::standard;
  sys.convention = out_convention::spike_gap;
  sys.output = 3;
  neuron_spec a;
  a.initial_spikes = 3;
  a.rules.push_back(spiking_rule("s^3", 1, 1));
  a.rules.push_back(spiking_rule("s^2", 1, 3));
  a.rules.push_back(make_rule(parse_expr("s"), bignat(1), bignat(0), 0));
  sys.neurons.push_back(a);
  neuron_spec b;
  b.rules.push_back(spiking_rule("s", 1, 2));
  sys.neurons.push_back(b);
  neuron_spec c;
  c.rules.push_back(spiking_rule("s", 1, 1));
  sys.neurons.push_back(c);
  sys.synapses = {{1, 2}, {2, 3}};
  return sys;
}

void criteria_7_and_8() {
  std::vector<std::pair<std::string, snp_system>> suite;
  for (std::uint64_t gap = 1; gap <= 8; ++gap)
    suite.emplace_back("delay-" + std::to_string(gap), delay_line(gap));
  suite.emplace_back("wrap", wrap_consumer());
  suite.emplace_back("cascade", three_cascade());
  suite.emplace_back("pingpong", pingpong());

  bool agree_ok = true;
  std::string agree_detail;
  int with_gap = 0;
  std::uint64_t worst_steps = 0;
  std::uint64_t worst_bound = 1;
  bool space_ok = true;

  for (const auto& [name, sys] : suite) {
    if (!validate(sys).empty()) {
      agree_ok = false;
      agree_detail = name + ": system invalid";
      break;
    }
    const compare_report rep = compare(sys, {}, run_policy::first(), 50);
    if (!rep.ok) {
      agree_ok = false;
      agree_detail = name + ": " + rep.detail;
      break;
    }
    if (rep.engine_has_gap) {
      ++with_gap;
      if (!rep.cm_halted || rep.cm_output != rep.engine_output) {
        agree_ok = false;
        agree_detail = name + ": output mismatch (engine " + num(rep.engine_output) +
                       ", machine " + num(rep.cm_output) + ")";
        break;
      }
    }
    const std::uint64_t size_term =
        rep.stats.x_r * rep.stats.x_r * std::uint64_t(rep.stats.m) +
        std::uint64_t(rep.stats.m) * std::uint64_t(rep.stats.m);
    for (std::uint64_t st : rep.cm_steps_per_timestep)
      if (st * worst_bound > worst_steps * size_term) {
        worst_steps = st;
        worst_bound = size_term;
      }
    // Counter envelope: peak counter content vs engine space plus output.
    bignat allowance = rep.engine_space;
    if (rep.engine_has_gap) allowance = allowance + rep.engine_output;
    if (rep.max_counter_sum > allowance) space_ok = false;
  }

  std::ostringstream os7;
  os7 << suite.size() << " systems compared over 50 timesteps, " << with_gap
      << " with a defined gap output" << (agree_ok ? "" : ("; " + agree_detail));
  report("criterion 7: compiled machines track and agree with the engine",
         agree_ok && with_gap >= 10, os7.str());

  // Linearity on a fixed non-halting system.
  bool linear_ok = true;
  std::uint64_t ratios_milli[3] = {0, 0, 0};
  const std::uint64_t horizons[3] = {10, 50, 200};
  for (int i = 0; i < 3; ++i) {
    const compare_report rep = compare(ticker(), {}, run_policy::first(), horizons[i]);
    if (!rep.ok) {
      linear_ok = false;
      break;
    }
    std::uint64_t total = 0;
    for (std::uint64_t st : rep.cm_steps_per_timestep) total += st;
    ratios_milli[i] = 1000 * total / horizons[i];
  }
  if (linear_ok) {
    const std::uint64_t lo = std::min({ratios_milli[0], ratios_milli[1], ratios_milli[2]});
    const std::uint64_t hi = std::max({ratios_milli[0], ratios_milli[1], ratios_milli[2]});
    linear_ok = hi * 100 <= lo * (100 + kLinearitySlackPct);
  }

  const bool envelope_ok = worst_steps <= kStepsEnvelopeC * worst_bound;
  std::ostringstream os8;
  os8 << "worst steps/timestep " << worst_steps << " against bound "
      << kStepsEnvelopeC << "*" << worst_bound << "; steps-per-timestep ratios (x1000) "
      << ratios_milli[0] << "/" << ratios_milli[1] << "/" << ratios_milli[2]
      << "; counter envelope " << (space_ok ? "holds" : "violated");
  report("criterion 8: machine overhead stays inside the pinned envelopes",
         envelope_ok && linear_ok && space_ok, os8.str());
}

// --------------------------------------------------------------------------
// 9. Unary expression membership equals a literal NFA on every k <= 500.
// --------------------------------------------------------------------------
void criterion_9() {
  std::mt19937_64 rng(5150);
  auto random_expr = [&]() -> expr_ptr {
    auto atom = [&]() -> expr_ptr {
      if (rng() % 2) return make_pow(1 + rng() % 12);
      return make_star(1 + rng() % 9);
    };
    auto cat = [&]() -> expr_ptr {
      std::vector<expr_ptr> xs;
      const std::size_t n = 1 + rng() % 3;
      for (std::size_t i = 0; i < n; ++i) xs.push_back(atom());
      return make_concat(std::move(xs));
    };
    std::vector<expr_ptr> alts;
    const std::size_t n = 1 + rng() % 3;
    for (std::size_t i = 0; i < n; ++i) alts.push_back(cat());
    return make_alt(std::move(alts));
  };

  bool ok = true;
  std::string detail;
  for (int iter = 0; iter < 100 && ok; ++iter) {
    const expr_ptr e = random_expr();
    const epset d = denote(e);
    const snpsim_test::unary_nfa oracle(e);
    const std::vector<bool> w = oracle.window(501);
    for (std::uint64_t k = 0; k <= 500; ++k)
      if (d.member_u(k) != w[k]) {
        ok = false;
        detail = "mismatch at k=" + std::to_string(k) + " for " + print_expr(e);
        break;
      }
  }
  if (ok) detail = "100 random expressions, every k <= 500";
  report("criterion 9: expression semantics agree with a literal automaton", ok, detail);
}

// --------------------------------------------------------------------------
// 10. Peak total spikes after n macro steps stays inside C * z^(n+3).
// --------------------------------------------------------------------------
void criterion_10() {
  const tm_spec spec = desk::tm_runner();
  const universal_system u = build_pi_m(spec);
  const macro_schedule ms =
      build_schedule(encode_for_pi_m(spec, tm_config{}), u.params);
  bool ok = true;
  std::string detail;
  bignat worst_num(0), worst_den(1);
  for (std::uint64_t n = 0; n <= 8; ++n) {
    const run_trace tr = run_strict(u.system, ms.schedule, ms.boundary(n), true);
    const bignat bound = pow_u64(u.params.z, n + 3);
    if (tr.space_used * worst_den > worst_num * bound) {
      worst_num = tr.space_used;
      worst_den = bound;
    }
    if (tr.space_used > bound * bignat(kGrowthEnvelopeC)) {
      ok = false;
      detail = "n=" + std::to_string(n) + ": space " + num(tr.space_used) +
               " exceeds " + std::to_string(kGrowthEnvelopeC) + "*z^" +
               std::to_string(n + 3);
      break;
    }
  }
  if (ok) {
    std::ostringstream os;
    os << "n=0..8, worst space/z^(n+3) = " << worst_num << "/" << worst_den
       << " within C=" << kGrowthEnvelopeC;
    detail = os.str();
  }
  report("criterion 10: spike growth stays inside the macro-step envelope", ok, detail);
}

void headline() {
  bool ok = true;
  for (const tm_spec& spec : {desk::tm_halt1(), desk::tm_halt10(), desk::tm_runner(),
                              desk::tm_runner2(), desk::tm_zigzag()}) {
    const universal_system u = build_pi_m(spec);
    if (u.system.size() != 10 || !validate(u.system).empty()) ok = false;
  }
  report("builder invariant: the simulator always has exactly ten neurons", ok,
         "checked across all five desk machines");
}

}  // namespace

int main() {
  headline();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criteria_7_and_8();
  criterion_9();
  criterion_10();
  if (failures == 0) {
    std::cout << "all acceptance criteria hold\n";
    return 0;
  }
  std::cout << failures << " criteria failing\n";
  return 1;
}
