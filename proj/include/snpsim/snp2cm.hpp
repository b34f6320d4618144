// Compilation of a standard-mode spiking system into a nondeterministic
// multicounter machine: one counter per neuron plus an output counter, rule
// automata deciding applicability and tracking spike movement, and a
// three-stage per-timestep micro-program (select+consume, fire+deliver,
// read input / count the output gap).
#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "snpsim/counter_machine.hpp"
#include "snpsim/engine.hpp"
#include "snpsim/snp_system.hpp"
#include "snpsim/unary_regex.hpp"

namespace snpsim {

struct translate_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Acceptance automaton for one rule: chain positions g_1..g_{x-1} count
// spikes exactly, cycle positions g_x..g_y count them modulo the period.
// Acceptance at the tracked count equals applicability of the rule.
struct rule_automaton {
  tail_cycle tc;
  bignat b;                // consumption amount
  bool forgetting = false;
};

rule_automaton build_g(const rule_spec& r);

// The movement form of the automaton: +s edges advance the tracked count,
// -s edges reverse them.  The only nondeterministic -s choice sits at g_x
// (chain predecessor g_{x-1} or cycle wrap g_y); with x = 1 the wrap is the
// sole predecessor and the choice degenerates.
struct rule_automaton_prime {
  tail_cycle tc;
  std::vector<std::uint64_t> plus;                 // [1..y] -> successor on +s
  std::vector<std::vector<std::uint64_t>> minus;   // [1..y] -> successors on -s
};

rule_automaton_prime build_gprime(const rule_automaton& g);

struct translation_stats {
  std::uint64_t x_r = 0;        // max x over all rule automata
  int m = 0;                    // neuron count
  std::size_t state_count = 0;  // materialized machine states (when built)
};

class snp_to_cm {
 public:
  struct options {
    std::size_t state_cap = 1000000;  // materialization/state-registry limit
  };

  // Checks the preconditions (standard mode, spike-gap output, input neuron 1
  // if any, bounded delays and thresholds) and builds the rule automata.
  explicit snp_to_cm(const snp_system& sys);
  snp_to_cm(const snp_system& sys, options opt);
  ~snp_to_cm();
  snp_to_cm(snp_to_cm&&) noexcept;
  snp_to_cm& operator=(snp_to_cm&&) noexcept;

  // Enumerates every reachable control state into a runnable, printable
  // machine.  Counters c_1..c_m mirror neuron contents, c_{m+1} is the
  // output; the input word is over {0,1}.
  cm_spec materialize();

  const translation_stats& stats() const;

  struct lazy_run_result {
    bool halted = false;              // reached the halt state (second firing)
    std::uint64_t timesteps = 0;      // simulated timesteps entered
    std::uint64_t cm_steps = 0;       // machine steps executed
    std::vector<bignat> counters;     // final counter values (m+1)
  };

  // Runs the machine directly from the lazily generated program, without
  // materializing states.  Policy may be first or seeded.
  lazy_run_result run_lazy(const std::string& word, const run_policy& policy,
                           std::uint64_t max_cm_steps);

 private:
  friend struct compare_access;
  struct impl;
  std::unique_ptr<impl> impl_;
};

// Side-by-side run of a system and its compiled machine on one input.
struct compare_report {
  bool ok = true;
  std::uint64_t timesteps = 0;          // simulated timesteps verified
  std::uint64_t first_divergence = 0;   // sim step of first mismatch (0 = none)
  std::string detail;

  bool cm_halted = false;               // machine reached its halt state
  bignat cm_output;                     // output counter at halt
  bool engine_has_gap = false;
  bignat engine_output;                 // spike-gap value when defined

  std::uint64_t prologue_steps = 0;
  std::vector<std::uint64_t> cm_steps_per_timestep;
  bignat max_counter_sum;               // peak sum of all counters
  bignat engine_space;

  translation_stats stats;
};

// Runs the engine under `policy`, then drives the compiled machine with the
// same rule choices, checking counters against neuron contents at every
// simulated timestep boundary and the output values at the end.
compare_report compare(const snp_system& sys, const schedule_map& schedule,
                       const run_policy& policy, std::uint64_t max_timesteps,
                       snp_to_cm::options opt = {});

}  // namespace snpsim
