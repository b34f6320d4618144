#pragma once
// Discrete-time executor for spiking neural P systems.
//
// Each timestep runs three phases:
//   1. environment delivery to the input neuron (lost and logged if closed),
//   2. rule selection and consumption in every open neuron,
//   3. firing of neurons whose delay elapses, delivering spikes to receivers
//      that are open at the sending instant.
// A neuron that applies a rule with delay d at time t fires at t+d-1 and is
// closed for receiving from t through t+d-2 (a neuron is open at its own
// firing step).  Quiescence is checked at the start of each step.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "snpsim/snp_system.hpp"

namespace snpsim {

using schedule_map = std::map<std::uint64_t, bignat>;  // timestep -> spikes delivered

enum class policy_kind { first, seeded, strict };

struct run_policy {
  policy_kind kind = policy_kind::first;
  std::uint64_t seed = 0;

  static run_policy first() { return {policy_kind::first, 0}; }
  static run_policy seeded(std::uint64_t s) { return {policy_kind::seeded, s}; }
  static run_policy strict() { return {policy_kind::strict, 0}; }
};

struct selection_event {
  std::uint64_t t = 0;
  int neuron = 0;      // 1-based
  int rule_index = 0;  // 0-based within the neuron
  bignat g;            // number of groups consumed
};

struct firing_event {
  std::uint64_t t = 0;
  int neuron = 0;
  bignat amount;  // spikes sent along each outgoing synapse
};

struct output_event {
  std::uint64_t t = 0;
  bignat amount;
};

struct lost_input_event {
  std::uint64_t t = 0;
  bignat amount;
};

struct strict_violation_info {
  std::uint64_t t = 0;
  int neuron = 0;
  std::vector<int> candidate_rules;  // 0-based indices
};

enum class halt_kind { quiescent, max_steps, strict_violation };

std::string to_string(halt_kind h);

struct run_trace {
  halt_kind reason = halt_kind::max_steps;
  std::uint64_t steps = 0;                       // executed timesteps
  std::optional<std::uint64_t> quiescent_at;     // first step with nothing to do
  bool with_snapshots = false;
  std::vector<std::vector<bignat>> snapshots;          // phase-1 contents, per step
  std::vector<std::vector<bignat>> pending_snapshots;  // in-flight emissions, per step
  std::vector<selection_event> selections;
  std::vector<firing_event> firings;
  std::vector<output_event> outputs;
  std::vector<lost_input_event> lost_input;
  std::optional<strict_violation_info> violation;
  bignat space_used;                  // max total spikes (content + pending) over snapshots
  std::vector<bignat> final_contents;
};

struct output_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rules applicable to a neuron holding `content` spikes: guard membership plus
// the consumption threshold (exact equality for standard-mode forgetting).
std::vector<int> applicable_rules(const snp_system& sys, int neuron_id, const bignat& content);

run_trace run(const snp_system& sys, const schedule_map& schedule, const run_policy& policy,
              std::uint64_t max_steps, bool with_snapshots = false);

// Observation value of a finished run under the system's output convention:
// spike gap = distance between the first two output firings; emission events =
// spike count of the first output firing.  Throws output_error if absent.
bignat output_value(const run_trace& trace, out_convention convention);

inline bignat space_used(const run_trace& trace) { return trace.space_used; }

}  // namespace snpsim
