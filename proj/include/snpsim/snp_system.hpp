#pragma once
// Core data model for spiking neural P systems: rules, neurons, synapse
// graphs, operating modes and static validation.

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "snpsim/bignat.hpp"
#include "snpsim/unary_regex.hpp"

namespace snpsim {

enum class snp_mode { standard, extended, exhaustive };
enum class out_convention { spike_gap, emission_events };

std::string to_string(snp_mode m);
std::string to_string(out_convention c);

struct rule_spec {
  std::string expr_text;  // guard as written (reprintable)
  epset guard;            // denotation of expr_text
  bignat b;               // spikes consumed per group (b >= 1)
  bignat p;               // spikes emitted per group; 0 marks a forgetting rule
  std::uint64_t d = 0;    // delay; >= 1 for spiking rules, 0 for forgetting

  bool forgetting() const { return p == 0; }
};

rule_spec make_rule(const expr_ptr& guard_expr, bignat b, bignat p, std::uint64_t d);

struct neuron_spec {
  bignat initial_spikes;
  std::vector<rule_spec> rules;
};

struct snp_system {
  std::string name = "system";
  snp_mode mode = snp_mode::standard;
  out_convention convention = out_convention::spike_gap;
  std::vector<neuron_spec> neurons;        // neuron ids are 1-based indices
  std::set<std::pair<int, int>> synapses;  // directed, 1-based ids
  std::optional<int> input;                // 1-based id of the input neuron
  int output = 0;                          // 1-based id of the output neuron

  int size() const { return int(neurons.size()); }
};

// Static well-formedness: returns human-readable diagnostics, empty if valid.
//  - neuron/synapse ids in range, no self-loops
//  - every rule: b >= 1; spiking d >= 1; forgetting d == 0
//  - standard mode: spiking rules have p == 1; forgetting guards are exactly
//    the singleton {b}; no forgetting amount lies in a spiking guard of the
//    same neuron
//  - extended/exhaustive: b >= p
std::vector<std::string> validate(const snp_system& sys);

}  // namespace snpsim
