// Builders for the two fixed spiking-system constructions driven by a Turing
// machine: the ten-neuron simulator (radix-encoded tape halves held as spike
// counts, one simulated transition per fixed-length macro step) and the
// six-neuron input encoder (repeated doubling turns a digit-spaced spike word
// into the left-tape encoding).  Plus schedule/word producers, the output
// decoder, and the oracle-checked verification harness.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "snpsim/engine.hpp"
#include "snpsim/snp_system.hpp"
#include "snpsim/turing.hpp"

namespace snpsim {

struct build_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct decode_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A generated system plus, for each rule, the template it instantiates and
// the transition/symbol it was instantiated with.
struct universal_system {
  snp_system system;
  encode_params_t params;
  std::map<std::pair<int, int>, std::string> provenance;  // (neuron, rule) -> note
};

// Ten-neuron simulator.  Input neuron 5, output neuron 3, exhaustive rules,
// emission-events output convention.
universal_system build_pi_m(const tm_spec& spec);

// Loading schedule for one encoded configuration: X+2 spikes at step 1, Y at
// step 2, the state+symbol code at step 4.  Boundaries fall at offset + k*period.
struct macro_schedule {
  schedule_map schedule;
  std::uint64_t period = 0;  // log2(z) + 9
  std::uint64_t offset = 5;
  std::uint64_t boundary(std::uint64_t k) const { return offset + k * period; }
};

macro_schedule build_schedule(const encoded_config& enc, const encode_params_t& params);

// Pads a configuration so the loading path is well formed: the right half is
// extended with blanks to at least two cells (Y >= 2z keeps the loading relay
// away from the single-blank discard rule).
tm_config pad_for_pi_m(const tm_config& cfg);

encoded_config encode_for_pi_m(const tm_spec& spec, const tm_config& cfg);

// Six-neuron input encoder.  Input neuron 1, output neuron 6.
universal_system build_pi_input(const tm_spec& spec);

// Spike word for a left-half cell sequence (outermost first): symbol codes at
// steps 1, v+1, 2v+1, ... and the terminating 2 at x*v+1.  Running the
// encoder on it emits exactly X = sum z^i * code(cells[x-i]) at step x*v+3.
schedule_map build_input_word(const std::vector<int>& cells, const encode_params_t& params);

// Inverts a right-half emission: strips the zero low digit(s), then reads one
// symbol code per base-z digit, innermost first.  Accepts the emission scaled
// by one extra factor of z; anything else is rejected.
std::vector<int> decode_output(const bignat& emission, const tm_spec& spec);

struct verify_mismatch {
  std::uint64_t boundary_index = 0;  // k in boundary(k)
  std::uint64_t step = 0;            // engine step of the check
  int neuron = 0;
  bignat expected;
  bignat actual;
};

struct verify_report {
  bool ok = true;
  std::uint64_t boundaries_checked = 0;
  std::optional<verify_mismatch> mismatch;
  std::string detail;
  bool tm_halted = false;      // the machine reached its halt state in n_steps
  bool emission_seen = false;
  bignat emission;
  std::vector<int> decoded_cells;
  int stripped_zero_digits = 0;  // 1: the right-half encoding itself; 2: scaled by z
  bool quiescent = false;        // the simulator went quiet after halting
  std::uint64_t steps_run = 0;
};

// Runs the simulator under the strict policy from the padded initial
// configuration and checks every macro boundary against iterated transition
// arithmetic; on halting also checks the decoded emission against the direct
// machine run.
verify_report verify_against_oracle(const tm_spec& spec, const tm_config& initial,
                                    std::uint64_t n_steps);

}  // namespace snpsim
