// Deterministic single-tape Turing machines over symbols a1..ak (a1 = blank),
// plus the radix encoding of configurations into three numbers (left tape,
// right tape, state+scanned-symbol code) and the arithmetic form of one
// transition acting on that encoding.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "snpsim/bignat.hpp"

namespace snpsim {

enum class tm_move { left, right };

struct tm_rule {
  int write = 1;   // symbol written, 1-based
  tm_move move = tm_move::left;
  int next = 1;    // next state, 1-based
};

struct tm_spec {
  std::string name;
  int states = 2;   // q1..q_states; q_states is the halting state
  int symbols = 1;  // a1..a_symbols; a1 is the blank
  // Keyed by (state, scanned symbol); the halting state has no rules and
  // every other (state, symbol) pair must have exactly one.
  std::map<std::pair<int, int>, tm_rule> delta;
};

std::vector<std::string> validate_tm(const tm_spec& spec);

// Tape halves are stored innermost-first: left[0] is the cell immediately to
// the left of the head, right[0] immediately to the right.  Both halves are
// kept nonempty with a blank outermost cell and are never trimmed, so that
// the tape shape matches the encoded form cell for cell.
struct tm_config {
  std::vector<int> left{1};
  int head = 1;
  std::vector<int> right{1};
  int state = 1;
};

std::vector<std::string> validate_config(const tm_spec& spec, const tm_config& cfg);

bool tm_halted(const tm_spec& spec, const tm_config& cfg);

// One transition; the departed-from half regrows a single blank cell if the
// move emptied it.  Calling on a halted configuration is an error.
tm_config tm_step(const tm_spec& spec, const tm_config& cfg);

// Runs at most `max_steps` transitions; returns the reached configuration.
tm_config tm_run(const tm_spec& spec, tm_config cfg, std::uint64_t max_steps);

// ---------------------------------------------------------------------------
// Radix encoding.
// ---------------------------------------------------------------------------

struct encode_params_t {
  int v = 0;           // bits per tape cell
  std::uint64_t z = 0; // radix, 2^v
};

// Smallest power-of-two radix able to hold any state+symbol code.
encode_params_t encode_params(int states, int symbols);

std::uint64_t sym_code(int symbol);                  // 2i - 1
std::uint64_t state_code(int state, int symbols);    // 2 r |A|

struct encoded_config {
  bignat x;             // left half, innermost cell in the z^1 digit
  bignat y;             // right half, innermost cell in the z^1 digit
  std::uint64_t code;   // state code + scanned symbol code
};

encoded_config encode_config(const tm_spec& spec, const tm_config& cfg);

// The arithmetic image of one transition: divides/multiplies by the radix and
// re-plants a single blank cell when a tape half runs out, mirroring tm_step.
encoded_config apply_transition_encoded(const tm_spec& spec, const encoded_config& e);

// Splits a code back into (state, scanned symbol), both 1-based.
std::pair<int, int> split_code(const tm_spec& spec, std::uint64_t code);

// Exact inverse of encode_config.  Throws std::invalid_argument when a tape
// number has a digit that is not a symbol code (or lacks the empty z^0
// digit), or when the code does not name a (state, symbol) pair.
tm_config decode_config(const tm_spec& spec, const encoded_config& e);

}  // namespace snpsim
