// Nondeterministic one-way multicounter machines: each program entry reads an
// input symbol, examines the positivity of one named counter, and rewrites
// state/head/counters.  Duplicate applicable entries model nondeterminism.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "snpsim/bignat.hpp"
#include "snpsim/engine.hpp"

namespace snpsim {

// Symbol reported when the head has moved past the end of the input word.
inline constexpr char cm_end_marker = '$';

enum class cm_action { inc, dec, null };

struct cm_entry {
  char symbol = '1';        // input symbol this entry reads (cm_end_marker past end)
  int state = 0;            // 0-based current state
  int tested = 1;           // 1-based counter whose positivity is examined
  bool positive = true;     // required outcome of the test
  bool advance = true;      // true: head moves right (Y); false: head stays (N)
  int next_state = 0;       // 0-based
  cm_action action = cm_action::null;
  int action_counter = 0;   // 1-based for inc/dec, 0 for null
};

struct cm_spec {
  std::string name;
  int counters = 1;         // number of counters
  int output_counter = 1;   // 1-based index of the output counter
  int states = 1;
  int start_state = 0;      // 0-based
  int halt_state = 0;       // 0-based; no entries may match in the halt state
  std::string alphabet;     // distinct input symbols, end marker excluded
  std::vector<cm_entry> entries;
};

// Structural checks; returns human-readable problems (empty when well formed).
std::vector<std::string> validate_cm(const cm_spec& spec);

struct cm_config {
  int state = 0;
  std::uint64_t head = 0;            // 0-based position in the input word
  std::vector<bignat> counters;      // counters[i] holds counter i+1
};

cm_config cm_initial(const cm_spec& spec);

// Symbol under the head, or the end marker once the word is exhausted.
char cm_symbol_at(const std::string& word, std::uint64_t head);

// Indices of entries applicable in this configuration, in program order.
std::vector<int> cm_candidates(const cm_spec& spec, const cm_config& cfg,
                               const std::string& word);

// Applies one entry (assumed applicable).
void cm_apply(const cm_spec& spec, cm_config& cfg, int entry_index);

enum class cm_halt { halted, stuck, max_steps, strict_violation };
std::string to_string(cm_halt h);

struct cm_violation_info {
  std::uint64_t step = 0;
  int state = 0;
  std::vector<int> candidate_entries;
};

struct cm_run_result {
  cm_halt reason = cm_halt::halted;
  cm_config config;
  std::uint64_t steps = 0;
  std::optional<cm_violation_info> violation;
};

cm_run_result cm_run(const cm_spec& spec, const std::string& word,
                     const run_policy& policy, std::uint64_t max_steps);

// Value of the output counter in a configuration.
bignat cm_output(const cm_spec& spec, const cm_config& cfg);

}  // namespace snpsim
