// Execution and validation of one-way multicounter machines.

#include "snpsim/counter_machine.hpp"

#include <cctype>
#include <random>
#include <set>
#include <sstream>

namespace snpsim {

std::string to_string(cm_halt h) {
  switch (h) {
    case cm_halt::halted: return "halted";
    case cm_halt::stuck: return "stuck";
    case cm_halt::max_steps: return "max_steps";
    case cm_halt::strict_violation: return "strict_violation";
  }
  return "?";
}

std::vector<std::string> validate_cm(const cm_spec& spec) {
  std::vector<std::string> problems;
  auto complain = [&](const std::string& msg) { problems.push_back(msg); };

  if (spec.counters < 1) complain("machine needs at least one counter");
  if (spec.states < 1) complain("machine needs at least one state");
  if (spec.output_counter < 1 || spec.output_counter > spec.counters)
    complain("output counter out of range");
  if (spec.start_state < 0 || spec.start_state >= spec.states)
    complain("start state out of range");
  if (spec.halt_state < 0 || spec.halt_state >= spec.states)
    complain("halt state out of range");

  std::set<char> seen;
  for (char c : spec.alphabet) {
    if (c == cm_end_marker) complain("alphabet may not contain the end marker");
    if (!std::isalnum(static_cast<unsigned char>(c)))
      complain("alphabet symbols must be alphanumeric");
    if (!seen.insert(c).second) complain("duplicate alphabet symbol");
  }

  for (std::size_t idx = 0; idx < spec.entries.size(); ++idx) {
    const cm_entry& e = spec.entries[idx];
    std::ostringstream where;
    where << "entry " << idx << ": ";
    if (e.symbol != cm_end_marker && seen.count(e.symbol) == 0)
      complain(where.str() + "symbol not in alphabet");
    if (e.state < 0 || e.state >= spec.states)
      complain(where.str() + "state out of range");
    if (e.next_state < 0 || e.next_state >= spec.states)
      complain(where.str() + "next state out of range");
    if (e.state == spec.halt_state)
      complain(where.str() + "entry matches in the halt state");
    if (e.tested < 1 || e.tested > spec.counters)
      complain(where.str() + "tested counter out of range");
    if (e.action == cm_action::null) {
      if (e.action_counter != 0)
        complain(where.str() + "null action must not name a counter");
    } else {
      if (e.action_counter < 1 || e.action_counter > spec.counters)
        complain(where.str() + "action counter out of range");
      // A decrement is only safe when this very entry has just verified that
      // the decremented counter is positive.
      if (e.action == cm_action::dec &&
          !(e.tested == e.action_counter && e.positive))
        complain(where.str() + "decrement must test its own counter positive");
    }
  }
  return problems;
}

cm_config cm_initial(const cm_spec& spec) {
  cm_config cfg;
  cfg.state = spec.start_state;
  cfg.head = 0;
  cfg.counters.assign(std::size_t(spec.counters), bignat(0));
  return cfg;
}

char cm_symbol_at(const std::string& word, std::uint64_t head) {
  return head < word.size() ? word[std::size_t(head)] : cm_end_marker;
}

std::vector<int> cm_candidates(const cm_spec& spec, const cm_config& cfg,
                               const std::string& word) {
  std::vector<int> out;
  const char symbol = cm_symbol_at(word, cfg.head);
  for (std::size_t idx = 0; idx < spec.entries.size(); ++idx) {
    const cm_entry& e = spec.entries[idx];
    if (e.symbol != symbol || e.state != cfg.state) continue;
    const bool is_positive = cfg.counters[std::size_t(e.tested - 1)] > 0;
    if (is_positive == e.positive) out.push_back(int(idx));
  }
  return out;
}

void cm_apply(const cm_spec& spec, cm_config& cfg, int entry_index) {
  const cm_entry& e = spec.entries[std::size_t(entry_index)];
  switch (e.action) {
    case cm_action::inc:
      cfg.counters[std::size_t(e.action_counter - 1)] += 1;
      break;
    case cm_action::dec:
      cfg.counters[std::size_t(e.action_counter - 1)] -= 1;
      break;
    case cm_action::null:
      break;
  }
  if (e.advance) ++cfg.head;
  cfg.state = e.next_state;
}

cm_run_result cm_run(const cm_spec& spec, const std::string& word,
                     const run_policy& policy, std::uint64_t max_steps) {
  cm_run_result result;
  result.config = cm_initial(spec);
  std::mt19937_64 rng(policy.seed);

  for (std::uint64_t step = 1;; ++step) {
    if (result.config.state == spec.halt_state) {
      result.reason = cm_halt::halted;
      return result;
    }
    if (step > max_steps) {
      result.reason = cm_halt::max_steps;
      return result;
    }
    std::vector<int> cand = cm_candidates(spec, result.config, word);
    if (cand.empty()) {
      result.reason = cm_halt::stuck;
      return result;
    }
    int chosen = cand[0];
    if (cand.size() > 1) {
      switch (policy.kind) {
        case policy_kind::first:
          break;
        case policy_kind::seeded: {
          std::uniform_int_distribution<std::size_t> pick(0, cand.size() - 1);
          chosen = cand[pick(rng)];
          break;
        }
        case policy_kind::strict:
          result.reason = cm_halt::strict_violation;
          result.violation = cm_violation_info{step, result.config.state, cand};
          return result;
      }
    }
    cm_apply(spec, result.config, chosen);
    result.steps = step;
  }
}

bignat cm_output(const cm_spec& spec, const cm_config& cfg) {
  return cfg.counters[std::size_t(spec.output_counter - 1)];
}

}  // namespace snpsim
