// Discrete-time executor for spiking neural P systems.

#include "snpsim/engine.hpp"

#include <algorithm>

namespace snpsim {

std::string to_string(halt_kind h) {
  switch (h) {
    case halt_kind::quiescent: return "quiescent";
    case halt_kind::max_steps: return "max_steps";
    case halt_kind::strict_violation: return "strict_violation";
  }
  return "?";
}

namespace {

struct neuron_state {
  bignat content;
  bool busy = false;             // a spiking rule is pending
  std::uint64_t fire_at = 0;     // firing step of the pending rule
  bignat pending;                // spikes to send per synapse when firing
};

bool rule_applicable(const snp_system& sys, const rule_spec& r, const bignat& k) {
  if (!r.guard.member(k)) return false;
  if (sys.mode == snp_mode::standard && r.forgetting()) return k == r.b;
  return k >= r.b;
}

// Groups consumed when a rule is applied to k spikes.
bignat groups_for(const snp_system& sys, const rule_spec& r, const bignat& k) {
  switch (sys.mode) {
    case snp_mode::standard:
      return 1;
    case snp_mode::extended:
      return r.forgetting() ? k / r.b : bignat(1);
    case snp_mode::exhaustive:
      return k / r.b;
  }
  return 1;
}

}  // namespace

std::vector<int> applicable_rules(const snp_system& sys, int neuron_id, const bignat& content) {
  std::vector<int> out;
  const neuron_spec& n = sys.neurons[neuron_id - 1];
  for (std::size_t r = 0; r < n.rules.size(); ++r)
    if (rule_applicable(sys, n.rules[r], content)) out.push_back(int(r));
  return out;
}

run_trace run(const snp_system& sys, const schedule_map& schedule, const run_policy& policy,
              std::uint64_t max_steps, bool with_snapshots) {
  {
    auto errs = validate(sys);
    if (!errs.empty()) throw std::invalid_argument("invalid system: " + errs.front());
    if (!schedule.empty() && !sys.input)
      throw std::invalid_argument("schedule given but the system has no input neuron");
  }

  const int m = sys.size();
  std::vector<neuron_state> st(m);
  for (int i = 0; i < m; ++i) st[i].content = sys.neurons[i].initial_spikes;

  // Outgoing synapses, sorted for deterministic delivery order.
  std::vector<std::vector<int>> out_edges(m);
  for (const auto& [a, b] : sys.synapses) out_edges[a - 1].push_back(b - 1);

  run_trace trace;
  trace.with_snapshots = with_snapshots;
  std::mt19937_64 rng(policy.seed);

  auto open_at = [&](int i, std::uint64_t t) {
    return !st[i].busy || st[i].fire_at == t;
  };

  std::uint64_t t = 1;
  for (;; ++t) {
    // ----- quiescence check (start of step t) -----
    bool any_busy = std::any_of(st.begin(), st.end(), [](const neuron_state& s) { return s.busy; });
    bool any_applicable = false;
    for (int i = 0; i < m && !any_applicable; ++i)
      if (!st[i].busy && !applicable_rules(sys, i + 1, st[i].content).empty())
        any_applicable = true;
    bool pending_schedule = !schedule.empty() && schedule.upper_bound(t - 1) != schedule.end();
    if (!any_busy && !any_applicable && !pending_schedule) {
      trace.reason = halt_kind::quiescent;
      trace.quiescent_at = t;
      break;
    }
    if (t > max_steps) {
      trace.reason = halt_kind::max_steps;
      break;
    }

    // ----- phase 1: environment delivery -----
    if (auto it = schedule.find(t); it != schedule.end() && it->second > 0) {
      int in = *sys.input - 1;
      if (open_at(in, t))
        st[in].content += it->second;
      else
        trace.lost_input.push_back({t, it->second});
    }

    if (with_snapshots) {
      std::vector<bignat> contents(m), pend(m);
      for (int i = 0; i < m; ++i) {
        contents[i] = st[i].content;
        pend[i] = st[i].pending;
      }
      trace.snapshots.push_back(std::move(contents));
      trace.pending_snapshots.push_back(std::move(pend));
    }
    {
      bignat total = 0;
      for (int i = 0; i < m; ++i) total += st[i].content + st[i].pending;
      if (total > trace.space_used) trace.space_used = total;
    }

    // ----- phase 2: rule selection and consumption -----
    bool violated = false;
    for (int i = 0; i < m && !violated; ++i) {
      if (st[i].busy) continue;
      std::vector<int> cand = applicable_rules(sys, i + 1, st[i].content);
      if (cand.empty()) continue;
      int chosen = cand[0];
      if (cand.size() > 1) {
        switch (policy.kind) {
          case policy_kind::first:
            break;
          case policy_kind::seeded: {
            std::uniform_int_distribution<std::size_t> dist(0, cand.size() - 1);
            chosen = cand[dist(rng)];
            break;
          }
          case policy_kind::strict:
            trace.violation = strict_violation_info{t, i + 1, cand};
            violated = true;
            continue;
        }
      }
      const rule_spec& r = sys.neurons[i].rules[chosen];
      bignat g = groups_for(sys, r, st[i].content);
      st[i].content -= r.b * g;
      trace.selections.push_back({t, i + 1, chosen, g});
      if (!r.forgetting()) {
        st[i].busy = true;
        st[i].fire_at = t + r.d - 1;
        st[i].pending = g * r.p;
      }
    }
    if (violated) {
      trace.reason = halt_kind::strict_violation;
      trace.steps = t;
      break;
    }

    // ----- phase 3: firing and delivery -----
    std::vector<int> fired;
    for (int i = 0; i < m; ++i)
      if (st[i].busy && st[i].fire_at == t) fired.push_back(i);

    // Openness is decided before any delivery of this step takes effect.
    std::vector<bool> open(m);
    for (int i = 0; i < m; ++i) open[i] = open_at(i, t);

    std::vector<bignat> adds(m, bignat(0));
    for (int i : fired) {
      trace.firings.push_back({t, i + 1, st[i].pending});
      if (i + 1 == sys.output) trace.outputs.push_back({t, st[i].pending});
      for (int j : out_edges[i])
        if (open[j]) adds[j] += st[i].pending;
    }
    for (int i : fired) {
      st[i].busy = false;
      st[i].pending = 0;
    }
    for (int i = 0; i < m; ++i) st[i].content += adds[i];

    trace.steps = t;
  }

  trace.final_contents.resize(m);
  for (int i = 0; i < m; ++i) trace.final_contents[i] = st[i].content;
  return trace;
}

bignat output_value(const run_trace& trace, out_convention convention) {
  if (convention == out_convention::spike_gap) {
    if (trace.outputs.size() < 2)
      throw output_error("spike-gap output undefined: fewer than two output firings");
    return bignat(trace.outputs[1].t) - bignat(trace.outputs[0].t);
  }
  if (trace.outputs.empty())
    throw output_error("emission output undefined: the output neuron never fired");
  return trace.outputs[0].amount;
}

}  // namespace snpsim
