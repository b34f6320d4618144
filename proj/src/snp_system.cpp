// Static validation of spiking neural P systems.

#include "snpsim/snp_system.hpp"

namespace snpsim {

std::string to_string(snp_mode m) {
  switch (m) {
    case snp_mode::standard: return "standard";
    case snp_mode::extended: return "extended";
    case snp_mode::exhaustive: return "exhaustive";
  }
  return "?";
}

std::string to_string(out_convention c) {
  return c == out_convention::spike_gap ? "gap" : "events";
}

rule_spec make_rule(const expr_ptr& guard_expr, bignat b, bignat p, std::uint64_t d) {
  rule_spec r;
  r.expr_text = print_expr(guard_expr);
  r.guard = denote(guard_expr);
  r.b = std::move(b);
  r.p = std::move(p);
  r.d = d;
  return r;
}

std::vector<std::string> validate(const snp_system& sys) {
  std::vector<std::string> errs;
  const int m = sys.size();
  auto neuron_name = [](int id) { return "neuron " + std::to_string(id); };

  if (m == 0) errs.push_back("system has no neurons");

  if (sys.output < 1 || sys.output > m)
    errs.push_back("output neuron id " + std::to_string(sys.output) + " out of range");
  if (sys.input && (*sys.input < 1 || *sys.input > m))
    errs.push_back("input neuron id " + std::to_string(*sys.input) + " out of range");

  for (const auto& [a, b] : sys.synapses) {
    if (a < 1 || a > m || b < 1 || b > m)
      errs.push_back("synapse (" + std::to_string(a) + "," + std::to_string(b) +
                     ") endpoint out of range");
    else if (a == b)
      errs.push_back("synapse (" + std::to_string(a) + "," + std::to_string(b) +
                     ") is a self-loop");
  }

  for (int id = 1; id <= m; ++id) {
    const neuron_spec& n = sys.neurons[id - 1];
    for (std::size_t r = 0; r < n.rules.size(); ++r) {
      const rule_spec& rule = n.rules[r];
      std::string where = neuron_name(id) + " rule " + std::to_string(r + 1);
      if (rule.b < 1) errs.push_back(where + ": consumption must be at least 1");
      if (rule.forgetting()) {
        if (rule.d != 0) errs.push_back(where + ": forgetting rules must have delay 0");
      } else {
        if (rule.d < 1) errs.push_back(where + ": spiking rules must have delay >= 1");
      }
      if (sys.mode == snp_mode::standard) {
        if (!rule.forgetting() && rule.p != 1)
          errs.push_back(where + ": standard mode requires p == 1 on spiking rules");
        if (rule.forgetting() && !rule.guard.is_singleton(rule.b))
          errs.push_back(where +
                         ": standard-mode forgetting guard must be exactly the consumed amount");
      } else {
        if (rule.p > rule.b) errs.push_back(where + ": emission exceeds consumption");
      }
    }
    if (sys.mode == snp_mode::standard) {
      // A forgetting amount must not be covered by any spiking guard of the
      // same neuron.
      for (std::size_t r = 0; r < n.rules.size(); ++r) {
        const rule_spec& fr = n.rules[r];
        if (!fr.forgetting()) continue;
        for (std::size_t q = 0; q < n.rules.size(); ++q) {
          const rule_spec& sr = n.rules[q];
          if (sr.forgetting()) continue;
          if (sr.guard.member(fr.b))
            errs.push_back(neuron_name(id) + " rule " + std::to_string(r + 1) +
                           ": forgetting amount lies in the guard of spiking rule " +
                           std::to_string(q + 1));
        }
      }
    }
  }
  return errs;
}

}  // namespace snpsim
