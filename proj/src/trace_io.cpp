// Line-oriented JSON trace writer.  Spike counts are serialized as decimal
// strings: they routinely exceed every fixed-width integer type.

#include "snpsim/trace_io.hpp"

#include <json.hpp>

namespace snpsim {

namespace {

using json = nlohmann::ordered_json;

json num(const bignat& n) { return to_string(n); }

}  // namespace

void write_trace(std::ostream& os, const snp_system& sys, const run_trace& trace) {
  json header;
  header["record"] = "header";
  header["system"] = sys.name;
  header["mode"] = to_string(sys.mode);
  header["output_convention"] = to_string(sys.convention);
  header["neurons"] = sys.size();
  header["steps"] = trace.steps;
  os << header.dump() << "\n";

  std::size_t sel = 0, fire = 0, out = 0, lost = 0;
  for (std::uint64_t t = 1; t <= trace.steps; ++t) {
    json rec;
    rec["record"] = "step";
    rec["t"] = t;
    if (trace.with_snapshots) {
      json contents = json::array();
      for (const bignat& c : trace.snapshots[t - 1]) contents.push_back(num(c));
      rec["contents"] = contents;
    }
    json selections = json::array();
    for (; sel < trace.selections.size() && trace.selections[sel].t == t; ++sel) {
      const selection_event& e = trace.selections[sel];
      selections.push_back({{"neuron", e.neuron}, {"rule", e.rule_index}, {"groups", num(e.g)}});
    }
    rec["selections"] = selections;
    json firings = json::array();
    for (; fire < trace.firings.size() && trace.firings[fire].t == t; ++fire) {
      const firing_event& e = trace.firings[fire];
      firings.push_back({{"neuron", e.neuron}, {"amount", num(e.amount)}});
    }
    rec["firings"] = firings;
    json outputs = json::array();
    for (; out < trace.outputs.size() && trace.outputs[out].t == t; ++out)
      outputs.push_back(num(trace.outputs[out].amount));
    rec["outputs"] = outputs;
    json lost_arr = json::array();
    for (; lost < trace.lost_input.size() && trace.lost_input[lost].t == t; ++lost)
      lost_arr.push_back(num(trace.lost_input[lost].amount));
    rec["lost_input"] = lost_arr;
    os << rec.dump() << "\n";
  }

  json summary;
  summary["record"] = "summary";
  summary["reason"] = to_string(trace.reason);
  if (trace.quiescent_at) summary["quiescent_at"] = *trace.quiescent_at;
  if (trace.violation) {
    json v;
    v["t"] = trace.violation->t;
    v["neuron"] = trace.violation->neuron;
    v["candidate_rules"] = trace.violation->candidate_rules;
    summary["violation"] = v;
  }
  summary["space_used"] = num(trace.space_used);
  json final_arr = json::array();
  for (const bignat& c : trace.final_contents) final_arr.push_back(num(c));
  summary["final_contents"] = final_arr;
  os << summary.dump() << "\n";
}

}  // namespace snpsim
