// Command-line front end: parse/validate the machine formats, run spiking
// systems with optional trace output, build the machine-driven constructions,
// emit loading schedules, translate standard systems to counter machines and
// run the oracle verification.
//
// Exit codes: 0 success, 1 verification mismatch or strict violation,
// 2 usage or parse/validate errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "snpsim/dsl.hpp"
#include "snpsim/engine.hpp"
#include "snpsim/snp2cm.hpp"
#include "snpsim/trace_io.hpp"
#include "snpsim/turing.hpp"
#include "snpsim/universal.hpp"

namespace {

using namespace snpsim;

struct cli_failure {
  int code;
  std::string message;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cli_failure{2, "cannot open " + path};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw cli_failure{2, "cannot write " + out_path};
  out << text;
}

run_policy make_policy(const std::string& name, std::uint64_t seed) {
  if (name == "first") return run_policy::first();
  if (name == "seeded") return run_policy::seeded(seed);
  if (name == "strict") return run_policy::strict();
  throw cli_failure{2, "unknown policy '" + name + "' (use first|seeded|strict)"};
}

schedule_map read_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cli_failure{2, "cannot open schedule " + path};
  schedule_map sched;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string t_text, count_text, extra;
    if (!(ls >> t_text)) continue;  // blank line
    if (!(ls >> count_text) || (ls >> extra))
      throw cli_failure{2, path + ":" + std::to_string(lineno) +
                               ": expected 'timestep count'"};
    try {
      const std::uint64_t t = std::stoull(t_text);
      if (t == 0) throw std::invalid_argument("timestep 0");
      sched[t] += parse_bignat(count_text);
    } catch (const std::exception&) {
      throw cli_failure{2, path + ":" + std::to_string(lineno) +
                               ": expected 'timestep count'"};
    }
  }
  return sched;
}

snp_system load_snp(const std::string& path) {
  const std::string text = slurp(path);
  if (doc_kind_of(text) != doc_kind::snp)
    throw cli_failure{2, path + ": not a spiking-system file"};
  const snp_system sys = parse_snp(text);
  const auto problems = validate(sys);
  if (!problems.empty()) {
    std::string msg = path + ": invalid system:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw cli_failure{2, msg};
  }
  return sys;
}

tm_spec load_tm(const std::string& path) {
  const std::string text = slurp(path);
  if (doc_kind_of(text) != doc_kind::tm)
    throw cli_failure{2, path + ": not a machine file"};
  const tm_spec spec = parse_tm(text);
  const auto problems = validate_tm(spec);
  if (!problems.empty()) {
    std::string msg = path + ": invalid machine:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw cli_failure{2, msg};
  }
  return spec;
}

std::vector<int> parse_tape(const std::string& text) {
  std::vector<int> cells;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    try {
      cells.push_back(std::stoi(token));
    } catch (const std::exception&) {
      throw cli_failure{2, "bad tape cell '" + token + "'"};
    }
  }
  if (cells.empty()) throw cli_failure{2, "empty tape"};
  return cells;
}

// Builds a configuration from a one-line tape: cells left to right, `head`
// the 1-based scanned position.  Halves are blank-terminated as needed.
tm_config config_from_tape(const tm_spec& spec, const std::vector<int>& tape, int head,
                           int state) {
  if (head < 1 || head > int(tape.size()))
    throw cli_failure{2, "head position out of range"};
  tm_config cfg;
  cfg.left.clear();
  for (int i = head - 2; i >= 0; --i) cfg.left.push_back(tape[i]);
  cfg.head = tape[head - 1];
  cfg.right.assign(tape.begin() + head, tape.end());
  cfg.state = state;
  if (cfg.left.empty() || cfg.left.back() != 1) cfg.left.push_back(1);
  if (cfg.right.empty() || cfg.right.back() != 1) cfg.right.push_back(1);
  const auto problems = validate_config(spec, cfg);
  if (!problems.empty()) {
    std::string msg = "bad tape/state:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw cli_failure{2, msg};
  }
  return cfg;
}

std::string provenance_comments(const universal_system& u) {
  std::ostringstream os;
  os << "# rule provenance\n";
  for (const auto& [key, note] : u.provenance)
    os << "# neuron " << key.first << " rule " << key.second + 1 << ": " << note << "\n";
  return os.str();
}

int cmd_run(const std::string& file, const std::string& schedule_path,
            const std::string& policy_name, std::uint64_t seed, std::uint64_t max_steps,
            const std::string& trace_path, bool snapshots, const std::string& decode_with) {
  const snp_system sys = load_snp(file);
  schedule_map sched;
  if (!schedule_path.empty()) sched = read_schedule(schedule_path);
  const run_policy policy = make_policy(policy_name, seed);
  const run_trace trace = run(sys, sched, policy, max_steps, snapshots);

  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    if (!out) throw cli_failure{2, "cannot write " + trace_path};
    write_trace(out, sys, trace);
  }

  std::cout << "reason: " << to_string(trace.reason) << "\n";
  std::cout << "steps: " << trace.steps << "\n";
  for (const auto& e : trace.outputs)
    std::cout << "emission: t=" << e.t << " amount=" << to_string(e.amount) << "\n";
  try {
    const bignat value = output_value(trace, sys.convention);
    std::cout << "output value (" << to_string(sys.convention) << "): " << to_string(value)
              << "\n";
  } catch (const output_error&) {
    std::cout << "output value (" << to_string(sys.convention) << "): none\n";
  }
  if (!decode_with.empty() && !trace.outputs.empty()) {
    const tm_spec spec = load_tm(decode_with);
    const auto cells = decode_output(trace.outputs.front().amount, spec);
    std::cout << "decoded tape:";
    for (int c : cells) std::cout << " a" << c;
    std::cout << "\n";
  }
  if (trace.reason == halt_kind::strict_violation) {
    std::cerr << "strict policy violation at step " << trace.violation->t << " in neuron "
              << trace.violation->neuron << "\n";
    return 1;
  }
  return 0;
}

int cmd_validate(const std::string& file) {
  const std::string text = slurp(file);
  std::vector<std::string> problems;
  switch (doc_kind_of(text)) {
    case doc_kind::snp: {
      const snp_system sys = parse_snp(text);
      problems = validate(sys);
      std::cout << "kind: system (" << sys.size() << " neurons)\n";
      break;
    }
    case doc_kind::tm: {
      const tm_spec spec = parse_tm(text);
      problems = validate_tm(spec);
      std::cout << "kind: tm (" << spec.states << " states, " << spec.symbols
                << " symbols)\n";
      break;
    }
    case doc_kind::cm: {
      const cm_spec spec = parse_cm(text);
      problems = validate_cm(spec);
      std::cout << "kind: cm (" << spec.counters << " counters, " << spec.states
                << " states)\n";
      break;
    }
  }
  if (!problems.empty()) {
    for (const auto& p : problems) std::cout << "problem: " << p << "\n";
    return 2;
  }
  std::cout << "ok\n";
  return 0;
}

int cmd_build_universal(const std::string& tm_file, const std::string& out_path,
                        bool with_provenance) {
  const tm_spec spec = load_tm(tm_file);
  const universal_system u = build_pi_m(spec);
  std::string text = print_snp(u.system);
  if (with_provenance) text += provenance_comments(u);
  emit(out_path, text);
  return 0;
}

int cmd_build_input_encoder(const std::string& tm_file, const std::string& out_path,
                            bool with_provenance) {
  const tm_spec spec = load_tm(tm_file);
  const universal_system u = build_pi_input(spec);
  std::string text = print_snp(u.system);
  if (with_provenance) text += provenance_comments(u);
  emit(out_path, text);
  return 0;
}

int cmd_encode(const std::string& tm_file, const std::string& tape_text, int head, int state,
               const std::string& out_path) {
  const tm_spec spec = load_tm(tm_file);
  const tm_config cfg = config_from_tape(spec, parse_tape(tape_text), head, state);
  const encoded_config enc = encode_for_pi_m(spec, cfg);
  const encode_params_t params = encode_params(spec.states, spec.symbols);
  const macro_schedule ms = build_schedule(enc, params);
  std::ostringstream os;
  os << "# loading schedule: radix " << params.z << ", boundary " << ms.offset
     << " + k*" << ms.period << "\n";
  for (const auto& [t, amount] : ms.schedule) os << t << " " << to_string(amount) << "\n";
  emit(out_path, os.str());
  return 0;
}

int cmd_translate_cm(const std::string& snp_file, const std::string& out_path) {
  const snp_system sys = load_snp(snp_file);
  snp_to_cm translator(sys);
  const cm_spec machine = translator.materialize();
  const translation_stats& st = translator.stats();
  std::ostringstream os;
  os << print_cm(machine);
  os << "# stats: x_r=" << st.x_r << " neurons=" << st.m << " states=" << st.state_count
     << "\n";
  emit(out_path, os.str());
  return 0;
}

int cmd_verify(const std::string& tm_file, std::uint64_t steps, const std::string& tape_text,
               int head, int state) {
  const tm_spec spec = load_tm(tm_file);
  tm_config cfg;  // all-blank default
  if (!tape_text.empty()) cfg = config_from_tape(spec, parse_tape(tape_text), head, state);
  const verify_report report = verify_against_oracle(spec, cfg, steps);

  const encode_params_t params = encode_params(spec.states, spec.symbols);
  const std::uint64_t period = std::uint64_t(params.v) + 9;
  for (std::uint64_t k = 0; k < report.boundaries_checked; ++k)
    std::cout << "boundary " << k << " (step " << 5 + k * period << "): PASS\n";
  if (report.mismatch) {
    const verify_mismatch& mm = *report.mismatch;
    std::cout << "boundary " << mm.boundary_index << " (step " << mm.step << "): FAIL\n";
  }
  if (!report.ok) {
    std::cout << "FAIL: " << report.detail << "\n";
    return 1;
  }
  if (report.tm_halted) {
    std::cout << "halted; emission " << to_string(report.emission) << " decodes to";
    for (int c : report.decoded_cells) std::cout << " a" << c;
    std::cout << " (zero digits stripped: " << report.stripped_zero_digits << ")\n";
  }
  std::cout << "PASS: " << report.boundaries_checked << " boundaries\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spiking-system workbench"};
  app.require_subcommand(1);

  std::string file, schedule_path, out_path, trace_path, tape_text, decode_with;
  std::string policy_name = "first";
  std::uint64_t seed = 0, max_steps = 1000, verify_steps = 10;
  int head = 1, state = 1;
  bool snapshots = false, with_provenance = false;

  CLI::App* c_run = app.add_subcommand("run", "run a spiking system");
  c_run->add_option("file", file)->required();
  c_run->add_option("--input", schedule_path, "schedule file with 'timestep count' lines");
  c_run->add_option("--policy", policy_name, "first|seeded|strict");
  c_run->add_option("--seed", seed);
  c_run->add_option("--max-steps", max_steps);
  c_run->add_option("--trace", trace_path, "write a line-oriented trace");
  c_run->add_flag("--snapshots", snapshots, "record per-step contents in the trace");
  c_run->add_option("--decode-with", decode_with, "machine file for decoding the emission");

  CLI::App* c_validate = app.add_subcommand("validate", "parse and validate a file");
  c_validate->add_option("file", file)->required();

  CLI::App* c_bu = app.add_subcommand("build-universal", "emit the ten-neuron simulator");
  c_bu->add_option("tm_file", file)->required();
  c_bu->add_option("-o", out_path);
  c_bu->add_flag("--provenance", with_provenance, "append per-rule provenance comments");

  CLI::App* c_bi = app.add_subcommand("build-input-encoder", "emit the input encoder");
  c_bi->add_option("tm_file", file)->required();
  c_bi->add_option("-o", out_path);
  c_bi->add_flag("--provenance", with_provenance, "append per-rule provenance comments");

  CLI::App* c_encode = app.add_subcommand("encode", "emit a loading schedule");
  c_encode->add_option("tm_file", file)->required();
  c_encode->add_option("--tape", tape_text, "comma-separated symbol indices")->required();
  c_encode->add_option("--head", head, "1-based scanned position");
  c_encode->add_option("--state", state, "1-based state");
  c_encode->add_option("-o", out_path);

  CLI::App* c_tr = app.add_subcommand("translate-cm", "compile to a counter machine");
  c_tr->add_option("snp_file", file)->required();
  c_tr->add_option("-o", out_path);

  CLI::App* c_verify = app.add_subcommand("verify", "check the simulator against the oracle");
  c_verify->add_option("tm_file", file)->required();
  c_verify->add_option("--steps", verify_steps, "transitions to verify");
  c_verify->add_option("--tape", tape_text, "comma-separated symbol indices");
  c_verify->add_option("--head", head);
  c_verify->add_option("--state", state);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_run->parsed())
      return cmd_run(file, schedule_path, policy_name, seed, max_steps, trace_path, snapshots,
                     decode_with);
    if (c_validate->parsed()) return cmd_validate(file);
    if (c_bu->parsed()) return cmd_build_universal(file, out_path, with_provenance);
    if (c_bi->parsed()) return cmd_build_input_encoder(file, out_path, with_provenance);
    if (c_encode->parsed()) return cmd_encode(file, tape_text, head, state, out_path);
    if (c_tr->parsed()) return cmd_translate_cm(file, out_path);
    if (c_verify->parsed()) return cmd_verify(file, verify_steps, tape_text, head, state);
  } catch (const cli_failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const dsl_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
