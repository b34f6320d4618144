// Turing-machine execution and the radix encoding of configurations.

#include "snpsim/turing.hpp"

#include <sstream>
#include <stdexcept>
#include <tuple>

namespace snpsim {

std::vector<std::string> validate_tm(const tm_spec& spec) {
  std::vector<std::string> problems;
  if (spec.states < 2) problems.push_back("need at least a working and a halting state");
  if (spec.symbols < 1) problems.push_back("need at least the blank symbol");
  for (const auto& [key, rule] : spec.delta) {
    const auto [q, a] = key;
    std::ostringstream where;
    where << "delta(q" << q << ",a" << a << "): ";
    if (q < 1 || q >= spec.states)
      problems.push_back(where.str() + "state out of range or halting");
    if (a < 1 || a > spec.symbols)
      problems.push_back(where.str() + "symbol out of range");
    if (rule.write < 1 || rule.write > spec.symbols)
      problems.push_back(where.str() + "written symbol out of range");
    if (rule.next < 1 || rule.next > spec.states)
      problems.push_back(where.str() + "next state out of range");
  }
  for (int q = 1; q < spec.states; ++q)
    for (int a = 1; a <= spec.symbols; ++a)
      if (spec.delta.find({q, a}) == spec.delta.end()) {
        std::ostringstream os;
        os << "delta(q" << q << ",a" << a << ") missing";
        problems.push_back(os.str());
      }
  return problems;
}

std::vector<std::string> validate_config(const tm_spec& spec, const tm_config& cfg) {
  std::vector<std::string> problems;
  auto check_half = [&](const std::vector<int>& half, const char* name) {
    if (half.empty()) {
      problems.push_back(std::string(name) + " tape half is empty");
      return;
    }
    if (half.back() != 1)
      problems.push_back(std::string(name) + " tape half must end in a blank");
    for (int s : half)
      if (s < 1 || s > spec.symbols)
        problems.push_back(std::string(name) + " tape half has a bad symbol");
  };
  check_half(cfg.left, "left");
  check_half(cfg.right, "right");
  if (cfg.head < 1 || cfg.head > spec.symbols)
    problems.push_back("scanned symbol out of range");
  if (cfg.state < 1 || cfg.state > spec.states)
    problems.push_back("state out of range");
  return problems;
}

bool tm_halted(const tm_spec& spec, const tm_config& cfg) {
  return cfg.state == spec.states;
}

tm_config tm_step(const tm_spec& spec, const tm_config& cfg) {
  if (tm_halted(spec, cfg)) throw std::logic_error("stepping a halted machine");
  auto it = spec.delta.find({cfg.state, cfg.head});
  if (it == spec.delta.end()) throw std::logic_error("missing transition");
  const tm_rule& r = it->second;
  tm_config next = cfg;
  next.state = r.next;
  if (r.move == tm_move::left) {
    next.right.insert(next.right.begin(), r.write);
    next.head = next.left.front();
    next.left.erase(next.left.begin());
    if (next.left.empty()) next.left.push_back(1);
  } else {
    next.left.insert(next.left.begin(), r.write);
    next.head = next.right.front();
    next.right.erase(next.right.begin());
    if (next.right.empty()) next.right.push_back(1);
  }
  return next;
}

tm_config tm_run(const tm_spec& spec, tm_config cfg, std::uint64_t max_steps) {
  for (std::uint64_t i = 0; i < max_steps && !tm_halted(spec, cfg); ++i)
    cfg = tm_step(spec, cfg);
  return cfg;
}

encode_params_t encode_params(int states, int symbols) {
  const std::uint64_t top = 2ull * std::uint64_t(states) * std::uint64_t(symbols) +
                            2ull * std::uint64_t(symbols);
  encode_params_t p;
  p.v = 0;
  while ((1ull << p.v) < top) ++p.v;
  p.z = 1ull << p.v;
  return p;
}

std::uint64_t sym_code(int symbol) { return 2ull * std::uint64_t(symbol) - 1; }

std::uint64_t state_code(int state, int symbols) {
  return 2ull * std::uint64_t(state) * std::uint64_t(symbols);
}

encoded_config encode_config(const tm_spec& spec, const tm_config& cfg) {
  const std::uint64_t z = encode_params(spec.states, spec.symbols).z;
  auto pack = [&](const std::vector<int>& half) {
    bignat acc = 0;
    bignat base = z;
    for (int s : half) {
      acc += base * sym_code(s);
      base *= z;
    }
    return acc;
  };
  encoded_config e;
  e.x = pack(cfg.left);
  e.y = pack(cfg.right);
  e.code = state_code(cfg.state, spec.symbols) + sym_code(cfg.head);
  return e;
}

std::pair<int, int> split_code(const tm_spec& spec, std::uint64_t code) {
  const std::uint64_t band = 2ull * std::uint64_t(spec.symbols);
  const std::uint64_t sym = code % band;  // 2i - 1
  if (sym % 2 == 0 || sym == 0) throw std::logic_error("malformed code");
  const int symbol = int((sym + 1) / 2);
  const int state = int((code - sym) / band);
  if (state < 1 || state > spec.states || symbol < 1 || symbol > spec.symbols)
    throw std::logic_error("code out of range");
  return {state, symbol};
}

tm_config decode_config(const tm_spec& spec, const encoded_config& e) {
  const std::uint64_t z = encode_params(spec.states, spec.symbols).z;
  auto unpack = [&](bignat n, const char* name) {
    if (n == 0) throw std::invalid_argument(std::string(name) + " tape number is zero");
    if (mod_u64(n, z) != 0)
      throw std::invalid_argument(std::string(name) + " tape number has a nonzero unit digit");
    n /= z;
    std::vector<int> half;
    while (n != 0) {
      const std::uint64_t digit = mod_u64(n, z);
      if (digit % 2 == 0 || digit > 2ull * std::uint64_t(spec.symbols) - 1)
        throw std::invalid_argument(std::string(name) + " tape number has a non-symbol digit");
      half.push_back(int((digit + 1) / 2));
      n /= z;
    }
    return half;
  };
  tm_config cfg;
  cfg.left = unpack(e.x, "left");
  cfg.right = unpack(e.y, "right");
  int state = 0, head = 0;
  try {
    std::tie(state, head) = split_code(spec, e.code);
  } catch (const std::logic_error& err) {
    throw std::invalid_argument(err.what());
  }
  cfg.state = state;
  cfg.head = head;
  return cfg;
}

encoded_config apply_transition_encoded(const tm_spec& spec, const encoded_config& e) {
  const std::uint64_t z = encode_params(spec.states, spec.symbols).z;
  const auto [q, a] = split_code(spec, e.code);
  if (q == spec.states) throw std::logic_error("applying a transition in the halting state");
  const tm_rule& r = spec.delta.at({q, a});
  encoded_config out;
  if (r.move == tm_move::left) {
    const bignat shifted = e.x / z;
    const bignat c = shifted % z;  // code of the newly scanned cell
    out.x = shifted - c;
    out.y = e.y * z + bignat(z) * sym_code(r.write);
    out.code = state_code(r.next, spec.symbols) + to_u64(c);
    if (out.x == 0) {
      if (c != 1) throw std::logic_error("left half emptied on a non-blank cell");
      out.x = z;
    }
  } else {
    const bignat shifted = e.y / z;
    const bignat c = shifted % z;
    out.y = shifted - c;
    out.x = e.x * z + bignat(z) * sym_code(r.write);
    out.code = state_code(r.next, spec.symbols) + to_u64(c);
    if (out.y == 0) {
      if (c != 1) throw std::logic_error("right half emptied on a non-blank cell");
      out.y = z;
    }
  }
  return out;
}

}  // namespace snpsim
