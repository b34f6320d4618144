// Compiles a standard-mode spiking system into a multicounter machine.
//
// Control states carry, per neuron: one tracking-automaton position per rule,
// the remaining firing delay, and stage bookkeeping (cursors, the selected
// rule, pending removals, probe progress).  Counters c_1..c_m carry the spike
// contents and c_{m+1} the output gap.  Each simulated timestep runs three
// stages: rule selection + consumption (one DEC per removed spike, with a
// probe resolving the g_x movement ambiguity), firing + delivery (one INC per
// open target), and input reading + delay/output bookkeeping.  Pure
// bookkeeping transitions are folded into the next counter/tape action, so
// every machine step does real work.

#include "snpsim/snp2cm.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

namespace snpsim {

rule_automaton build_g(const rule_spec& r) {
  rule_automaton g;
  g.b = r.b;
  g.forgetting = r.forgetting();
  std::uint64_t b = 0;
  try {
    b = to_u64(r.b);
  } catch (const std::overflow_error&) {
    throw translate_error("rule consumption amount too large for automaton construction");
  }
  g.tc = build_tail_cycle(r.guard, b);
  return g;
}

rule_automaton_prime build_gprime(const rule_automaton& g) {
  rule_automaton_prime p;
  p.tc = g.tc;
  p.plus.assign(std::size_t(g.tc.y) + 1, 0);
  p.minus.assign(std::size_t(g.tc.y) + 1, {});
  for (std::uint64_t pos = 1; pos <= g.tc.y; ++pos) {
    p.plus[std::size_t(pos)] = g.tc.step_plus(pos);
    p.minus[std::size_t(pos)] = g.tc.succ_minus(pos);
  }
  return p;
}

namespace {

// Control phases.  The prologue loads initial markings and reads the bit for
// timestep 1; thereafter the three stages cycle, separated by a boundary
// marker that delimits simulated timesteps.
enum phase_t : std::uint8_t {
  PH_PRO_INC = 0,  // prologue: INC initial marking of neuron ni
  PH_PRO_READ,     // prologue: read input bit for t=1
  PH_PRO_IN,       // prologue: deliver that bit
  PH_BOUND,        // simulated-timestep boundary (bookkeeping marker)
  PH_S1,           // stage 1: select rules, remove spikes
  PH_S1P,          // stage 1: decrement probe at an ambiguous position
  PH_S1R,          // stage 1: restoring INCs after a probe
  PH_S2,           // stage 2: fire, deliver to open targets
  PH_S3_READ,      // stage 3: read input bit for t+1
  PH_S3_IN,        // stage 3: deliver that bit
  PH_S3_POST,      // stage 3: output-gap INC
  PH_HALT          // second output firing seen: move to the halt state
};

struct payload {
  std::vector<std::uint16_t> pos;  // automaton positions, flattened per rule
  std::vector<std::uint8_t> r;     // remaining delays (0 = idle, 1 = fires now)
  std::uint8_t out_count = 0;      // output firings seen (saturates at 2)
  std::uint8_t phase = PH_PRO_INC;
  std::uint16_t ni = 1;            // neuron cursor
  std::uint16_t ri = 0;            // stage-2 target cursor (0 = pre-bump)
  std::uint8_t sel = 0;            // selected rule + 1 (0 = none)
  std::uint16_t removals = 0;      // spikes still to remove
  std::uint16_t probe = 0;         // probe DECs performed
  std::uint16_t inc_left = 0;      // restoring INCs remaining
  bignat pro_left;                 // prologue INCs remaining for neuron ni

  bool operator==(const payload&) const = default;
};

std::string key_of(const payload& p) {
  std::ostringstream os;
  os << int(p.phase) << '|' << p.ni << '|' << p.ri << '|' << int(p.sel) << '|'
     << p.removals << '|' << p.probe << '|' << p.inc_left << '|'
     << int(p.out_count) << '|' << p.pro_left << '|';
  for (auto v : p.pos) os << v << ',';
  os << '|';
  for (auto v : p.r) os << int(v) << ',';
  return os.str();
}

enum class act_kind { inc, dec, branch, choice, read, halt_step };

struct action {
  act_kind kind = act_kind::inc;
  int counter = 0;  // 1-based, for inc/dec/branch
  payload next;     // inc/dec successor
  // branch (counter test): the true side may DEC, the false side never does.
  bool true_dec = false;
  bool has_false = true;
  payload next_true, next_false;
  // choice: nondeterministic rule selection, annotated with rule indices.
  int choice_neuron = 0;
  std::vector<std::pair<int, payload>> alternatives;
  // read:
  payload next0, next1, next_end;
};

}  // namespace

// ---------------------------------------------------------------------------
// Translation state
// ---------------------------------------------------------------------------

struct snp_to_cm::impl {
  snp_system sys;
  options opt;
  int m = 0;
  std::vector<std::size_t> base;              // flatten offset per neuron
  std::vector<rule_automaton> autos;          // flattened [neuron][rule]
  std::vector<std::uint16_t> bval;            // removal count per rule
  std::vector<std::uint8_t> dval;             // delay per rule (0 for forgetting)
  std::vector<bool> forg;
  std::vector<std::vector<int>> targets;      // sorted synapse targets, per neuron
  translation_stats st;

  impl(const snp_system& s, options o) : sys(s), opt(o) {
    auto problems = validate(sys);
    if (!problems.empty())
      throw translate_error("system fails validation: " + problems.front());
    if (sys.mode != snp_mode::standard)
      throw translate_error("only standard-mode systems can be compiled");
    if (sys.convention != out_convention::spike_gap)
      throw translate_error("only spike-gap output systems can be compiled");
    if (sys.input && *sys.input != 1)
      throw translate_error("a compiled system's input neuron must be neuron 1");
    m = int(sys.neurons.size());
    targets.assign(std::size_t(m), {});
    for (const auto& [a, b] : sys.synapses) targets[std::size_t(a - 1)].push_back(b);
    for (auto& tg : targets) std::sort(tg.begin(), tg.end());
    base.resize(std::size_t(m));
    for (int i = 0; i < m; ++i) {
      base[std::size_t(i)] = autos.size();
      const auto& rules = sys.neurons[std::size_t(i)].rules;
      if (rules.size() > 200)
        throw translate_error("too many rules in one neuron");
      for (const rule_spec& r : rules) {
        rule_automaton g = build_g(r);
        if (g.tc.y > 60000)
          throw translate_error("rule guard period/threshold too large to compile");
        if (!r.forgetting() && r.d > 255)
          throw translate_error("rule delay too large to compile");
        st.x_r = std::max(st.x_r, g.tc.x);
        bval.push_back(std::uint16_t(to_u64(r.b)));
        dval.push_back(std::uint8_t(r.forgetting() ? 0 : r.d));
        forg.push_back(r.forgetting());
        autos.push_back(std::move(g));
      }
    }
    st.m = m;
  }

  std::size_t idx(int ni, int rho) const {
    return base[std::size_t(ni - 1)] + std::size_t(rho);
  }
  std::size_t rules_of(int ni) const {
    return sys.neurons[std::size_t(ni - 1)].rules.size();
  }

  payload initial_payload() const {
    payload p;
    p.pos.resize(autos.size());
    for (std::size_t i = 0; i < autos.size(); ++i)
      p.pos[i] = std::uint16_t(autos[i].tc.pos_of_count(bignat(0)));
    p.r.assign(std::size_t(m), 0);
    p.phase = PH_PRO_INC;
    p.ni = 1;
    p.pro_left = sys.neurons[0].initial_spikes;
    return p;
  }

  std::vector<int> candidates(const payload& p, int ni) const {
    std::vector<int> out;
    for (std::size_t rho = 0; rho < rules_of(ni); ++rho) {
      const rule_automaton& g = autos[idx(ni, int(rho))];
      if (g.tc.accepting(p.pos[idx(ni, int(rho))])) out.push_back(int(rho));
    }
    return out;
  }

  bool ambiguous(const payload& p, int ni) const {
    for (std::size_t rho = 0; rho < rules_of(ni); ++rho) {
      const rule_automaton& g = autos[idx(ni, int(rho))];
      if (g.tc.ambiguous_minus(p.pos[idx(ni, int(rho))])) return true;
    }
    return false;
  }

  std::uint16_t max_ambiguous_x(const payload& p, int ni) const {
    std::uint64_t xs = 0;
    for (std::size_t rho = 0; rho < rules_of(ni); ++rho) {
      const rule_automaton& g = autos[idx(ni, int(rho))];
      if (g.tc.ambiguous_minus(p.pos[idx(ni, int(rho))]))
        xs = std::max(xs, g.tc.x);
    }
    return std::uint16_t(xs);
  }

  void plus_all(payload& p, int ni) const {
    for (std::size_t rho = 0; rho < rules_of(ni); ++rho) {
      auto& pos = p.pos[idx(ni, int(rho))];
      pos = std::uint16_t(autos[idx(ni, int(rho))].tc.step_plus(pos));
    }
  }

  // Folds bookkeeping-only control moves; stops when a machine action is due.
  // Counts the simulated-timestep boundaries crossed on the way.
  void normalize(payload& p, std::uint64_t& boundaries) const {
    for (;;) {
      switch (p.phase) {
        case PH_PRO_INC:
          if (p.pro_left > 0) return;
          if (int(p.ni) < m) {
            ++p.ni;
            p.pro_left = sys.neurons[std::size_t(p.ni - 1)].initial_spikes;
            continue;
          }
          p.phase = PH_PRO_READ;
          p.ni = 0;
          continue;
        case PH_PRO_READ:
        case PH_PRO_IN:
          return;
        case PH_BOUND:
          ++boundaries;
          p.phase = PH_S1;
          p.ni = 1;
          p.ri = 0;
          p.sel = 0;
          p.removals = 0;
          p.probe = 0;
          p.inc_left = 0;
          continue;
        case PH_S1: {
          if (p.sel == 0) {
            while (int(p.ni) <= m && (p.r[std::size_t(p.ni - 1)] != 0 ||
                                      candidates(p, p.ni).empty()))
              ++p.ni;
            if (int(p.ni) > m) {
              p.phase = PH_S2;
              p.ni = 1;
              p.ri = 0;
              continue;
            }
            auto cand = candidates(p, p.ni);
            if (cand.size() >= 2) return;  // nondeterministic choice due
            p.sel = std::uint8_t(cand[0] + 1);
            p.removals = bval[idx(p.ni, cand[0])];
            continue;
          }
          if (p.removals == 0) {
            const std::size_t i = idx(p.ni, p.sel - 1);
            if (!forg[i]) p.r[std::size_t(p.ni - 1)] = dval[i];
            p.sel = 0;
            ++p.ni;
            continue;
          }
          if (ambiguous(p, p.ni)) {
            p.phase = PH_S1P;
            p.probe = 0;
            continue;
          }
          return;  // plain removal DEC due
        }
        case PH_S1P:
          return;
        case PH_S1R:
          if (p.inc_left == 0) {
            p.phase = PH_S1;
            continue;
          }
          return;
        case PH_S2: {
          while (int(p.ni) <= m && p.r[std::size_t(p.ni - 1)] != 1) {
            ++p.ni;
            p.ri = 0;
          }
          if (int(p.ni) > m) {
            if (p.out_count == 2) {
              p.phase = PH_HALT;
              continue;
            }
            for (auto& rv : p.r)
              if (rv > 0) --rv;
            p.phase = PH_S3_READ;
            continue;
          }
          if (p.ri == 0) {
            if (int(p.ni) == sys.output && p.out_count < 2) ++p.out_count;
            p.ri = 1;
            continue;
          }
          const auto& tg = targets[std::size_t(p.ni - 1)];
          std::size_t ti = std::size_t(p.ri) - 1;
          while (ti < tg.size() && p.r[std::size_t(tg[ti] - 1)] >= 2) ++ti;
          if (ti >= tg.size()) {
            ++p.ni;
            p.ri = 0;
            continue;
          }
          p.ri = std::uint16_t(ti + 1);
          return;  // delivery INC due
        }
        case PH_S3_READ:
        case PH_S3_IN:
          return;
        case PH_S3_POST:
          if (p.out_count == 1) return;  // gap INC due
          p.phase = PH_BOUND;
          continue;
        case PH_HALT:
          return;
      }
    }
  }

  // Restoration targets after a probe that discovered the exact count k:
  // every automaton moves to the position of count k-1.
  payload exact_restore(const payload& p, std::uint16_t k) const {
    payload q = p;
    for (std::size_t rho = 0; rho < rules_of(p.ni); ++rho)
      q.pos[idx(p.ni, int(rho))] = std::uint16_t(
          autos[idx(p.ni, int(rho))].tc.pos_of_count(bignat(k - 1)));
    --q.removals;
    q.inc_left = std::uint16_t(k - 1);
    q.probe = 0;
    q.phase = PH_S1R;
    return q;
  }

  // Restoration when the count exceeded every ambiguous x: ambiguous automata
  // wrap to g_y, the rest take their single -s move.
  payload wrap_restore(const payload& p, std::uint16_t xstar) const {
    payload q = p;
    for (std::size_t rho = 0; rho < rules_of(p.ni); ++rho) {
      const tail_cycle& tc = autos[idx(p.ni, int(rho))].tc;
      auto& pos = q.pos[idx(p.ni, int(rho))];
      if (tc.ambiguous_minus(pos)) {
        pos = std::uint16_t(tc.y);
      } else {
        auto succ = tc.succ_minus(pos);
        if (succ.size() != 1)
          throw std::logic_error("unambiguous automaton with non-single -s move");
        pos = std::uint16_t(succ[0]);
      }
    }
    --q.removals;
    q.inc_left = std::uint16_t(xstar - 1);
    q.probe = 0;
    q.phase = PH_S1R;
    return q;
  }

  // The machine action due in a normalized payload.
  action next_action(const payload& p) const {
    action a;
    switch (p.phase) {
      case PH_PRO_INC: {
        a.kind = act_kind::inc;
        a.counter = int(p.ni);
        payload q = p;
        q.pro_left -= 1;
        plus_all(q, p.ni);
        a.next = std::move(q);
        return a;
      }
      case PH_PRO_READ: {
        a.kind = act_kind::read;
        payload q = p;
        q.phase = PH_BOUND;
        a.next0 = q;
        a.next_end = q;
        if (sys.input) {
          payload qi = p;
          qi.phase = PH_PRO_IN;
          a.next1 = std::move(qi);
        } else {
          a.next1 = q;
        }
        return a;
      }
      case PH_PRO_IN: {
        a.kind = act_kind::inc;
        a.counter = *sys.input;
        payload q = p;
        plus_all(q, *sys.input);
        q.phase = PH_BOUND;
        a.next = std::move(q);
        return a;
      }
      case PH_S1: {
        if (p.sel == 0) {
          a.kind = act_kind::choice;
          a.choice_neuron = int(p.ni);
          for (int rho : candidates(p, p.ni)) {
            payload q = p;
            q.sel = std::uint8_t(rho + 1);
            q.removals = bval[idx(p.ni, rho)];
            a.alternatives.emplace_back(rho, std::move(q));
          }
          return a;
        }
        a.kind = act_kind::dec;
        a.counter = int(p.ni);
        payload q = p;
        --q.removals;
        for (std::size_t rho = 0; rho < rules_of(p.ni); ++rho) {
          const tail_cycle& tc = autos[idx(p.ni, int(rho))].tc;
          auto& pos = q.pos[idx(p.ni, int(rho))];
          auto succ = tc.succ_minus(pos);
          if (succ.size() != 1)
            throw std::logic_error("plain removal at an ambiguous position");
          pos = std::uint16_t(succ[0]);
        }
        a.next = std::move(q);
        return a;
      }
      case PH_S1P: {
        const std::uint16_t j = p.probe;
        const std::uint16_t xstar = max_ambiguous_x(p, p.ni);
        a.kind = act_kind::branch;
        a.counter = int(p.ni);
        if (j < xstar) {
          // Still probing: positive counter means DEC and continue; zero
          // means the count was exactly j.
          a.true_dec = true;
          payload q = p;
          ++q.probe;
          a.next_true = std::move(q);
          a.has_false = j > 0;
          if (a.has_false) a.next_false = exact_restore(p, j);
          return a;
        }
        // All probing DECs done: positive means the count exceeds xstar.
        a.true_dec = false;
        a.next_true = wrap_restore(p, xstar);
        a.has_false = true;
        a.next_false = exact_restore(p, xstar);
        return a;
      }
      case PH_S1R: {
        a.kind = act_kind::inc;
        a.counter = int(p.ni);
        payload q = p;
        --q.inc_left;
        a.next = std::move(q);
        return a;
      }
      case PH_S2: {
        const int target = targets[std::size_t(p.ni - 1)][std::size_t(p.ri) - 1];
        a.kind = act_kind::inc;
        a.counter = target;
        payload q = p;
        plus_all(q, target);
        ++q.ri;
        a.next = std::move(q);
        return a;
      }
      case PH_S3_READ: {
        a.kind = act_kind::read;
        payload q = p;
        q.phase = PH_S3_POST;
        a.next0 = q;
        a.next_end = q;
        if (sys.input && p.r[std::size_t(*sys.input - 1)] <= 1) {
          payload qi = p;
          qi.phase = PH_S3_IN;
          a.next1 = std::move(qi);
        } else {
          a.next1 = q;  // closed or absent input: the spike is lost
        }
        return a;
      }
      case PH_S3_IN: {
        a.kind = act_kind::inc;
        a.counter = *sys.input;
        payload q = p;
        plus_all(q, *sys.input);
        q.phase = PH_S3_POST;
        a.next = std::move(q);
        return a;
      }
      case PH_S3_POST: {
        a.kind = act_kind::inc;
        a.counter = m + 1;
        payload q = p;
        q.phase = PH_BOUND;
        a.next = std::move(q);
        return a;
      }
      case PH_HALT:
        a.kind = act_kind::halt_step;
        return a;
    }
    throw std::logic_error("unreachable phase");
  }
};

snp_to_cm::snp_to_cm(const snp_system& sys) : snp_to_cm(sys, options{}) {}
snp_to_cm::snp_to_cm(const snp_system& sys, options opt)
    : impl_(std::make_unique<impl>(sys, opt)) {}
snp_to_cm::~snp_to_cm() = default;
snp_to_cm::snp_to_cm(snp_to_cm&&) noexcept = default;
snp_to_cm& snp_to_cm::operator=(snp_to_cm&&) noexcept = default;

const translation_stats& snp_to_cm::stats() const { return impl_->st; }

// ---------------------------------------------------------------------------
// Direct (lazy) execution
// ---------------------------------------------------------------------------

namespace {

// One executed machine step over live counters and the input tape.
// `choose` resolves nondeterministic rule selections.
template <typename Chooser>
bool execute_step(const action& a, std::vector<bignat>& counters,
                  const std::string& word, std::uint64_t& head, payload& p,
                  Chooser&& choose, bool& halted) {
  switch (a.kind) {
    case act_kind::inc:
      counters[std::size_t(a.counter - 1)] += 1;
      p = a.next;
      return true;
    case act_kind::dec: {
      auto& c = counters[std::size_t(a.counter - 1)];
      if (c == 0) throw std::logic_error("removal from an empty counter");
      c -= 1;
      p = a.next;
      return true;
    }
    case act_kind::branch: {
      auto& c = counters[std::size_t(a.counter - 1)];
      if (c > 0) {
        if (a.true_dec) c -= 1;
        p = a.next_true;
      } else {
        if (!a.has_false)
          throw std::logic_error("probe reached zero where impossible");
        p = a.next_false;
      }
      return true;
    }
    case act_kind::choice: {
      const std::size_t pick = choose(a);
      p = a.alternatives[pick].second;
      return true;
    }
    case act_kind::read: {
      const char s = head < word.size() ? word[std::size_t(head)] : cm_end_marker;
      if (s == '0') {
        ++head;
        p = a.next0;
      } else if (s == '1') {
        ++head;
        p = a.next1;
      } else {
        p = a.next_end;
      }
      return true;
    }
    case act_kind::halt_step:
      halted = true;
      return true;
  }
  return false;
}

}  // namespace

snp_to_cm::lazy_run_result snp_to_cm::run_lazy(const std::string& word,
                                               const run_policy& policy,
                                               std::uint64_t max_cm_steps) {
  if (policy.kind == policy_kind::strict)
    throw translate_error("strict policy is not supported for direct machine runs");
  impl& im = *impl_;
  std::mt19937_64 rng(policy.seed);
  auto choose = [&](const action& a) -> std::size_t {
    if (policy.kind == policy_kind::first || a.alternatives.size() == 1) return 0;
    std::uniform_int_distribution<std::size_t> pick(0, a.alternatives.size() - 1);
    return pick(rng);
  };

  lazy_run_result res;
  res.counters.assign(std::size_t(im.m) + 1, bignat(0));
  payload p = im.initial_payload();
  std::uint64_t head = 0;
  bool halted = false;
  while (res.cm_steps < max_cm_steps && !halted) {
    std::uint64_t boundaries = 0;
    im.normalize(p, boundaries);
    res.timesteps += boundaries;
    const action a = im.next_action(p);
    execute_step(a, res.counters, word, head, p, choose, halted);
    ++res.cm_steps;
  }
  res.halted = halted;
  return res;
}

// ---------------------------------------------------------------------------
// Materialization
// ---------------------------------------------------------------------------

cm_spec snp_to_cm::materialize() {
  impl& im = *impl_;
  cm_spec out;
  out.name = (im.sys.name.empty() ? "system" : im.sys.name) + "_cm";
  out.counters = im.m + 1;
  out.output_counter = im.m + 1;
  out.alphabet = "01";

  std::unordered_map<std::string, int> ids;
  std::vector<payload> states;
  auto intern = [&](payload q) -> int {
    std::uint64_t ignore = 0;
    im.normalize(q, ignore);
    const std::string key = key_of(q);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    if (states.size() >= im.opt.state_cap)
      throw translate_error("state cap exceeded while materializing the machine");
    const int id = int(states.size());
    ids.emplace(key, id);
    states.push_back(std::move(q));
    return id;
  };

  constexpr int halt_placeholder = -1;
  const char symbols[3] = {'0', '1', cm_end_marker};

  out.start_state = intern(im.initial_payload());
  for (std::size_t qi = 0; qi < states.size(); ++qi) {
    const payload p = states[qi];  // copy: `states` grows during the loop
    const action a = im.next_action(p);
    auto add = [&](char sym, int tested, bool positive, bool advance,
                   int next_id, cm_action what, int action_counter) {
      cm_entry e;
      e.symbol = sym;
      e.state = int(qi);
      e.tested = tested;
      e.positive = positive;
      e.advance = advance;
      e.next_state = next_id;
      e.action = what;
      e.action_counter = action_counter;
      out.entries.push_back(e);
    };
    auto add_dontcare = [&](int next_id, cm_action what, int action_counter) {
      for (char sym : symbols)
        for (bool outcome : {true, false})
          add(sym, 1, outcome, false, next_id, what, action_counter);
    };
    switch (a.kind) {
      case act_kind::inc:
        add_dontcare(intern(a.next), cm_action::inc, a.counter);
        break;
      case act_kind::dec: {
        const int next_id = intern(a.next);
        for (char sym : symbols)
          add(sym, a.counter, true, false, next_id, cm_action::dec, a.counter);
        break;
      }
      case act_kind::branch: {
        const int true_id = intern(a.next_true);
        const int false_id = a.has_false ? intern(a.next_false) : 0;
        for (char sym : symbols) {
          add(sym, a.counter, true, false, true_id,
              a.true_dec ? cm_action::dec : cm_action::null,
              a.true_dec ? a.counter : 0);
          if (a.has_false)
            add(sym, a.counter, false, false, false_id, cm_action::null, 0);
        }
        break;
      }
      case act_kind::choice:
        for (const auto& [rho, alt] : a.alternatives) {
          (void)rho;
          add_dontcare(intern(alt), cm_action::null, 0);
        }
        break;
      case act_kind::read: {
        const int id0 = intern(a.next0);
        const int id1 = intern(a.next1);
        const int ide = intern(a.next_end);
        for (bool outcome : {true, false}) {
          add('0', 1, outcome, true, id0, cm_action::null, 0);
          add('1', 1, outcome, true, id1, cm_action::null, 0);
          add(cm_end_marker, 1, outcome, false, ide, cm_action::null, 0);
        }
        break;
      }
      case act_kind::halt_step:
        add_dontcare(halt_placeholder, cm_action::null, 0);
        break;
    }
  }

  out.states = int(states.size()) + 1;
  out.halt_state = int(states.size());
  for (cm_entry& e : out.entries)
    if (e.next_state == halt_placeholder) e.next_state = out.halt_state;
  im.st.state_count = states.size() + 1;
  return out;
}

// ---------------------------------------------------------------------------
// Side-by-side comparison
// ---------------------------------------------------------------------------

struct compare_access {
  static snp_to_cm::impl& get(snp_to_cm& t) { return *t.impl_; }
};

compare_report compare(const snp_system& sys, const schedule_map& schedule,
                       const run_policy& policy, std::uint64_t max_timesteps,
                       snp_to_cm::options opt) {
  snp_to_cm translation(sys, opt);
  auto& im = compare_access::get(translation);

  compare_report rep;
  rep.stats = translation.stats();

  // Reference run.
  run_trace tr = run(sys, schedule, policy, max_timesteps, true);
  rep.engine_space = tr.space_used;
  rep.engine_has_gap = tr.outputs.size() >= 2;
  if (rep.engine_has_gap) rep.engine_output = tr.outputs[1].t - tr.outputs[0].t;

  // Input word over {0,1}.
  std::string word;
  if (!schedule.empty()) {
    const std::uint64_t len = schedule.rbegin()->first;
    word.assign(std::size_t(len), '0');
    for (const auto& [t, amount] : schedule) {
      if (amount > 1)
        throw translate_error("compiled systems need a binary input schedule");
      if (amount == 1) word[std::size_t(t - 1)] = '1';
    }
  }

  // Rule choices made by the engine, to be forced onto the machine.
  std::map<std::pair<std::uint64_t, int>, int> forced;
  for (const selection_event& s : tr.selections)
    forced[{s.t, s.neuron}] = s.rule_index;

  // With a strict violation the violating step's selections are incomplete.
  const std::uint64_t t_check =
      tr.reason == halt_kind::strict_violation && tr.steps > 0 ? tr.steps - 1
                                                               : tr.steps;

  std::vector<bignat> counters(std::size_t(im.m) + 1, bignat(0));
  payload p = im.initial_payload();
  std::uint64_t head = 0;
  bool halted = false;
  bool done = false;
  std::uint64_t sim_t = 0;
  auto fail_at = [&](std::uint64_t t, const std::string& why) {
    rep.ok = false;
    if (rep.first_divergence == 0) rep.first_divergence = t;
    if (!rep.detail.empty()) rep.detail += "\n";
    rep.detail += "sim step " + std::to_string(t) + ": " + why;
    done = true;
  };
  auto track_sum = [&]() {
    bignat sum = 0;
    for (const bignat& c : counters) sum += c;
    if (sum > rep.max_counter_sum) rep.max_counter_sum = sum;
  };

  while (!done && !halted) {
    std::uint64_t boundaries = 0;
    im.normalize(p, boundaries);
    while (boundaries > 0) {
      --boundaries;
      ++sim_t;
      if (sim_t > t_check) {
        done = true;
        break;
      }
      rep.timesteps = sim_t;
      rep.cm_steps_per_timestep.push_back(0);
      // Boundary invariant: counters mirror the contents the engine saw at
      // the start of this timestep.
      for (int i = 0; i < im.m; ++i) {
        if (counters[std::size_t(i)] != tr.snapshots[std::size_t(sim_t - 1)][std::size_t(i)]) {
          fail_at(sim_t, "counter " + std::to_string(i + 1) + " holds " +
                             to_string(counters[std::size_t(i)]) +
                             " but neuron " + std::to_string(i + 1) +
                             " holds " +
                             to_string(tr.snapshots[std::size_t(sim_t - 1)][std::size_t(i)]));
          break;
        }
      }
    }
    if (done) break;

    const action a = im.next_action(p);
    auto choose = [&](const action& act) -> std::size_t {
      auto it = forced.find({sim_t, act.choice_neuron});
      if (it == forced.end()) {
        fail_at(sim_t, "machine offers a rule choice in neuron " +
                           std::to_string(act.choice_neuron) +
                           " where the engine applied none");
        return 0;
      }
      for (std::size_t k = 0; k < act.alternatives.size(); ++k)
        if (act.alternatives[k].first == it->second) return k;
      fail_at(sim_t, "engine chose rule " + std::to_string(it->second + 1) +
                         " in neuron " + std::to_string(act.choice_neuron) +
                         " but the machine does not offer it");
      return 0;
    };
    execute_step(a, counters, word, head, p, choose, halted);
    if (done) break;  // a choice mismatch surfaced inside choose
    track_sum();
    if (sim_t == 0)
      ++rep.prologue_steps;
    else
      ++rep.cm_steps_per_timestep.back();
  }

  rep.cm_halted = halted;
  if (halted) {
    rep.cm_output = counters[std::size_t(im.m)];
    if (!rep.engine_has_gap)
      fail_at(sim_t, "machine halted but the engine produced no output gap");
    else if (rep.cm_output != rep.engine_output)
      fail_at(sim_t, "machine output " + to_string(rep.cm_output) +
                         " != engine spike gap " + to_string(rep.engine_output));
  } else if (rep.engine_has_gap && tr.outputs[1].t <= t_check && rep.ok) {
    fail_at(tr.outputs[1].t,
            "engine's second output firing was not matched by a machine halt");
  }
  return rep;
}

}  // namespace snpsim
