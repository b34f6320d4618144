// Lexer, parsers, and printers for the kind-headed document format.

#include "snpsim/dsl.hpp"

#include <cctype>
#include <sstream>

namespace snpsim {

namespace {

// ---------------------------------------------------------------------------
// Lexing
// ---------------------------------------------------------------------------

struct token {
  enum kind_t { word, integer, str, punct, eof } kind = eof;
  std::string text;
  int line = 1;
  int col = 1;
};

class lexer {
 public:
  explicit lexer(const std::string& src) : src_(src) {}

  token next() {
    skip_blank();
    token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) {
      t.kind = token::eof;
      return t;
    }
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      t.kind = token::word;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_' || src_[pos_] == '$'))
        t.text.push_back(take());
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = token::integer;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        t.text.push_back(take());
      return t;
    }
    if (c == '"') {
      t.kind = token::str;
      take();
      while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n')
        t.text.push_back(take());
      if (pos_ >= src_.size() || src_[pos_] != '"')
        throw dsl_error(t.line, t.col, "unterminated string");
      take();
      return t;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      t.kind = token::punct;
      t.text = "->";
      take();
      take();
      return t;
    }
    if (std::string("(){},;/=").find(c) != std::string::npos) {
      t.kind = token::punct;
      t.text = std::string(1, take());
      return t;
    }
    throw dsl_error(line_, col_, std::string("unexpected character '") + c + "'");
  }

 private:
  char take() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') take();
      } else {
        break;
      }
    }
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Parsing helpers
// ---------------------------------------------------------------------------

class parser {
 public:
  explicit parser(const std::string& src) : lx_(src) { cur_ = lx_.next(); }

  const token& cur() const { return cur_; }
  void advance() { cur_ = lx_.next(); }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(cur_, msg); }
  [[noreturn]] static void fail_at(const token& t, const std::string& msg) {
    throw dsl_error(t.line, t.col, msg);
  }

  bool at_word(const char* w) const {
    return cur_.kind == token::word && cur_.text == w;
  }
  bool at_punct(const char* p) const {
    return cur_.kind == token::punct && cur_.text == p;
  }

  token take_word(const char* what) {
    if (cur_.kind != token::word) fail(std::string("expected ") + what);
    token t = cur_;
    advance();
    return t;
  }
  void keyword(const char* w) {
    if (!at_word(w)) fail(std::string("expected '") + w + "'");
    advance();
  }
  void punct(const char* p) {
    if (!at_punct(p)) fail(std::string("expected '") + p + "'");
    advance();
  }
  token take_string() {
    if (cur_.kind != token::str) fail("expected a quoted string");
    token t = cur_;
    advance();
    return t;
  }
  bignat take_nat(const char* what) {
    if (cur_.kind != token::integer) fail(std::string("expected ") + what);
    bignat value = parse_bignat(cur_.text);
    advance();
    return value;
  }
  std::uint64_t take_u64(const char* what) {
    const token t = cur_;
    const bignat value = take_nat(what);
    try {
      return to_u64(value);
    } catch (const std::overflow_error&) {
      fail_at(t, std::string(what) + " too large");
    }
  }
  // key=value with an integer value.
  std::uint64_t field_u64(const char* key) {
    keyword(key);
    punct("=");
    return take_u64(key);
  }
  void done() {
    if (cur_.kind != token::eof) fail("trailing input after document");
  }

  // Parses q<N> or a<N> style references; returns the 1-based number.
  std::uint64_t take_ref(char prefix, const char* what) {
    if (cur_.kind != token::word || cur_.text.size() < 2 || cur_.text[0] != prefix)
      fail(std::string("expected ") + what);
    const std::string digits = cur_.text.substr(1);
    for (char c : digits)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        fail(std::string("expected ") + what);
    std::uint64_t n = 0;
    try {
      n = to_u64(parse_bignat(digits));
    } catch (const std::overflow_error&) {
      fail(std::string(what) + " too large");
    }
    if (n == 0) fail(std::string(what) + " must be at least 1");
    advance();
    return n;
  }

 private:
  lexer lx_;
  token cur_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Kind dispatch
// ---------------------------------------------------------------------------

doc_kind doc_kind_of(const std::string& text) {
  parser p(text);
  if (p.at_word("system")) return doc_kind::snp;
  if (p.at_word("tm")) return doc_kind::tm;
  if (p.at_word("cm")) return doc_kind::cm;
  p.fail("expected a document starting with 'system', 'tm', or 'cm'");
}

// ---------------------------------------------------------------------------
// Spiking systems
// ---------------------------------------------------------------------------

snp_system parse_snp(const std::string& text) {
  parser p(text);
  snp_system sys;
  p.keyword("system");
  sys.name = p.take_word("a system name").text;

  p.keyword("mode");
  p.punct("=");
  {
    const token t = p.take_word("a mode");
    if (t.text == "standard") sys.mode = snp_mode::standard;
    else if (t.text == "extended") sys.mode = snp_mode::extended;
    else if (t.text == "exhaustive") sys.mode = snp_mode::exhaustive;
    else parser::fail_at(t, "mode must be standard, extended, or exhaustive");
  }

  p.keyword("input");
  p.punct("=");
  if (p.at_word("none")) {
    p.advance();
  } else {
    const std::uint64_t id = p.take_u64("input neuron id");
    if (id != 0) sys.input = int(id);
  }

  p.keyword("output");
  p.punct("=");
  sys.output = int(p.take_u64("output neuron id"));

  p.keyword("output_convention");
  p.punct("=");
  {
    const token t = p.take_word("an output convention");
    if (t.text == "gap") sys.convention = out_convention::spike_gap;
    else if (t.text == "events") sys.convention = out_convention::emission_events;
    else parser::fail_at(t, "output_convention must be gap or events");
  }

  int expected_id = 1;
  while (p.at_word("neuron")) {
    p.advance();
    const token id_tok = p.cur();
    const std::uint64_t id = p.take_u64("neuron id");
    if (id != std::uint64_t(expected_id))
      parser::fail_at(id_tok, "neuron ids must run 1,2,3,... in order");
    ++expected_id;
    neuron_spec neuron;
    p.keyword("spikes");
    p.punct("=");
    neuron.initial_spikes = p.take_nat("a spike count");
    p.punct("{");
    while (p.at_word("rule")) {
      p.advance();
      const token expr_tok = p.take_string();
      expr_ptr guard;
      try {
        guard = parse_expr(expr_tok.text);
      } catch (const parse_error& e) {
        // Column of the offending character inside the quoted guard.
        throw dsl_error(expr_tok.line, expr_tok.col + 1 + int(e.position),
                        e.what());
      }
      p.punct("/");
      bignat b = p.take_nat("a consumption amount");
      p.punct("->");
      const token p_tok = p.cur();
      bignat emit = p.take_nat("an emission amount");
      p.punct(";");
      const token d_tok = p.cur();
      const std::uint64_t d = p.take_u64("a delay");
      if (emit == 0 && d != 0)
        parser::fail_at(d_tok, "a forgetting rule must have delay 0");
      if (emit != 0 && d == 0)
        parser::fail_at(p_tok, "a spiking rule needs a delay of at least 1");
      neuron.rules.push_back(make_rule(guard, std::move(b), std::move(emit), d));
    }
    p.punct("}");
    sys.neurons.push_back(std::move(neuron));
  }

  p.keyword("synapses");
  p.punct("{");
  while (p.at_punct("(")) {
    p.advance();
    const int from = int(p.take_u64("a neuron id"));
    p.punct(",");
    const int to = int(p.take_u64("a neuron id"));
    p.punct(")");
    sys.synapses.insert({from, to});
  }
  p.punct("}");
  p.done();
  return sys;
}

std::string print_snp(const snp_system& sys) {
  std::ostringstream os;
  os << "system " << (sys.name.empty() ? "unnamed" : sys.name)
     << " mode=" << to_string(sys.mode)
     << " input=" << (sys.input ? *sys.input : 0)
     << " output=" << sys.output
     << " output_convention=" << to_string(sys.convention) << "\n";
  for (std::size_t i = 0; i < sys.neurons.size(); ++i) {
    const neuron_spec& n = sys.neurons[i];
    os << "neuron " << (i + 1) << " spikes=" << to_string(n.initial_spikes)
       << " {\n";
    for (const rule_spec& r : n.rules)
      os << "  rule \"" << r.expr_text << "\" / " << to_string(r.b) << " -> "
         << to_string(r.p) << " ; " << r.d << "\n";
    os << "}\n";
  }
  os << "synapses {\n";
  for (const auto& [a, b] : sys.synapses)
    os << "  (" << a << "," << b << ")\n";
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Turing machines
// ---------------------------------------------------------------------------

tm_spec parse_tm(const std::string& text) {
  parser p(text);
  tm_spec spec;
  p.keyword("tm");
  spec.name = p.take_word("a machine name").text;
  spec.states = int(p.field_u64("states"));
  spec.symbols = int(p.field_u64("symbols"));
  {
    p.keyword("blank");
    p.punct("=");
    const token t = p.cur();
    if (p.take_u64("blank symbol") != 1)
      parser::fail_at(t, "the blank must be symbol 1");
  }
  {
    p.keyword("halt");
    p.punct("=");
    const token t = p.cur();
    if (p.take_u64("halt state") != std::uint64_t(spec.states))
      parser::fail_at(t, "the halting state must be the last state");
  }
  while (p.at_word("delta")) {
    const token delta_tok = p.cur();
    p.advance();
    const int q = int(p.take_ref('q', "a state like q1"));
    const int a = int(p.take_ref('a', "a symbol like a1"));
    p.punct("->");
    tm_rule rule;
    rule.write = int(p.take_ref('a', "a symbol like a1"));
    const token move_tok = p.take_word("L or R");
    if (move_tok.text == "L") rule.move = tm_move::left;
    else if (move_tok.text == "R") rule.move = tm_move::right;
    else parser::fail_at(move_tok, "move must be L or R");
    rule.next = int(p.take_ref('q', "a state like q1"));
    if (!spec.delta.emplace(std::make_pair(q, a), rule).second)
      parser::fail_at(delta_tok, "duplicate transition for this state and symbol");
  }
  p.done();
  return spec;
}

std::string print_tm(const tm_spec& spec) {
  std::ostringstream os;
  os << "tm " << (spec.name.empty() ? "unnamed" : spec.name)
     << " states=" << spec.states << " symbols=" << spec.symbols
     << " blank=1 halt=" << spec.states << "\n";
  for (const auto& [key, rule] : spec.delta)
    os << "delta q" << key.first << " a" << key.second << " -> a" << rule.write
       << " " << (rule.move == tm_move::left ? "L" : "R") << " q" << rule.next
       << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Counter machines
// ---------------------------------------------------------------------------

namespace {

// Single-character entry symbol: a one-character word/integer token, or the
// end marker.
char take_cm_symbol(parser& p) {
  const token t = p.cur();
  if ((t.kind != token::word && t.kind != token::integer) || t.text.size() != 1)
    parser::fail_at(t, "expected a one-character input symbol");
  p.advance();
  return t.text[0];
}

}  // namespace

cm_spec parse_cm(const std::string& text) {
  parser p(text);
  cm_spec spec;
  p.keyword("cm");
  spec.name = p.take_word("a machine name").text;
  spec.counters = int(p.field_u64("counters"));
  spec.output_counter = int(p.field_u64("output"));
  spec.states = int(p.field_u64("states"));
  p.keyword("start");
  p.punct("=");
  spec.start_state = int(p.take_ref('q', "a state like q1")) - 1;
  p.keyword("halt");
  p.punct("=");
  spec.halt_state = int(p.take_ref('q', "a state like q1")) - 1;
  p.keyword("alphabet");
  p.punct("=");
  spec.alphabet = p.take_string().text;

  auto counter_index = [&](parser& pp) {
    const token t = pp.cur();
    const std::uint64_t i = pp.take_u64("a counter index");
    if (i < 1 || i > std::uint64_t(spec.counters))
      parser::fail_at(t, "counter index out of range");
    return int(i);
  };

  while (p.at_word("entry")) {
    p.advance();
    cm_entry e;
    e.symbol = take_cm_symbol(p);
    e.state = int(p.take_ref('q', "a state like q1")) - 1;
    p.keyword("g");
    p.punct("(");
    e.tested = counter_index(p);
    p.punct(")");
    p.punct("=");
    {
      const token t = p.take_word("true or false");
      if (t.text == "true") e.positive = true;
      else if (t.text == "false") e.positive = false;
      else parser::fail_at(t, "test outcome must be true or false");
    }
    p.punct("->");
    {
      const token t = p.take_word("Y or N");
      if (t.text == "Y") e.advance = true;
      else if (t.text == "N") e.advance = false;
      else parser::fail_at(t, "head move must be Y or N");
    }
    e.next_state = int(p.take_ref('q', "a state like q1")) - 1;
    {
      const token t = p.take_word("INC, DEC, or NULL");
      if (t.text == "NULL") {
        e.action = cm_action::null;
        e.action_counter = 0;
      } else if (t.text == "INC" || t.text == "DEC") {
        e.action = t.text == "INC" ? cm_action::inc : cm_action::dec;
        p.punct("(");
        e.action_counter = counter_index(p);
        p.punct(")");
      } else {
        parser::fail_at(t, "action must be INC(i), DEC(i), or NULL");
      }
    }
    spec.entries.push_back(e);
  }
  p.done();
  return spec;
}

std::string print_cm(const cm_spec& spec) {
  std::ostringstream os;
  os << "cm " << (spec.name.empty() ? "unnamed" : spec.name)
     << " counters=" << spec.counters << " output=" << spec.output_counter
     << " states=" << spec.states << " start=q" << (spec.start_state + 1)
     << " halt=q" << (spec.halt_state + 1) << " alphabet=\"" << spec.alphabet
     << "\"\n";
  for (const cm_entry& e : spec.entries) {
    os << "entry " << e.symbol << " q" << (e.state + 1) << " g(" << e.tested
       << ")=" << (e.positive ? "true" : "false") << " -> "
       << (e.advance ? "Y" : "N") << " q" << (e.next_state + 1) << " ";
    switch (e.action) {
      case cm_action::inc: os << "INC(" << e.action_counter << ")"; break;
      case cm_action::dec: os << "DEC(" << e.action_counter << ")"; break;
      case cm_action::null: os << "NULL"; break;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace snpsim
