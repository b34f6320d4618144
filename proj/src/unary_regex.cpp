// Parsing, printing and exact denotation of unary regular expressions.

#include "snpsim/unary_regex.hpp"

#include <algorithm>
#include <numeric>

namespace snpsim {

namespace {
// Guard against pathological periods blowing up canonicalization windows.
constexpr std::uint64_t max_window_bits = std::uint64_t(1) << 26;

[[noreturn]] void window_overflow() {
  throw std::runtime_error("eventually-periodic set too large to canonicalize");
}
}  // namespace

// --------------------------------------------------------------------------
// AST construction
// --------------------------------------------------------------------------

expr_ptr make_pow(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("make_pow: s^0 is not a valid atom");
  auto e = std::make_shared<unary_expr>();
  e->kind = expr_kind::pow;
  e->count = n;
  return e;
}

expr_ptr make_star(std::uint64_t p) {
  if (p == 0) throw std::invalid_argument("make_star: (s^0)* is not a valid atom");
  auto e = std::make_shared<unary_expr>();
  e->kind = expr_kind::star;
  e->count = p;
  return e;
}

expr_ptr make_concat(std::vector<expr_ptr> children) {
  if (children.empty()) throw std::invalid_argument("make_concat: no children");
  for (const auto& c : children)
    if (c->kind != expr_kind::pow && c->kind != expr_kind::star)
      throw std::invalid_argument("make_concat: children must be atoms");
  if (children.size() == 1) return children[0];
  auto e = std::make_shared<unary_expr>();
  e->kind = expr_kind::concat;
  e->children = std::move(children);
  return e;
}

expr_ptr make_alt(std::vector<expr_ptr> children) {
  if (children.empty()) throw std::invalid_argument("make_alt: no children");
  for (const auto& c : children)
    if (c->kind == expr_kind::alt)
      throw std::invalid_argument("make_alt: children must be atoms or concatenations");
  if (children.size() == 1) return children[0];
  auto e = std::make_shared<unary_expr>();
  e->kind = expr_kind::alt;
  e->children = std::move(children);
  return e;
}

bool expr_equal(const expr_ptr& a, const expr_ptr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case expr_kind::pow:
    case expr_kind::star:
      return a->count == b->count;
    case expr_kind::concat:
    case expr_kind::alt: {
      if (a->children.size() != b->children.size()) return false;
      for (std::size_t i = 0; i < a->children.size(); ++i)
        if (!expr_equal(a->children[i], b->children[i])) return false;
      return true;
    }
  }
  return false;
}

// --------------------------------------------------------------------------
// Parser: recursive descent over the raw text, whitespace-insensitive.
// --------------------------------------------------------------------------

namespace {

class parser {
 public:
  explicit parser(const std::string& text) : text_(text) {}

  expr_ptr parse() {
    skip_ws();
    expr_ptr e = parse_alt();
    skip_ws();
    if (pos_ != text_.size()) throw parse_error(pos_, "unexpected trailing input");
    return e;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c, const char* what) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw parse_error(pos_, std::string("expected ") + what);
    ++pos_;
  }

  std::uint64_t parse_int() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw parse_error(pos_, "expected integer");
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::uint64_t digit = std::uint64_t(text_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - digit) / 10)
        throw parse_error(start, "integer too large");
      v = v * 10 + digit;
      ++pos_;
    }
    if (v == 0) throw parse_error(start, "exponent must be at least 1");
    return v;
  }

  expr_ptr parse_alt() {
    std::vector<expr_ptr> parts;
    parts.push_back(parse_cat());
    while (peek() == '|') {
      ++pos_;
      parts.push_back(parse_cat());
    }
    return make_alt(std::move(parts));
  }

  expr_ptr parse_cat() {
    std::vector<expr_ptr> atoms;
    atoms.push_back(parse_atom());
    while (!at_end()) {
      char c = peek();
      if (c == 's' || c == '(') {
        atoms.push_back(parse_atom());
      } else {
        break;
      }
    }
    return make_concat(std::move(atoms));
  }

  // atom := "s" ("^" INT)? | "(" "s" ("^" INT)? ")" "*"
  expr_ptr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw parse_error(pos_, "expected atom");
    char c = text_[pos_];
    if (c == 's') {
      ++pos_;
      std::uint64_t n = 1;
      if (peek() == '^') {
        ++pos_;
        n = parse_int();
      }
      return make_pow(n);
    }
    if (c == '(') {
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != 's') throw parse_error(pos_, "expected 's'");
      ++pos_;
      std::uint64_t p = 1;
      if (peek() == '^') {
        ++pos_;
        p = parse_int();
      }
      expect(')', "')'");
      expect('*', "'*'");
      return make_star(p);
    }
    throw parse_error(pos_, "expected atom");
  }
};

}  // namespace

expr_ptr parse_expr(const std::string& text) { return parser(text).parse(); }

std::string print_expr(const expr_ptr& e) {
  switch (e->kind) {
    case expr_kind::pow:
      return e->count == 1 ? "s" : "s^" + std::to_string(e->count);
    case expr_kind::star:
      return e->count == 1 ? "(s)*" : "(s^" + std::to_string(e->count) + ")*";
    case expr_kind::concat: {
      std::string out;
      for (const auto& c : e->children) out += print_expr(c);
      return out;
    }
    case expr_kind::alt: {
      std::string out;
      for (std::size_t i = 0; i < e->children.size(); ++i) {
        if (i) out += "|";
        out += print_expr(e->children[i]);
      }
      return out;
    }
  }
  return {};
}

// --------------------------------------------------------------------------
// epset
// --------------------------------------------------------------------------

epset::epset() : theta_(0), lambda_(1), prefix_(), cycle_{false} {}

bool epset::member_u(std::uint64_t k) const {
  if (k < theta_) return prefix_[k];
  return cycle_[(k - theta_) % lambda_];
}

bool epset::member(const bignat& k) const {
  if (k < bignat(theta_)) return prefix_[to_u64(k)];
  return cycle_[mod_u64(k - theta_, lambda_)];
}

bool epset::empty() const {
  return std::none_of(prefix_.begin(), prefix_.end(), [](bool b) { return b; }) &&
         std::none_of(cycle_.begin(), cycle_.end(), [](bool b) { return b; });
}

bool epset::is_singleton(const bignat& v) const {
  if (std::any_of(cycle_.begin(), cycle_.end(), [](bool b) { return b; })) return false;
  std::uint64_t count = 0;
  std::uint64_t where = 0;
  for (std::uint64_t k = 0; k < theta_; ++k)
    if (prefix_[k]) {
      ++count;
      where = k;
    }
  return count == 1 && bignat(where) == v;
}

epset epset::from_window(const std::vector<bool>& bits, std::uint64_t theta_bound,
                         std::uint64_t period_hint) {
  if (period_hint == 0) throw std::logic_error("from_window: zero period hint");
  const std::uint64_t n = bits.size();
  if (n < theta_bound + 2 * period_hint) throw std::logic_error("from_window: window too small");

  // The hint must genuinely describe the tail; anything else is a logic bug
  // in the caller's window construction.
  for (std::uint64_t k = theta_bound; k + period_hint < n; ++k)
    if (bits[k] != bits[k + period_hint])
      throw std::logic_error("from_window: tail not periodic with period hint");

  // Least period = least divisor of the hint that works on the tail.
  std::uint64_t lambda = period_hint;
  for (std::uint64_t d = 1; d < period_hint; ++d) {
    if (period_hint % d != 0) continue;
    bool ok = true;
    for (std::uint64_t k = theta_bound; k + d < n && ok; ++k) ok = bits[k] == bits[k + d];
    if (ok) {
      lambda = d;
      break;
    }
  }

  // Least threshold: pull theta down while the value one step earlier agrees
  // with its image one period later.
  std::uint64_t theta = theta_bound;
  while (theta > 0 && bits[theta - 1] == bits[theta - 1 + lambda]) --theta;

  epset r;
  r.theta_ = theta;
  r.lambda_ = lambda;
  r.prefix_.assign(bits.begin(), bits.begin() + theta);
  r.cycle_.assign(bits.begin() + theta, bits.begin() + theta + lambda);
  return r;
}

epset epset::singleton(std::uint64_t v) {
  std::vector<bool> bits(v + 3, false);
  bits[v] = true;
  return from_window(bits, v + 1, 1);
}

epset epset::residues(std::uint64_t offset, std::uint64_t period) {
  if (period == 0) throw std::invalid_argument("residues: zero period");
  std::uint64_t n = offset + 2 * period;
  if (n > max_window_bits) window_overflow();
  std::vector<bool> bits(n, false);
  for (std::uint64_t k = offset; k < n; k += period) bits[k] = true;
  return from_window(bits, offset, period);
}

namespace {

std::uint64_t lcm_checked(std::uint64_t a, std::uint64_t b) {
  std::uint64_t g = std::gcd(a, b);
  std::uint64_t q = a / g;
  if (b != 0 && q > max_window_bits / b) window_overflow();
  return q * b;
}

std::vector<bool> window_of(const epset& s, std::uint64_t n) {
  std::vector<bool> bits(n);
  for (std::uint64_t k = 0; k < n; ++k) bits[k] = s.member_u(k);
  return bits;
}

}  // namespace

epset ep_union(const epset& a, const epset& b) {
  std::uint64_t lambda = lcm_checked(a.lambda(), b.lambda());
  std::uint64_t theta = std::max(a.theta(), b.theta());
  if (theta > max_window_bits || lambda > max_window_bits / 4) window_overflow();
  std::uint64_t n = theta + 2 * lambda;
  std::vector<bool> bits(n);
  for (std::uint64_t k = 0; k < n; ++k) bits[k] = a.member_u(k) || b.member_u(k);
  return epset::from_window(bits, theta, lambda);
}

epset ep_sum(const epset& a, const epset& b) {
  if (a.empty() || b.empty()) return epset();
  std::uint64_t lambda = lcm_checked(a.lambda(), b.lambda());
  // A tail threshold of theta_a + theta_b + lambda is already exact; the
  // extra slack is cheap and keeps the window check robust.
  std::uint64_t theta = a.theta() + b.theta() + lambda;
  if (theta > max_window_bits / 2 || lambda > max_window_bits / 8) window_overflow();
  std::uint64_t n = theta + 2 * lambda;

  std::vector<bool> abits = window_of(a, n);
  std::vector<bool> bbits = window_of(b, n);
  std::vector<bool> bits(n, false);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!abits[i]) continue;
    for (std::uint64_t j = 0; i + j < n; ++j)
      if (bbits[j]) bits[i + j] = true;
  }
  return epset::from_window(bits, theta, lambda);
}

epset normalize(const std::vector<epset>& sets, set_op op) {
  if (sets.empty()) throw std::invalid_argument("normalize: empty input");
  epset acc = sets[0];
  for (std::size_t i = 1; i < sets.size(); ++i)
    acc = op == set_op::set_union ? ep_union(acc, sets[i]) : ep_sum(acc, sets[i]);
  return acc;
}

epset denote(const expr_ptr& e) {
  switch (e->kind) {
    case expr_kind::pow:
      return epset::singleton(e->count);
    case expr_kind::star:
      return epset::residues(0, e->count);
    case expr_kind::concat: {
      std::vector<epset> parts;
      parts.reserve(e->children.size());
      for (const auto& c : e->children) parts.push_back(denote(c));
      return normalize(parts, set_op::set_sum);
    }
    case expr_kind::alt: {
      std::vector<epset> parts;
      parts.reserve(e->children.size());
      for (const auto& c : e->children) parts.push_back(denote(c));
      return normalize(parts, set_op::set_union);
    }
  }
  throw std::logic_error("denote: bad expression");
}

// --------------------------------------------------------------------------
// tail_cycle
// --------------------------------------------------------------------------

std::uint64_t tail_cycle::pos_of_count(const bignat& k) const {
  if (x >= 2 && k <= bignat(x - 2)) return to_u64(k) + 1;
  std::uint64_t lam = lambda();
  return x + mod_u64(k - bignat(x - 1), lam);
}

std::uint64_t tail_cycle::step_plus(std::uint64_t pos) const {
  if (pos < 1 || pos > y) throw std::out_of_range("step_plus: bad position");
  return pos == y ? x : pos + 1;
}

std::vector<std::uint64_t> tail_cycle::succ_minus(std::uint64_t pos) const {
  if (pos < 1 || pos > y) throw std::out_of_range("succ_minus: bad position");
  if (pos == x) {
    // The one structural choice point: leave the cycle into the chain, or
    // wrap backwards around the cycle.  With x == 1 there is no chain cell
    // below, so only the wrap remains.
    std::vector<std::uint64_t> out;
    if (x >= 2) out.push_back(x - 1);
    out.push_back(y);
    return out;
  }
  if (pos == 1) return {};  // exact count 0: no spike to remove
  return {pos - 1};
}

tail_cycle build_tail_cycle(const epset& guard, std::uint64_t b) {
  tail_cycle tc;
  tc.x = std::max(guard.theta(), b) + 1;
  std::uint64_t lam = guard.lambda();
  tc.y = tc.x + lam - 1;
  tc.accept.assign(tc.y + 1, false);
  for (std::uint64_t j = 1; j < tc.x; ++j) {
    std::uint64_t count = j - 1;
    tc.accept[j] = guard.member_u(count) && count >= b;
  }
  for (std::uint64_t j = tc.x; j <= tc.y; ++j) {
    std::uint64_t count = (tc.x - 1) + (j - tc.x);  // any representative; >= b by construction
    tc.accept[j] = guard.member_u(count);
  }
  return tc;
}

}  // namespace snpsim
