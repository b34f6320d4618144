#pragma once
// Regular expressions over the single-letter alphabet {s} and their exact
// denotations as eventually periodic sets of naturals.  These sets drive rule
// applicability in the simulator and the chain-and-cycle acceptors used by the
// counter-machine translation.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "snpsim/bignat.hpp"

namespace snpsim {

struct parse_error : std::runtime_error {
  std::size_t position;  // 0-based offset into the source text
  parse_error(std::size_t pos, const std::string& msg)
      : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

// ---------------------------------------------------------------------------
// AST
//
// Grammar (whitespace-insensitive):
//   expr := alt
//   alt  := cat ("|" cat)*
//   cat  := atom+
//   atom := "s" ("^" INT)?  |  "(" "s" ("^" INT)? ")" "*"
// INT >= 1; "s" abbreviates "s^1".
// ---------------------------------------------------------------------------

enum class expr_kind { pow, star, concat, alt };

struct unary_expr;
using expr_ptr = std::shared_ptr<const unary_expr>;

struct unary_expr {
  expr_kind kind;
  std::uint64_t count = 0;         // pow: s^count; star: (s^count)*
  std::vector<expr_ptr> children;  // concat / alt
};

expr_ptr make_pow(std::uint64_t n);
expr_ptr make_star(std::uint64_t p);
// children of a concat must be pow/star atoms; children of an alt must be
// pow/star/concat.  This keeps every AST printable in the grammar above.
expr_ptr make_concat(std::vector<expr_ptr> children);
expr_ptr make_alt(std::vector<expr_ptr> children);

bool expr_equal(const expr_ptr& a, const expr_ptr& b);

expr_ptr parse_expr(const std::string& text);
std::string print_expr(const expr_ptr& e);

// ---------------------------------------------------------------------------
// Eventually periodic sets of naturals.
//
// Membership of k is prefix[k] for k < theta and cycle[(k - theta) mod lambda]
// otherwise.  Instances are canonical: theta is the least threshold and lambda
// the least period describing the set, so structural equality coincides with
// set equality.
// ---------------------------------------------------------------------------

class epset {
 public:
  epset();  // the empty set

  std::uint64_t theta() const { return theta_; }
  std::uint64_t lambda() const { return lambda_; }
  const std::vector<bool>& prefix() const { return prefix_; }
  const std::vector<bool>& cycle() const { return cycle_; }

  bool member(const bignat& k) const;
  bool member_u(std::uint64_t k) const;
  bool empty() const;

  // True iff the set is exactly {v}.
  bool is_singleton(const bignat& v) const;

  // Canonicalize from an explicit membership window.  bits[k] gives membership
  // of k for k < bits.size(); the tail beyond theta_bound must be periodic
  // with period period_hint, and bits.size() >= theta_bound + 2*period_hint.
  static epset from_window(const std::vector<bool>& bits, std::uint64_t theta_bound,
                           std::uint64_t period_hint);

  static epset singleton(std::uint64_t v);
  static epset residues(std::uint64_t offset, std::uint64_t period);  // {offset + n*period}

  bool operator==(const epset& o) const = default;

 private:
  std::uint64_t theta_;
  std::uint64_t lambda_;
  std::vector<bool> prefix_;  // size theta_
  std::vector<bool> cycle_;   // size lambda_
};

epset ep_union(const epset& a, const epset& b);
epset ep_sum(const epset& a, const epset& b);  // Minkowski sum {a+b}

enum class set_op { set_union, set_sum };
epset normalize(const std::vector<epset>& sets, set_op op);

// Exact denotation of an expression.
epset denote(const expr_ptr& e);

// ---------------------------------------------------------------------------
// Chain-and-cycle acceptor for a guard set combined with a consumption
// threshold b: positions g_1..g_y, where g_j with j < x represents the exact
// count j-1 and the cycle g_x..g_y represents the count classes
// {x-1+(j-x)+n*lambda}.  x = max(theta, b) + 1.  A position is accepting iff
// every count it represents is a guard member that is >= b.
// ---------------------------------------------------------------------------

struct tail_cycle {
  std::uint64_t x = 1;
  std::uint64_t y = 1;
  std::vector<bool> accept;  // indexed 1..y; [0] unused

  std::uint64_t lambda() const { return y - x + 1; }
  std::uint64_t pos_of_count(const bignat& k) const;
  bool accepting(std::uint64_t pos) const { return accept[pos]; }
  std::uint64_t step_plus(std::uint64_t pos) const;           // one added spike
  std::vector<std::uint64_t> succ_minus(std::uint64_t pos) const;  // one removed spike
  // The single structurally nondeterministic -s choice point sits at g_x
  // (degenerate when x == 1: only the wrap to g_y exists).
  bool ambiguous_minus(std::uint64_t pos) const { return pos == x && x >= 2; }
};

tail_cycle build_tail_cycle(const epset& guard, std::uint64_t b);

}  // namespace snpsim
