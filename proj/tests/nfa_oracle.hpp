#pragma once
// Independent membership oracle for unary regular expressions: a literal
// Thompson NFA built from the AST and simulated step by step.  Shares no code
// with the eventually-periodic-set implementation under test.

#include <cstdint>
#include <set>
#include <vector>

#include "snpsim/unary_regex.hpp"

namespace snpsim_test {

class unary_nfa {
 public:
  explicit unary_nfa(const snpsim::expr_ptr& e) {
    auto [in, out] = build(e);
    start_ = in;
    accept_ = out;
  }

  // Accepts s^k ?
  bool accepts(std::uint64_t k) const {
    std::set<int> cur = closure({start_});
    for (std::uint64_t i = 0; i < k; ++i) {
      std::set<int> next;
      for (int q : cur)
        for (int r : s_edges_[q]) next.insert(r);
      cur = closure(next);
      if (cur.empty()) return false;
    }
    return cur.count(accept_) > 0;
  }

  // Memberships of 0..n-1 in one sweep.
  std::vector<bool> window(std::uint64_t n) const {
    std::vector<bool> bits(n);
    std::set<int> cur = closure({start_});
    for (std::uint64_t k = 0; k < n; ++k) {
      bits[k] = cur.count(accept_) > 0;
      std::set<int> next;
      for (int q : cur)
        for (int r : s_edges_[q]) next.insert(r);
      cur = closure(next);
    }
    return bits;
  }

 private:
  std::vector<std::vector<int>> eps_edges_;
  std::vector<std::vector<int>> s_edges_;
  int start_ = 0, accept_ = 0;

  int fresh() {
    eps_edges_.emplace_back();
    s_edges_.emplace_back();
    return int(eps_edges_.size()) - 1;
  }

  std::pair<int, int> chain_of(std::uint64_t n) {
    int in = fresh();
    int cur = in;
    for (std::uint64_t i = 0; i < n; ++i) {
      int nxt = fresh();
      s_edges_[cur].push_back(nxt);
      cur = nxt;
    }
    return {in, cur};
  }

  std::pair<int, int> build(const snpsim::expr_ptr& e) {
    using snpsim::expr_kind;
    switch (e->kind) {
      case expr_kind::pow:
        return chain_of(e->count);
      case expr_kind::star: {
        auto [cin, cout] = chain_of(e->count);
        int in = fresh(), out = fresh();
        eps_edges_[in].push_back(cin);
        eps_edges_[in].push_back(out);
        eps_edges_[cout].push_back(out);
        eps_edges_[out].push_back(in);
        return {in, out};
      }
      case expr_kind::concat: {
        int in = -1, out = -1;
        for (const auto& c : e->children) {
          auto [cin, cout] = build(c);
          if (in < 0) {
            in = cin;
          } else {
            eps_edges_[out].push_back(cin);
          }
          out = cout;
        }
        return {in, out};
      }
      case expr_kind::alt: {
        int in = fresh(), out = fresh();
        for (const auto& c : e->children) {
          auto [cin, cout] = build(c);
          eps_edges_[in].push_back(cin);
          eps_edges_[cout].push_back(out);
        }
        return {in, out};
      }
    }
    return {0, 0};
  }

  std::set<int> closure(std::set<int> states) const {
    std::vector<int> work(states.begin(), states.end());
    while (!work.empty()) {
      int q = work.back();
      work.pop_back();
      for (int r : eps_edges_[q])
        if (states.insert(r).second) work.push_back(r);
    }
    return states;
  }
};

}  // namespace snpsim_test
