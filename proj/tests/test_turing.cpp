// Unit tests for the Turing machine module: stepping mechanics, the radix
// encoding of configurations, and the commutation of encode with step.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "desk_machines.hpp"
#include "snpsim/turing.hpp"

using namespace snpsim;

namespace {

// A fully specified random machine: every non-halt (state, symbol) pair gets
// exactly one rule.
tm_spec random_tm(std::mt19937_64& rng, int states, int symbols) {
  tm_spec spec;
  spec.name = "r";
  spec.states = states;
  spec.symbols = symbols;
  std::uniform_int_distribution<int> pick_sym(1, symbols);
  std::uniform_int_distribution<int> pick_state(1, states);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int q = 1; q < states; ++q)
    for (int a = 1; a <= symbols; ++a)
      spec.delta[{q, a}] = tm_rule{pick_sym(rng),
                                   coin(rng) ? tm_move::left : tm_move::right,
                                   pick_state(rng)};
  return spec;
}

// A random valid configuration: blank-terminated halves, non-halt state.
tm_config random_config(std::mt19937_64& rng, const tm_spec& spec) {
  std::uniform_int_distribution<int> pick_sym(1, spec.symbols);
  std::uniform_int_distribution<int> pick_state(1, spec.states - 1);
  std::uniform_int_distribution<std::size_t> len(0, 3);
  auto half = [&] {
    std::vector<int> cells;
    const std::size_t inner = len(rng);
    for (std::size_t i = 0; i < inner; ++i) cells.push_back(pick_sym(rng));
    cells.push_back(1);  // outermost blank
    return cells;
  };
  tm_config cfg;
  cfg.left = half();
  cfg.right = half();
  cfg.head = pick_sym(rng);
  cfg.state = pick_state(rng);
  return cfg;
}

}  // namespace

TEST_CASE("radix parameters") {
  SUBCASE("two states, two symbols") {
    const encode_params_t p = encode_params(2, 2);
    CHECK(p.v == 4);
    CHECK(p.z == 16);
  }
  SUBCASE("one state, one symbol") {
    const encode_params_t p = encode_params(1, 1);
    CHECK(p.v == 2);
    CHECK(p.z == 4);
  }
  SUBCASE("five states, three symbols") {
    const encode_params_t p = encode_params(5, 3);
    CHECK(p.v == 6);
    CHECK(p.z == 64);
  }
}

TEST_CASE("symbol and state codes") {
  CHECK(sym_code(1) == 1);
  CHECK(sym_code(2) == 3);
  CHECK(sym_code(3) == 5);
  CHECK(state_code(1, 2) == 4);
  CHECK(state_code(2, 2) == 8);
  CHECK(state_code(3, 3) == 18);
}

TEST_CASE("validation of machines and configurations") {
  const tm_spec spec = desk::tm_halt1();
  CHECK(validate_tm(spec).empty());
  tm_spec bad = spec;
  bad.delta[{2, 1}] = tm_rule{1, tm_move::left, 1};  // rule in the halt state
  CHECK(!validate_tm(bad).empty());
  bad = spec;
  bad.delta.erase({1, 2});  // missing pair
  CHECK(!validate_tm(bad).empty());

  tm_config cfg;
  CHECK(validate_config(spec, cfg).empty());
  cfg.left.clear();
  CHECK(!validate_config(spec, cfg).empty());
  cfg = tm_config{};
  cfg.left = {2};  // outermost cell must be blank
  CHECK(!validate_config(spec, cfg).empty());
  cfg = tm_config{};
  cfg.head = 3;  // not a symbol of this machine
  CHECK(!validate_config(spec, cfg).empty());
}

TEST_CASE("stepping mechanics") {
  const tm_spec spec = desk::tm_zigzag();
  // delta(q1, a1) = (a2, R, q1): write a2, move right.
  tm_config cfg;  // blank tape, head on blank
  tm_config next = tm_step(spec, cfg);
  CHECK(next.left == std::vector<int>{2, 1});
  CHECK(next.head == 1);                         // regrown blank was consumed
  CHECK(next.right == std::vector<int>{1});      // right half regrew a blank
  CHECK(next.state == 1);
  // delta(q1, a2) = (a2, L, q1) from the zigzag start configuration.
  next = tm_step(spec, desk::tm_zigzag_config());
  CHECK(next.left == std::vector<int>{1});
  CHECK(next.head == 1);
  CHECK(next.right == std::vector<int>{2, 2, 1});
  CHECK(tm_halted(spec, tm_config{{1}, 1, {1}, 1}) == false);
  CHECK(tm_halted(spec, tm_config{{1}, 1, {1}, 2}) == true);
}

TEST_CASE("frozen encodings") {
  const tm_spec spec = desk::tm_halt1();  // two states, two symbols, z = 16
  SUBCASE("single-cell halves") {
    // left [a1], head a2, right [a1], state q1:
    // x = 16*1, y = 16*1, code = state_code(1,2) + sym_code(2) = 4 + 3 = 7.
    const encoded_config e = encode_config(spec, tm_config{{1}, 2, {1}, 1});
    CHECK(e.x == bignat(16));
    CHECK(e.y == bignat(16));
    CHECK(e.code == 7);
  }
  SUBCASE("left move packs the written symbol into y") {
    // delta(q1, a2) = (a2, L, q2) in tm_halt1.
    const encoded_config before = encode_config(spec, tm_config{{1}, 2, {1}, 1});
    const encoded_config after = apply_transition_encoded(spec, before);
    // y' = 16*16 + 16*3 = 304; the emptied left half regrows a blank: x' = 16.
    CHECK(after.x == bignat(16));
    CHECK(after.y == bignat(304));
    CHECK(after.code == state_code(2, 2) + sym_code(1));  // 8 + 1 = 9
  }
  SUBCASE("right move mirrors") {
    tm_spec mirror = spec;
    mirror.delta[{1, 2}] = tm_rule{2, tm_move::right, 2};
    const encoded_config before = encode_config(mirror, tm_config{{1}, 2, {1}, 1});
    const encoded_config after = apply_transition_encoded(mirror, before);
    CHECK(after.x == bignat(304));
    CHECK(after.y == bignat(16));
    CHECK(after.code == 9);
  }
}

TEST_CASE("encode commutes with stepping on random machines") {
  std::mt19937_64 rng(20260822);
  std::uniform_int_distribution<int> pick_states(2, 4);
  std::uniform_int_distribution<int> pick_symbols(1, 3);
  int checked = 0;
  while (checked < 200) {
    const tm_spec spec = random_tm(rng, pick_states(rng), pick_symbols(rng));
    REQUIRE(validate_tm(spec).empty());
    tm_config cfg = random_config(rng, spec);
    REQUIRE(validate_config(spec, cfg).empty());
    // Follow the machine a few steps so deeper tapes get exercised too.
    for (int hop = 0; hop < 4 && !tm_halted(spec, cfg); ++hop) {
      const encoded_config via_arith =
          apply_transition_encoded(spec, encode_config(spec, cfg));
      cfg = tm_step(spec, cfg);
      const encoded_config via_step = encode_config(spec, cfg);
      REQUIRE(via_arith.x == via_step.x);
      REQUIRE(via_arith.y == via_step.y);
      REQUIRE(via_arith.code == via_step.code);
      ++checked;
    }
  }
  CHECK(checked >= 200);
}

TEST_CASE("decode inverts encode") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick_states(2, 4);
  std::uniform_int_distribution<int> pick_symbols(1, 3);
  for (int i = 0; i < 100; ++i) {
    const tm_spec spec = random_tm(rng, pick_states(rng), pick_symbols(rng));
    const tm_config cfg = random_config(rng, spec);
    const tm_config back = decode_config(spec, encode_config(spec, cfg));
    CHECK(back.left == cfg.left);
    CHECK(back.head == cfg.head);
    CHECK(back.right == cfg.right);
    CHECK(back.state == cfg.state);
  }
}

TEST_CASE("decode rejects malformed encodings") {
  const tm_spec spec = desk::tm_halt1();
  const encoded_config good = encode_config(spec, tm_config{{1}, 2, {1}, 1});
  encoded_config bad = good;
  bad.x = bignat(17);  // nonzero unit digit
  CHECK_THROWS_AS(decode_config(spec, bad), std::invalid_argument);
  bad = good;
  bad.x = bignat(0);  // a half is never empty
  CHECK_THROWS_AS(decode_config(spec, bad), std::invalid_argument);
  bad = good;
  bad.y = bignat(32);  // digit 2 is even, not a symbol code
  CHECK_THROWS_AS(decode_config(spec, bad), std::invalid_argument);
  bad = good;
  bad.code = 8;  // state code alone, no scanned symbol
  CHECK_THROWS_AS(decode_config(spec, bad), std::invalid_argument);
}

TEST_CASE("split_code round trips and rejects junk") {
  const tm_spec spec = desk::tm_halt10();  // three states, two symbols
  for (int q = 1; q <= spec.states; ++q)
    for (int a = 1; a <= spec.symbols; ++a) {
      const auto [qq, aa] = split_code(spec, state_code(q, spec.symbols) + sym_code(a));
      CHECK(qq == q);
      CHECK(aa == a);
    }
  CHECK_THROWS_AS(split_code(spec, 2), std::logic_error);    // even
  CHECK_THROWS_AS(split_code(spec, 999), std::logic_error);  // out of range
}

TEST_CASE("arithmetic transition rejects an impossible regrowth") {
  // Left half encodes [a2] (x = 16*3 = 48); a left move that empties it would
  // have to regrow a blank, but the innermost cell is not blank.
  const tm_spec spec = desk::tm_halt1();
  encoded_config e;
  e.x = bignat(48);
  e.y = bignat(16);
  e.code = 7;  // q1 scanning a2, delta moves left
  CHECK_THROWS_AS(apply_transition_encoded(spec, e), std::logic_error);
}
