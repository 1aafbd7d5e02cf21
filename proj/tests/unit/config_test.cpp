#include "doctest.h"

#include "mbg/board.hpp"
#include "mbg/config.hpp"

using namespace mbg;

TEST_CASE("parsing sections and lists") {
  const Config c = Config::parse(
      "# comment\nn = [10, 20]\nb = [\"1..max(1, floor(n/10))\"]\n[hs]\nL = 4\nname = \"x, y\"\n");
  CHECK(c.get_list("n") == std::vector<std::string>{"10", "20"});
  CHECK(c.get_list("b") == std::vector<std::string>{"1..max(1, floor(n/10))"});
  CHECK(c.get_int("hs.L", 0) == 4);
  CHECK(c.section("hs").get_string("name") == "x, y");
  CHECK(c.get_double("missing", 2.5) == 2.5);
}

TEST_CASE("formulas") {
  CHECK(eval_formula("2*n + 1", {{"n", 10}}) == 21);
  CHECK(eval_formula("max(1, floor(delta*n/(100*ln(n))))", {{"n", 100}, {"delta", 0.1}}) == 1);
  CHECK(eval_formula("2^3", {}) == 8);
  CHECK(eval_formula("sqrt(16) + ceil(0.2)", {}) == 5);
  CHECK_THROWS_AS(eval_formula("2 +", {}), GameError);
  CHECK_THROWS_AS(eval_formula("m", {}), GameError);
}

TEST_CASE("canonical form ignores key order") {
  CHECK(Config::parse("a = 1\nb = 2\n").canonical() == Config::parse("b = 2\na = 1\n").canonical());
}
