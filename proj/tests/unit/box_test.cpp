#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "mbg/board.hpp"
#include "mbg/boxgame.hpp"

using namespace mbg;
using namespace mbg::box;

TEST_CASE("potential values") {
  CHECK(f(1, 7) == 0);
  CHECK(f(2, 2) == 4);
  CHECK(f(3, 2) == 9);
  const auto t = f_table(50, 3);
  for (std::uint64_t k = 1; k <= 50; ++k) CHECK(t[k] == f(k, 3));
}

TEST_CASE("potential is monotone in k and a") {
  for (std::uint64_t a = 1; a <= 20; ++a) {
    const auto lo = f_table(300, a), hi = f_table(300, a + 1);
    for (std::uint64_t k = 1; k <= 300; ++k) {
      CHECK(lo[k] <= hi[k]);
      if (k > 1) CHECK(lo[k - 1] <= lo[k]);
    }
  }
}

TEST_CASE("win criterion") {
  CHECK(boxmaker_wins(2, 4, 2));
  CHECK_FALSE(boxmaker_wins(2, 5, 2));
  CHECK_FALSE(boxmaker_wins(1, 1, 1));
}

TEST_CASE("BoxBreaker destroys the most eaten box") {
  BoxState s(std::vector<std::uint64_t>{10, 10, 10}, 1);
  for (int i = 0; i < 3; ++i) s.eat(0);
  s.eat(1);
  s.eat(2);
  s.eat(2);
  CHECK(boxbreaker_move(s) == 0);

  BoxState tie(std::vector<std::uint64_t>{5, 5}, 1);
  tie.eat(0);
  tie.eat(0);
  tie.eat(1);
  tie.eat(1);
  CHECK(boxbreaker_move(tie) == 0);

  BoxState gone(std::vector<std::uint64_t>{3}, 1);
  gone.destroy(0);
  CHECK_THROWS_AS(boxbreaker_move(gone), GameError);
}

TEST_CASE("BoxMaker balances and finishes") {
  BoxState even(std::vector<std::uint64_t>{5, 5, 5}, 3);
  auto units = boxmaker_move(even);
  std::sort(units.begin(), units.end());
  CHECK(units == std::vector<std::size_t>{0, 1, 2});

  BoxState finish(std::vector<std::uint64_t>{1, 5}, 2);
  CHECK(boxmaker_move(finish) == std::vector<std::size_t>{0, 1});

  BoxState all(std::vector<std::uint64_t>{4}, 6);
  CHECK(boxmaker_move(all).size() == 4);
  CHECK(all.boxmaker_won());
}

TEST_CASE("simulation agrees with the criterion") {
  for (std::uint64_t a = 1; a <= 3; ++a)
    for (std::uint64_t k = 1; k <= 10; ++k)
      for (std::uint64_t t = k; t <= 80; ++t) CHECK(simulate(BoxState(k, t, a)).boxmaker_won == boxmaker_wins(k, t, a));
}

TEST_CASE("box load bound") {
  CHECK(max_box_load(1, 5) == Rational(5));
  CHECK(max_box_load(3, 1) == Rational(11, 6));
  const double load = static_cast<double>(max_box_load(200, 16));
  CHECK(load == doctest::Approx(94.0).epsilon(0.005));
  CHECK(load <= 16 * std::log(200.0) + 16);
}
