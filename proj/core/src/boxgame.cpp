#include "mbg/boxgame.hpp"

#include <algorithm>
#include <limits>

#include "mbg/board.hpp"

namespace mbg::box {

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t step(std::uint64_t k, std::uint64_t prev, std::uint64_t a) {
  const u128 num = static_cast<u128>(k) * (static_cast<u128>(prev) + a);
  const u128 q = num / (k - 1);
  if (q > std::numeric_limits<std::uint64_t>::max())
    throw GameError(ErrorKind::InvalidArgument, "f(k,a) overflows 64 bits");
  return static_cast<std::uint64_t>(q);
}

void check_args(std::uint64_t k, std::uint64_t a) {
  if (k == 0) throw GameError(ErrorKind::InvalidArgument, "f(k,a) needs k >= 1");
  if (a == 0) throw GameError(ErrorKind::InvalidArgument, "f(k,a) needs a >= 1");
}

}  // namespace

std::uint64_t f(std::uint64_t k, std::uint64_t a) {
  check_args(k, a);
  std::uint64_t v = 0;
  for (std::uint64_t j = 2; j <= k; ++j) v = step(j, v, a);
  return v;
}

std::vector<std::uint64_t> f_table(std::uint64_t kmax, std::uint64_t a) {
  check_args(kmax, a);
  std::vector<std::uint64_t> out(kmax + 1, 0);
  for (std::uint64_t j = 2; j <= kmax; ++j) out[j] = step(j, out[j - 1], a);
  return out;
}

bool boxmaker_wins(std::uint64_t k, std::uint64_t t, std::uint64_t a) { return t <= f(k, a); }

double harmonic(std::uint64_t k) {
  double h = 0;
  // summing small terms first keeps the error down for large k
  for (std::uint64_t j = k; j >= 1; --j) h += 1.0 / static_cast<double>(j);
  return h;
}

Rational harmonic_exact(std::uint64_t k) {
  Rational h = 0;
  for (std::uint64_t j = 1; j <= k; ++j) h += Rational(1, j);
  return h;
}

Rational max_box_load(std::uint64_t num_boxes, std::uint64_t per_move) {
  if (num_boxes == 0) throw GameError(ErrorKind::InvalidArgument, "max_box_load needs num_boxes >= 1");
  return Rational(per_move) * harmonic_exact(num_boxes);
}

BoxState::BoxState(std::uint64_t k, std::uint64_t t, std::uint64_t a) : a_(a) {
  if (k == 0 || a == 0) throw GameError(ErrorKind::InvalidArgument, "box game needs k, a >= 1");
  size_.assign(k, t / k);
  for (std::uint64_t i = 0; i < t % k; ++i) ++size_[i];
  eaten_.assign(k, 0);
  destroyed_.assign(k, 0);
}

BoxState::BoxState(std::vector<std::uint64_t> sizes, std::uint64_t a) : size_(std::move(sizes)), a_(a) {
  if (size_.empty() || a == 0) throw GameError(ErrorKind::InvalidArgument, "box game needs k, a >= 1");
  eaten_.assign(size_.size(), 0);
  destroyed_.assign(size_.size(), 0);
}

std::size_t BoxState::surviving_count() const {
  return static_cast<std::size_t>(std::count(destroyed_.begin(), destroyed_.end(), 0));
}

bool BoxState::boxmaker_won() const {
  for (std::size_t i = 0; i < k(); ++i)
    if (surviving(i) && remaining(i) == 0) return true;
  return false;
}

void BoxState::destroy(std::size_t i) {
  if (i >= k() || destroyed(i)) throw GameError(ErrorKind::InvalidArgument, "box already destroyed");
  destroyed_[i] = 1;
}

void BoxState::eat(std::size_t i) {
  if (i >= k() || destroyed(i) || remaining(i) == 0)
    throw GameError(ErrorKind::InvalidArgument, "box has no free element");
  ++eaten_[i];
}

std::size_t boxbreaker_move(BoxState& s) {
  std::size_t best = s.k();
  for (std::size_t i = 0; i < s.k(); ++i) {
    if (!s.surviving(i)) continue;
    if (best == s.k() || s.remaining(i) < s.remaining(best) ||
        (s.remaining(i) == s.remaining(best) && s.eaten(i) > s.eaten(best)))
      best = i;
  }
  if (best == s.k()) throw GameError(ErrorKind::NoSurvivingBox, "all boxes destroyed");
  s.destroy(best);
  return best;
}

std::vector<std::size_t> boxmaker_move(BoxState& s) {
  std::vector<std::size_t> claims;
  std::uint64_t units = s.bias();
  while (units > 0) {
    std::size_t finish = s.k();
    std::size_t largest = s.k();
    for (std::size_t i = 0; i < s.k(); ++i) {
      if (!s.surviving(i) || s.remaining(i) == 0) continue;
      if (s.remaining(i) <= units && (finish == s.k() || s.remaining(i) < s.remaining(finish))) finish = i;
      if (largest == s.k() || s.remaining(i) > s.remaining(largest)) largest = i;
    }
    if (largest == s.k()) break;
    const std::size_t target = finish != s.k() ? finish : largest;
    s.eat(target);
    claims.push_back(target);
    --units;
    if (finish != s.k()) {
      while (units > 0 && s.remaining(target) > 0) {
        s.eat(target);
        claims.push_back(target);
        --units;
      }
    }
  }
  return claims;
}

SimulationResult simulate(BoxState s) {
  SimulationResult r;
  r.eaten_at_destruction.assign(s.k(), 0);
  while (true) {
    if (s.surviving_count() == 0) break;
    const std::size_t d = boxbreaker_move(s);
    r.eaten_at_destruction[d] = s.eaten(d);
    r.max_eaten = std::max(r.max_eaten, s.eaten(d));
    ++r.rounds;
    if (s.surviving_count() == 0) break;
    boxmaker_move(s);
    if (s.boxmaker_won()) {
      r.boxmaker_won = true;
      break;
    }
  }
  return r;
}

}  // namespace mbg::box
