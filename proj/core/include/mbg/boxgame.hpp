#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mbg::box {

using Rational = boost::multiprecision::cpp_rational;

/// Chvatal-Erdos potential. f(1,a)=0, f(k,a)=floor(k(f(k-1,a)+a)/(k-1)).
std::uint64_t f(std::uint64_t k, std::uint64_t a);
/// f(1,a)..f(kmax,a); index 0 is unused.
std::vector<std::uint64_t> f_table(std::uint64_t kmax, std::uint64_t a);

/// BoxMaker wins B(k,t,a,1) iff t <= f(k,a).
bool boxmaker_wins(std::uint64_t k, std::uint64_t t, std::uint64_t a);

double harmonic(std::uint64_t k);
Rational harmonic_exact(std::uint64_t k);

/// per_move * H_K: the most a single box can absorb against a
/// max-destroying BoxBreaker over K rounds.
Rational max_box_load(std::uint64_t num_boxes, std::uint64_t per_move);

/// Box game B(k,t,a,1). BoxBreaker moves first and destroys one surviving
/// box per move; BoxMaker claims `a` elements per move.
class BoxState {
 public:
  BoxState(std::uint64_t k, std::uint64_t t, std::uint64_t a);
  /// Explicit remaining sizes (for tests and embeddings).
  BoxState(std::vector<std::uint64_t> sizes, std::uint64_t a);

  std::size_t k() const { return size_.size(); }
  std::uint64_t bias() const { return a_; }
  std::uint64_t size(std::size_t i) const { return size_[i]; }
  std::uint64_t eaten(std::size_t i) const { return eaten_[i]; }
  std::uint64_t remaining(std::size_t i) const { return size_[i] - eaten_[i]; }
  bool destroyed(std::size_t i) const { return destroyed_[i] != 0; }
  bool surviving(std::size_t i) const { return !destroyed(i); }
  std::size_t surviving_count() const;
  /// A surviving box with nothing left: BoxMaker has won.
  bool boxmaker_won() const;
  bool boxbreaker_won() const { return surviving_count() == 0; }

  void destroy(std::size_t i);
  void eat(std::size_t i);

 private:
  std::vector<std::uint64_t> size_;
  std::vector<std::uint64_t> eaten_;
  std::vector<char> destroyed_;
  std::uint64_t a_;
};

/// Destroys the surviving box with the fewest remaining elements (ties: most
/// eaten, then lowest index) and returns its index. With equal box sizes this
/// is the most-eaten box. Throws NoSurvivingBox.
std::size_t boxbreaker_move(BoxState& s);

/// Balanced BoxMaker. Finishes a box if the units left this turn suffice
/// (smallest remaining first); otherwise each unit goes to the surviving box
/// with the largest remaining count (ties: lowest index). Returns the box of
/// each claimed unit in order; fewer than `a` only when boxes run out.
std::vector<std::size_t> boxmaker_move(BoxState& s);

struct SimulationResult {
  bool boxmaker_won = false;
  std::uint64_t rounds = 0;
  /// Eaten count of each box at the moment it was destroyed.
  std::vector<std::uint64_t> eaten_at_destruction;
  std::uint64_t max_eaten = 0;
};

SimulationResult simulate(BoxState s);

}  // namespace mbg::box
