#pragma once

// Two-player spin-flip game on a single two-level system.  The spin starts
// up.  The quantum player applies a unitary move, the classical player then
// flips the spin with probability p (and leaves it alone otherwise), and the
// quantum player moves again.  The classical player scores +1 if the final
// measurement is down, -1 if it is up; the game is zero-sum.

#include <array>
#include <cmath>
#include <complex>

#include "qstrat/quantum.hpp"

namespace qstrat::spinflip {

enum class Move { stay, flip };
enum class Spin { up, down };

// Amplitude pair (a, b) defining one two-level unitary move.
struct MoveParams {
  Complex a;
  Complex b;
};

// The classical player's strategy: flip with probability p.
class ClassicalStrategy {
 public:
  explicit ClassicalStrategy(double flip_probability) : flip_probability_(flip_probability) {
    detail::require(std::isfinite(flip_probability_) && flip_probability_ >= 0.0 &&
                        flip_probability_ <= 1.0,
                    "classical strategy: flip probability must lie in [0, 1]");
  }

  double flip_probability() const { return flip_probability_; }

 private:
  double flip_probability_;
};

// The quantum player's strategy: one move before and one after the
// classical player's turn.
class QuantumStrategy {
 public:
  QuantumStrategy(MoveParams first, MoveParams second) : first_(first), second_(second) {
    detail::require(std::abs(std::norm(first.a) + std::norm(first.b) - 1.0) <= kStateTol,
                    "quantum strategy: first move must satisfy |a|^2 + |b|^2 = 1 within 1e-9");
    detail::require(std::abs(std::norm(second.a) + std::norm(second.b) - 1.0) <= kStateTol,
                    "quantum strategy: second move must satisfy |a|^2 + |b|^2 = 1 within 1e-9");
  }

  const MoveParams& first() const { return first_; }
  const MoveParams& second() const { return second_; }

 private:
  MoveParams first_;
  MoveParams second_;
};

// Full three-move record: state after each move plus final payoffs.
struct PlayTranscript {
  DensityMatrix rho1;      // after the quantum player's first move
  DensityMatrix rho2;      // after the classical player's mixed flip
  DensityMatrix rho3;      // after the quantum player's second move
  double p_up;             // probability of measuring "up" at the end
  double classical_value;  // 1 - 2 * p_up
  double quantum_value;    // -classical_value
};

inline UnitaryStrategy flip_op() {
  ComplexMatrix f(2, 2);
  f << 0, 1, 1, 0;
  return UnitaryStrategy(std::move(f));
}

inline UnitaryStrategy stay_op() {
  return UnitaryStrategy(ComplexMatrix::Identity(2, 2));
}

// Payoff to the classical player when everyone plays a deterministic
// stay/flip sequence.  Rows: classical move; columns: the quantum player's
// (first, second) move pair in the order (stay,stay), (stay,flip),
// (flip,stay), (flip,flip).
inline int classical_payoff(Move classical, Move q_first, Move q_second) {
  static constexpr int table[2][4] = {
      {-1, 1, 1, -1},  // classical stays
      {1, -1, -1, 1},  // classical flips
  };
  const int row = classical == Move::flip ? 1 : 0;
  const int col = (q_first == Move::flip ? 2 : 0) + (q_second == Move::flip ? 1 : 0);
  return table[row][col];
}

// Basis-state trajectory (initial, after q_first, after classical, after
// q_second) for deterministic moves.
inline std::array<Spin, 4> pure_trajectory(Move classical, Move q_first, Move q_second) {
  auto toggled = [](Spin s) { return s == Spin::up ? Spin::down : Spin::up; };
  std::array<Spin, 4> traj{};
  Spin s = Spin::up;
  traj[0] = s;
  if (q_first == Move::flip) s = toggled(s);
  traj[1] = s;
  if (classical == Move::flip) s = toggled(s);
  traj[2] = s;
  if (q_second == Move::flip) s = toggled(s);
  traj[3] = s;
  return traj;
}

inline MixedUnitaryAction flip_mix(const ClassicalStrategy& c) {
  const double p = c.flip_probability();
  return MixedUnitaryAction({{p, flip_op()}, {1.0 - p, stay_op()}});
}

// Play the full three-move game from the up state.
inline PlayTranscript play(const QuantumStrategy& q, const ClassicalStrategy& c) {
  const UnitaryStrategy u1 = make_move_unitary(q.first().a, q.first().b);
  const UnitaryStrategy u3 = make_move_unitary(q.second().a, q.second().b);
  DensityMatrix rho1 = evolve(u1, pure_density(basis_state(0, 2)));
  DensityMatrix rho2 = evolve(flip_mix(c), rho1);
  DensityMatrix rho3 = evolve(u3, rho2);
  const double p_up = measurement_probabilities(rho3)[0];
  const double classical_value = 1.0 - 2.0 * p_up;
  return PlayTranscript{std::move(rho1), std::move(rho2), std::move(rho3),
                        p_up, classical_value, -classical_value};
}

// Expected payoff to the classical player if the game stopped right after
// their move (one quantum move, one mixed flip).
inline double two_move_value(const MoveParams& first, const ClassicalStrategy& c) {
  const UnitaryStrategy u1 = make_move_unitary(first.a, first.b);
  DensityMatrix rho1 = evolve(u1, pure_density(basis_state(0, 2)));
  DensityMatrix rho2 = evolve(flip_mix(c), rho1);
  const Eigen::VectorXd probs = measurement_probabilities(rho2);
  return probs[1] - probs[0];
}

struct ClassicalBestResponse {
  double flip_probability;
  double value;
};

// Best flip probability against a known first quantum move in the two-move
// game: flip iff the spin is more likely up, for value ||a|^2 - |b|^2|.
// On indifference (|a|^2 = |b|^2 within 1e-12) returns p = 1/2, value 0.
inline ClassicalBestResponse classical_best_response(const MoveParams& first) {
  detail::require(std::abs(std::norm(first.a) + std::norm(first.b) - 1.0) <= kStateTol,
                  "best response: |a|^2 + |b|^2 must be 1 within 1e-9");
  const double aa = std::norm(first.a);
  const double bb = std::norm(first.b);
  if (std::abs(aa - bb) <= kExactTol) return {0.5, 0.0};
  if (aa > bb) return {1.0, aa - bb};
  return {0.0, bb - aa};
}

struct QuantumBestResponse {
  Complex a;
  Complex b;
  double value;
};

// Best single quantum move against a known flip probability: leave the spin
// up when p < 1/2, put it down when p > 1/2, for value |2p - 1|.  At
// p = 1/2 returns (1, 0) with value 0 by tie-break.
inline QuantumBestResponse quantum_best_response(const ClassicalStrategy& c) {
  const double p = c.flip_probability();
  if (std::abs(p - 0.5) <= kExactTol) return {Complex(1, 0), Complex(0, 0), 0.0};
  if (p < 0.5) return {Complex(1, 0), Complex(0, 0), 1.0 - 2.0 * p};
  return {Complex(0, 0), Complex(1, 0), 2.0 * p - 1.0};
}

// Mutual best responses in the two-move game: p = 1/2 and |a|^2 = 1/2.
inline bool is_two_move_equilibrium(const ClassicalStrategy& c, const MoveParams& first) {
  return std::abs(c.flip_probability() - 0.5) <= kExactTol &&
         std::abs(std::norm(first.a) - 0.5) <= kExactTol;
}

// True when rho is unchanged (within 1e-9) by both of the classical
// player's pure actions, so the mixed flip cannot move it.
inline bool is_flip_invariant(const DensityMatrix& rho) {
  detail::require(rho.dimension() == 2, "flip invariance: two-level states only");
  const DensityMatrix flipped = evolve(flip_op(), rho);
  const DensityMatrix stayed = evolve(stay_op(), rho);
  return (flipped.matrix() - rho.matrix()).cwiseAbs().maxCoeff() <= kStateTol &&
         (stayed.matrix() - rho.matrix()).cwiseAbs().maxCoeff() <= kStateTol;
}

}  // namespace qstrat::spinflip
