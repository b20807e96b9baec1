#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "qstrat/spinflip.hpp"

using namespace qstrat;
using namespace qstrat::spinflip;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::mt19937& rng() {
  static std::mt19937 gen(77031u);
  return gen;
}

MoveParams random_params() {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Complex a(gauss(rng()), gauss(rng()));
  Complex b(gauss(rng()), gauss(rng()));
  const double norm = std::sqrt(std::norm(a) + std::norm(b));
  return {a / norm, b / norm};
}

MoveParams hadamard_params() { return {Complex(kInvSqrt2, 0), Complex(kInvSqrt2, 0)}; }

// Oracle for the full game, built from scratch: 2x2 complex arithmetic on
// raw arrays, no shared code with the library evolution chain.
double oracle_p_up(const MoveParams& first, const MoveParams& second, double p) {
  using M = std::array<std::array<Complex, 2>, 2>;
  auto make_u = [](const MoveParams& mp) {
    return M{{{mp.a, mp.b}, {std::conj(mp.b), -std::conj(mp.a)}}};
  };
  auto apply = [](const M& u, const std::array<Complex, 2>& v) {
    return std::array<Complex, 2>{u[0][0] * v[0] + u[0][1] * v[1],
                                  u[1][0] * v[0] + u[1][1] * v[1]};
  };
  const M u1 = make_u(first);
  const M u3 = make_u(second);
  const M flip{{{Complex(0, 0), Complex(1, 0)}, {Complex(1, 0), Complex(0, 0)}}};

  const std::array<Complex, 2> up{Complex(1, 0), Complex(0, 0)};
  const auto after_first = apply(u1, up);
  const auto stay_branch = apply(u3, after_first);
  const auto flip_branch = apply(u3, apply(flip, after_first));
  return (1.0 - p) * std::norm(stay_branch[0]) + p * std::norm(flip_branch[0]);
}

}  // namespace

TEST_CASE("pure payoff table matches the stay/flip parity rule") {
  // Frozen table: classical player scores +1 exactly when the total number
  // of flips is odd (spin ends down).
  const int expected[2][4] = {{-1, 1, 1, -1}, {1, -1, -1, 1}};
  const Move moves[2] = {Move::stay, Move::flip};
  for (int c = 0; c < 2; ++c) {
    for (int q1 = 0; q1 < 2; ++q1) {
      for (int q2 = 0; q2 < 2; ++q2) {
        const int payoff = classical_payoff(moves[c], moves[q1], moves[q2]);
        CHECK(payoff == expected[c][2 * q1 + q2]);
        // Cross-check against the trajectory: +1 iff final spin is down.
        const auto traj = pure_trajectory(moves[c], moves[q1], moves[q2]);
        CHECK(traj[0] == Spin::up);
        CHECK(payoff == (traj[3] == Spin::down ? 1 : -1));
        // Parity oracle.
        const int flips = c + q1 + q2;
        CHECK(payoff == (flips % 2 == 1 ? 1 : -1));
      }
    }
  }
}

TEST_CASE("the pure table agrees with degenerate-strategy plays") {
  // p in {0, 1} and (a, b) in {(1, 0), (0, 1)} reproduce each deterministic
  // move; the expected value must match the table entry.
  const Move moves[2] = {Move::stay, Move::flip};
  auto params_for = [](Move m) {
    return m == Move::flip ? MoveParams{Complex(0, 0), Complex(1, 0)}
                           : MoveParams{Complex(1, 0), Complex(0, 0)};
  };
  for (int c = 0; c < 2; ++c) {
    for (int q1 = 0; q1 < 2; ++q1) {
      for (int q2 = 0; q2 < 2; ++q2) {
        const PlayTranscript t = play(QuantumStrategy(params_for(moves[q1]), params_for(moves[q2])),
                                      ClassicalStrategy(c == 1 ? 1.0 : 0.0));
        const int table = classical_payoff(moves[c], moves[q1], moves[q2]);
        CHECK(std::abs(t.classical_value - table) <= 1e-12);
      }
    }
  }
}

TEST_CASE("play is exactly zero-sum") {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const PlayTranscript t =
        play(QuantumStrategy(random_params(), random_params()), ClassicalStrategy(unit(rng())));
    CHECK(t.classical_value + t.quantum_value == 0.0);  // exact
  }
}

TEST_CASE("play matches a from-scratch amplitude oracle") {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const MoveParams first = random_params();
    const MoveParams second = random_params();
    const double p = unit(rng());
    const PlayTranscript t = play(QuantumStrategy(first, second), ClassicalStrategy(p));
    const double expected = oracle_p_up(first, second, p);
    CHECK(t.p_up == doctest::Approx(expected).epsilon(1e-12));
    CHECK(t.classical_value == doctest::Approx(1.0 - 2.0 * expected).epsilon(1e-12));
    CHECK(t.quantum_value == doctest::Approx(2.0 * expected - 1.0).epsilon(1e-12));
  }
}

TEST_CASE("hadamard moves win for the quantum player at every flip probability") {
  const QuantumStrategy q(hadamard_params(), hadamard_params());
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    const PlayTranscript t = play(q, ClassicalStrategy(p));
    CHECK(std::abs(t.p_up - 1.0) <= 1e-12);
    CHECK(std::abs(t.classical_value + 1.0) <= 1e-12);
  }
}

TEST_CASE("the state after a hadamard move is flip invariant") {
  const UnitaryStrategy u = make_move_unitary(hadamard_params().a, hadamard_params().b);
  const DensityMatrix rho1 = evolve(u, pure_density(basis_state(0, 2)));
  CHECK(is_flip_invariant(rho1));
  CHECK_FALSE(is_flip_invariant(pure_density(basis_state(0, 2))));
}

TEST_CASE("intermediate state diagonals follow the two-move mixing formula") {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const MoveParams first = random_params();
    const MoveParams second = random_params();
    const double p = unit(rng());
    const PlayTranscript t = play(QuantumStrategy(first, second), ClassicalStrategy(p));

    const double aa = std::norm(first.a);
    const double bb = std::norm(first.b);
    const Eigen::VectorXd d1 = measurement_probabilities(t.rho1);
    CHECK(std::abs(d1[0] - aa) <= 1e-12);
    CHECK(std::abs(d1[1] - bb) <= 1e-12);

    const Eigen::VectorXd d2 = measurement_probabilities(t.rho2);
    CHECK(std::abs(d2[0] - (p * bb + (1.0 - p) * aa)) <= 1e-12);
    CHECK(std::abs(d2[1] - (p * aa + (1.0 - p) * bb)) <= 1e-12);
  }
}

TEST_CASE("a half flip probability equalizes the intermediate diagonal") {
  for (int trial = 0; trial < 200; ++trial) {
    const MoveParams first = random_params();
    const PlayTranscript t =
        play(QuantumStrategy(first, random_params()), ClassicalStrategy(0.5));
    const Eigen::VectorXd d2 = measurement_probabilities(t.rho2);
    CHECK(std::abs(d2[0] - 0.5) <= 1e-12);
    CHECK(std::abs(d2[1] - 0.5) <= 1e-12);
  }
}

TEST_CASE("two-move value matches its closed form") {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const MoveParams first = random_params();
    const double p = unit(rng());
    const double value = two_move_value(first, ClassicalStrategy(p));
    const double expected = (2.0 * p - 1.0) * (std::norm(first.a) - std::norm(first.b));
    CHECK(value == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("classical best response dominates a probability grid and attains its value") {
  for (int trial = 0; trial < 100; ++trial) {
    const MoveParams first = random_params();
    const ClassicalBestResponse best = classical_best_response(first);
    const double expected_value = std::abs(std::norm(first.a) - std::norm(first.b));
    CHECK(std::abs(best.value - expected_value) <= 1e-12);
    // The reported probability really attains the reported value.
    const double attained = two_move_value(first, ClassicalStrategy(best.flip_probability));
    CHECK(std::abs(attained - best.value) <= 1e-12);
    // And no grid probability does better.
    for (int i = 0; i <= 100; ++i) {
      const double p = i / 100.0;
      CHECK(two_move_value(first, ClassicalStrategy(p)) <= best.value + 1e-12);
    }
  }
  // Tie case: equal moduli -> p = 1/2, value 0.
  const ClassicalBestResponse tie = classical_best_response(hadamard_params());
  CHECK(tie.flip_probability == 0.5);
  CHECK(tie.value == 0.0);
}

TEST_CASE("quantum best response dominates a parameter grid and attains its value") {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double p = unit(rng());
    const ClassicalStrategy c(p);
    const QuantumBestResponse best = quantum_best_response(c);
    CHECK(std::abs(best.value - std::abs(2.0 * p - 1.0)) <= 1e-12);
    // Quantum value is the negative of the classical value.
    const double attained = -two_move_value({best.a, best.b}, c);
    CHECK(std::abs(attained - best.value) <= 1e-12);
    for (int i = 0; i <= 100; ++i) {
      const double t = i / 100.0;
      const MoveParams mp{Complex(std::sqrt(t), 0), Complex(std::sqrt(1.0 - t), 0)};
      CHECK(-two_move_value(mp, c) <= best.value + 1e-12);
    }
  }
  const QuantumBestResponse tie = quantum_best_response(ClassicalStrategy(0.5));
  CHECK(tie.a == Complex(1, 0));
  CHECK(tie.b == Complex(0, 0));
  CHECK(tie.value == 0.0);
}

TEST_CASE("two-move equilibrium holds exactly at the balanced point") {
  CHECK(is_two_move_equilibrium(ClassicalStrategy(0.5), hadamard_params()));
  CHECK_FALSE(is_two_move_equilibrium(ClassicalStrategy(0.4), hadamard_params()));
  CHECK_FALSE(is_two_move_equilibrium(ClassicalStrategy(0.5),
                                      MoveParams{Complex(1, 0), Complex(0, 0)}));
  // Phases do not matter, only moduli.
  const MoveParams phased{Complex(0, kInvSqrt2), Complex(-kInvSqrt2, 0)};
  CHECK(is_two_move_equilibrium(ClassicalStrategy(0.5), phased));
}

TEST_CASE("strategy validation rejects out-of-range inputs") {
  CHECK_THROWS_AS(ClassicalStrategy(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(ClassicalStrategy(1.1), std::invalid_argument);
  CHECK_THROWS_AS(QuantumStrategy({Complex(1, 0), Complex(1, 0)}, hadamard_params()),
                  std::invalid_argument);
}
