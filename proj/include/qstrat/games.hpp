#pragma once

// Finite two-player games: bimatrix payoff analysis (dominance, pure and
// 2x2 mixed Nash equilibria, Pareto-optimal outcomes, zero-sum maximin for
// two-row games) and quantum games with finite sets of mixed-unitary
// strategies scored through Hermitian observables.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qstrat/quantum.hpp"

namespace qstrat::games {

// Payoff comparisons treat values within 1e-9 as tied.
inline constexpr double kPayoffTol = 1e-9;

// One outcome of a finite game: row index for player A, column for B.
struct Cell {
  Eigen::Index row;
  Eigen::Index col;

  friend bool operator==(const Cell& x, const Cell& y) {
    return x.row == y.row && x.col == y.col;
  }
  friend bool operator<(const Cell& x, const Cell& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  }
};

// Two equally-shaped finite payoff tables, one per player.
class BimatrixGame {
 public:
  BimatrixGame(Eigen::MatrixXd payoff_a, Eigen::MatrixXd payoff_b)
      : payoff_a_(std::move(payoff_a)), payoff_b_(std::move(payoff_b)) {
    detail::require(payoff_a_.rows() > 0 && payoff_a_.cols() > 0,
                    "bimatrix game: payoff tables must be nonempty");
    detail::require(payoff_a_.rows() == payoff_b_.rows() && payoff_a_.cols() == payoff_b_.cols(),
                    "bimatrix game: payoff tables must have the same shape");
    detail::require(payoff_a_.allFinite() && payoff_b_.allFinite(),
                    "bimatrix game: payoff entries must be finite");
  }

  const Eigen::MatrixXd& payoff_a() const { return payoff_a_; }
  const Eigen::MatrixXd& payoff_b() const { return payoff_b_; }
  Eigen::Index rows() const { return payoff_a_.rows(); }
  Eigen::Index cols() const { return payoff_a_.cols(); }

 private:
  Eigen::MatrixXd payoff_a_;
  Eigen::MatrixXd payoff_b_;
};

// A probability vector per player.
struct MixedProfile {
  Eigen::VectorXd row_probs;
  Eigen::VectorXd col_probs;
};

struct DominantStrategies {
  std::vector<Eigen::Index> rows;  // weakly dominant rows for player A
  std::vector<Eigen::Index> cols;  // weakly dominant columns for player B
};

// Weak dominance: a row is dominant when it is a best response to every
// column (ties allowed), and symmetrically for columns.
inline DominantStrategies dominant_strategies(const BimatrixGame& g, double tol = kPayoffTol) {
  DominantStrategies out;
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    bool dominant = true;
    for (Eigen::Index j = 0; j < g.cols() && dominant; ++j) {
      dominant = g.payoff_a()(i, j) >= g.payoff_a().col(j).maxCoeff() - tol;
    }
    if (dominant) out.rows.push_back(i);
  }
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    bool dominant = true;
    for (Eigen::Index i = 0; i < g.rows() && dominant; ++i) {
      dominant = g.payoff_b()(i, j) >= g.payoff_b().row(i).maxCoeff() - tol;
    }
    if (dominant) out.cols.push_back(j);
  }
  return out;
}

// All pure-strategy Nash cells: neither player can gain more than tol by a
// unilateral deviation.  Ties are included.
inline std::vector<Cell> pure_nash(const BimatrixGame& g, double tol = kPayoffTol) {
  std::vector<Cell> out;
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      const bool a_best = g.payoff_a()(i, j) >= g.payoff_a().col(j).maxCoeff() - tol;
      const bool b_best = g.payoff_b()(i, j) >= g.payoff_b().row(i).maxCoeff() - tol;
      if (a_best && b_best) out.push_back({i, j});
    }
  }
  return out;
}

// Outcomes not strictly Pareto-dominated: no other cell is at least as good
// for both players and strictly better for one.
inline std::vector<Cell> pareto_outcomes(const BimatrixGame& g, double tol = kPayoffTol) {
  std::vector<Cell> out;
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      const double a = g.payoff_a()(i, j);
      const double b = g.payoff_b()(i, j);
      bool dominated = false;
      for (Eigen::Index i2 = 0; i2 < g.rows() && !dominated; ++i2) {
        for (Eigen::Index j2 = 0; j2 < g.cols() && !dominated; ++j2) {
          const double a2 = g.payoff_a()(i2, j2);
          const double b2 = g.payoff_b()(i2, j2);
          dominated = a2 >= a - tol && b2 >= b - tol && (a2 > a + tol || b2 > b + tol);
        }
      }
      if (!dominated) out.push_back({i, j});
    }
  }
  return out;
}

// True when neither player can improve their expected payoff by more than
// tol with a pure deviation from the profile.
inline bool is_mixed_equilibrium(const BimatrixGame& g, const MixedProfile& profile,
                                 double tol = kPayoffTol) {
  const Eigen::VectorXd& r = profile.row_probs;
  const Eigen::VectorXd& c = profile.col_probs;
  detail::require(r.size() == g.rows() && c.size() == g.cols(),
                  "mixed profile: size must match the payoff tables");
  const double value_a = r.dot(g.payoff_a() * c);
  const double value_b = r.dot(g.payoff_b() * c);
  return value_a >= (g.payoff_a() * c).maxCoeff() - tol &&
         value_b >= (g.payoff_b().transpose() * r).maxCoeff() - tol;
}

struct MixedNashResult {
  std::vector<MixedProfile> equilibria;
  // True when an indifference denominator vanishes, so interior equilibria
  // form a continuum (or none exists) and only pure profiles are reported.
  bool degenerate;
};

// Equilibria of a 2x2 game: the pure Nash cells as degenerate mixtures plus
// the interior profile solved from the indifference equations when it lies
// strictly inside (0,1)^2.
inline MixedNashResult mixed_nash_2x2(const BimatrixGame& g) {
  detail::require(g.rows() == 2 && g.cols() == 2, "mixed equilibria: 2x2 games only");
  MixedNashResult result{{}, false};

  for (const Cell& cell : pure_nash(g)) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(2);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(2);
    r[cell.row] = 1.0;
    c[cell.col] = 1.0;
    result.equilibria.push_back({std::move(r), std::move(c)});
  }

  const Eigen::MatrixXd& a = g.payoff_a();
  const Eigen::MatrixXd& b = g.payoff_b();
  // Column mix (y, 1-y) equalizing A's rows, row mix (x, 1-x) equalizing
  // B's columns.
  const double den_y = a(0, 0) - a(1, 0) + a(1, 1) - a(0, 1);
  const double den_x = b(0, 0) - b(0, 1) + b(1, 1) - b(1, 0);
  if (std::abs(den_y) <= kExactTol || std::abs(den_x) <= kExactTol) {
    result.degenerate = true;
    return result;
  }
  const double y = (a(1, 1) - a(0, 1)) / den_y;
  const double x = (b(1, 1) - b(1, 0)) / den_x;
  if (x > kExactTol && x < 1.0 - kExactTol && y > kExactTol && y < 1.0 - kExactTol) {
    MixedProfile interior{Eigen::Vector2d(x, 1.0 - x), Eigen::Vector2d(y, 1.0 - y)};
    if (is_mixed_equilibrium(g, interior)) result.equilibria.push_back(std::move(interior));
  }
  return result;
}

struct ZeroSumSolution {
  double value;                 // maximin value for the row player
  Eigen::Vector2d row_profile;  // probabilities of rows 0 and 1
};

// Maximin mixed strategy for the row player of a two-row zero-sum game.
// Each column gives a line in the row-0 probability x; the lower envelope
// is concave and piecewise linear, so its maximum sits at an endpoint or a
// pairwise intersection.
inline ZeroSumSolution zero_sum_value(const BimatrixGame& g) {
  detail::require(g.rows() == 2, "zero-sum maximin: exactly two rows required");
  detail::require((g.payoff_a() + g.payoff_b()).cwiseAbs().maxCoeff() <= kExactTol,
                  "zero-sum maximin: payoff_b must equal -payoff_a within 1e-12");
  const Eigen::MatrixXd& a = g.payoff_a();

  std::vector<double> candidates{0.0, 1.0};
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index j2 = j + 1; j2 < g.cols(); ++j2) {
      const double den = (a(0, j) - a(1, j)) - (a(0, j2) - a(1, j2));
      if (std::abs(den) <= 1e-14) continue;  // parallel lines
      const double x = (a(1, j2) - a(1, j)) / den;
      if (x >= -kExactTol && x <= 1.0 + kExactTol) {
        candidates.push_back(std::min(1.0, std::max(0.0, x)));
      }
    }
  }
  std::sort(candidates.begin(), candidates.end());

  auto envelope = [&](double x) {
    double lo = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      lo = std::min(lo, x * a(0, j) + (1.0 - x) * a(1, j));
    }
    return lo;
  };

  double best_x = candidates.front();
  double best_value = envelope(best_x);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double v = envelope(candidates[i]);
    if (v > best_value) {
      best_value = v;
      best_x = candidates[i];
    }
  }
  return {best_value, Eigen::Vector2d(best_x, 1.0 - best_x)};
}

enum class MoveOrder { a_first, b_first };

// A quantum game over a d-dimensional system: a shared initial state, one
// finite set of mixed-unitary strategies per player, and one Hermitian
// payoff observable per player.
class QuantumGameSpec {
 public:
  QuantumGameSpec(DensityMatrix initial, std::vector<MixedUnitaryAction> strategies_a,
                  std::vector<MixedUnitaryAction> strategies_b, ComplexMatrix observable_a,
                  ComplexMatrix observable_b, MoveOrder order = MoveOrder::a_first)
      : initial_(std::move(initial)),
        strategies_a_(std::move(strategies_a)),
        strategies_b_(std::move(strategies_b)),
        observable_a_(std::move(observable_a)),
        observable_b_(std::move(observable_b)),
        order_(order) {
    const Eigen::Index d = initial_.dimension();
    detail::require(!strategies_a_.empty() && !strategies_b_.empty(),
                    "quantum game: strategy sets must be nonempty");
    for (const MixedUnitaryAction& s : strategies_a_) {
      detail::require(s.dimension() == d, "quantum game: player A strategy dimension mismatch");
    }
    for (const MixedUnitaryAction& s : strategies_b_) {
      detail::require(s.dimension() == d, "quantum game: player B strategy dimension mismatch");
    }
    detail::require(observable_a_.rows() == d && observable_b_.rows() == d &&
                        is_hermitian(observable_a_) && is_hermitian(observable_b_),
                    "quantum game: observables must be d x d Hermitian within 1e-9");
  }

  const DensityMatrix& initial() const { return initial_; }
  const std::vector<MixedUnitaryAction>& strategies_a() const { return strategies_a_; }
  const std::vector<MixedUnitaryAction>& strategies_b() const { return strategies_b_; }
  const ComplexMatrix& observable_a() const { return observable_a_; }
  const ComplexMatrix& observable_b() const { return observable_b_; }
  MoveOrder order() const { return order_; }
  Eigen::Index dimension() const { return initial_.dimension(); }

 private:
  DensityMatrix initial_;
  std::vector<MixedUnitaryAction> strategies_a_;
  std::vector<MixedUnitaryAction> strategies_b_;
  ComplexMatrix observable_a_;
  ComplexMatrix observable_b_;
  MoveOrder order_;
};

inline double observable_payoff(const ComplexMatrix& observable, const DensityMatrix& rho) {
  return (observable * rho.matrix()).trace().real();
}

namespace detail_games {

inline std::pair<double, double> payoff_pair(const QuantumGameSpec& spec, Eigen::Index i,
                                             Eigen::Index j) {
  const MixedUnitaryAction& sa = spec.strategies_a()[static_cast<std::size_t>(i)];
  const MixedUnitaryAction& sb = spec.strategies_b()[static_cast<std::size_t>(j)];
  const DensityMatrix sigma = spec.order() == MoveOrder::a_first
                                  ? evolve(sb, evolve(sa, spec.initial()))
                                  : evolve(sa, evolve(sb, spec.initial()));
  return {observable_payoff(spec.observable_a(), sigma),
          observable_payoff(spec.observable_b(), sigma)};
}

}  // namespace detail_games

// Tabulate every strategy pair into a classical bimatrix game.
inline BimatrixGame induced_bimatrix(const QuantumGameSpec& spec) {
  const Eigen::Index m = static_cast<Eigen::Index>(spec.strategies_a().size());
  const Eigen::Index n = static_cast<Eigen::Index>(spec.strategies_b().size());
  Eigen::MatrixXd a(m, n), b(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto [pa, pb] = detail_games::payoff_pair(spec, i, j);
      a(i, j) = pa;
      b(i, j) = pb;
    }
  }
  return BimatrixGame(std::move(a), std::move(b));
}

// Pure Nash pairs over the finite strategy sets, checked directly against
// the deviation inequalities on the tabulated payoffs.
inline std::vector<Cell> quantum_nash_finite(const QuantumGameSpec& spec,
                                             double tol = kPayoffTol) {
  const Eigen::Index m = static_cast<Eigen::Index>(spec.strategies_a().size());
  const Eigen::Index n = static_cast<Eigen::Index>(spec.strategies_b().size());
  Eigen::MatrixXd a(m, n), b(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto [pa, pb] = detail_games::payoff_pair(spec, i, j);
      a(i, j) = pa;
      b(i, j) = pb;
    }
  }
  std::vector<Cell> out;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      bool nash = true;
      for (Eigen::Index i2 = 0; i2 < m && nash; ++i2) nash = a(i, j) >= a(i2, j) - tol;
      for (Eigen::Index j2 = 0; j2 < n && nash; ++j2) nash = b(i, j) >= b(i, j2) - tol;
      if (nash) out.push_back({i, j});
    }
  }
  return out;
}

}  // namespace qstrat::games
