#pragma once

// Buy/hold strategies for a single asset as a one-dimensional Ising chain.
// Bit m of a strategy says whether the asset is held over tick m.  Holding
// earns the log return h_m, and each switch between cash and asset costs a
// fixed transaction penalty, so the energy of bits n_1..n_k (with implicit
// n_0 = 0, starting in cash) is
//
//   H(n) = -sum_m (h_m * n_m - cost * (n_{m-1} XOR n_m)).
//
// The module provides exact minimization (tropical dynamic program),
// finite-temperature thermodynamics through log-domain transfer matrices,
// enumeration of every strategy that some one-step future can promote to a
// ground state, and small brute-force oracles for cross-checking.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qstrat/quantum.hpp"  // detail::require, tolerance constants

namespace qstrat::ising {

using BitStrategy = std::vector<std::uint8_t>;

inline constexpr int kMaxBruteForceBits = 20;
inline constexpr int kMaxSuperpositionBits = 24;
inline constexpr std::size_t kDefaultEnumerationCap = std::size_t{1} << 20;

// Thrown when an enumeration would report more strategies than its cap.
class EnumerationCapExceeded : public std::runtime_error {
 public:
  explicit EnumerationCapExceeded(std::size_t cap)
      : std::runtime_error("enumeration cap of " + std::to_string(cap) +
                           " strategies exceeded; lower eps or shorten the series") {}
};

// Strictly positive price path with at least two ticks.
class PriceSeries {
 public:
  explicit PriceSeries(std::vector<double> prices) : prices_(std::move(prices)) {
    detail::require(prices_.size() >= 2, "price series: need at least two prices");
    for (std::size_t i = 0; i < prices_.size(); ++i) {
      if (!std::isfinite(prices_[i]) || prices_[i] <= 0.0) {
        throw std::invalid_argument("price series: price at index " + std::to_string(i) +
                                    " must be finite and positive");
      }
    }
  }

  const std::vector<double>& prices() const { return prices_; }
  std::size_t size() const { return prices_.size(); }

 private:
  std::vector<double> prices_;
};

// Per-tick log returns h_m = ln(p_m / p_{m-1}).
class LogReturns {
 public:
  explicit LogReturns(Eigen::VectorXd values) : values_(std::move(values)) {
    detail::require(values_.size() > 0, "log returns: need at least one tick");
    detail::require(values_.allFinite(), "log returns: values must be finite");
  }

  const Eigen::VectorXd& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  double operator[](Eigen::Index i) const { return values_[i]; }

 private:
  Eigen::VectorXd values_;
};

inline LogReturns log_returns(const PriceSeries& series) {
  const std::vector<double>& p = series.prices();
  Eigen::VectorXd h(static_cast<Eigen::Index>(p.size()) - 1);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    h[static_cast<Eigen::Index>(i)] = std::log(p[i + 1] / p[i]);
  }
  return LogReturns(std::move(h));
}

// Nonnegative switching cost and positive inverse temperature.
class MarketParams {
 public:
  MarketParams(double transaction_cost, double beta)
      : transaction_cost_(transaction_cost), beta_(beta) {
    detail::require(std::isfinite(transaction_cost_) && transaction_cost_ >= 0.0,
                    "market params: transaction cost must be finite and >= 0");
    detail::require(std::isfinite(beta_) && beta_ > 0.0,
                    "market params: beta must be finite and > 0");
  }

  double transaction_cost() const { return transaction_cost_; }
  double beta() const { return beta_; }

 private:
  double transaction_cost_;
  double beta_;
};

namespace detail_ising {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline void check_cost(double transaction_cost) {
  detail::require(std::isfinite(transaction_cost) && transaction_cost >= 0.0,
                  "transaction cost must be finite and >= 0");
}

// Energy contribution of one tick.  Every energy in this module is a
// left-to-right sum of these terms, so independently computed energies of
// the same bit string agree exactly.
inline double step_cost(double log_return, double transaction_cost, unsigned prev, unsigned cur) {
  return -(log_return * static_cast<double>(cur) -
           transaction_cost * static_cast<double>(prev ^ cur));
}

// log(e^x + e^y) with the max factored out; tolerates -inf inputs.
inline double log_add(double x, double y) {
  if (x < y) std::swap(x, y);
  if (y == -kInf) return x;
  return x + std::log1p(std::exp(y - x));
}

// Forward tropical table: d[m][s] = minimum energy over prefixes n_1..n_m
// ending in state s, with d[0] = (0, inf) encoding the cash start.
inline std::vector<std::array<double, 2>> forward_min_table(const LogReturns& h,
                                                            double transaction_cost) {
  const Eigen::Index k = h.size();
  std::vector<std::array<double, 2>> d(static_cast<std::size_t>(k) + 1);
  d[0] = {0.0, kInf};
  for (Eigen::Index m = 1; m <= k; ++m) {
    for (unsigned t = 0; t < 2; ++t) {
      const double via0 = d[m - 1][0] + step_cost(h[m - 1], transaction_cost, 0, t);
      const double via1 = d[m - 1][1] + step_cost(h[m - 1], transaction_cost, 1, t);
      d[static_cast<std::size_t>(m)][t] = std::min(via0, via1);
    }
  }
  return d;
}

// Backward tropical table toward a fixed endpoint: b[m][s] = minimum added
// energy of n_{m+1}..n_k given n_m = s and n_k = endpoint.
inline std::vector<std::array<double, 2>> backward_min_table(const LogReturns& h,
                                                             double transaction_cost,
                                                             unsigned endpoint) {
  const Eigen::Index k = h.size();
  std::vector<std::array<double, 2>> b(static_cast<std::size_t>(k) + 1);
  b[static_cast<std::size_t>(k)] = {endpoint == 0 ? 0.0 : kInf, endpoint == 1 ? 0.0 : kInf};
  for (Eigen::Index m = k - 1; m >= 0; --m) {
    for (unsigned s = 0; s < 2; ++s) {
      const double via0 = step_cost(h[m], transaction_cost, s, 0) + b[m + 1][0];
      const double via1 = step_cost(h[m], transaction_cost, s, 1) + b[m + 1][1];
      b[static_cast<std::size_t>(m)][s] = std::min(via0, via1);
    }
  }
  return b;
}

// Depth-first enumeration of every strategy whose exact energy is at most
// `threshold`, guided by `bound` (a backward table): a partial prefix is
// extended only if prefix cost plus the best completion can still reach the
// threshold.  The bound test carries a small slack so rounding in the
// bound never prunes an exact tie; leaves are accepted on their exact
// left-to-right energy alone.
inline void enumerate_below(const LogReturns& h, double transaction_cost, double threshold,
                            const std::vector<std::array<double, 2>>& bound, std::size_t cap,
                            std::vector<BitStrategy>& out) {
  const int k = static_cast<int>(h.size());
  double scale = 1.0;
  for (Eigen::Index m = 0; m < h.size(); ++m) scale += std::abs(h[m]) + transaction_cost;
  const double slack = 1e-12 * scale;

  BitStrategy bits(static_cast<std::size_t>(k), 0);
  std::vector<double> cost(static_cast<std::size_t>(k) + 1, 0.0);
  std::vector<int> next_child(static_cast<std::size_t>(k) + 1, 0);
  int m = 0;
  while (m >= 0) {
    if (m == k) {
      if (cost[static_cast<std::size_t>(m)] <= threshold) {
        out.push_back(bits);
        if (out.size() > cap) throw EnumerationCapExceeded(cap);
      }
      --m;
      continue;
    }
    const int t = next_child[static_cast<std::size_t>(m)];
    if (t > 1) {
      --m;
      continue;
    }
    next_child[static_cast<std::size_t>(m)] = t + 1;
    const unsigned prev = m == 0 ? 0u : bits[static_cast<std::size_t>(m - 1)];
    const double c =
        cost[static_cast<std::size_t>(m)] +
        step_cost(h[m], transaction_cost, prev, static_cast<unsigned>(t));
    if (c + bound[static_cast<std::size_t>(m) + 1][static_cast<unsigned>(t)] <=
        threshold + slack) {
      bits[static_cast<std::size_t>(m)] = static_cast<std::uint8_t>(t);
      cost[static_cast<std::size_t>(m) + 1] = c;
      ++m;
      next_child[static_cast<std::size_t>(m)] = 0;
    }
  }
}

inline BitStrategy decode_bits(std::uint32_t index, int k) {
  BitStrategy bits(static_cast<std::size_t>(k));
  for (int m = 0; m < k; ++m) {
    bits[static_cast<std::size_t>(m)] = static_cast<std::uint8_t>((index >> (k - 1 - m)) & 1u);
  }
  return bits;
}

}  // namespace detail_ising

// Energy of one buy/hold bit string over the return series.
inline double energy(const BitStrategy& strategy, const LogReturns& h, double transaction_cost) {
  detail_ising::check_cost(transaction_cost);
  detail::require(static_cast<Eigen::Index>(strategy.size()) == h.size(),
                  "energy: strategy length must match the return series");
  double total = 0.0;
  unsigned prev = 0;
  for (Eigen::Index m = 0; m < h.size(); ++m) {
    const unsigned cur = strategy[static_cast<std::size_t>(m)] ? 1u : 0u;
    total += detail_ising::step_cost(h[m], transaction_cost, prev, cur);
    prev = cur;
  }
  return total;
}

// One tick's transfer matrix: entry (s, t) = exp(beta * (h*t - cost*(s^t))).
inline Eigen::Matrix2d transfer_matrix(double log_return, double transaction_cost, double beta) {
  Eigen::Matrix2d m;
  for (unsigned s = 0; s < 2; ++s) {
    for (unsigned t = 0; t < 2; ++t) {
      m(s, t) = std::exp(-beta * detail_ising::step_cost(log_return, transaction_cost, s, t));
    }
  }
  return m;
}

// Entrywise logarithm of the transfer matrix; the overflow-safe form used
// by the log-domain recursions below.
inline Eigen::Matrix2d log_transfer_matrix(double log_return, double transaction_cost,
                                           double beta) {
  Eigen::Matrix2d m;
  for (unsigned s = 0; s < 2; ++s) {
    for (unsigned t = 0; t < 2; ++t) {
      m(s, t) = -beta * detail_ising::step_cost(log_return, transaction_cost, s, t);
    }
  }
  return m;
}

// ln of the partition sum over all 2^k strategies, accumulated in the log
// domain so large beta never overflows.
inline double log_partition(const LogReturns& h, const MarketParams& params) {
  const double cost = params.transaction_cost();
  const double beta = params.beta();
  std::array<double, 2> la = {0.0, -detail_ising::kInf};  // start in cash
  for (Eigen::Index m = 0; m < h.size(); ++m) {
    std::array<double, 2> next{};
    for (unsigned t = 0; t < 2; ++t) {
      const double w0 = la[0] - beta * detail_ising::step_cost(h[m], cost, 0, t);
      const double w1 = la[1] - beta * detail_ising::step_cost(h[m], cost, 1, t);
      next[t] = detail_ising::log_add(w0, w1);
    }
    la = next;
  }
  return detail_ising::log_add(la[0], la[1]);
}

struct Thermodynamics {
  double log_partition;
  double free_energy;          // -log_partition / beta
  double mean_energy;          // Boltzmann average of the energy
  Eigen::VectorXd occupations; // probability of holding over each tick
};

// Forward/backward pass over the log-domain transfer matrices.
inline Thermodynamics thermodynamics(const LogReturns& h, const MarketParams& params) {
  const double cost = params.transaction_cost();
  const double beta = params.beta();
  const Eigen::Index k = h.size();
  const auto lw = [&](Eigen::Index m, unsigned s, unsigned t) {
    return -beta * detail_ising::step_cost(h[m], cost, s, t);
  };

  std::vector<std::array<double, 2>> la(static_cast<std::size_t>(k) + 1);
  la[0] = {0.0, -detail_ising::kInf};
  for (Eigen::Index m = 1; m <= k; ++m) {
    for (unsigned t = 0; t < 2; ++t) {
      la[static_cast<std::size_t>(m)][t] =
          detail_ising::log_add(la[m - 1][0] + lw(m - 1, 0, t), la[m - 1][1] + lw(m - 1, 1, t));
    }
  }
  const double ln_z = detail_ising::log_add(la[static_cast<std::size_t>(k)][0],
                                            la[static_cast<std::size_t>(k)][1]);

  std::vector<std::array<double, 2>> lb(static_cast<std::size_t>(k) + 1);
  lb[static_cast<std::size_t>(k)] = {0.0, 0.0};
  for (Eigen::Index m = k - 1; m >= 0; --m) {
    for (unsigned s = 0; s < 2; ++s) {
      lb[static_cast<std::size_t>(m)][s] =
          detail_ising::log_add(lw(m, s, 0) + lb[m + 1][0], lw(m, s, 1) + lb[m + 1][1]);
    }
  }

  Eigen::VectorXd occupations(k);
  for (Eigen::Index m = 1; m <= k; ++m) {
    const double p =
        std::exp(la[static_cast<std::size_t>(m)][1] + lb[static_cast<std::size_t>(m)][1] - ln_z);
    occupations[m - 1] = std::min(1.0, std::max(0.0, p));
  }

  double mean = 0.0;
  for (Eigen::Index m = 1; m <= k; ++m) {
    for (unsigned s = 0; s < 2; ++s) {
      for (unsigned t = 0; t < 2; ++t) {
        const double lq = la[static_cast<std::size_t>(m - 1)][s] + lw(m - 1, s, t) +
                          lb[static_cast<std::size_t>(m)][t] - ln_z;
        mean += std::exp(lq) * detail_ising::step_cost(h[m - 1], cost, s, t);
      }
    }
  }
  return Thermodynamics{ln_z, -ln_z / beta, mean, std::move(occupations)};
}

struct GroundState {
  double energy;
  BitStrategy strategy;
};

// Exact minimum-energy strategy by tropical dynamic programming; ties are
// broken toward cash (bit 0), right to left during backtracking.
inline GroundState ground_state(const LogReturns& h, double transaction_cost) {
  detail_ising::check_cost(transaction_cost);
  const Eigen::Index k = h.size();
  const auto d = detail_ising::forward_min_table(h, transaction_cost);

  unsigned cur = d[static_cast<std::size_t>(k)][0] <= d[static_cast<std::size_t>(k)][1] ? 0u : 1u;
  const double best = d[static_cast<std::size_t>(k)][cur];
  BitStrategy bits(static_cast<std::size_t>(k));
  for (Eigen::Index m = k; m >= 1; --m) {
    bits[static_cast<std::size_t>(m - 1)] = static_cast<std::uint8_t>(cur);
    if (m == 1) break;  // n_0 = 0 is fixed
    const double via0 = d[m - 1][0] + detail_ising::step_cost(h[m - 1], transaction_cost, 0, cur);
    const double via1 = d[m - 1][1] + detail_ising::step_cost(h[m - 1], transaction_cost, 1, cur);
    cur = via0 <= via1 ? 0u : 1u;
  }
  return GroundState{best, std::move(bits)};
}

struct GroundReport {
  double energy;  // global minimum
  std::vector<BitStrategy> ground_states;           // energy <= minimum + eps
  std::vector<BitStrategy> potential_ground_states; // see potential_ground_states()
  int coherence_depth;           // strategies agree on the first k - depth bits
  std::vector<int> viable_endpoints;  // endpoint bits a one-step future can favor
};

inline GroundReport potential_ground_states(const LogReturns& h, double transaction_cost,
                                            double eps,
                                            std::size_t cap = kDefaultEnumerationCap) {
  detail_ising::check_cost(transaction_cost);
  detail::require(std::isfinite(eps) && eps >= 0.0, "eps must be finite and >= 0");
  const Eigen::Index k = h.size();

  const auto d = detail_ising::forward_min_table(h, transaction_cost);
  const double v0 = d[static_cast<std::size_t>(k)][0];
  const double v1 = d[static_cast<std::size_t>(k)][1];
  const double minimum = std::min(v0, v1);

  const auto b0 = detail_ising::backward_min_table(h, transaction_cost, 0);
  const auto b1 = detail_ising::backward_min_table(h, transaction_cost, 1);

  GroundReport report;
  report.energy = minimum;

  // Strategies attaining the global minimum within eps.
  std::vector<std::array<double, 2>> both(b0.size());
  for (std::size_t m = 0; m < b0.size(); ++m) {
    both[m] = {std::min(b0[m][0], b1[m][0]), std::min(b0[m][1], b1[m][1])};
  }
  detail_ising::enumerate_below(h, transaction_cost, minimum + eps, both, cap,
                                report.ground_states);

  // A strategy is a potential ground state when (i) it is optimal within
  // eps among strategies sharing its endpoint and (ii) its endpoint's best
  // energy is within the one-switch penalty of the other endpoint's, so an
  // extreme next-tick return can make that endpoint the global winner.
  const double v[2] = {v0, v1};
  for (unsigned e = 0; e < 2; ++e) {
    if (v[e] <= v[1 - e] + transaction_cost + eps) {
      report.viable_endpoints.push_back(static_cast<int>(e));
      detail_ising::enumerate_below(h, transaction_cost, v[e] + eps, e == 0 ? b0 : b1, cap,
                                    report.potential_ground_states);
    }
  }
  std::sort(report.ground_states.begin(), report.ground_states.end());
  std::sort(report.potential_ground_states.begin(), report.potential_ground_states.end());

  // Coherence depth: length of the undetermined tail across the report.
  int lcp = static_cast<int>(k);
  const auto& pool = report.potential_ground_states;
  for (std::size_t i = 1; i < pool.size(); ++i) {
    int agree = 0;
    while (agree < lcp && pool[0][static_cast<std::size_t>(agree)] ==
                              pool[i][static_cast<std::size_t>(agree)]) {
      ++agree;
    }
    lcp = std::min(lcp, agree);
  }
  report.coherence_depth = pool.size() <= 1 ? 0 : static_cast<int>(k) - lcp;
  return report;
}

struct BruteForceGround {
  double energy;
  std::vector<BitStrategy> strategies;  // exact ties, lexicographic order
};

// Independent exhaustive minimizer for series of at most 20 ticks.
inline BruteForceGround brute_force_ground(const LogReturns& h, double transaction_cost) {
  detail_ising::check_cost(transaction_cost);
  const int k = static_cast<int>(h.size());
  detail::require(k <= kMaxBruteForceBits, "brute force: at most 20 ticks");
  BruteForceGround out{detail_ising::kInf, {}};
  const std::uint32_t count = std::uint32_t{1} << k;
  for (std::uint32_t idx = 0; idx < count; ++idx) {
    const BitStrategy bits = detail_ising::decode_bits(idx, k);
    const double e = energy(bits, h, transaction_cost);
    if (e < out.energy) {
      out.energy = e;
      out.strategies.clear();
      out.strategies.push_back(bits);
    } else if (e == out.energy) {
      out.strategies.push_back(bits);
    }
  }
  return out;
}

// Oracle for the potential-ground-state notion: does some single future
// tick, with a return large enough to dominate everything seen so far,
// extend `strategy` into a ground state?  Checked by brute force over all
// extended strategies; series of at most 20 ticks.
inline bool verify_potential_extension(const BitStrategy& strategy, const LogReturns& h,
                                       double transaction_cost) {
  detail_ising::check_cost(transaction_cost);
  const int k = static_cast<int>(h.size());
  detail::require(k <= kMaxBruteForceBits, "potential extension: at most 20 ticks");
  detail::require(static_cast<int>(strategy.size()) == k,
                  "potential extension: strategy length must match the return series");

  const double swing = transaction_cost + h.values().cwiseAbs().maxCoeff() + 1.0;
  for (const double future : {-swing, 0.0, swing}) {
    Eigen::VectorXd extended(k + 1);
    extended.head(k) = h.values();
    extended[k] = future;
    const LogReturns h_ext(extended);

    double best = detail_ising::kInf;
    const std::uint32_t count = std::uint32_t{1} << (k + 1);
    for (std::uint32_t idx = 0; idx < count; ++idx) {
      best = std::min(best, energy(detail_ising::decode_bits(idx, k + 1), h_ext,
                                   transaction_cost));
    }
    for (unsigned last = 0; last < 2; ++last) {
      BitStrategy candidate = strategy;
      candidate.push_back(static_cast<std::uint8_t>(last));
      if (energy(candidate, h_ext, transaction_cost) <= best + kExactTol) return true;
    }
  }
  return false;
}

// Normalized amplitudes over all 2^k strategies; index bit order follows
// the strategy bits, first tick most significant.
class SuperpositionStrategy {
 public:
  SuperpositionStrategy(int ticks, ComplexVector amplitudes)
      : ticks_(ticks), amplitudes_(std::move(amplitudes)) {
    detail::require(ticks_ >= 1 && ticks_ <= kMaxSuperpositionBits,
                    "superposition: ticks must lie in [1, 24]");
    detail::require(amplitudes_.size() == (Eigen::Index{1} << ticks_),
                    "superposition: need exactly 2^ticks amplitudes");
    detail::require(amplitudes_.allFinite(), "superposition: amplitudes must be finite");
    detail::require(std::abs(amplitudes_.squaredNorm() - 1.0) <= kStateTol,
                    "superposition: squared norm must be 1 within 1e-9");
  }

  int ticks() const { return ticks_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }

 private:
  int ticks_;
  ComplexVector amplitudes_;
};

struct SuperpositionEnergy {
  double expected_energy;           // weighted average over the support
  BitStrategy best_support_strategy;  // lowest-energy strategy with weight > 1e-12
};

inline SuperpositionEnergy superposition_energy(const SuperpositionStrategy& psi,
                                                const LogReturns& h, double transaction_cost) {
  detail_ising::check_cost(transaction_cost);
  detail::require(static_cast<Eigen::Index>(psi.ticks()) == h.size(),
                  "superposition energy: tick count must match the return series");
  const int k = psi.ticks();
  double expected = 0.0;
  double best_energy = detail_ising::kInf;
  BitStrategy best;
  const std::uint32_t count = std::uint32_t{1} << k;
  for (std::uint32_t idx = 0; idx < count; ++idx) {
    const double weight = std::norm(psi.amplitudes()[static_cast<Eigen::Index>(idx)]);
    if (weight == 0.0) continue;
    const BitStrategy bits = detail_ising::decode_bits(idx, k);
    const double e = energy(bits, h, transaction_cost);
    expected += weight * e;
    if (weight > kExactTol && e < best_energy) {
      best_energy = e;
      best = bits;
    }
  }
  detail::require(!best.empty(), "superposition energy: support is numerically empty");
  return SuperpositionEnergy{expected, std::move(best)};
}

inline std::string bits_to_string(const BitStrategy& bits) {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) s[i] = '1';
  }
  return s;
}

}  // namespace qstrat::ising
