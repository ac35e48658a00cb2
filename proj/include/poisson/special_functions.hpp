#pragma once

// Number tables and special functions used by the identity catalog.
//
// Exact: Bernoulli numbers, the Q-numbers of 1/(e^x+1), Abel values of
// sum (-1)^(k+1) k^m, Eulerian numbers.
// Floating point: zeta at integers, Catalan's constant, Li_3 on [-1, 0],
// Li_{-n} (all real x != 1), Lerch Phi (integral representation), AGM and
// complete elliptic integrals, and the inverse of K'/K through theta series.
//
// Tables are built on first use inside function-local statics, which the
// language initialises exactly once even under concurrent first calls.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "poisson/error.hpp"
#include "poisson/numerics.hpp"
#include "poisson/rational.hpp"

namespace poisson {

inline constexpr int kBernoulliMax = 34;
inline constexpr int kEulerianMax = 20;

namespace detail {

inline const std::vector<Rational>& bernoulli_table() {
  static const std::vector<Rational> table = [] {
    // row[j] = C(n+1, j), rebuilt row by row.
    std::vector<Rational> b;
    b.reserve(kBernoulliMax + 1);
    b.emplace_back(1);
    std::vector<int128> row = {1, 1};  // C(1, .)
    for (int n = 1; n <= kBernoulliMax; ++n) {
      std::vector<int128> next(row.size() + 1, 1);
      for (std::size_t j = 1; j < row.size(); ++j) {
        next[j] = checked_add(row[j - 1], row[j]);
      }
      row = std::move(next);  // now C(n+1, .)
      Rational acc;
      for (int j = 0; j < n; ++j) {
        acc += Rational(row[std::size_t(j)], 1) * b[std::size_t(j)];
      }
      b.push_back(-acc / Rational(n + 1));
    }
    return b;
  }();
  return table;
}

inline const std::vector<std::vector<std::int64_t>>& eulerian_table() {
  static const std::vector<std::vector<std::int64_t>> table = [] {
    std::vector<std::vector<std::int64_t>> rows(kEulerianMax + 1);
    rows[1] = {1};
    for (int n = 2; n <= kEulerianMax; ++n) {
      const auto& prev = rows[std::size_t(n - 1)];
      auto& row = rows[std::size_t(n)];
      row.assign(std::size_t(n), 0);
      for (int k = 0; k < n; ++k) {
        std::int64_t value = 0;
        if (k < n - 1) {
          std::int64_t a = 0;
          if (__builtin_mul_overflow(std::int64_t(k + 1), prev[std::size_t(k)],
                                     &a)) {
            throw overflow_error("eulerian: int64 overflow");
          }
          value = a;
        }
        if (k >= 1) {
          std::int64_t b = 0;
          if (__builtin_mul_overflow(std::int64_t(n - k),
                                     prev[std::size_t(k - 1)], &b) ||
              __builtin_add_overflow(value, b, &value)) {
            throw overflow_error("eulerian: int64 overflow");
          }
        }
        row[std::size_t(k)] = value;
      }
    }
    return rows;
  }();
  return table;
}

inline Rational pow2(int e) {
  if (e < 0 || e > 120) throw overflow_error("pow2: exponent out of range");
  return Rational(int128{1} << e, 1);
}

}  // namespace detail

/// B_n from sum_{j<=n} C(n+1, j) B_j = 0, B_0 = 1 (so B_1 = -1/2).
inline Rational bernoulli(int n) {
  if (n < 0) throw domain_error("bernoulli: index must be >= 0");
  if (n > kBernoulliMax) {
    throw overflow_error("bernoulli: index " + std::to_string(n) +
                         " beyond cap " + std::to_string(kBernoulliMax));
  }
  return detail::bernoulli_table()[std::size_t(n)];
}

/// Q_n with 1/(e^x + 1) = sum Q_n x^n / n!.
inline Rational q_number(int n) {
  if (n < 0) throw domain_error("q_number: index must be >= 0");
  if (n == 0) return {1, 2};
  if (n + 1 > kBernoulliMax) {
    throw overflow_error("q_number: index beyond Bernoulli cap");
  }
  return bernoulli(n + 1) * (Rational(1) - detail::pow2(n + 1)) /
         Rational(n + 1);
}

/// Abel value of sum_{k>=1} (-1)^(k+1) k^m, i.e. eta(-m).
inline Rational eta_negative(int m) {
  if (m < 0) throw domain_error("eta_negative: index must be >= 0");
  if (m == 0) return {1, 2};
  if (m + 1 > kBernoulliMax) {
    throw overflow_error("eta_negative: index beyond Bernoulli cap");
  }
  return (detail::pow2(m + 1) - Rational(1)) * bernoulli(m + 1) /
         Rational(m + 1);
}

/// Eulerian number A(n, k), 0 <= k < n.
inline std::int64_t eulerian(int n, int k) {
  if (n < 1 || k < 0 || k >= n) {
    throw domain_error("eulerian: need n >= 1 and 0 <= k < n");
  }
  if (n > kEulerianMax) {
    throw overflow_error("eulerian: row " + std::to_string(n) +
                         " exceeds int64 range");
  }
  return detail::eulerian_table()[std::size_t(n)][std::size_t(k)];
}

/// Li_{-n}(x) = sum_k A(n,k) x^(k+1) / (1-x)^(n+1); for |x| < 1 this is
/// sum_{k>=1} k^n x^k, elsewhere its analytic continuation.
inline double li_negative_order(int n, double x) {
  if (n < 1) throw domain_error("li_negative_order: order must be >= 1");
  if (!std::isfinite(x) || std::abs(1.0 - x) < 1e-8) {
    throw domain_error("li_negative_order: x too close to the pole at 1");
  }
  if (n > kEulerianMax) {
    throw overflow_error("li_negative_order: order exceeds Eulerian table");
  }
  // Extended precision absorbs the cancellation of the alternating
  // coefficients at x < 0.
  const long double lx = x;
  long double poly = 0.0L;
  for (int k = n - 1; k >= 0; --k) {
    poly = poly * lx + static_cast<long double>(eulerian(n, k));
  }
  poly *= lx;
  const long double denom = std::pow(1.0L - lx, static_cast<long double>(n + 1));
  return static_cast<double>(poly / denom);
}

namespace detail {

inline SumOptions tight_options() {
  SumOptions o;
  o.rel_tol = 1e-16;
  o.abs_tol = 1e-300;
  return o;
}

}  // namespace detail

/// zeta(s) for integer s >= 2, from eta(s) summed by the Euler transform.
inline double zeta_int(int s) {
  if (s < 2) throw domain_error("zeta_int: s must be >= 2");
  const auto eta = sum_alternating_euler(
      [s](long k) { return std::pow(double(k + 1), -double(s)); },
      detail::tight_options(), 0);
  return eta.value / (1.0 - std::pow(2.0, 1.0 - double(s)));
}

/// Catalan's constant sum (-1)^k/(2k+1)^2, Euler-transformed.
inline double catalan() {
  static const double value =
      sum_alternating_euler(
          [](long k) {
            const double d = 2.0 * double(k) + 1.0;
            return 1.0 / (d * d);
          },
          detail::tight_options(), 0)
          .value;
  return value;
}

/// Li_3(x) = sum x^k / k^3 for -1 <= x <= 0.
inline double li3(double x) {
  if (!(x >= -1.0 && x <= 0.0)) {
    throw domain_error("li3: x must lie in [-1, 0]");
  }
  if (x == 0.0) return 0.0;
  const double ax = -x;
  const auto r = sum_alternating_euler(
      [ax](long k) {
        const double kk = double(k);
        return std::pow(ax, kk) / (kk * kk * kk);
      },
      detail::tight_options(), 1);
  return -r.value;
}

/// Lerch transcendent Phi(z, s, a) = sum_{k>=0} z^k/(a+k)^s and its
/// continuation to z < 1, from
///   Phi = 1/Gamma(s) int_0^inf t^(s-1) e^(-a t) / (1 - z e^(-t)) dt.
inline double lerch_phi(double z, int s, double a) {
  if (!(z < 1.0) || !std::isfinite(z)) {
    throw domain_error("lerch_phi: z must be < 1");
  }
  if (s < 1) throw domain_error("lerch_phi: s must be >= 1");
  if (!(a > 0.0)) throw domain_error("lerch_phi: a must be > 0");
  if (z == 0.0) return std::pow(a, -double(s));
  SumOptions opts;
  opts.rel_tol = 1e-14;
  opts.abs_tol = 1e-16;
  const double power = double(s - 1);
  const auto r = integrate_decaying(
      [z, a, power](double t) {
        const double num = (power == 0.0 ? 1.0 : std::pow(t, power)) *
                           std::exp(-a * t);
        return num / (1.0 - z * std::exp(-t));
      },
      a, opts);
  return r.value / std::tgamma(double(s));
}

/// Arithmetic-geometric mean.
inline double agm(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    throw domain_error("agm: arguments must be positive and finite");
  }
  double a = x;
  double b = y;
  for (int i = 0; i < 64 && std::abs(a - b) >= 1e-15 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return 0.5 * (a + b);
}

struct EllipticPair {
  double modulus_k = 0.0;
  double complementary_k = 0.0;
  double K = 0.0;
  double E = 0.0;
  double K_prime = 0.0;
  double nome_q = 0.0;
};

namespace detail {

// K and E by the AGM with difference terms c_{n+1} = c_n^2 / (4 a_{n+1}),
// E = K (1 - sum 2^(n-1) c_n^2).
inline EllipticPair elliptic_from_moduli(double k, double kp) {
  double a = 1.0;
  double b = kp;
  double c = k;
  double weight = 0.5;
  double sum = weight * c * c;
  for (int i = 0; i < 64 && c > 1e-17 * a; ++i) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    c = c * c / (4.0 * an);
    a = an;
    b = bn;
    weight *= 2.0;
    sum += weight * c * c;
  }
  EllipticPair p;
  p.modulus_k = k;
  p.complementary_k = kp;
  p.K = std::numbers::pi / (2.0 * 0.5 * (a + b));
  p.E = p.K * (1.0 - sum);
  p.K_prime = std::numbers::pi / (2.0 * agm(1.0, k));
  p.nome_q = std::exp(-std::numbers::pi * p.K_prime / p.K);
  return p;
}

}  // namespace detail

/// Complete elliptic integrals at modulus k and K' at k' = sqrt(1 - k^2).
inline EllipticPair elliptic_from_modulus(double k) {
  if (!(k > 0.0 && k < 1.0)) {
    throw domain_error("elliptic_from_modulus: k must lie in (0, 1)");
  }
  return detail::elliptic_from_moduli(k, std::sqrt((1.0 - k) * (1.0 + k)));
}

/// Modulus whose period ratio K'/K equals `ratio`, through the nome
/// q = exp(-pi ratio): k = (theta2/theta3)^2 and k' = (theta4/theta3)^2.
/// Ratios below 1 are evaluated at 1/ratio and the moduli swapped, which
/// keeps q <= exp(-pi).
inline EllipticPair modulus_from_ratio(double ratio) {
  if (!(ratio >= 0.1 && ratio <= 10.0)) {
    throw domain_error("modulus_from_ratio: ratio must lie in [0.1, 10]");
  }
  const bool swapped = ratio < 1.0;
  const double a = swapped ? 1.0 / ratio : ratio;
  const double log_q = -std::numbers::pi * a;

  double theta2 = 0.0;
  for (int n = 0;; ++n) {
    const double e = (n + 0.5) * (n + 0.5);
    const double term = std::exp(e * log_q);
    theta2 += term;
    if (term < 1e-17) break;
  }
  theta2 *= 2.0;
  double theta3 = 1.0;
  double theta4 = 1.0;
  for (int n = 1;; ++n) {
    const double term = std::exp(double(n) * double(n) * log_q);
    theta3 += 2.0 * term;
    theta4 += (n % 2 == 0 ? 2.0 : -2.0) * term;
    if (term < 1e-17) break;
  }
  double k = (theta2 / theta3) * (theta2 / theta3);
  double kp = (theta4 / theta3) * (theta4 / theta3);
  if (swapped) std::swap(k, kp);
  return detail::elliptic_from_moduli(k, kp);
}

}  // namespace poisson
