#pragma once

// Both sides of the cosh/sinh-weighted Poisson summation pairs.
//
// A FunctionDescriptor is a real-analytic function of definite parity given
// by its values on the real axis and on the positive imaginary axis. The
// imaginary-axis values are always real numbers r(y):
//
//   even f:  f(iy) = r(y)
//   odd  f:  f(iy) = i r(y)
//
// With that convention every operator below works in real arithmetic. For
// odd f the transformed side  i sum (-1)^k f(ki)/(e^(bk) - 1)  becomes
// sum (-1)^(k+1) r(k)/(e^(bk) - 1), and the Abel constant c_o is the limit of
// sum (-1)^(k+1) r(k) e^(-kx).

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "poisson/error.hpp"
#include "poisson/numerics.hpp"

namespace poisson {

enum class Parity { even, odd };

inline const char* to_string(Parity p) {
  return p == Parity::even ? "even" : "odd";
}

/// Advisory bound |f(z)| <= C (1+|z|)^N e^(b |Re z|).
struct GrowthBound {
  double N = 0.0;
  double b = 0.0;
};

struct FunctionDescriptor {
  Parity parity = Parity::even;
  std::function<double(double)> real_eval;
  std::function<double(double)> imag_eval;
  std::optional<double> value_at_zero;
  std::optional<double> deriv_at_zero;
  std::optional<double> abel_constant_closed_form;
  std::optional<GrowthBound> growth;
  std::string label;

  static FunctionDescriptor even(std::string label,
                                 std::function<double(double)> real_eval,
                                 std::function<double(double)> imag_eval,
                                 double value_at_zero) {
    FunctionDescriptor d;
    d.parity = Parity::even;
    d.label = std::move(label);
    d.real_eval = std::move(real_eval);
    d.imag_eval = std::move(imag_eval);
    d.value_at_zero = value_at_zero;
    return d;
  }

  static FunctionDescriptor odd(std::string label,
                                std::function<double(double)> real_eval,
                                std::function<double(double)> imag_eval,
                                double deriv_at_zero) {
    FunctionDescriptor d;
    d.parity = Parity::odd;
    d.label = std::move(label);
    d.real_eval = std::move(real_eval);
    d.imag_eval = std::move(imag_eval);
    d.deriv_at_zero = deriv_at_zero;
    return d;
  }

  FunctionDescriptor&& with_abel_constant(double c) && {
    abel_constant_closed_form = c;
    return std::move(*this);
  }

  FunctionDescriptor&& with_growth(double N, double b) && {
    growth = GrowthBound{N, b};
    return std::move(*this);
  }

  void validate() const {
    if (!real_eval || !imag_eval) {
      throw domain_error("FunctionDescriptor '" + label +
                         "': evaluators missing");
    }
    if (parity == Parity::even && !value_at_zero) {
      throw domain_error("FunctionDescriptor '" + label +
                         "': even function needs f(0)");
    }
    if (parity == Parity::odd && !deriv_at_zero) {
      throw domain_error("FunctionDescriptor '" + label +
                         "': odd function needs f'(0)");
    }
  }
};

/// a > 0 and b = 2 pi / a; b is always derived.
class TransformParams {
 public:
  explicit TransformParams(double a) : a_(a), b_(2.0 * std::numbers::pi / a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw domain_error("TransformParams: a must be positive");
    }
  }
  [[nodiscard]] double a() const noexcept { return a_; }
  [[nodiscard]] double b() const noexcept { return b_; }

 private:
  double a_;
  double b_;
};

struct TransformReport {
  SeriesResult lhs;
  SeriesResult rhs;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  std::vector<std::string> warnings;
};

struct AbelEstimate {
  double value = 0.0;
  double error_estimate = 0.0;  // last two Neville extrapolants
  bool closed_form = false;
  std::vector<std::string> warnings;
};

namespace detail {

inline void require_parity(const FunctionDescriptor& d, Parity p,
                           const char* op) {
  d.validate();
  if (d.parity != p) {
    throw parity_error(std::string(op) + " needs an " + to_string(p) +
                       " function; '" + d.label + "' is " +
                       to_string(d.parity));
  }
}

inline double decay_rate_for(const FunctionDescriptor& d) {
  const double b = d.growth ? d.growth->b : 0.0;
  const double rate = std::numbers::pi - b;
  if (!(rate > 0.0)) {
    throw domain_error("'" + d.label +
                       "': growth exponent leaves no exponential decay");
  }
  return rate;
}

inline void growth_warning(const FunctionDescriptor& d,
                           std::vector<std::string>& warnings) {
  if (d.growth && !(d.growth->b < std::numbers::pi)) {
    std::ostringstream os;
    os << "growth exponent b=" << d.growth->b << " of '" << d.label
       << "' is not below pi; the transform hypotheses do not hold";
    warnings.push_back(os.str());
  }
}

// t / sinh(pi t), continuous at 0.
inline double t_over_sinh_pi(double t) {
  if (t == 0.0) return 1.0 / std::numbers::pi;
  return t / std::sinh(std::numbers::pi * t);
}

// 1/cosh(pi t) without overflow.
inline double sech_pi(double t) {
  const double x = std::numbers::pi * std::abs(t);
  const double e = std::exp(-x);
  return 2.0 * e / (1.0 + e * e);
}

inline double scaled(SeriesResult& r, double factor, double offset) {
  r.value = factor * (offset + r.value);
  r.tail_estimate *= std::abs(factor);
  return r.value;
}

inline void fill_residuals(TransformReport& rep) {
  rep.abs_residual = std::abs(rep.lhs.value - rep.rhs.value);
  const double scale = std::max(
      {std::abs(rep.lhs.value), std::abs(rep.rhs.value), 1.0});
  rep.rel_residual = rep.abs_residual / scale;
  if (!rep.lhs.converged) {
    rep.warnings.push_back("lhs series stopped at max_terms, tail ~ " +
                           std::to_string(rep.lhs.tail_estimate));
  }
  if (!rep.rhs.converged) {
    rep.warnings.push_back("rhs series stopped at max_terms, tail ~ " +
                           std::to_string(rep.rhs.tail_estimate));
  }
}

}  // namespace detail

inline constexpr double kAbelLadderStart = 0.8;
inline constexpr int kAbelLadderDepth = 8;

/// c_e (even) or c_o (odd): the closed form when the descriptor carries one,
/// otherwise Richardson extrapolation to x = 0 of
///   even: S(x) = sum_{k>=0} (-1)^k r(k+1/2) e^(-(k+1/2)x)
///   odd:  S(x) = sum_{k>=1} (-1)^(k+1) r(k) e^(-kx)
/// on the ladder x_j = 0.8 * 2^-j, j = 0..7. Each S(x) is Euler-transformed,
/// which keeps the small-x sums free of cancellation.
inline AbelEstimate abel_constant_estimate(const FunctionDescriptor& d) {
  d.validate();
  AbelEstimate out;
  if (d.abel_constant_closed_form) {
    out.value = *d.abel_constant_closed_form;
    out.closed_form = true;
    return out;
  }
  SumOptions opts;
  opts.rel_tol = 1e-15;
  opts.abs_tol = 1e-15;
  std::vector<ExtrapolationSample> samples;
  double x = kAbelLadderStart;
  for (int j = 0; j < kAbelLadderDepth; ++j, x *= 0.5) {
    SeriesResult s;
    if (d.parity == Parity::even) {
      s = sum_alternating_euler(
          [&d, x](long k) {
            const double y = double(k) + 0.5;
            return d.imag_eval(y) * std::exp(-y * x);
          },
          opts, 0);
    } else {
      s = sum_alternating_euler(
          [&d, x](long k) {
            const double y = double(k);
            return d.imag_eval(y) * std::exp(-y * x);
          },
          opts, 1);
    }
    if (j == 0 && !std::isfinite(s.tail_estimate)) {
      throw convergence_error("abel_constant: ladder sum for '" + d.label +
                              "' does not converge at x = " +
                              std::to_string(x));
    }
    if (!std::isfinite(s.tail_estimate)) {
      out.warnings.push_back("abel_constant: ladder sum at x=" +
                             std::to_string(x) + " did not settle");
    }
    samples.push_back({x, s.value});
  }
  const auto diag = neville_diagonal(samples);
  out.value = diag.back();
  out.error_estimate = std::abs(diag.back() - diag[diag.size() - 2]);
  if (out.error_estimate > 1e-8) {
    out.warnings.push_back("abel_constant: extrapolation of '" + d.label +
                           "' uncertain by " +
                           std::to_string(out.error_estimate));
  }
  return out;
}

inline double abel_constant(const FunctionDescriptor& d) {
  return abel_constant_estimate(d).value;
}

/// int_0^inf f(t) cos(t gamma) / cosh(pi t) dt for even f.
inline QuadratureResult lemma1_integral(const FunctionDescriptor& d,
                                        double gamma,
                                        const SumOptions& opts = {}) {
  detail::require_parity(d, Parity::even, "lemma1_integral");
  if (!(gamma >= 0.0)) throw domain_error("lemma1_integral: gamma must be >= 0");
  return integrate_decaying(
      [&d, gamma](double t) {
        return d.real_eval(t) * std::cos(t * gamma) * detail::sech_pi(t);
      },
      detail::decay_rate_for(d), opts);
}

/// sum_{k>=0} (-1)^k f(i(k+1/2)) e^(-(k+1/2) gamma) for even f.
inline SeriesResult lemma1_series(const FunctionDescriptor& d, double gamma,
                                  const SumOptions& opts = {}) {
  detail::require_parity(d, Parity::even, "lemma1_series");
  if (!(gamma > 0.0)) throw domain_error("lemma1_series: gamma must be > 0");
  return sum_alternating(
      [&d, gamma](long k) {
        const double y = double(k) + 0.5;
        return d.imag_eval(y) * std::exp(-y * gamma);
      },
      opts, 0);
}

/// int_0^inf g(t) t cos(t gamma) / sinh(pi t) dt for even g.
inline QuadratureResult lemma2_integral(const FunctionDescriptor& g,
                                        double gamma,
                                        const SumOptions& opts = {}) {
  detail::require_parity(g, Parity::even, "lemma2_integral");
  if (!(gamma >= 0.0)) throw domain_error("lemma2_integral: gamma must be >= 0");
  return integrate_decaying(
      [&g, gamma](double t) {
        return g.real_eval(t) * detail::t_over_sinh_pi(t) * std::cos(t * gamma);
      },
      detail::decay_rate_for(g), opts);
}

/// sum_{k>=1} (-1)^(k-1) k g(ik) e^(-k gamma) for even g.
inline SeriesResult lemma2_series(const FunctionDescriptor& g, double gamma,
                                  const SumOptions& opts = {}) {
  detail::require_parity(g, Parity::even, "lemma2_series");
  if (!(gamma > 0.0)) throw domain_error("lemma2_series: gamma must be > 0");
  return sum_alternating(
      [&g, gamma](long k) {
        const double y = double(k);
        return y * g.imag_eval(y) * std::exp(-y * gamma);
      },
      opts, 1);
}

/// Even f:
///   sqrt(a) (f(0)/2 + sum_{k>=1} f(ka)/cosh(pi k a))
///     = sqrt(2b/pi) (c_e/2 + sum_{k>=0} (-1)^k r(k+1/2)/(e^(b(k+1/2)) - 1))
inline TransformReport theorem1_sides(const FunctionDescriptor& d, double a,
                                      const SumOptions& opts = {}) {
  detail::require_parity(d, Parity::even, "theorem1_sides");
  const TransformParams p(a);
  TransformReport rep;
  detail::growth_warning(d, rep.warnings);

  rep.lhs = sum_series(
      [&d, &p](long k) {
        const double t = double(k) * p.a();
        return d.real_eval(t) * detail::sech_pi(t);
      },
      opts, 1);
  detail::scaled(rep.lhs, std::sqrt(p.a()), 0.5 * *d.value_at_zero);

  const auto abel = abel_constant_estimate(d);
  rep.warnings.insert(rep.warnings.end(), abel.warnings.begin(),
                      abel.warnings.end());
  rep.rhs = sum_series(
      [&d, &p](long k) {
        const double y = double(k) + 0.5;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        return sign * d.imag_eval(y) / std::expm1(p.b() * y);
      },
      opts, 0);
  detail::scaled(rep.rhs, std::sqrt(2.0 * p.b() / std::numbers::pi),
                 0.5 * abel.value);
  detail::fill_residuals(rep);
  return rep;
}

/// Odd f:
///   sqrt(a) (f'(0)/(2 pi) + sum_{k>=1} f(ka)/sinh(pi k a))
///     = sqrt(2b/pi) (c_o/2 + sum_{k>=1} (-1)^(k+1) r(k)/(e^(bk) - 1))
inline TransformReport theorem2_sides(const FunctionDescriptor& d, double a,
                                      const SumOptions& opts = {}) {
  detail::require_parity(d, Parity::odd, "theorem2_sides");
  const TransformParams p(a);
  TransformReport rep;
  detail::growth_warning(d, rep.warnings);

  rep.lhs = sum_series(
      [&d, &p](long k) {
        const double t = double(k) * p.a();
        const double x = std::numbers::pi * t;
        // 1/sinh(x) = 2 e^-x / (1 - e^-2x)
        return d.real_eval(t) * 2.0 * std::exp(-x) / -std::expm1(-2.0 * x);
      },
      opts, 1);
  detail::scaled(rep.lhs, std::sqrt(p.a()),
                 *d.deriv_at_zero / (2.0 * std::numbers::pi));

  const auto abel = abel_constant_estimate(d);
  rep.warnings.insert(rep.warnings.end(), abel.warnings.begin(),
                      abel.warnings.end());
  rep.rhs = sum_series(
      [&d, &p](long k) {
        const double y = double(k);
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        return sign * d.imag_eval(y) / std::expm1(p.b() * y);
      },
      opts, 1);
  detail::scaled(rep.rhs, std::sqrt(2.0 * p.b() / std::numbers::pi),
                 0.5 * abel.value);
  detail::fill_residuals(rep);
  return rep;
}

}  // namespace poisson
