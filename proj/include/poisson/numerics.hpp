#pragma once

// Series summation, quadrature and extrapolation primitives.
//
// Every infinite sum in the library goes through one of the three summation
// engines below and comes back as a SeriesResult carrying an estimate of the
// omitted tail; every improper integral goes through integrate_decaying.
//
//   sum_series             general terms, geometric envelope tail bound
//   sum_alternating        (-1)^k v_k, alternating-series tail bound
//   sum_alternating_euler  (-1)^k v_k through the Euler transform; sums
//                          slowly convergent and Abel-summable series
//
// All functions are pure and safe to call concurrently.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "poisson/error.hpp"

namespace poisson {

struct SumOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  std::size_t max_terms = 100000;
  std::size_t consecutive_small = 3;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
      throw domain_error("SumOptions: tolerances must be positive");
    }
    if (consecutive_small < 1 || max_terms < consecutive_small) {
      throw domain_error(
          "SumOptions: need max_terms >= consecutive_small >= 1");
    }
  }

  [[nodiscard]] double tolerance(double scale) const {
    return abs_tol + rel_tol * std::abs(scale);
  }
};

struct SeriesResult {
  double value = 0.0;
  double tail_estimate = 0.0;
  std::size_t terms_used = 0;
  bool converged = false;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Compensated accumulator built on the TwoSum error-free transformation.
/// The running compensation collects the exact rounding error of every
/// addition, so the result is the correctly rounded sum of the inputs up to
/// a second-order term.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double initial) : sum_(initial) {}

  void add(double x) noexcept {
    const double s = sum_ + x;
    const double bp = s - sum_;
    const double ap = s - bp;
    compensation_ += (sum_ - ap) + (x - bp);
    sum_ = s;
  }

  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }

  [[nodiscard]] double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

namespace detail {

inline void require_finite(double v, long index, const char* who) {
  if (!std::isfinite(v)) {
    throw convergence_error(std::string(who) + ": non-finite term at index " +
                            std::to_string(index));
  }
}

// Tracks the envelope of |term| over two trailing windows and derives a
// decay ratio from their maxima. Window maxima are used instead of
// consecutive ratios because trigonometric weights (sin^6(k pi/6), ...)
// vanish or oscillate with periods up to 6; a window of 12 spans both.
class EnvelopeTracker {
 public:
  static constexpr std::size_t kWindow = 12;
  static constexpr double kMaxRatio = 0.99;

  void push(double magnitude, long index) {
    history_[count_ % history_.size()] = {magnitude, index};
    ++count_;
  }

  [[nodiscard]] bool ready() const { return count_ >= 2 * kWindow; }

  struct Envelope {
    double recent_max = 0.0;
    long recent_index = 0;
    double older_max = 0.0;
    long older_index = 0;
  };

  [[nodiscard]] Envelope envelope() const {
    Envelope e;
    for (std::size_t i = 0; i < 2 * kWindow; ++i) {
      const auto& [m, idx] = history_[(count_ - 1 - i) % history_.size()];
      if (i < kWindow) {
        if (m >= e.recent_max) {
          e.recent_max = m;
          e.recent_index = idx;
        }
      } else if (m >= e.older_max) {
        e.older_max = m;
        e.older_index = idx;
      }
    }
    return e;
  }

  // Per-term decay ratio of the envelope; nullopt while undeterminable.
  [[nodiscard]] std::optional<double> ratio() const {
    if (!ready()) return std::nullopt;
    const auto e = envelope();
    if (e.recent_max == 0.0) return 0.0;
    if (e.older_max == 0.0) return std::nullopt;
    return std::pow(e.recent_max / e.older_max, 1.0 / double(kWindow));
  }

  // Geometric bound on the sum of |terms| beyond the current index.
  [[nodiscard]] double geometric_tail() const {
    const auto r = ratio();
    if (!r) return std::numeric_limits<double>::infinity();
    if (*r >= 1.0) return std::numeric_limits<double>::infinity();
    return envelope().recent_max * *r / (1.0 - *r);
  }

  // Tail estimate for terms decaying like k^-p, p estimated from the two
  // window maxima.
  [[nodiscard]] double power_law_tail() const {
    if (!ready()) return std::numeric_limits<double>::infinity();
    const auto e = envelope();
    if (e.recent_max == 0.0) return 0.0;
    if (e.older_max == 0.0 || e.recent_index <= 0 || e.older_index <= 0 ||
        e.recent_index == e.older_index) {
      return std::numeric_limits<double>::infinity();
    }
    const double p = std::log(e.older_max / e.recent_max) /
                     std::log(double(e.recent_index) / double(e.older_index));
    if (!(p > 1.0)) return std::numeric_limits<double>::infinity();
    return e.recent_max * double(e.recent_index) / (p - 1.0);
  }

  [[nodiscard]] double unconverged_tail() const {
    const double g = geometric_tail();
    const double p = power_law_tail();
    if (std::isinf(g)) return p;
    if (std::isinf(p)) return g;
    return std::max(g, p);
  }

 private:
  std::array<std::pair<double, long>, 2 * kWindow> history_{};
  std::size_t count_ = 0;
};

}  // namespace detail

/// Sums term(start) + term(start+1) + ... with compensated accumulation.
///
/// Stops once `consecutive_small` successive terms are below
/// abs_tol + rel_tol*|partial sum| and the geometric envelope bound on the
/// remainder is below the same tolerance. A decay ratio above 0.99 is never
/// certified. When max_terms runs out the result is returned with
/// converged=false and a tail estimate from the larger of the geometric and
/// power-law models.
template <class Term>
SeriesResult sum_series(Term&& term, const SumOptions& opts = {},
                        long start = 1) {
  opts.validate();
  CompensatedSum acc;
  detail::EnvelopeTracker env;
  std::size_t small = 0;
  SeriesResult out;
  for (std::size_t n = 0; n < opts.max_terms; ++n) {
    const long k = start + long(n);
    const double t = term(k);
    detail::require_finite(t, k, "sum_series");
    acc.add(t);
    env.push(std::abs(t), k);
    out.terms_used = n + 1;

    const double tol = opts.tolerance(acc.value());
    small = std::abs(t) <= tol ? small + 1 : 0;
    if (small < opts.consecutive_small) continue;
    const auto r = env.ratio();
    if (!r || *r > detail::EnvelopeTracker::kMaxRatio) continue;
    const double tail = env.geometric_tail();
    if (tail <= tol) {
      out.value = acc.value();
      out.tail_estimate = tail;
      out.converged = true;
      return out;
    }
  }
  out.value = acc.value();
  out.tail_estimate = env.unconverged_tail();
  out.converged = false;
  return out;
}

/// Sums (-1)^(k-start) * value(k) for k >= start.
///
/// While the trailing values keep one sign and are non-increasing in
/// magnitude, the remainder is bounded by the first omitted magnitude.
/// Otherwise the geometric envelope test of sum_series applies. `value` may
/// carry a constant sign; the alternation is applied here.
template <class Value>
SeriesResult sum_alternating(Value&& value, const SumOptions& opts = {},
                             long start = 0) {
  opts.validate();
  CompensatedSum acc;
  detail::EnvelopeTracker env;
  std::size_t small = 0;
  std::size_t monotone_run = 0;  // trailing run of same-sign, non-increasing
  double prev = std::numeric_limits<double>::quiet_NaN();
  SeriesResult out;

  auto next_value = [&](long k) {
    const double v = value(k);
    detail::require_finite(v, k, "sum_alternating");
    return v;
  };

  double v = next_value(start);
  for (std::size_t n = 0; n < opts.max_terms; ++n) {
    const long k = start + long(n);
    const double t = (n % 2 == 0) ? v : -v;
    acc.add(t);
    env.push(std::abs(v), k);
    out.terms_used = n + 1;

    if (n > 0 && std::abs(v) <= std::abs(prev) &&
        (v == 0.0 || prev == 0.0 || std::signbit(v) == std::signbit(prev))) {
      ++monotone_run;
    } else {
      monotone_run = 0;
    }
    prev = v;

    const double next = next_value(k + 1);
    const double tol = opts.tolerance(acc.value());
    small = std::abs(v) <= tol ? small + 1 : 0;
    const bool monotone = monotone_run >= opts.consecutive_small &&
                          std::abs(next) <= std::abs(v) &&
                          (next == 0.0 || v == 0.0 ||
                           std::signbit(next) == std::signbit(v));
    if (small >= opts.consecutive_small) {
      if (monotone && std::abs(next) <= tol) {
        out.value = acc.value();
        out.tail_estimate = std::abs(next);
        out.converged = true;
        return out;
      }
      const auto r = env.ratio();
      if (!monotone && r && *r <= detail::EnvelopeTracker::kMaxRatio &&
          env.geometric_tail() <= tol) {
        out.value = acc.value();
        out.tail_estimate = env.geometric_tail();
        out.converged = true;
        return out;
      }
    }
    v = next;
  }
  out.value = acc.value();
  // The alternating bound holds whether or not the tolerance was reached.
  out.tail_estimate =
      monotone_run >= opts.consecutive_small ? std::abs(v)
                                             : env.unconverged_tail();
  out.converged = false;
  return out;
}

/// Sums (-1)^(k-start) * value(k) through the Euler transform
///   sum_j (-1)^j Delta^j v_start / 2^(j+1).
///
/// Converges geometrically for completely monotone sequences and returns the
/// Abel sum for alternating series with polynomially or mildly exponentially
/// growing smooth terms. Forward differences are built along the anti-diagonal
/// so each new value costs O(j); a parallel table of absolute sums bounds the
/// rounding noise of Delta^j, and stopping treats terms below that noise floor
/// as small. converged is reported only if the final tail (last two terms plus
/// accumulated noise) is within tolerance.
template <class Value>
SeriesResult sum_alternating_euler(Value&& value, const SumOptions& opts = {},
                                   long start = 0) {
  opts.validate();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const std::size_t limit = std::min<std::size_t>(opts.max_terms, 2048);

  std::vector<double> diag;   // diag[i] = Delta^i v_{n-i}
  std::vector<double> bound;  // bound[i] = sum of |v| feeding diag[i]
  diag.reserve(limit);
  bound.reserve(limit);
  CompensatedSum acc;
  double noise = 0.0;
  double scale = 1.0;  // 2^-(j+1)
  double last = 0.0;
  double before_last = 0.0;
  std::size_t small = 0;
  SeriesResult out;

  for (std::size_t j = 0; j < limit; ++j) {
    const long k = start + long(j);
    const double v = value(k);
    detail::require_finite(v, k, "sum_alternating_euler");
    double d = v;
    double b = std::abs(v);
    for (std::size_t i = 0; i < diag.size(); ++i) {
      const double nd = d - diag[i];
      const double nb = b + bound[i];
      diag[i] = d;
      bound[i] = b;
      d = nd;
      b = nb;
    }
    diag.push_back(d);
    bound.push_back(b);

    scale *= 0.5;
    const double t = (j % 2 == 0 ? d : -d) * scale;
    const double term_noise = 4.0 * eps * b * scale;
    if (!std::isfinite(t)) {
      throw convergence_error("sum_alternating_euler: difference overflow");
    }
    acc.add(t);
    noise += term_noise;
    before_last = last;
    last = std::abs(t);
    out.terms_used = j + 1;

    const double tol = opts.tolerance(acc.value());
    small = (std::abs(t) <= std::max(tol, term_noise)) ? small + 1 : 0;
    if (small >= opts.consecutive_small) {
      out.value = acc.value();
      out.tail_estimate = last + before_last + noise;
      out.converged = out.tail_estimate <= tol;
      return out;
    }
  }
  out.value = acc.value();
  out.tail_estimate = std::numeric_limits<double>::infinity();
  out.converged = false;
  return out;
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for nodes kKronrodNodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
  double error = 0.0;

  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel kronrod_panel(F& f, double lo, double hi, std::size_t& evaluations) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double kronrod = 0.0;
  double gauss = 0.0;
  double absolute = 0.0;
  for (std::size_t i = 0; i < kKronrodNodes.size(); ++i) {
    const double dx = half * kKronrodNodes[i];
    double fsum = 0.0;
    double fabs = 0.0;
    if (i == 7) {
      const double fc = f(center);
      require_finite(fc, 0, "integrate_decaying");
      fsum = fc;
      fabs = std::abs(fc);
      evaluations += 1;
    } else {
      const double f1 = f(center - dx);
      const double f2 = f(center + dx);
      require_finite(f1, 0, "integrate_decaying");
      require_finite(f2, 0, "integrate_decaying");
      fsum = f1 + f2;
      fabs = std::abs(f1) + std::abs(f2);
      evaluations += 2;
    }
    kronrod += kKronrodWeights[i] * fsum;
    absolute += kKronrodWeights[i] * fabs;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
  }
  Panel p;
  p.lo = lo;
  p.hi = hi;
  p.value = kronrod * half;
  // Embedded-rule difference plus a floor for rounding in the weighted sum.
  p.error = std::abs((kronrod - gauss) * half) +
            50.0 * std::numeric_limits<double>::epsilon() * absolute * half;
  return p;
}

}  // namespace detail

/// Integrates f over [0, inf) assuming |f(t)| <= M exp(-decay_rate t) for
/// large t.
///
/// The truncation point T is grown until the sampled envelope
/// M^ exp(-decay_rate T)/decay_rate falls below a tenth of abs_tol, where M^
/// is the largest |f(t)| exp(decay_rate t) seen on [T/2, T]. [0, T] is then
/// covered by unit-width Gauss-Kronrod 7/15 panels that are bisected, worst
/// first, until the summed panel errors meet the tolerance. error_estimate is
/// the panel error sum plus the tail bound.
template <class F>
QuadratureResult integrate_decaying(F&& f, double decay_rate,
                                    const SumOptions& opts = {}) {
  opts.validate();
  if (!(decay_rate > 0.0) || !std::isfinite(decay_rate)) {
    throw domain_error("integrate_decaying: decay rate must be positive");
  }
  QuadratureResult out;

  // Truncation.
  constexpr int kSamples = 16;
  constexpr double kMaxExponent = 700.0;
  const double tail_target = 0.1 * opts.abs_tol;
  double upper = std::max(1.0, 4.0 / decay_rate);
  double tail = std::numeric_limits<double>::infinity();
  for (;;) {
    double log_envelope = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kSamples; ++i) {
      const double t = upper * (0.5 + 0.5 * double(i) / kSamples);
      const double v = f(t);
      detail::require_finite(v, i, "integrate_decaying");
      ++out.evaluations;
      if (v != 0.0) {
        log_envelope =
            std::max(log_envelope, std::log(std::abs(v)) + decay_rate * t);
      }
    }
    // Factor 2 covers samples landing near zeros of an oscillating factor.
    const double log_tail =
        log_envelope + std::log(2.0 / decay_rate) - decay_rate * upper;
    tail = log_tail < -kMaxExponent ? 0.0 : std::exp(log_tail);
    if (tail < tail_target || decay_rate * upper > kMaxExponent) break;
    upper *= 1.5;
  }

  // Adaptive panels.
  constexpr std::size_t kMaxPanels = 20000;
  std::priority_queue<detail::Panel> heap;
  const auto initial = std::max<std::size_t>(4, std::size_t(std::ceil(upper)));
  const double width = upper / double(initial);
  CompensatedSum total;
  double total_error = 0.0;
  for (std::size_t i = 0; i < initial; ++i) {
    auto p = detail::kronrod_panel(f, width * double(i),
                                   i + 1 == initial ? upper : width * double(i + 1),
                                   out.evaluations);
    total_error += p.error;
    heap.push(p);
  }
  auto current_value = [&heap] {
    auto copy = heap;
    CompensatedSum s;
    while (!copy.empty()) {
      s.add(copy.top().value);
      copy.pop();
    }
    return s.value();
  };
  double value = current_value();
  while (heap.size() < kMaxPanels) {
    const double target = 0.5 * opts.tolerance(value);
    if (total_error <= target) break;
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    auto left = detail::kronrod_panel(f, worst.lo, mid, out.evaluations);
    auto right = detail::kronrod_panel(f, mid, worst.hi, out.evaluations);
    total_error += left.error + right.error - worst.error;
    value += left.value + right.value - worst.value;
    heap.push(left);
    heap.push(right);
  }
  // Re-add from scratch so the incremental updates leave no drift.
  total_error = 0.0;
  {
    auto copy = heap;
    while (!copy.empty()) {
      total_error += copy.top().error;
      copy.pop();
    }
  }
  out.value = current_value();
  out.error_estimate = total_error + tail;
  return out;
}

// ---------------------------------------------------------------------------
// Extrapolation
// ---------------------------------------------------------------------------

struct ExtrapolationSample {
  double x = 0.0;
  double value = 0.0;
};

/// Successive Neville extrapolants to x = 0: entry j is the value at 0 of the
/// interpolating polynomial through samples 0..j. Differences between the
/// last entries estimate the extrapolation error.
inline std::vector<double> neville_diagonal(
    std::span<const ExtrapolationSample> samples) {
  if (samples.size() < 2) {
    throw domain_error("richardson_extrapolate: need at least two samples");
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].x > 0.0) || !std::isfinite(samples[i].value)) {
      throw domain_error(
          "richardson_extrapolate: samples need x > 0 and finite values");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (samples[i].x == samples[j].x) {
        throw domain_error("richardson_extrapolate: duplicate x value");
      }
    }
  }
  // column[i] holds P_{i..j}(0) for the current j.
  std::vector<double> column;
  std::vector<double> diagonal;
  column.reserve(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) {
    column.push_back(samples[j].value);
    for (std::size_t i = j; i-- > 0;) {
      const double xi = samples[i].x;
      const double xj = samples[j].x;
      column[i] = (xi * column[i + 1] - xj * column[i]) / (xi - xj);
    }
    diagonal.push_back(column[0]);
  }
  return diagonal;
}

/// Extrapolates samples of a function smooth at 0 to x = 0 (Neville scheme,
/// deepest diagonal entry).
inline double richardson_extrapolate(
    std::span<const ExtrapolationSample> samples) {
  return neville_diagonal(samples).back();
}

}  // namespace poisson
