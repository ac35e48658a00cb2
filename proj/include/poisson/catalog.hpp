#pragma once

// Registry of hyperbolic-series identities and the machinery to check them.
//
// Each IdentityRecord holds one or more variants: the formula as printed in
// the literature, a corrected form where the printed one is wrong, a derived
// closed form, or an auxiliary companion identity. A variant evaluates both
// sides directly from the series/closed forms, so a failure points at the
// formula and not at some intermediate transform.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "poisson/error.hpp"
#include "poisson/numerics.hpp"
#include "poisson/rational.hpp"
#include "poisson/special_functions.hpp"

namespace poisson {

enum class Status { pass, fail, error, unverified };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::error: return "error";
    case Status::unverified: return "unverified";
  }
  return "?";
}

using ParamMap = std::map<std::string, double>;

struct ParamSpec {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  bool integer = false;
  double default_value = 0.0;
  std::vector<double> grid;  // extra values visited by verify_all

  [[nodiscard]] bool contains(double v) const {
    if (!std::isfinite(v) || v < min || v > max) return false;
    return !integer || std::floor(v) == v;
  }

  [[nodiscard]] std::string domain() const {
    auto num = [](double v) {
      std::string s = std::to_string(v);
      s.erase(s.find_last_not_of('0') + 1);
      if (s.back() == '.') s.pop_back();
      return s;
    };
    return (integer ? "integer in [" : "[") + num(min) + ", " + num(max) + "]";
  }
};

/// One side of an identity: a value plus how much of an infinite sum was
/// left out. Closed forms are exact (tail 0, converged).
struct SideValue {
  double value = 0.0;
  double tail = 0.0;
  bool converged = true;

  SideValue() = default;
  // NOLINTNEXTLINE(google-explicit-constructor)
  SideValue(double v) : value(v) {}
  // NOLINTNEXTLINE(google-explicit-constructor)
  SideValue(const SeriesResult& r)
      : value(r.value), tail(r.tail_estimate), converged(r.converged) {}
  // NOLINTNEXTLINE(google-explicit-constructor)
  SideValue(const QuadratureResult& r)
      : value(r.value), tail(r.error_estimate) {}

  friend SideValue operator+(SideValue a, const SideValue& b) {
    a.value += b.value;
    a.tail += b.tail;
    a.converged = a.converged && b.converged;
    return a;
  }
  friend SideValue operator-(SideValue a, const SideValue& b) {
    a.value -= b.value;
    a.tail += b.tail;
    a.converged = a.converged && b.converged;
    return a;
  }
  friend SideValue operator*(double c, SideValue a) {
    a.value *= c;
    a.tail *= std::abs(c);
    return a;
  }
};

using SideEvaluator =
    std::function<SideValue(const ParamMap&, const SumOptions&)>;

struct Variant {
  std::string name;  // as_printed, corrected, derived_closed_form, aux
  SideEvaluator lhs;
  SideEvaluator rhs;
  std::function<Status(const ParamMap&)> expected;
  std::string note;
  std::function<bool(const ParamMap&)> applies_to;  // empty: everywhere

  [[nodiscard]] bool applies(const ParamMap& p) const {
    return !applies_to || applies_to(p);
  }
  [[nodiscard]] Status expected_at(const ParamMap& p) const {
    return expected(p);
  }
};

/// Printed and corrected values of a rational constant term.
struct ConstantErratum {
  Rational printed;
  Rational corrected;
};

struct IdentityRecord {
  std::string id;
  std::string title;
  std::string statement;
  std::vector<ParamSpec> params;
  std::vector<Variant> variants;
  std::string notes;
  std::function<ConstantErratum(const ParamMap&)> constant_erratum;

  [[nodiscard]] ParamMap defaults() const {
    ParamMap m;
    for (const auto& p : params) m[p.name] = p.default_value;
    return m;
  }

  [[nodiscard]] const ParamSpec* param(std::string_view name) const {
    for (const auto& p : params) {
      if (p.name == name) return &p;
    }
    return nullptr;
  }

  [[nodiscard]] const Variant* find_variant(std::string_view name) const {
    for (const auto& v : variants) {
      if (v.name == name) return &v;
    }
    return nullptr;
  }

  /// Defaults merged with overrides. Throws std::invalid_argument on unknown
  /// names and domain_error on out-of-domain values.
  [[nodiscard]] ParamMap resolve(const ParamMap& overrides) const {
    ParamMap m = defaults();
    for (const auto& [name, value] : overrides) {
      const ParamSpec* spec = param(name);
      if (spec == nullptr) {
        throw std::invalid_argument("identity '" + id +
                                    "' has no parameter '" + name + "'");
      }
      if (!spec->contains(value)) {
        throw domain_error("identity '" + id + "': " + name + " = " +
                           std::to_string(value) + " outside " +
                           spec->domain());
      }
      m[name] = value;
    }
    return m;
  }

  /// Defaults first, then every combination of defaults and grid values,
  /// without repeats.
  [[nodiscard]] std::vector<ParamMap> grid() const {
    std::vector<ParamMap> out{defaults()};
    for (const auto& p : params) {
      std::vector<double> values{p.default_value};
      for (double v : p.grid) {
        if (std::find(values.begin(), values.end(), v) == values.end()) {
          values.push_back(v);
        }
      }
      std::vector<ParamMap> next;
      for (const auto& base : out) {
        for (double v : values) {
          ParamMap m = base;
          m[p.name] = v;
          if (std::find(next.begin(), next.end(), m) == next.end()) {
            next.push_back(std::move(m));
          }
        }
      }
      out = std::move(next);
    }
    return out;
  }
};

struct Tolerances {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  std::size_t max_terms = 100000;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
      throw domain_error("Tolerances: abs_tol and rel_tol must be positive");
    }
    if (max_terms < 16) throw domain_error("Tolerances: max_terms below 16");
  }

  [[nodiscard]] bool accepts(double lhs, double rhs) const {
    return std::abs(lhs - rhs) <=
           abs_tol + rel_tol * std::max(std::abs(lhs), std::abs(rhs));
  }

  /// Options for the series inside each side; well below the comparison
  /// tolerance so that truncation never decides an outcome.
  [[nodiscard]] SumOptions series_options() const {
    SumOptions o;
    o.rel_tol = 1e-14;
    o.abs_tol = 1e-17;
    o.max_terms = max_terms;
    return o;
  }
};

struct VerificationOutcome {
  std::string identity_id;
  std::string variant_name;
  ParamMap params;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  Status status = Status::error;
  Status expected_status = Status::unverified;
  std::chrono::duration<double, std::milli> elapsed{0};
  std::string message;

  /// Unverified expectations accept pass and fail, never error.
  [[nodiscard]] bool matches_expectation() const {
    if (expected_status == Status::unverified) return status != Status::error;
    return status == expected_status;
  }
};

namespace detail {

inline constexpr double kPi = std::numbers::pi;

inline double sgn_pow(long k) { return k % 2 == 0 ? 1.0 : -1.0; }  // (-1)^k

// log sinh(x), log cosh(x), log(e^x - 1) without overflow, x > 0.
inline double log_sinh(double x) {
  if (x > 1.0) return x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2;
  return std::log(std::sinh(x));
}
inline double log_cosh(double x) {
  x = std::abs(x);
  return x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2;
}
inline double log_expm1(double x) {
  if (x > 1.0) return x + std::log1p(-std::exp(-x));
  return std::log(std::expm1(x));
}

inline int int_param(const ParamMap& p, const std::string& name) {
  return int(std::lround(p.at(name)));
}

inline std::function<Status(const ParamMap&)> always(Status s) {
  return [s](const ParamMap&) { return s; };
}

inline SideValue exact(const Rational& r) { return r.to_double(); }

// ---- individual entries ---------------------------------------------------

inline IdentityRecord lemma1_closed_sech() {
  IdentityRecord r;
  r.id = "lemma1_closed_sech";
  r.title = "Fourier transform of sech";
  r.statement = "int_0^inf cos(gamma t) sech(pi t) dt = sech(gamma/2)/2";
  r.params = {{"gamma", 0.0, 20.0, false, 2.0, {0.5, 1.0, 2.0}}};
  Variant v;
  v.name = "as_printed";
  v.lhs = [](const ParamMap& p, const SumOptions& o) -> SideValue {
    const double g = p.at("gamma");
    return integrate_decaying(
        [g](double t) {
          return std::cos(g * t) * 2.0 * std::exp(-kPi * t) /
                 (1.0 + std::exp(-2.0 * kPi * t));
        },
        kPi, o);
  };
  v.rhs = [](const ParamMap& p, const SumOptions&) -> SideValue {
    return 0.5 / std::cosh(0.5 * p.at("gamma"));
  };
  v.expected = always(Status::pass);
  r.variants.push_back(std::move(v));
  return r;
}

// sum k^p / sinh(pi a k)
inline SeriesResult k_power_over_sinh(int p, double a, const SumOptions& o) {
  return sum_series(
      [p, a](long k) {
        const double x = kPi * a * double(k);
        return std::pow(double(k), p) * 2.0 * std::exp(-x) /
               -std::expm1(-2.0 * x);
      },
      o, 1);
}

// sum (-1)^(k+1) k^p / (e^(beta k) - 1)
inline SeriesResult alt_k_power_over_expm1(int p, double beta,
                                           const SumOptions& o) {
  return sum_series(
      [p, beta](long k) {
        return -sgn_pow(k) * std::pow(double(k), p) /
               std::expm1(beta * double(k));
      },
      o, 1);
}

inline IdentityRecord eq13() {
  IdentityRecord r;
  r.id = "eq13";
  r.title = "Odd powers over sinh(pi a k)";
  r.statement =
      "(a/2)[delta_{m0}/(2 pi) + a^(2m+1) sum k^(2m+1)/sinh(pi a k)] = "
      "(-1)^(m+1) Q_{2m+1}/4 + (-1)^m sum (-1)^(k+1) k^(2m+1)/(e^(2 pi k/a) - 1)";
  r.params = {{"m", 0, 5, true, 0, {0, 1, 2}},
              {"a", 0.25, 4.0, false, 1.0, {0.5, 1.0, 2.0}}};
  auto constant = [](const ParamMap& p, int denom) {
    const int m = int_param(p, "m");
    const Rational sign = (m + 1) % 2 == 0 ? 1 : -1;
    return sign * q_number(2 * m + 1) / Rational(denom);
  };
  r.constant_erratum = [constant](const ParamMap& p) {
    return ConstantErratum{constant(p, 4), constant(p, 2)};
  };
  SideEvaluator lhs = [](const ParamMap& p, const SumOptions& o) {
    const int m = int_param(p, "m");
    const double a = p.at("a");
    const SideValue s = k_power_over_sinh(2 * m + 1, a, o);
    const SideValue head = m == 0 ? 1.0 / (2.0 * kPi) : 0.0;
    return (0.5 * a) * (head + std::pow(a, 2 * m + 1) * s);
  };
  auto rhs_with = [constant](int denom) -> SideEvaluator {
    return [constant, denom](const ParamMap& p, const SumOptions& o) {
      const int m = int_param(p, "m");
      const double a = p.at("a");
      return exact(constant(p, denom)) +
             sgn_pow(m) * SideValue(alt_k_power_over_expm1(2 * m + 1,
                                                           2.0 * kPi / a, o));
    };
  };
  r.variants.push_back({"as_printed", lhs, rhs_with(4), always(Status::fail),
                        "constant term printed as (-1)^(m+1) Q_{2m+1}/4", {}});
  r.variants.push_back(
      {"corrected", lhs, rhs_with(2), always(Status::pass),
       "constant term (-1)^(m+1) Q_{2m+1}/2 instead of /4", {}});
  return r;
}

inline IdentityRecord eq14() {
  IdentityRecord r;
  r.id = "eq14";
  r.title = "Alternating sum at a singular modulus";
  r.statement =
      "sum (-1)^(k+1) k/(e^(2 pi k/a) - 1) = (1/4)(1/2 - a/pi) + K(E-K)/pi^2, "
      "K, E at the modulus with K'/K = a";
  r.params = {{"a", 0.1, 10.0, false, 1.0, {0.5, 1.0, 2.0}}};
  SideEvaluator lhs = [](const ParamMap& p, const SumOptions& o) -> SideValue {
    return alt_k_power_over_expm1(1, 2.0 * kPi / p.at("a"), o);
  };
  auto at_one = [](const ParamMap& p) { return p.at("a") == 1.0; };
  r.variants.push_back(
      {"as_printed", lhs,
       [](const ParamMap& p, const SumOptions&) -> SideValue {
         const double a = p.at("a");
         const auto e = modulus_from_ratio(a);
         return 0.25 * (0.5 - a / kPi) + e.K * (e.E - e.K) / (kPi * kPi);
       },
       [at_one](const ParamMap& p) {
         return at_one(p) ? Status::fail : Status::unverified;
       },
       "wrong sign on the elliptic term and the constant; the a = 1 value is "
       "1/(4 pi) - 1/8 + K(K-E)/(2 pi^2)",
       {}});
  r.variants.push_back(
      {"corrected", lhs,
       [](const ParamMap&, const SumOptions&) -> SideValue {
         const auto e = modulus_from_ratio(1.0);
         return 1.0 / (4.0 * kPi) - 0.125 +
                e.K * (e.K - e.E) / (2.0 * kPi * kPi);
       },
       always(Status::pass),
       "a = 1 only: rhs 1/(4 pi) - 1/8 + K(K-E)/(2 pi^2), from the corrected "
       "m = 0 odd-power identity and the sinh sum",
       at_one});
  r.variants.push_back(
      {"derived_closed_form", lhs,
       [](const ParamMap& p, const SumOptions&) -> SideValue {
         const double a = p.at("a");
         const auto e = modulus_from_ratio(a);
         return a / (4.0 * kPi) - 0.125 +
                a * a * e.K * (e.K - e.E) / (2.0 * kPi * kPi);
       },
       [at_one](const ParamMap& p) {
         return at_one(p) ? Status::pass : Status::unverified;
       },
       "general a: a/(4 pi) - 1/8 + a^2 K(K-E)/(2 pi^2)",
       {}});
  return r;
}

inline IdentityRecord elliptic_sinh_sum() {
  IdentityRecord r;
  r.id = "elliptic_sinh_sum";
  r.title = "sum k/sinh(pi k) in elliptic integrals";
  r.statement = "sum k/sinh(pi k) = K(K-E)/pi^2 at k = 1/sqrt(2)";
  r.variants.push_back(
      {"aux",
       [](const ParamMap&, const SumOptions& o) -> SideValue {
         return k_power_over_sinh(1, 1.0, o);
       },
       [](const ParamMap&, const SumOptions&) -> SideValue {
         const auto e = modulus_from_ratio(1.0);
         return e.K * (e.K - e.E) / (kPi * kPi);
       },
       always(Status::pass), "", {}});
  return r;
}

inline IdentityRecord eq15() {
  IdentityRecord r;
  r.id = "eq15";
  r.title = "Mixed e^(k pi) sum with Q-number value";
  r.statement =
      "sum k^(4n+1)(e^(k pi) + (-1)^k)/((e^(k pi) - 1)(e^(k pi) + 1)) = "
      "-Q_{4n+1}/4";
  r.params = {{"n", 1, 3, true, 1, {1, 2}}};
  auto constant = [](const ParamMap& p, int denom) {
    return -q_number(4 * int_param(p, "n") + 1) / Rational(denom);
  };
  r.constant_erratum = [constant](const ParamMap& p) {
    return ConstantErratum{constant(p, 4), constant(p, 2)};
  };
  SideEvaluator lhs = [](const ParamMap& p, const SumOptions& o) -> SideValue {
    const int e = 4 * int_param(p, "n") + 1;
    return sum_series(
        [e](long k) {
          const double u = std::exp(-kPi * double(k));
          return std::pow(double(k), e) * u * (1.0 + sgn_pow(k) * u) /
                 ((1.0 - u) * (1.0 + u));
        },
        o, 1);
  };
  auto rhs_with = [constant](int denom) -> SideEvaluator {
    return [constant, denom](const ParamMap& p, const SumOptions&) {
      return exact(constant(p, denom));
    };
  };
  r.variants.push_back({"as_printed", lhs, rhs_with(4), always(Status::fail),
                        "value printed as -Q_{4n+1}/4", {}});
  r.variants.push_back({"corrected", lhs, rhs_with(2), always(Status::pass),
                        "value -Q_{4n+1}/2 instead of /4", {}});
  return r;
}

inline IdentityRecord eq16() {
  IdentityRecord r;
  r.id = "eq16";
  r.title = "Bernoulli value of sum k^(4n+1)/(e^(2 pi k) - 1)";
  r.statement = "sum k^(4n+1)/(e^(2 pi k) - 1) = B_{4n+2}/(8n+4)";
  r.params = {{"n", 1, 7, true, 1, {1, 2, 3}}};
  r.variants.push_back(
      {"as_printed",
       [](const ParamMap& p, const SumOptions& o) -> SideValue {
         const int e = 4 * int_param(p, "n") + 1;
         return sum_series(
             [e](long k) {
               return std::pow(double(k), e) / std::expm1(2.0 * kPi * double(k));
             },
             o, 1);
       },
       [](const ParamMap& p, const SumOptions&) {
         const int n = int_param(p, "n");
         return exact(bernoulli(4 * n + 2) / Rational(8 * n + 4));
       },
       always(Status::pass), "", {}});
  return r;
}

inline IdentityRecord eq17() {
  IdentityRecord r;
  r.id = "eq17";
  r.title = "Odd-index sum over e^(pi(2k-1)) + 1";
  r.statement =
      "sum (2k-1)^(4n+1)/(e^(pi(2k-1)) + 1) = "
      "-Q_{4n+1}/4 - 2^(4n-1) B_{4n+2}/(2n+1)";
  r.params = {{"n", 1, 3, true, 1, {1, 2}}};
  auto constant = [](const ParamMap& p, int denom) {
    const int n = int_param(p, "n");
    return -q_number(4 * n + 1) / Rational(denom) -
           detail::pow2(4 * n - 1) * bernoulli(4 * n + 2) / Rational(2 * n + 1);
  };
  r.constant_erratum = [constant](const ParamMap& p) {
    return ConstantErratum{constant(p, 4), constant(p, 2)};
  };
  SideEvaluator lhs = [](const ParamMap& p, const SumOptions& o) -> SideValue {
    const int e = 4 * int_param(p, "n") + 1;
    return sum_series(
        [e](long k) {
          const double j = double(2 * k - 1);
          const double u = std::exp(-kPi * j);
          return std::pow(j, e) * u / (1.0 + u);
        },
        o, 1);
  };
  auto rhs_with = [constant](int denom) -> SideEvaluator {
    return [constant, denom](const ParamMap& p, const SumOptions&) {
      return exact(constant(p, denom));
    };
  };
  r.variants.push_back({"as_printed", lhs, rhs_with(4), always(Status::fail),
                        "Q-number term printed as -Q_{4n+1}/4", {}});
  r.variants.push_back({"corrected", lhs, rhs_with(2), always(Status::pass),
                        "Q-number term -Q_{4n+1}/2 instead of /4", {}});
  return r;
}

inline IdentityRecord app3a_zeta5() {
  IdentityRecord r;
  r.id = "app3a_zeta5";
  r.title = "Series for zeta(5)";
  r.statement =
      "41 zeta(5)/6912 = pi^6/93312 + 2 sum (-1)^k sin^6(k pi/6)/(k^5(e^(2k) "
      "- 1)) + pi^-4 sum sinh^6(k pi/6)/(k^5 sinh(pi^2 k))";
  r.variants.push_back(
      {"as_printed",
       [](const ParamMap&, const SumOptions&) -> SideValue {
         return 41.0 * zeta_int(5) / 6912.0;
       },
       [](const ParamMap&, const SumOptions& o) {
         const SideValue s1 = sum_series(
             [](long k) {
               const double x = double(k);
               return sgn_pow(k) * std::pow(std::sin(x * kPi / 6.0), 6) /
                      (std::pow(x, 5) * std::expm1(2.0 * x));
             },
             o, 1);
         const SideValue s2 = sum_series(
             [](long k) {
               const double x = double(k);
               return std::exp(6.0 * log_sinh(x * kPi / 6.0) -
                               log_sinh(kPi * kPi * x)) /
                      std::pow(x, 5);
             },
             o, 1);
         return std::pow(kPi, 6) / 93312.0 + 2.0 * s1 +
                std::pow(kPi, -4) * s2;
       },
       always(Status::unverified), "", {}});
  return r;
}

inline IdentityRecord app3b_zeta3() {
  IdentityRecord r;
  r.id = "app3b_zeta3";
  r.title = "Series for zeta(3)";
  r.statement =
      "7 zeta(3)/128 = pi^3/512 + sum (-1)^k sin^4(k pi/4)/(k^3(e^(pi k) - 1)) "
      "+ (1/8) sum sinh^4(k pi/2)/(k^3 sinh(2 pi k))";
  r.notes =
      "sinh^4(x)/sinh(4x) tends to 1/8, so the last sum is split into "
      "zeta(3)/8 plus a remainder decaying like e^(-pi k)";
  r.variants.push_back(
      {"as_printed",
       [](const ParamMap&, const SumOptions&) -> SideValue {
         return 7.0 * zeta_int(3) / 128.0;
       },
       [](const ParamMap&, const SumOptions& o) {
         const SideValue s1 = sum_series(
             [](long k) {
               const double x = double(k);
               return sgn_pow(k) * std::pow(std::sin(x * kPi / 4.0), 4) /
                      (x * x * x * std::expm1(kPi * x));
             },
             o, 1);
         // sinh^4(x)/sinh(4x) - 1/8 = -u(2 - u + u^2)/(4(1+u)(1+u^2)),
         // u = e^(-2x), x = k pi/2
         const SideValue rest = sum_series(
             [](long k) {
               const double x = double(k);
               const double u = std::exp(-kPi * x);
               return -u * (2.0 - u + u * u) /
                      (4.0 * (1.0 + u) * (1.0 + u * u) * x * x * x);
             },
             o, 1);
         const SideValue s2 = zeta_int(3) / 8.0 + rest;
         return std::pow(kPi, 3) / 512.0 + s1 + 0.125 * s2;
       },
       always(Status::unverified), "", {}});
  return r;
}

// -30 Li3(-e^-c) + 12 Li3(-e^-2c) - 2 Li3(-e^-3c) and its continuation to
// c < 0 through Li3(z) = z Phi(z, 3, 1).
inline double li3_combination(double c) {
  auto li3_any = [](double x) {
    return x >= -1.0 ? li3(x) : x * lerch_phi(x, 3, 1.0);
  };
  return -30.0 * li3_any(-std::exp(-c)) + 12.0 * li3_any(-std::exp(-2.0 * c)) -
         2.0 * li3_any(-std::exp(-3.0 * c));
}

inline IdentityRecord eq18_li3() {
  IdentityRecord r;
  r.id = "eq18_li3";
  r.title = "Cubed trigonometric sums and Li3";
  r.statement =
      "8 sum (cos(ck) - 1)^3/(k^3 sinh(k pi)) + 16 sum (-1)^k (cosh(ck) - "
      "1)^3/(k^3(e^(2k pi) - 1)) = -c^3 + c pi^2 - 30 Li3(-e^-c) + 12 "
      "Li3(-e^-2c) - 2 Li3(-e^-3c) - 15 zeta(3)";
  r.params = {{"c", 0.0, 1.04, false, 0.5, {0.0, 0.25, 0.5, 0.9}}};
  r.notes = "c is kept below pi/3 so that e^(3c) stays dominated by e^(pi)";
  r.variants.push_back(
      {"as_printed",
       [](const ParamMap& p, const SumOptions& o) {
         const double c = p.at("c");
         // cos(x) - 1 = -2 sin^2(x/2), cosh(x) - 1 = 2 sinh^2(x/2)
         const SideValue s1 = sum_series(
             [c](long k) {
               const double x = double(k);
               const double s = std::sin(0.5 * c * x);
               const double num = -8.0 * std::pow(s, 6);
               const double y = kPi * x;
               return num * 2.0 * std::exp(-y) /
                      (-std::expm1(-2.0 * y) * x * x * x);
             },
             o, 1);
         const SideValue s2 = sum_series(
             [c](long k) {
               const double x = double(k);
               const double s = std::sinh(0.5 * c * x);
               return sgn_pow(k) * 8.0 * std::pow(s, 6) /
                      (x * x * x * std::expm1(2.0 * kPi * x));
             },
             o, 1);
         return 8.0 * s1 + 16.0 * s2;
       },
       [](const ParamMap& p, const SumOptions&) -> SideValue {
         const double c = p.at("c");
         return -c * c * c + c * kPi * kPi + li3_combination(c) -
                15.0 * zeta_int(3);
       },
       [](const ParamMap& p) {
         return p.at("c") == 0.0 ? Status::pass : Status::unverified;
       },
       "", {}});
  r.variants.push_back(
      {"aux",
       [](const ParamMap& p, const SumOptions&) -> SideValue {
         return li3_combination(-p.at("c"));
       },
       [](const ParamMap& p, const SumOptions&) -> SideValue {
         const double c = p.at("c");
         return -2.0 * c * c * c + 2.0 * c * kPi * kPi + li3_combination(c);
       },
       always(Status::pass),
       "continuation f(-c) = -2c^3 + 2c pi^2 + f(c) of the Li3 combination",
       {}});
  return r;
}

inline SeriesResult k_power_sinh_ratio(int p, const SumOptions& o) {
  // sum k^p sinh(2k)/sinh(2 pi k)
  return sum_series(
      [p](long k) {
        const double x = double(k);
        return std::pow(x, p) *
               std::exp(log_sinh(2.0 * x) - log_sinh(2.0 * kPi * x));
      },
      o, 1);
}

template <class Trig>
SeriesResult alt_k_power_trig_over_expm1(int p, Trig trig,
                                         const SumOptions& o) {
  // sum (-1)^k k^p trig(k)/(e^(pi k) - 1)
  return sum_series(
      [p, trig](long k) {
        const double x = double(k);
        return sgn_pow(k) * std::pow(x, p) * trig(x) / std::expm1(kPi * x);
      },
      o, 1);
}

inline IdentityRecord app3d() {
  IdentityRecord r;
  r.id = "app3d";
  r.title = "sec^2 tan at 1/2";
  r.statement =
      "(1/8) sec^2(1/2) tan(1/2) = 4 sum k^2 sinh(2k)/sinh(2k pi) - sum "
      "(-1)^k k^2 sin(k)/(e^(pi k) - 1)";
  r.variants.push_back(
      {"as_printed",
       [](const ParamMap&, const SumOptions&) -> SideValue {
         const double c = std::cos(0.5);
         return std::tan(0.5) / (8.0 * c * c);
       },
       [](const ParamMap&, const SumOptions& o) {
         return 4.0 * SideValue(k_power_sinh_ratio(2, o)) -
                SideValue(alt_k_power_trig_over_expm1(
                    2, [](double x) { return std::sin(x); }, o));
       },
       always(Status::pass), "", {}});
  return r;
}

inline IdentityRecord app3e() {
  IdentityRecord r;
  r.id = "app3e";
  r.title = "sec^4 at 1/2";
  r.statement =
      "(1/16)(2 - cos 1) sec^4(1/2) = 8 sum k^3 sinh(2k)/sinh(2k pi) - sum "
      "(-1)^k k^3 cos(k)/(e^(pi k) - 1)";
  r.variants.push_back(
      {"as_printed",
       [](const ParamMap&, const SumOptions&) -> SideValue {
         const double c = std::cos(0.5);
         return (2.0 - std::cos(1.0)) / (16.0 * c * c * c * c);
       },
       [](const ParamMap&, const SumOptions& o) {
         return 8.0 * SideValue(k_power_sinh_ratio(3, o)) -
                SideValue(alt_k_power_trig_over_expm1(
                    3, [](double x) { return std::cos(x); }, o));
       },
       always(Status::unverified), "", {}});
  return r;
}

inline IdentityRecord app3f() {
  IdentityRecord r;
  r.id = "app3f";
  r.title = "tan(1/2)";
  r.statement =
      "tan(1/2) = 2/pi + 4 sum sinh(2k)/sinh(2k pi) + 4 sum (-1)^k "
      "sin(k)/(e^(pi k) - 1)";
  r.variants.push_back(
      {"as_printed",
       [](const ParamMap&, const SumOptions&) -> SideValue {
         return std::tan(0.5);
       },
       [](const ParamMap&, const SumOptions& o) {
         return 2.0 / kPi + 4.0 * SideValue(k_power_sinh_ratio(0, o)) +
                4.0 * SideValue(alt_k_power_trig_over_expm1(
                          0, [](double x) { return std::sin(x); }, o));
       },
       always(Status::pass), "", {}});
  return r;
}

// sum (-1)^k k^p cosh(k pi)/(e^(2k pi) - 1)
inline SeriesResult app4_series(int p, const SumOptions& o) {
  return sum_series(
      [p](long k) {
        const double x = double(k);
        return sgn_pow(k) *
               std::exp(p * std::log(x) + log_cosh(kPi * x) -
                        log_expm1(2.0 * kPi * x));
      },
      o, 1);
}

inline SideValue app4_derived(int p) {
  return -0.5 * li_negative_order(p, -std::exp(kPi));
}

inline IdentityRecord app4_closed_nu1() {
  IdentityRecord r;
  r.id = "app4_closed_nu1";
  r.title = "k^5 cosh(k pi) sum in closed form";
  r.statement =
      "sum (-1)^k k^5 cosh(k pi)/(e^(2k pi) - 1) = (1/64)(33 - 26 cosh(pi) + "
      "cosh(2 pi)) sech^6(pi/2)";
  SideEvaluator lhs = [](const ParamMap&, const SumOptions& o) -> SideValue {
    return app4_series(5, o);
  };
  r.variants.push_back(
      {"as_printed", lhs,
       [](const ParamMap&, const SumOptions&) -> SideValue {
         const double s = 1.0 / std::cosh(0.5 * kPi);
         return (33.0 - 26.0 * std::cosh(kPi) + std::cosh(2.0 * kPi)) *
                std::pow(s, 6) / 64.0;
       },
       always(Status::pass), "", {}});
  r.variants.push_back({"derived_closed_form", lhs,
                        [](const ParamMap&, const SumOptions&) {
                          return app4_derived(5);
                        },
                        always(Status::pass), "-(1/2) Li_{-5}(-e^pi)", {}});
  return r;
}

// -e^pi (1 - 502 e^pi + ... + e^(8 pi))/(e^pi + 1)^10
inline double app4_nu2_printed() {
  const double E = std::exp(kPi);
  constexpr std::array<double, 9> c = {1,      -502,  14608, -88234, 156190,
                                       -88234, 14608, -502,  1};
  double poly = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) poly = poly * E + *it;
  return -E * poly / std::pow(E + 1.0, 10);
}

inline IdentityRecord app4_closed_nu2() {
  IdentityRecord r;
  r.id = "app4_closed_nu2";
  r.title = "k^9 cosh(k pi) sum in closed form";
  r.statement =
      "sum (-1)^k k^9 cosh(k pi)/(e^(2k pi) - 1) = -e^pi (1 - 502 e^pi + "
      "14608 e^(2 pi) - 88234 e^(3 pi) + 156190 e^(4 pi) - 88234 e^(5 pi) + "
      "14608 e^(6 pi) - 502 e^(7 pi) + e^(8 pi))/(e^pi + 1)^10";
  SideEvaluator lhs = [](const ParamMap&, const SumOptions& o) -> SideValue {
    return app4_series(9, o);
  };
  r.variants.push_back(
      {"as_printed", lhs,
       [](const ParamMap&, const SumOptions&) -> SideValue {
         return app4_nu2_printed();
       },
       always(Status::fail),
       "the printed rational equals Li_{-9}(-e^pi); the sum is -(1/2) of it",
       {}});
  r.variants.push_back(
      {"corrected", lhs,
       [](const ParamMap&, const SumOptions&) -> SideValue {
         return -0.5 * app4_nu2_printed();
       },
       always(Status::pass),
       "printed rational multiplied by -1/2 (leading -e^pi becomes e^pi/2)",
       {}});
  r.variants.push_back({"derived_closed_form", lhs,
                        [](const ParamMap&, const SumOptions&) {
                          return app4_derived(9);
                        },
                        always(Status::pass), "-(1/2) Li_{-9}(-e^pi)", {}});
  return r;
}

inline IdentityRecord app4_general() {
  IdentityRecord r;
  r.id = "app4_general";
  r.title = "k^(4nu+1) cosh(k pi) sums via Eulerian numbers";
  r.statement =
      "sum (-1)^k k^(4nu+1) cosh(k pi)/(e^(2k pi) - 1) = "
      "-(1/2) Li_{-(4nu+1)}(-e^pi)";
  r.params = {{"nu", 1, 3, true, 1, {1, 2, 3}}};
  r.variants.push_back(
      {"derived_closed_form",
       [](const ParamMap& p, const SumOptions& o) -> SideValue {
         return app4_series(4 * int_param(p, "nu") + 1, o);
       },
       [](const ParamMap& p, const SumOptions&) {
         return app4_derived(4 * int_param(p, "nu") + 1);
       },
       always(Status::pass), "", {}});
  return r;
}

inline IdentityRecord app5_arccot() {
  IdentityRecord r;
  r.id = "app5_arccot";
  r.title = "arccot(e^(nu pi/2)) as a hyperbolic series";
  r.statement =
      "arccot(e^(nu pi/2)) = 2 sum_{k>=0} (-1)^k sinh(nu pi(k + 1/2))/"
      "((e^((2k+1) nu pi) - 1)(2k+1))";
  r.params = {{"nu", 0.25, 4.0, false, 1.0, {0.5, 1.0, 2.0}}};
  r.variants.push_back(
      {"as_printed",
       [](const ParamMap& p, const SumOptions&) -> SideValue {
         return std::atan(std::exp(-0.5 * p.at("nu") * kPi));
       },
       [](const ParamMap& p, const SumOptions& o) {
         const double nu = p.at("nu");
         return 2.0 * SideValue(sum_series(
                          [nu](long k) {
                            const double u = nu * kPi * (double(k) + 0.5);
                            return sgn_pow(k) *
                                   std::exp(log_sinh(u) - log_expm1(2.0 * u)) /
                                   double(2 * k + 1);
                          },
                          o, 0));
       },
       always(Status::pass), "", {}});
  return r;
}

inline IdentityRecord app6_lerch() {
  IdentityRecord r;
  r.id = "app6_lerch";
  r.title = "Lerch transcendent pair and Catalan's constant";
  r.statement =
      "(1/4) e^(pi/nu) Phi(-e^(2 pi/nu), 2, 1/2) + (1/4) e^(-pi/nu) "
      "Phi(-e^(-2 pi/nu), 2, 1/2) = 2G + pi^2/(2 nu^3) - 8 sum (-1)^k "
      "sinh^2(pi(k/nu + 1/(2 nu)))/((e^((2k+1) pi nu) - 1)(2k+1)^2) + nu sum "
      "sin^2(k pi/nu)/(cosh(k pi/nu) k^2)";
  r.params = {{"nu", 1, 2, true, 1, {1, 2}}};
  r.variants.push_back(
      {"as_printed",
       [](const ParamMap& p, const SumOptions&) -> SideValue {
         const double w = kPi / p.at("nu");
         return 0.25 * std::exp(w) * lerch_phi(-std::exp(2.0 * w), 2, 0.5) +
                0.25 * std::exp(-w) * lerch_phi(-std::exp(-2.0 * w), 2, 0.5);
       },
       [](const ParamMap& p, const SumOptions& o) {
         const double nu = p.at("nu");
         // Terms tend to (-1)^k/(4(2k+1)^2) when nu = 1: Euler transform.
         const SideValue s1 = sum_alternating_euler(
             [nu](long k) {
               const double j = double(2 * k + 1);
               const double x = kPi * j / (2.0 * nu);
               return std::exp(2.0 * log_sinh(x) - log_expm1(j * kPi * nu)) /
                      (j * j);
             },
             o, 0);
         const SideValue s2 = sum_series(
             [nu](long k) {
               const double x = double(k);
               const double s = std::sin(x * kPi / nu);
               return s * s / (std::cosh(x * kPi / nu) * x * x);
             },
             o, 1);
         return 2.0 * catalan() + kPi * kPi / (2.0 * nu * nu * nu) - 8.0 * s1 +
                nu * s2;
       },
       always(Status::unverified), "", {}});
  return r;
}

inline std::vector<IdentityRecord> build_registry() {
  return {lemma1_closed_sech(), eq13(),          eq14(),
          elliptic_sinh_sum(),  eq15(),          eq16(),
          eq17(),               app3a_zeta5(),   app3b_zeta3(),
          eq18_li3(),           app3d(),         app3e(),
          app3f(),              app4_closed_nu1(), app4_closed_nu2(),
          app4_general(),       app5_arccot(),   app6_lerch()};
}

}  // namespace detail

/// All identities in a fixed order. Built once; immutable afterwards.
inline const std::vector<IdentityRecord>& list_identities() {
  static const std::vector<IdentityRecord> registry = detail::build_registry();
  return registry;
}

inline const IdentityRecord& find_identity(std::string_view id) {
  for (const auto& r : list_identities()) {
    if (r.id == id) return r;
  }
  throw std::invalid_argument("unknown identity '" + std::string(id) + "'");
}

namespace detail {

inline VerificationOutcome evaluate(const IdentityRecord& rec,
                                    const Variant& var, const ParamMap& params,
                                    const Tolerances& tol) {
  VerificationOutcome out;
  out.identity_id = rec.id;
  out.variant_name = var.name;
  out.params = params;
  out.expected_status = var.expected_at(params);
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto opts = tol.series_options();
    const SideValue lhs = var.lhs(params, opts);
    const SideValue rhs = var.rhs(params, opts);
    out.lhs = lhs.value;
    out.rhs = rhs.value;
    out.abs_residual = std::abs(lhs.value - rhs.value);
    const double scale = std::max(std::abs(lhs.value), std::abs(rhs.value));
    out.rel_residual = scale > 0.0 ? out.abs_residual / scale : 0.0;
    if (!lhs.converged || !rhs.converged) {
      out.status = Status::error;
      out.message = std::string(!lhs.converged ? "lhs" : "rhs") +
                    " series did not converge within max_terms";
    } else if (!std::isfinite(out.abs_residual)) {
      out.status = Status::error;
      out.message = "non-finite side value";
    } else {
      out.status = tol.accepts(lhs.value, rhs.value) ? Status::pass
                                                      : Status::fail;
    }
  } catch (const std::exception& e) {
    out.status = Status::error;
    out.message = e.what();
  }
  out.elapsed = std::chrono::steady_clock::now() - start;
  return out;
}

}  // namespace detail

/// Checks one variant at `params` (merged over the defaults). Unknown ids,
/// variants or parameters, and variants not defined at the given parameters,
/// throw. Numerical trouble is reported as Status::error, never thrown.
inline VerificationOutcome verify(std::string_view id,
                                  std::string_view variant,
                                  const ParamMap& params = {},
                                  const Tolerances& tol = {}) {
  tol.validate();
  const IdentityRecord& rec = find_identity(id);
  const Variant* var = rec.find_variant(variant);
  if (var == nullptr) {
    throw std::invalid_argument("identity '" + rec.id + "' has no variant '" +
                                std::string(variant) + "'");
  }
  const ParamMap resolved = rec.resolve(params);
  if (!var->applies(resolved)) {
    throw domain_error("variant '" + var->name + "' of '" + rec.id +
                       "' is not defined at these parameters");
  }
  return detail::evaluate(rec, *var, resolved, tol);
}

struct VerificationJob {
  const IdentityRecord* identity;
  const Variant* variant;
  ParamMap params;
};

/// Runs jobs on up to `parallelism` threads; results keep the job order.
inline std::vector<VerificationOutcome> run_jobs(
    const std::vector<VerificationJob>& jobs, const Tolerances& tol,
    unsigned parallelism = 1) {
  tol.validate();
  if (parallelism == 0) throw domain_error("parallelism must be >= 1");
  std::vector<VerificationOutcome> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const auto& j = jobs[i];
      out[i] = detail::evaluate(*j.identity, *j.variant, j.params, tol);
    }
  };
  const auto n = std::min<std::size_t>(parallelism, jobs.size());
  if (n <= 1) {
    worker();
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
  pool.clear();  // joins
  return out;
}

/// Every (identity, variant, grid point) in registry, variant, grid order.
inline std::vector<VerificationJob> full_grid_jobs() {
  std::vector<VerificationJob> jobs;
  for (const auto& rec : list_identities()) {
    const auto grid = rec.grid();
    for (const auto& var : rec.variants) {
      for (const auto& p : grid) {
        if (var.applies(p)) jobs.push_back({&rec, &var, p});
      }
    }
  }
  return jobs;
}

enum class LedgerKind { erratum, unexpected, resolved };

inline const char* to_string(LedgerKind k) {
  switch (k) {
    case LedgerKind::erratum: return "erratum";
    case LedgerKind::unexpected: return "unexpected";
    case LedgerKind::resolved: return "resolved";
  }
  return "?";
}

struct LedgerRecord {
  LedgerKind kind = LedgerKind::unexpected;
  std::string identity_id;
  std::string variant_name;
  ParamMap params;
  Status status = Status::error;
  Status expected_status = Status::unverified;
  double printed_value = 0.0;   // rhs of the variant as evaluated
  double computed_value = 0.0;  // lhs
  std::string corrected_variant;
  std::optional<double> corrected_value;
  std::string note;
};

/// Ledger over a set of outcomes:
///   erratum     failing as_printed variants, with their passing corrected or
///               derived sibling at the same parameters
///   unexpected  any other outcome whose status differs from expectation
///   resolved    outcomes of unverified variants, pass or fail
inline std::vector<LedgerRecord> build_ledger(
    const std::vector<VerificationOutcome>& outcomes) {
  std::vector<LedgerRecord> ledger;
  auto sibling = [&](const VerificationOutcome& o)
      -> const VerificationOutcome* {
    for (const char* name : {"corrected", "derived_closed_form"}) {
      for (const auto& s : outcomes) {
        if (s.identity_id == o.identity_id && s.variant_name == name &&
            s.params == o.params && s.status == Status::pass) {
          return &s;
        }
      }
    }
    return nullptr;
  };
  for (const auto& o : outcomes) {
    const auto& rec = find_identity(o.identity_id);
    const Variant* var = rec.find_variant(o.variant_name);
    LedgerRecord r;
    r.identity_id = o.identity_id;
    r.variant_name = o.variant_name;
    r.params = o.params;
    r.status = o.status;
    r.expected_status = o.expected_status;
    r.printed_value = o.rhs;
    r.computed_value = o.lhs;
    r.note = o.message.empty() && var != nullptr ? var->note : o.message;
    if (o.variant_name == "as_printed" && o.status == Status::fail) {
      r.kind = LedgerKind::erratum;
      if (const auto* s = sibling(o)) {
        r.corrected_variant = s->variant_name;
        r.corrected_value = s->rhs;
        if (r.note.empty()) r.note = rec.find_variant(s->variant_name)->note;
      }
    } else if (o.expected_status == Status::unverified) {
      r.kind = LedgerKind::resolved;
    } else if (!o.matches_expectation()) {
      r.kind = LedgerKind::unexpected;
    } else {
      continue;
    }
    ledger.push_back(std::move(r));
  }
  return ledger;
}

struct VerifyAllResult {
  std::vector<VerificationOutcome> outcomes;
  std::vector<LedgerRecord> ledger;
};

inline VerifyAllResult verify_all(const Tolerances& tol = {},
                                  unsigned parallelism = 1) {
  VerifyAllResult r;
  r.outcomes = run_jobs(full_grid_jobs(), tol, parallelism);
  r.ledger = build_ledger(r.outcomes);
  return r;
}

}  // namespace poisson
