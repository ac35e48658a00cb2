#pragma once

// Builtin function descriptors, addressable by name from the CLI.
//
//   one, tsq, t4          even polynomials 1, t^2, t^4
//   cos:C                 even cos(C t); c_e = sech(C/2)/2
//   sinc-pi:NU            even sin(pi NU t)/t; c_e = 2 atan(tanh(pi NU/4))
//   t, t3, t5, t7         odd monomials
//   tcospi:N              odd t^N cos(pi t), N odd;
//                         c_o = (-1)^((N+1)/2) Li_{-N}(-e^pi)
//
// Polynomials carry no closed-form Abel constant, so their c_e / c_o comes
// from the extrapolation ladder.

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "poisson/special_functions.hpp"
#include "poisson/transforms.hpp"

namespace poisson {

struct BuiltinInfo {
  std::string name;
  Parity parity;
  std::string description;
};

inline std::vector<BuiltinInfo> builtin_descriptor_catalog() {
  return {
      {"one", Parity::even, "f(t) = 1"},
      {"tsq", Parity::even, "f(t) = t^2"},
      {"t4", Parity::even, "f(t) = t^4"},
      {"cos:C", Parity::even, "f(t) = cos(C t), 0 < C < 1"},
      {"sinc-pi:NU", Parity::even, "f(t) = sin(pi NU t)/t, NU > 0"},
      {"t", Parity::odd, "f(t) = t"},
      {"t3", Parity::odd, "f(t) = t^3"},
      {"t5", Parity::odd, "f(t) = t^5"},
      {"t7", Parity::odd, "f(t) = t^7"},
      {"tcospi:N", Parity::odd, "f(t) = t^N cos(pi t), N odd, 1 <= N <= 19"},
  };
}

namespace detail {

inline double parse_builtin_argument(std::string_view text,
                                     std::string_view name) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw std::invalid_argument("builtin '" + std::string(name) +
                                "': bad argument '" + std::string(text) + "'");
  }
  return value;
}

// Odd monomial t^n: f(iy) = i^n y^n = i * (-1)^((n-1)/2) y^n.
inline FunctionDescriptor odd_monomial(int n) {
  const double sign = ((n - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
  return FunctionDescriptor::odd(
             n == 1 ? "t" : "t" + std::to_string(n),
             [n](double t) { return std::pow(t, n); },
             [n, sign](double y) { return sign * std::pow(y, n); },
             n == 1 ? 1.0 : 0.0)
      .with_growth(double(n), 0.0);
}

}  // namespace detail

/// Looks up a builtin by name ("one", "cos:0.25", "tcospi:5", ...).
/// Throws std::invalid_argument for unknown names or bad arguments.
inline FunctionDescriptor builtin_descriptor(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  const bool has_arg = colon != std::string_view::npos;
  auto no_arg = [&] {
    if (has_arg) {
      throw std::invalid_argument("builtin '" + std::string(name) +
                                  "' takes no argument");
    }
  };
  auto need_arg = [&] {
    if (!has_arg) {
      throw std::invalid_argument("builtin '" + std::string(name) +
                                  "' needs an argument, e.g. " +
                                  std::string(name) + ":1");
    }
    return detail::parse_builtin_argument(arg, name);
  };

  if (name == "one") {
    no_arg();
    return FunctionDescriptor::even(
               "one", [](double) { return 1.0; }, [](double) { return 1.0; },
               1.0)
        .with_growth(0.0, 0.0);
  }
  if (name == "tsq") {
    no_arg();
    return FunctionDescriptor::even(
               "tsq", [](double t) { return t * t; },
               [](double y) { return -y * y; }, 0.0)
        .with_growth(2.0, 0.0);
  }
  if (name == "t4") {
    no_arg();
    return FunctionDescriptor::even(
               "t4", [](double t) { return t * t * t * t; },
               [](double y) { return y * y * y * y; }, 0.0)
        .with_growth(4.0, 0.0);
  }
  if (name == "cos") {
    const double c = need_arg();
    if (!(c > 0.0 && c < 1.0)) {
      throw std::invalid_argument("builtin 'cos': need 0 < C < 1");
    }
    return FunctionDescriptor::even(
               "cos:" + std::string(arg),
               [c](double t) { return std::cos(c * t); },
               [c](double y) { return std::cosh(c * y); }, 1.0)
        .with_abel_constant(0.5 / std::cosh(0.5 * c))
        .with_growth(0.0, 0.0);
  }
  if (name == "sinc-pi") {
    const double nu = need_arg();
    if (!(nu > 0.0)) {
      throw std::invalid_argument("builtin 'sinc-pi': need NU > 0");
    }
    const double w = std::numbers::pi * nu;
    return FunctionDescriptor::even(
               "sinc-pi:" + std::string(arg),
               [w](double t) { return t == 0.0 ? w : std::sin(w * t) / t; },
               [w](double y) { return y == 0.0 ? w : std::sinh(w * y) / y; },
               w)
        .with_abel_constant(2.0 * std::atan(std::tanh(0.25 * w)))
        .with_growth(-1.0, 0.0);
  }
  if (name == "t" || name == "t3" || name == "t5" || name == "t7") {
    no_arg();
    const int n = name == "t" ? 1 : name[1] - '0';
    return detail::odd_monomial(n);
  }
  if (name == "tcospi") {
    const double nd = need_arg();
    const int n = int(nd);
    if (double(n) != nd || n < 1 || n % 2 == 0 || n > kEulerianMax) {
      throw std::invalid_argument(
          "builtin 'tcospi': N must be an odd integer in [1, 19]");
    }
    const double sign = ((n - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    const double abel =
        -sign * li_negative_order(n, -std::exp(std::numbers::pi));
    return FunctionDescriptor::odd(
               "tcospi:" + std::to_string(n),
               [n](double t) {
                 return std::pow(t, n) * std::cos(std::numbers::pi * t);
               },
               [n, sign](double y) {
                 return sign * std::pow(y, n) * std::cosh(std::numbers::pi * y);
               },
               n == 1 ? 1.0 : 0.0)
        .with_abel_constant(abel)
        .with_growth(double(n), 0.0);
  }
  throw std::invalid_argument("unknown builtin function '" + std::string(spec) +
                              "'");
}

}  // namespace poisson
