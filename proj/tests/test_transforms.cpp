#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include "oracles.hpp"
#include "poisson/descriptors.hpp"
#include "poisson/transforms.hpp"

using namespace poisson;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;
const double kLattice[] = {0.5, 1.0, std::numbers::sqrt2, 2.0};

// Abel constants by the integral route: c_e = int_0^inf f/cosh(pi t),
// c_o = int_0^inf f/sinh(pi t). Shares no code with the extrapolation ladder.
double abel_by_integral(const FunctionDescriptor& d) {
  SumOptions o;
  o.rel_tol = 1e-13;
  o.abs_tol = 1e-15;
  if (d.parity == Parity::even) {
    return integrate_decaying(
               [&d](double t) { return d.real_eval(t) / std::cosh(kPi * t); },
               kPi, o)
        .value;
  }
  return integrate_decaying(
             [&d](double t) {
               return t == 0.0 ? *d.deriv_at_zero / kPi
                               : d.real_eval(t) / std::sinh(kPi * t);
             },
             kPi, o)
      .value;
}

// Brute-force lhs of either theorem in long double.
long double lhs_oracle(const FunctionDescriptor& d, double a) {
  const long double sa = std::sqrt((long double)a);
  long double s = 0;
  for (int k = 1; k < 400; ++k) {
    const long double t = k * (long double)a;
    const long double w = d.parity == Parity::even
                              ? 1 / std::cosh(oracle::kPi * t)
                              : 1 / std::sinh(oracle::kPi * t);
    if (!std::isfinite((double)w) || w == 0) break;
    s += d.real_eval(double(t)) * w;
  }
  const long double head = d.parity == Parity::even
                               ? 0.5L * *d.value_at_zero
                               : *d.deriv_at_zero / (2 * oracle::kPi);
  return sa * (head + s);
}

}  // namespace

TEST_CASE("builtin descriptor registry", "[transforms][descriptors]") {
  for (const auto& info : builtin_descriptor_catalog()) {
    std::string name = info.name;
    if (auto c = name.find(':'); c != std::string::npos) {
      name = name.substr(0, c) + (name.substr(0, c) == "tcospi" ? ":3" : ":0.5");
    }
    const auto d = builtin_descriptor(name);
    CHECK(d.parity == info.parity);
    CHECK_NOTHROW(d.validate());
  }
  CHECK_THROWS_AS(builtin_descriptor("nosuch"), std::invalid_argument);
  CHECK_THROWS_AS(builtin_descriptor("cos"), std::invalid_argument);
  CHECK_THROWS_AS(builtin_descriptor("one:2"), std::invalid_argument);
  CHECK_THROWS_AS(builtin_descriptor("tcospi:2"), std::invalid_argument);
  CHECK_THROWS_AS(builtin_descriptor("sinc-pi:x"), std::invalid_argument);
}

TEST_CASE("imaginary-axis evaluators agree with f(iy)", "[transforms]") {
  // even f: f(iy) = r(y); odd f: f(iy) = i r(y). Checked against the Taylor
  // series of each builtin at y = 0.3.
  const double y = 0.3;
  CHECK_THAT(builtin_descriptor("tsq").imag_eval(y), WithinAbs(-y * y, 1e-16));
  CHECK_THAT(builtin_descriptor("t3").imag_eval(y), WithinAbs(-y * y * y, 1e-16));
  CHECK_THAT(builtin_descriptor("t5").imag_eval(y), WithinAbs(std::pow(y, 5), 1e-16));
  CHECK_THAT(builtin_descriptor("sinc-pi:1").imag_eval(y),
             WithinRel(std::sinh(kPi * y) / y, 1e-15));
  CHECK_THAT(builtin_descriptor("tcospi:1").imag_eval(y),
             WithinRel(y * std::cosh(kPi * y), 1e-15));
}

TEST_CASE("Abel constants", "[transforms][abel]") {
  SECTION("extrapolation ladder reproduces eta(-m)") {
    CHECK_THAT(abel_constant(builtin_descriptor("one")), WithinAbs(0.5, 1e-10));
    CHECK_THAT(abel_constant(builtin_descriptor("t")), WithinAbs(0.25, 1e-10));
    CHECK_THAT(abel_constant(builtin_descriptor("t3")), WithinAbs(0.125, 1e-9));
    CHECK_THAT(abel_constant(builtin_descriptor("t5")), WithinAbs(0.25, 1e-8));
    CHECK_THAT(abel_constant(builtin_descriptor("tsq")), WithinAbs(0.125, 1e-9));
    CHECK_THAT(abel_constant(builtin_descriptor("t4")), WithinAbs(0.15625, 1e-8));
  }
  SECTION("closed forms agree with the integral route") {
    for (const char* name :
         {"cos:0.25", "cos:0.9", "sinc-pi:0.5", "sinc-pi:2", "tcospi:1",
          "tcospi:3", "tcospi:5"}) {
      const auto d = builtin_descriptor(name);
      INFO(name);
      REQUIRE(d.abel_constant_closed_form);
      CHECK_THAT(*d.abel_constant_closed_form,
                 WithinAbs(abel_by_integral(d), 1e-11));
    }
  }
  SECTION("ladder agrees with the integral route") {
    for (const char* name : {"one", "tsq", "t4", "t", "t3", "t5"}) {
      const auto d = builtin_descriptor(name);
      INFO(name);
      const auto est = abel_constant_estimate(d);
      CHECK_FALSE(est.closed_form);
      CHECK_THAT(est.value, WithinAbs(abel_by_integral(d), 1e-8));
    }
  }
}

TEST_CASE("Theorem sides agree for builtin even functions",
          "[transforms][theorem1][property]") {
  for (const char* name : {"one", "tsq", "t4", "cos:0.5", "sinc-pi:0.5"}) {
    const auto d = builtin_descriptor(name);
    for (double a : kLattice) {
      INFO(name << " a=" << a);
      const auto rep = theorem1_sides(d, a);
      CHECK(rep.abs_residual < 1e-8);
      CHECK(rep.lhs.converged);
      CHECK(rep.rhs.converged);
      CHECK_THAT(rep.lhs.value, WithinAbs(double(lhs_oracle(d, a)), 1e-13));
    }
  }
}

TEST_CASE("Theorem sides agree for builtin odd functions",
          "[transforms][theorem2][property]") {
  for (const char* name : {"t", "t3", "t5", "tcospi:1", "tcospi:3"}) {
    const auto d = builtin_descriptor(name);
    for (double a : kLattice) {
      // t^n cos(pi t) grows like e^(pi y) on the imaginary axis; the rhs
      // needs b = 2 pi/a above pi
      if (d.label.starts_with("tcospi") && a >= 2.0) continue;
      INFO(name << " a=" << a);
      const auto rep = theorem2_sides(d, a);
      CHECK(rep.abs_residual < 1e-8);
      CHECK_THAT(rep.lhs.value, WithinAbs(double(lhs_oracle(d, a)), 1e-13));
    }
  }
}

TEST_CASE("Theorem rhs diverges when b does not beat the growth on iR",
          "[transforms]") {
  CHECK_THROWS_AS(theorem2_sides(builtin_descriptor("tcospi:1"), 2.0),
                  convergence_error);
}

TEST_CASE("Theorem reference values", "[transforms]") {
  const auto one = theorem1_sides(builtin_descriptor("one"), 1.0);
  CHECK_THAT(one.lhs.value, WithinAbs(0.590170299508048113, 1e-13));
  CHECK_THAT(one.rhs.value, WithinAbs(0.590170299508048113, 1e-9));
  const auto t = theorem2_sides(builtin_descriptor("t"), 1.0);
  CHECK_THAT(t.lhs.value, WithinAbs(0.253727962756657275, 1e-13));
  CHECK_THAT(t.rhs.value, WithinAbs(0.253727962756657275, 1e-9));
  // a and 2 pi/a give the same value for f = 1 up to the sqrt(a) scaling
  CHECK_THAT(theorem1_sides(builtin_descriptor("one"), 0.5).lhs.value,
             WithinAbs(0.71239857059106, 1e-13));
  CHECK_THAT(theorem1_sides(builtin_descriptor("tsq"), 0.5).lhs.value,
             WithinAbs(0.175453784784890, 1e-13));
  CHECK_THAT(theorem2_sides(builtin_descriptor("t5"), 1.0).lhs.value,
             WithinAbs(0.253521822774919, 1e-13));
}

TEST_CASE("Theorem preconditions", "[transforms]") {
  CHECK_THROWS_AS(theorem1_sides(builtin_descriptor("t"), 1.0), parity_error);
  CHECK_THROWS_AS(theorem2_sides(builtin_descriptor("one"), 1.0), parity_error);
  CHECK_THROWS_AS(theorem1_sides(builtin_descriptor("one"), 0.0), domain_error);
  CHECK_THROWS_AS(theorem1_sides(builtin_descriptor("one"), -1.0), domain_error);
  CHECK(TransformParams(0.5).b() == 4.0 * kPi);

  auto fast = FunctionDescriptor::even(
                  "cosh-pi", [](double t) { return std::cos(0.1 * t); },
                  [](double y) { return std::cosh(0.1 * y); }, 1.0)
                  .with_abel_constant(0.5 / std::cosh(0.05))
                  .with_growth(0.0, 4.0);
  const auto rep = theorem1_sides(fast, 1.0);
  REQUIRE_FALSE(rep.warnings.empty());
  CHECK(rep.warnings.front().find("not below pi") != std::string::npos);

  FunctionDescriptor incomplete;
  incomplete.label = "broken";
  CHECK_THROWS_AS(incomplete.validate(), domain_error);
}

TEST_CASE("Lemma dual sides", "[transforms][lemma][property]") {
  for (const char* name : {"one", "tsq", "cos:0.25"}) {
    const auto d = builtin_descriptor(name);
    for (double g : {1.0, 2.0, 3.0}) {
      INFO(name << " gamma=" << g);
      const auto i1 = lemma1_integral(d, g);
      const auto s1 = lemma1_series(d, g);
      const double bound1 =
          3.0 * (i1.error_estimate + s1.tail_estimate) + 1e-14;
      CHECK(std::abs(i1.value - s1.value) <= bound1);

      const auto i2 = lemma2_integral(d, g);
      const auto s2 = lemma2_series(d, g);
      const double bound2 =
          3.0 * (i2.error_estimate + s2.tail_estimate) + 1e-14;
      CHECK(std::abs(i2.value - s2.value) <= bound2);
    }
  }
}

TEST_CASE("Lemma anchors", "[transforms][lemma]") {
  const auto one = builtin_descriptor("one");
  CHECK_THAT(lemma1_integral(one, 2.0).value,
             WithinAbs(0.5 / std::cosh(1.0), 1e-12));
  CHECK_THAT(lemma1_integral(one, 2.0).value,
             WithinAbs(0.3240271368319427, 1e-13));
  CHECK_THAT(lemma2_integral(one, 1.0).value,
             WithinAbs(0.196611933241481853, 1e-13));
  CHECK_THAT(lemma2_integral(one, 2.0).value,
             WithinAbs(0.104993585403506517, 1e-13));
  // cos(t/4) cos(2t) = (cos(9t/4) + cos(7t/4))/2
  CHECK_THAT(lemma1_integral(builtin_descriptor("cos:0.25"), 2.0).value,
             WithinAbs(0.25 / std::cosh(1.125) + 0.25 / std::cosh(0.875), 1e-13));
  CHECK_THROWS_AS(lemma1_integral(builtin_descriptor("t"), 1.0), parity_error);
  CHECK_THROWS_AS(lemma1_series(one, 0.0), domain_error);
  CHECK_THROWS_AS(lemma2_integral(one, -1.0), domain_error);
}
