// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is 0 when the set of failing criteria equals kKnownFailures,
// 1 otherwise (a new failure, or a known failure that started passing).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "poisson/catalog.hpp"
#include "poisson/cli.hpp"
#include "poisson/descriptors.hpp"
#include "poisson/special_functions.hpp"
#include "poisson/transforms.hpp"

using namespace poisson;

namespace {

// The printed nu = 2 closed form is off by a factor -2 from the series; the
// criterion asks for agreement with the printed value, so it cannot pass.
const std::set<int> kKnownFailures{6};

struct Check {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      std::ostringstream os;
      os.precision(15);
      os << what << ": got " << got << ", want " << want << " +- " << tol;
      failures.push_back(os.str());
    }
  }
};

using Criterion = std::function<void(Check&)>;

void transforms(Check& c) {
  const double lattice[] = {0.5, 1.0, std::numbers::sqrt2, 2.0};
  for (const char* name : {"one", "tsq", "t4", "cos:0.5", "sinc-pi:0.5"}) {
    for (double a : lattice) {
      const auto r = theorem1_sides(builtin_descriptor(name), a);
      c.expect(r.abs_residual < 1e-8,
               std::string("theorem1 ") + name + " a=" + std::to_string(a));
    }
  }
  for (const char* name : {"t", "t3", "t5"}) {
    for (double a : lattice) {
      const auto r = theorem2_sides(builtin_descriptor(name), a);
      c.expect(r.abs_residual < 1e-8,
               std::string("theorem2 ") + name + " a=" + std::to_string(a));
    }
  }
  // reference values from the brute-force oracle
  const auto one = theorem1_sides(builtin_descriptor("one"), 1.0);
  c.near(one.lhs.value, 0.5901702995080481, 1e-8, "theorem1(1) lhs");
  c.near(one.rhs.value, 0.5901702995080481, 1e-8, "theorem1(1) rhs");
  const auto t = theorem2_sides(builtin_descriptor("t"), 1.0);
  c.near(t.lhs.value, 0.2537279627566573, 1e-8, "theorem2(t) lhs");
  c.near(t.rhs.value, 0.2537279627566573, 1e-8, "theorem2(t) rhs");
}

void lemmas(Check& c) {
  for (const char* name : {"one", "tsq", "cos:0.25"}) {
    const auto d = builtin_descriptor(name);
    for (double g : {0.5, 1.0, 2.0}) {
      const auto i1 = lemma1_integral(d, g);
      const auto s1 = lemma1_series(d, g);
      c.expect(std::abs(i1.value - s1.value) <=
                   3.0 * (i1.error_estimate + s1.tail_estimate) + 1e-14,
               std::string("lemma1 ") + name + " gamma=" + std::to_string(g));
      const auto i2 = lemma2_integral(d, g);
      const auto s2 = lemma2_series(d, g);
      c.expect(std::abs(i2.value - s2.value) <=
                   3.0 * (i2.error_estimate + s2.tail_estimate) + 1e-14,
               std::string("lemma2 ") + name + " gamma=" + std::to_string(g));
    }
  }
  c.near(lemma1_integral(builtin_descriptor("one"), 2.0).value,
         0.5 / std::cosh(1.0), 1e-9, "cos(2t) sech(pi t) anchor");
  c.near(0.5 / std::cosh(1.0), 0.32402714, 1e-8, "anchor digits");
}

void eq16_exact(Check& c) {
  const auto n1 = verify("eq16", "as_printed", {{"n", 1}});
  const auto n2 = verify("eq16", "as_printed", {{"n", 2}});
  c.near(n1.lhs, 1.0 / 504.0, 1e-12, "n=1 series");
  c.near(n2.lhs, 1.0 / 264.0, 1e-12, "n=2 series");
  c.expect(n1.abs_residual < 1e-12 && n2.abs_residual < 1e-12, "residuals");
  c.expect(n1.status == Status::pass && n2.status == Status::pass, "status");
}

void errata(Check& c) {
  const auto& ledger = verify_all().ledger;
  for (const char* id : {"eq13", "eq15", "eq17"}) {
    const auto& rec = find_identity(id);
    for (const auto& p : rec.grid()) {
      const auto printed = verify(id, "as_printed", p);
      const auto fixed = verify(id, "corrected", p);
      const int index = std::string(id) == "eq13" ? 2 * int(p.at("m")) + 1
                                                  : 4 * int(p.at("n")) + 1;
      const std::string where = std::string(id) + " " + format_params(p, ",");
      c.expect(printed.status == Status::fail, where + " printed should fail");
      c.near(printed.abs_residual, abs(q_number(index)).to_double() / 4, 1e-6,
             where + " residual");
      c.expect(fixed.status == Status::pass && fixed.abs_residual < 1e-8,
               where + " corrected should pass");
    }
    const bool listed =
        std::any_of(ledger.begin(), ledger.end(), [&](const LedgerRecord& r) {
          return r.identity_id == id && r.kind == LedgerKind::erratum &&
                 !r.note.empty();
        });
    c.expect(listed, std::string(id) + " missing from ledger");
  }
  c.near(verify("eq13", "as_printed", {{"m", 0}, {"a", 1}}).abs_residual,
         1.0 / 16.0, 1e-6, "eq13 m=0 residual");
}

void eq14(Check& c) {
  const auto printed = verify("eq14", "as_printed", {{"a", 1}});
  c.expect(printed.status == Status::fail, "printed should fail at a=1");
  c.near(printed.rhs, -0.04915, 1e-5, "printed rhs");
  c.near(printed.lhs, 0.0018640, 1e-7, "series");
  const auto fixed = verify("eq14", "corrected", {{"a", 1}});
  c.expect(fixed.status == Status::pass && fixed.abs_residual < 1e-9,
           "corrected should pass");
  const auto m = modulus_from_ratio(1.0);
  const auto e = elliptic_from_modulus(m.modulus_k);
  const double pi = std::numbers::pi;
  c.near(1 / (4 * pi) - 0.125 + e.K * (e.K - e.E) / (2 * pi * pi),
         double(oracle::kAltSumKOverExp2PiK), 1e-9, "closed form vs series");
  const auto aux = verify("elliptic_sinh_sum", "aux");
  c.expect(aux.status == Status::pass, "aux should pass");
  c.near(aux.lhs, double(oracle::kSumKOverSinhPiK), 1e-7, "sum k/sinh(pi k)");
  c.near(e.K * (e.K - e.E) / (pi * pi), double(oracle::kSumKOverSinhPiK),
         1e-7, "K(K-E)/pi^2");
}

void application4(Check& c) {
  const double pi = std::numbers::pi;
  const double s = 1 / std::cosh(pi / 2);
  const double nu1 =
      (33 - 26 * std::cosh(pi) + std::cosh(2 * pi)) * std::pow(s, 6) / 64;
  c.near(nu1, -4.0321e-5, 1e-9, "nu=1 closed form digits");
  const auto v1 = verify("app4_closed_nu1", "as_printed");
  c.near(v1.lhs, nu1, 1e-10, "nu=1 series vs closed form");
  const auto v2 = verify("app4_closed_nu2", "as_printed");
  c.near(v2.lhs, v2.rhs, 1e-10, "nu=2 series vs printed rational");
  for (int nu : {1, 2, 3}) {
    const auto g = verify("app4_general", "derived_closed_form",
                          {{"nu", double(nu)}});
    c.expect(g.status == Status::pass,
             "general closed form nu=" + std::to_string(nu));
  }
  const double general2 = -0.5 * li_negative_order(9, -std::exp(pi));
  c.near(general2, v2.lhs, 1e-10, "general form vs nu=2 series");
  c.near(general2, v2.rhs, 1e-10, "general form vs nu=2 printed");
}

void application5(Check& c) {
  const auto& rec = find_identity("app5_arccot");
  for (const auto& p : rec.grid()) {
    const auto o = verify("app5_arccot", "as_printed", p);
    const double want = std::atan(std::exp(-p.at("nu") * std::numbers::pi / 2));
    c.near(o.lhs, want, 1e-10, "lhs " + format_params(p, ","));
    c.near(o.rhs, want, 1e-10, "rhs " + format_params(p, ","));
  }
  const long double ref =
      std::atan(std::exp(-oracle::kPi / 2));  // long-double oracle
  c.near(verify("app5_arccot", "as_printed", {{"nu", 1}}).lhs, double(ref),
         1e-10, "nu=1");
}

void applications_3d_3f(Check& c) {
  const auto d = verify("app3d", "as_printed");
  const auto f = verify("app3f", "as_printed");
  c.expect(d.abs_residual < 1e-8 && d.status == Status::pass, "app3d passes");
  c.expect(f.abs_residual < 1e-8 && f.status == Status::pass, "app3f passes");
  c.near(d.lhs, 0.0886684, 1e-6, "app3d value");
  c.near(f.lhs, 0.5463025, 1e-6, "app3f value");
}

void special_functions(Check& c) {
  const Rational q[] = {{1, 2}, {-1, 4}, 0, {1, 8}, 0, {-1, 4}, 0, {17, 16}};
  const auto taylor = oracle::q_taylor(7);
  for (int n = 0; n < 8; ++n) {
    c.expect(q_number(n) == q[n], "Q_" + std::to_string(n) + " exact");
    c.near(q_number(n).to_double(), double(taylor[n]), 1e-12,
           "Q_" + std::to_string(n) + " Taylor oracle");
  }
  const auto e = elliptic_from_modulus(std::sqrt(0.5));
  c.near(e.K, 1.854074677, 1e-9, "K digits");
  c.near(e.E, 1.350643881, 1e-9, "E digits");
  c.near(e.K, double(oracle::kK_sqrt_half), 1e-11, "K");
  c.near(e.E, double(oracle::kE_sqrt_half), 1e-11, "E");
  for (double k = 0.02; k < 1.0; k += 0.07) {
    const auto p = elliptic_from_modulus(k);
    const auto r = elliptic_from_modulus(p.complementary_k);
    c.near(p.E * r.K + r.E * p.K - p.K * r.K, std::numbers::pi / 2, 1e-12,
           "Legendre relation k=" + std::to_string(k));
  }
  c.near(lerch_phi(-1.0, 2, 0.5), 4 * double(oracle::kCatalan), 1e-10,
         "Phi(-1,2,1/2)");
  c.near(li3(-1.0), -0.75 * double(oracle::kZeta3), 1e-12, "Li3(-1)");
}

void unverified(Check& c) {
  const auto run = verify_all();
  std::set<std::string> seen;
  for (const auto& o : run.outcomes) {
    if (o.expected_status != Status::unverified) continue;
    seen.insert(o.identity_id);
    const std::string where = o.identity_id + "/" + o.variant_name + " " +
                              format_params(o.params, ",");
    c.expect(o.status == Status::pass || o.status == Status::fail,
             where + " has no outcome");
    const bool listed =
        std::any_of(run.ledger.begin(), run.ledger.end(), [&](const auto& r) {
          return r.identity_id == o.identity_id &&
                 r.variant_name == o.variant_name && r.params == o.params &&
                 r.status == o.status;
        });
    c.expect(listed, where + " not resolved in the ledger");
    if (o.status == Status::fail) {
      const bool discrepancy = std::any_of(
          run.ledger.begin(), run.ledger.end(), [&](const auto& r) {
            return r.identity_id == o.identity_id &&
                   r.status == Status::fail;
          });
      c.expect(discrepancy, where + " failure without discrepancy record");
    }
  }
  for (const char* id : {"app3a_zeta5", "app3b_zeta3", "app3e", "eq18_li3",
                         "app6_lerch", "eq14"}) {
    c.expect(seen.count(id) == 1, std::string(id) + " produced no outcome");
  }
  const auto c0 = verify("eq18_li3", "as_printed", {{"c", 0.0}});
  c.expect(c0.status == Status::pass, "eq18 c=0 passes");
  c.expect(std::abs(c0.rhs) < 1e-10, "eq18 c=0 rhs vanishes");
}

void cli_contract(Check& c) {
  auto run = [](std::vector<std::string> args, std::string* out = nullptr) {
    std::ostringstream o, e;
    const int code = cli::run_cli(args, o, e);
    if (out) *out = o.str();
    return code;
  };
  c.expect(run({"verify", "--id", "eq16"}) == 0, "exit 0");
  c.expect(run({"verify", "--id", "eq13", "--strict"}) == 1, "exit 1");
  c.expect(run({"verify", "--id", "nosuch"}) == 2, "exit 2 unknown id");
  c.expect(run({"verify", "--id", "eq16", "--param", "n=99"}) == 2,
           "exit 2 out of domain");

  const std::set<std::string> keys{
      "identity", "variant",  "params",          "lhs",
      "rhs",      "abs_residual", "rel_residual", "status",
      "expected_status", "elapsed_ms", "message"};
  std::string one, four;
  run({"verify", "--grid", "--format", "json", "--no-timing", "--parallel",
       "1"},
      &one);
  run({"verify", "--grid", "--format", "json", "--no-timing", "--parallel",
       "4"},
      &four);
  c.expect(one == four, "--parallel changes output");
  try {
    const auto j = nlohmann::json::parse(one);
    c.expect(j.is_array() && !j.empty(), "report is a non-empty array");
    for (const auto& o : j) {
      std::set<std::string> k;
      for (auto it = o.begin(); it != o.end(); ++it) k.insert(it.key());
      if (k != keys) {
        c.expect(false, "schema keys differ");
        break;
      }
    }
  } catch (const std::exception& e) {
    c.expect(false, std::string("report is not JSON: ") + e.what());
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Criterion>> criteria{
      {"transform property suite", transforms},
      {"lemma dual-side agreement", lemmas},
      {"Bernoulli closed forms k^(4n+1)/(e^(2 pi k)-1)", eq16_exact},
      {"factor-two errata detected and corrected", errata},
      {"alternating k/(e^(2 pi k)-1) and elliptic closed form", eq14},
      {"k^(4nu+1) cosh(k pi) sums vs printed rationals", application4},
      {"arctan(e^(-nu pi/2)) identity", application5},
      {"two hyperbolic sums with hand anchors", applications_3d_3f},
      {"special-function oracles", special_functions},
      {"unverified entries resolved with ledger records", unverified},
      {"CLI exit codes, JSON schema, parallel invariance", cli_contract},
  };

  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = int(i) + 1;
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = c.failures.empty();
    if (!ok) failed.insert(id);
    std::printf("%s %2d %s\n", ok ? "PASS" : "FAIL", id,
                criteria[i].first.c_str());
    for (const auto& f : c.failures) std::printf("       %s\n", f.c_str());
  }

  std::printf("\n%zu/%zu criteria pass\n", criteria.size() - failed.size(),
              criteria.size());
  for (int id : kKnownFailures) {
    std::printf("known failure %d: %s\n", id,
                failed.count(id) ? "still failing (expected)"
                                 : "now PASSES, update kKnownFailures");
  }
  return failed == kKnownFailures ? 0 : 1;
}
