#pragma once

// Command-line front end. run_cli() returns the process exit code:
//   0  success; for verify, every outcome matched its expectation
//   1  verify found an outcome differing from expectation (or, with
//      --strict, any outcome that is not a pass)
//   2  usage or domain error
// Reports go to `out`, diagnostics to `err`.

#include <charconv>
#include <cstdint>
#include <exception>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "poisson/catalog.hpp"
#include "poisson/descriptors.hpp"
#include "poisson/report.hpp"
#include "poisson/special_functions.hpp"
#include "poisson/transforms.hpp"

namespace poisson::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline double parse_real(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw usage_error(std::string(what) + ": not a number: '" +
                      std::string(s) + "'");
  }
  return v;
}

inline int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw usage_error(std::string(what) + ": not an integer: '" +
                      std::string(s) + "'");
  }
  return v;
}

struct RunConfig {
  std::vector<std::string> selected_ids;
  std::string variant_filter;
  std::vector<std::string> param_overrides;  // "name=value"
  double abs_tol = Tolerances{}.abs_tol;
  double rel_tol = Tolerances{}.rel_tol;
  std::size_t max_terms = Tolerances{}.max_terms;
  std::string format = "text";
  unsigned parallel = 1;
  bool strict = false;
  bool grid = false;
  bool timing = true;

  [[nodiscard]] Tolerances tolerances() const {
    Tolerances t;
    t.abs_tol = abs_tol;
    t.rel_tol = rel_tol;
    t.max_terms = max_terms;
    t.validate();
    return t;
  }
};

inline ParamMap parse_overrides(const std::vector<std::string>& raw) {
  ParamMap m;
  for (const auto& s : raw) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw usage_error("--param expects name=value, got '" + s + "'");
    }
    m[s.substr(0, eq)] = parse_real(std::string_view(s).substr(eq + 1),
                                    "--param " + s.substr(0, eq));
  }
  return m;
}

inline std::string valid_ids() {
  std::string s;
  for (const auto& r : list_identities()) {
    if (!s.empty()) s += ", ";
    s += r.id;
  }
  return s;
}

inline std::vector<VerificationJob> plan_jobs(const RunConfig& cfg) {
  std::vector<const IdentityRecord*> selected;
  if (cfg.selected_ids.empty()) {
    for (const auto& r : list_identities()) selected.push_back(&r);
  } else {
    for (const auto& id : cfg.selected_ids) {
      bool found = false;
      for (const auto& r : list_identities()) {
        if (r.id == id) {
          selected.push_back(&r);
          found = true;
        }
      }
      if (!found) {
        throw usage_error("unknown identity '" + id +
                          "'; valid ids: " + valid_ids());
      }
    }
  }

  const ParamMap overrides = parse_overrides(cfg.param_overrides);
  if (cfg.grid && !overrides.empty()) {
    throw usage_error("--grid and --param cannot be combined");
  }
  for (const auto& [name, value] : overrides) {
    bool used = false;
    for (const auto* r : selected) used = used || r->param(name) != nullptr;
    if (!used) {
      throw usage_error("no selected identity has a parameter '" + name + "'");
    }
  }

  std::vector<VerificationJob> jobs;
  bool variant_seen = cfg.variant_filter.empty();
  for (const auto* r : selected) {
    std::vector<ParamMap> points;
    if (cfg.grid) {
      points = r->grid();
    } else {
      ParamMap mine;
      for (const auto& [name, value] : overrides) {
        if (r->param(name) != nullptr) mine[name] = value;
      }
      points.push_back(r->resolve(mine));
    }
    for (const auto& v : r->variants) {
      if (!cfg.variant_filter.empty() && v.name != cfg.variant_filter) continue;
      variant_seen = true;
      for (const auto& p : points) {
        if (v.applies(p)) jobs.push_back({r, &v, p});
      }
    }
  }
  if (!variant_seen) {
    throw usage_error("no selected identity has a variant '" +
                      cfg.variant_filter + "'");
  }
  return jobs;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const auto tol = cfg.tolerances();
  if (cfg.parallel < 1) throw usage_error("--parallel must be >= 1");
  const auto outcomes = run_jobs(plan_jobs(cfg), tol, cfg.parallel);
  const RenderOptions ro{cfg.timing};
  if (cfg.format == "json") {
    write_outcomes_json(out, outcomes, ro);
  } else if (cfg.format == "csv") {
    write_outcomes_csv(out, outcomes, ro);
  } else {
    write_outcomes_text(out, outcomes, ro);
  }
  for (const auto& o : outcomes) {
    const bool ok = cfg.strict ? o.status == Status::pass
                               : o.matches_expectation();
    if (!ok) return kExitMismatch;
  }
  return kExitOk;
}

inline int cmd_list(const std::string& format, std::ostream& out) {
  if (format == "json") {
    write_listing_json(out, list_identities());
  } else {
    write_listing_text(out, list_identities());
  }
  return kExitOk;
}

inline int cmd_eval(const std::string& fn, const std::vector<std::string>& args,
                    std::ostream& out) {
  auto need = [&](std::size_t n) {
    if (args.size() != n) {
      throw usage_error("eval " + fn + " takes " + std::to_string(n) +
                        " argument(s), got " + std::to_string(args.size()));
    }
  };
  auto real = [&](std::size_t i) { return parse_real(args[i], fn); };
  auto integer = [&](std::size_t i) { return parse_int(args[i], fn); };

  if (fn == "bernoulli") {
    need(1);
    out << bernoulli(integer(0)) << '\n';
  } else if (fn == "qnumber") {
    need(1);
    out << q_number(integer(0)) << '\n';
  } else if (fn == "eta-neg") {
    need(1);
    out << eta_negative(integer(0)) << '\n';
  } else if (fn == "eulerian") {
    need(2);
    out << eulerian(integer(0), integer(1)) << '\n';
  } else if (fn == "zeta") {
    need(1);
    out << format_real(zeta_int(integer(0))) << '\n';
  } else if (fn == "catalan") {
    need(0);
    out << format_real(catalan()) << '\n';
  } else if (fn == "li3") {
    need(1);
    out << format_real(li3(real(0))) << '\n';
  } else if (fn == "lerch") {
    need(3);
    out << format_real(lerch_phi(real(0), integer(1), real(2))) << '\n';
  } else if (fn == "K") {
    need(1);
    out << format_real(elliptic_from_modulus(real(0)).K) << '\n';
  } else if (fn == "E") {
    need(1);
    out << format_real(elliptic_from_modulus(real(0)).E) << '\n';
  } else if (fn == "modulus-from-ratio") {
    need(1);
    out << format_real(modulus_from_ratio(real(0)).modulus_k) << '\n';
  } else if (fn == "li-neg") {
    need(2);
    out << format_real(li_negative_order(integer(0), real(1))) << '\n';
  } else {
    throw usage_error(
        "unknown function '" + fn +
        "'; choose bernoulli, qnumber, eta-neg, eulerian, zeta, catalan, li3, "
        "lerch, K, E, modulus-from-ratio, li-neg");
  }
  return kExitOk;
}

inline int cmd_table(const std::string& which, int max,
                     const std::string& format, std::ostream& out) {
  if (max < 0) throw usage_error("--max must be >= 0");
  struct Row {
    int n;
    int k;
    std::string value;
  };
  std::vector<Row> rows;
  const bool triangle = which == "eulerian";
  if (which == "q") {
    if (max + 1 > kBernoulliMax) {
      throw usage_error("--max beyond cap " + std::to_string(kBernoulliMax - 1));
    }
    for (int n = 0; n <= max; ++n) rows.push_back({n, 0, q_number(n).to_string()});
  } else if (which == "bernoulli") {
    if (max > kBernoulliMax) {
      throw usage_error("--max beyond cap " + std::to_string(kBernoulliMax));
    }
    for (int n = 0; n <= max; ++n) {
      rows.push_back({n, 0, bernoulli(n).to_string()});
    }
  } else if (triangle) {
    if (max > kEulerianMax) {
      throw usage_error("--max beyond cap " + std::to_string(kEulerianMax));
    }
    for (int n = 1; n <= max; ++n) {
      for (int k = 0; k < n; ++k) {
        rows.push_back({n, k, std::to_string(eulerian(n, k))});
      }
    }
  } else {
    throw usage_error("table must be one of q, bernoulli, eulerian");
  }

  if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json j;
      j["n"] = r.n;
      if (triangle) j["k"] = r.k;
      j["value"] = r.value;
      arr.push_back(j);
    }
    out << arr.dump(2) << '\n';
  } else if (format == "csv") {
    out << (triangle ? "n,k,value\n" : "n,value\n");
    for (const auto& r : rows) {
      out << r.n << ',';
      if (triangle) out << r.k << ',';
      out << r.value << '\n';
    }
  } else {
    for (const auto& r : rows) {
      out << r.n << ' ';
      if (triangle) out << r.k << ' ';
      out << r.value << '\n';
    }
  }
  return kExitOk;
}

struct TransformArgs {
  std::string which;
  std::string function;
  double a = 1.0;
  double gamma = 1.0;
  std::size_t max_terms = SumOptions{}.max_terms;
  std::string format = "text";
};

inline int cmd_transform(const TransformArgs& t, std::ostream& out) {
  const auto d = builtin_descriptor(t.function);
  SumOptions opts;
  opts.max_terms = t.max_terms;
  nlohmann::ordered_json j;
  j["command"] = t.which;
  j["function"] = d.label;
  j["parity"] = to_string(d.parity);
  std::vector<std::string> warnings;

  if (t.which == "theorem1" || t.which == "theorem2") {
    const auto rep = t.which == "theorem1" ? theorem1_sides(d, t.a, opts)
                                           : theorem2_sides(d, t.a, opts);
    const TransformParams p(t.a);
    j["a"] = round15(p.a());
    j["b"] = round15(p.b());
    j["lhs"] = round15(rep.lhs.value);
    j["rhs"] = round15(rep.rhs.value);
    j["lhs_terms"] = rep.lhs.terms_used;
    j["rhs_terms"] = rep.rhs.terms_used;
    j["abs_residual"] = round15(rep.abs_residual);
    j["rel_residual"] = round15(rep.rel_residual);
    warnings = rep.warnings;
  } else if (t.which == "lemma1" || t.which == "lemma2") {
    const bool first = t.which == "lemma1";
    const auto integral = first ? lemma1_integral(d, t.gamma, opts)
                                : lemma2_integral(d, t.gamma, opts);
    const auto series = first ? lemma1_series(d, t.gamma, opts)
                              : lemma2_series(d, t.gamma, opts);
    j["gamma"] = round15(t.gamma);
    j["integral"] = round15(integral.value);
    j["integral_error"] = round15(integral.error_estimate);
    j["series"] = round15(series.value);
    j["series_tail"] = round15(series.tail_estimate);
    j["abs_residual"] = round15(std::abs(integral.value - series.value));
    if (!series.converged) warnings.push_back("series stopped at max_terms");
  } else {
    throw usage_error("transform must be theorem1, theorem2, lemma1 or lemma2");
  }
  j["warnings"] = warnings;

  if (t.format == "json") {
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "warnings") continue;
    out << key << ' ';
    if (value.is_string()) {
      out << value.get<std::string>();
    } else if (value.is_number_float()) {
      out << format_real(value.get<double>());
    } else {
      out << value.dump();
    }
    out << '\n';
  }
  for (const auto& w : warnings) out << "warning " << w << '\n';
  return kExitOk;
}

inline int cmd_ledger(const RunConfig& cfg, std::ostream& out) {
  if (cfg.parallel < 1) throw usage_error("--parallel must be >= 1");
  const auto result = verify_all(cfg.tolerances(), cfg.parallel);
  if (cfg.format == "json") {
    out << ledger_json(result.ledger).dump(2) << '\n';
  } else {
    write_ledger_markdown(out, result.ledger);
  }
  return kExitOk;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"Numerical checks of hyperbolic-series identities"};
  app.name("poisson_verify");
  app.require_subcommand(1);

  RunConfig cfg;
  auto add_tolerance_flags = [&cfg](CLI::App* sub) {
    sub->add_option("--tol", cfg.abs_tol, "absolute tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--rel-tol", cfg.rel_tol, "relative tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-terms", cfg.max_terms, "term cap per series")
        ->check(CLI::Range(std::size_t{16}, std::size_t{100000000}));
    sub->add_option("--parallel", cfg.parallel, "worker threads")
        ->check(CLI::Range(1u, 256u));
  };

  auto* verify = app.add_subcommand("verify", "check catalog identities");
  verify->add_option("--id", cfg.selected_ids, "identity id (repeatable)");
  verify->add_option("--variant", cfg.variant_filter, "variant name");
  verify->add_option("--param", cfg.param_overrides,
                     "parameter override name=value (repeatable)");
  verify->add_option("--format", cfg.format)
      ->check(CLI::IsMember({"text", "json", "csv"}));
  verify->add_flag("--strict", cfg.strict,
                   "every outcome must pass, expected failures included");
  verify->add_flag("--grid", cfg.grid, "run each identity's parameter grid");
  bool no_timing = false;
  verify->add_flag("--no-timing", no_timing, "omit elapsed times");
  add_tolerance_flags(verify);

  std::string list_format = "text";
  auto* list = app.add_subcommand("list", "list catalog identities");
  list->add_option("--format", list_format)
      ->check(CLI::IsMember({"text", "json"}));

  std::string eval_fn;
  std::vector<std::string> eval_args;
  auto* eval = app.add_subcommand("eval", "evaluate a special function");
  eval->add_option("function", eval_fn)->required();
  eval->add_option("args", eval_args);

  std::string table_which;
  int table_max = 10;
  std::string table_format = "text";
  auto* table = app.add_subcommand("table", "exact number tables");
  table->add_option("which", table_which)
      ->required()
      ->check(CLI::IsMember({"q", "bernoulli", "eulerian"}));
  table->add_option("--max", table_max, "largest index")->required();
  table->add_option("--format", table_format)
      ->check(CLI::IsMember({"text", "csv", "json"}));

  TransformArgs targs;
  auto* transform =
      app.add_subcommand("transform", "evaluate both sides of a transform");
  transform->add_option("which", targs.which)
      ->required()
      ->check(CLI::IsMember({"theorem1", "theorem2", "lemma1", "lemma2"}));
  transform->add_option("--function", targs.function, "builtin function")
      ->required();
  transform->add_option("--a", targs.a, "lattice spacing a > 0");
  transform->add_option("--gamma", targs.gamma, "lemma parameter");
  transform->add_option("--max-terms", targs.max_terms, "term cap per series");
  transform->add_option("--format", targs.format)
      ->check(CLI::IsMember({"text", "json"}));

  std::string ledger_format = "markdown";
  auto* ledger = app.add_subcommand(
      "ledger", "run the full grid and print discrepancy records");
  ledger->add_option("--format", ledger_format)
      ->check(CLI::IsMember({"markdown", "json"}));
  add_tolerance_flags(ledger);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (verify->parsed()) {
      cfg.timing = !no_timing;
      return cmd_verify(cfg, out);
    }
    if (list->parsed()) return cmd_list(list_format, out);
    if (eval->parsed()) return cmd_eval(eval_fn, eval_args, out);
    if (table->parsed()) {
      return cmd_table(table_which, table_max, table_format, out);
    }
    if (transform->parsed()) return cmd_transform(targs, out);
    if (ledger->parsed()) {
      cfg.format = ledger_format == "json" ? "json" : "markdown";
      return cmd_ledger(cfg, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

/// Convenience overload: args exclude the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  std::vector<const char*> argv{"poisson_verify"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(int(argv.size()), argv.data(), out, err);
}

}  // namespace poisson::cli
