#pragma once

// Rendering of outcomes, listings and ledgers as text, CSV, JSON and
// markdown. Numbers use 15 significant digits through std::to_chars, so the
// output does not depend on the locale.

#include <charconv>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "poisson/catalog.hpp"

namespace poisson {

inline std::string format_real(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 15);
  return {buf, res.ptr};
}

/// v rounded to 15 significant digits; JSON writers print the shortest
/// round-trip form, which then has at most 15 digits.
inline double round15(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_real(v).c_str(), nullptr);
}

inline std::string format_params(const ParamMap& p, const char* sep = " ") {
  std::string s;
  for (const auto& [name, value] : p) {
    if (!s.empty()) s += sep;
    s += name + "=" + format_real(value);
  }
  return s;
}

struct RenderOptions {
  bool timing = true;
};

inline nlohmann::ordered_json params_json(const ParamMap& p) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [name, value] : p) j[name] = round15(value);
  return j;
}

inline nlohmann::ordered_json outcome_json(const VerificationOutcome& o,
                                           const RenderOptions& ro = {}) {
  nlohmann::ordered_json j;
  j["identity"] = o.identity_id;
  j["variant"] = o.variant_name;
  j["params"] = params_json(o.params);
  j["lhs"] = round15(o.lhs);
  j["rhs"] = round15(o.rhs);
  j["abs_residual"] = round15(o.abs_residual);
  j["rel_residual"] = round15(o.rel_residual);
  j["status"] = to_string(o.status);
  j["expected_status"] = to_string(o.expected_status);
  if (ro.timing) {
    j["elapsed_ms"] = round15(o.elapsed.count());
  } else {
    j["elapsed_ms"] = nullptr;
  }
  j["message"] = o.message;
  return j;
}

inline void write_outcomes_json(std::ostream& os,
                                const std::vector<VerificationOutcome>& v,
                                const RenderOptions& ro = {}) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& o : v) arr.push_back(outcome_json(o, ro));
  os << arr.dump(2) << '\n';
}

inline void write_outcomes_csv(std::ostream& os,
                               const std::vector<VerificationOutcome>& v,
                               const RenderOptions& ro = {}) {
  os << "identity,variant,params,lhs,rhs,abs_residual,rel_residual,status,"
        "expected_status,elapsed_ms\n";
  for (const auto& o : v) {
    os << o.identity_id << ',' << o.variant_name << ','
       << format_params(o.params, ";") << ',' << format_real(o.lhs) << ','
       << format_real(o.rhs) << ',' << format_real(o.abs_residual) << ','
       << format_real(o.rel_residual) << ',' << to_string(o.status) << ','
       << to_string(o.expected_status) << ','
       << (ro.timing ? format_real(o.elapsed.count()) : std::string{}) << '\n';
  }
}

inline void write_outcomes_text(std::ostream& os,
                                const std::vector<VerificationOutcome>& v,
                                const RenderOptions& ro = {}) {
  std::size_t pass = 0, fail = 0, error = 0, mismatched = 0;
  for (const auto& o : v) {
    os << o.identity_id << ' ' << o.variant_name;
    if (!o.params.empty()) os << " [" << format_params(o.params) << ']';
    os << "\n  lhs " << format_real(o.lhs) << "  rhs " << format_real(o.rhs)
       << "  abs " << format_real(o.abs_residual) << "  rel "
       << format_real(o.rel_residual) << "\n  " << to_string(o.status)
       << " (expected " << to_string(o.expected_status) << ')';
    if (ro.timing) os << "  " << format_real(o.elapsed.count()) << " ms";
    if (!o.message.empty()) os << "\n  " << o.message;
    os << '\n';
    pass += o.status == Status::pass;
    fail += o.status == Status::fail;
    error += o.status == Status::error;
    mismatched += !o.matches_expectation();
  }
  os << v.size() << " outcomes: " << pass << " pass, " << fail << " fail, "
     << error << " error; " << mismatched << " differ from expectation\n";
}

inline nlohmann::ordered_json identity_json(const IdentityRecord& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["title"] = r.title;
  j["statement"] = r.statement;
  nlohmann::ordered_json params = nlohmann::ordered_json::array();
  for (const auto& p : r.params) {
    params.push_back({{"name", p.name},
                      {"domain", p.domain()},
                      {"default", round15(p.default_value)},
                      {"grid", p.grid}});
  }
  j["params"] = params;
  const auto defaults = r.defaults();
  nlohmann::ordered_json variants = nlohmann::ordered_json::array();
  for (const auto& v : r.variants) {
    nlohmann::ordered_json jv;
    jv["name"] = v.name;
    jv["expected_status"] =
        v.applies(defaults) ? to_string(v.expected_at(defaults)) : "n/a";
    jv["note"] = v.note;
    variants.push_back(jv);
  }
  j["variants"] = variants;
  j["notes"] = r.notes;
  return j;
}

inline void write_listing_json(std::ostream& os,
                               const std::vector<IdentityRecord>& v) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : v) arr.push_back(identity_json(r));
  os << arr.dump(2) << '\n';
}

inline void write_listing_text(std::ostream& os,
                               const std::vector<IdentityRecord>& v) {
  for (const auto& r : v) {
    os << r.id << " - " << r.title << "\n  " << r.statement << '\n';
    for (const auto& p : r.params) {
      os << "  param " << p.name << " in " << p.domain() << ", default "
         << format_real(p.default_value) << '\n';
    }
    const auto defaults = r.defaults();
    for (const auto& var : r.variants) {
      os << "  variant " << var.name << " (expected "
         << (var.applies(defaults) ? to_string(var.expected_at(defaults))
                                   : "n/a")
         << ')';
      if (!var.note.empty()) os << ": " << var.note;
      os << '\n';
    }
  }
}

inline nlohmann::ordered_json ledger_json(const std::vector<LedgerRecord>& l) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : l) {
    nlohmann::ordered_json j;
    j["kind"] = to_string(r.kind);
    j["identity"] = r.identity_id;
    j["variant"] = r.variant_name;
    j["params"] = params_json(r.params);
    j["status"] = to_string(r.status);
    j["expected_status"] = to_string(r.expected_status);
    j["printed_value"] = round15(r.printed_value);
    j["computed_value"] = round15(r.computed_value);
    if (r.corrected_variant.empty()) {
      j["corrected_form"] = nullptr;
      j["corrected_value"] = nullptr;
    } else {
      j["corrected_form"] = r.corrected_variant;
      j["corrected_value"] = round15(*r.corrected_value);
    }
    j["note"] = r.note;
    arr.push_back(j);
  }
  return arr;
}

inline void write_ledger_markdown(std::ostream& os,
                                  const std::vector<LedgerRecord>& l) {
  os << "| kind | identity | variant | params | status | expected | "
        "printed value | computed value | corrected form | corrected value | "
        "note |\n"
        "|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : l) {
    os << "| " << to_string(r.kind) << " | " << r.identity_id << " | "
       << r.variant_name << " | " << format_params(r.params) << " | "
       << to_string(r.status) << " | " << to_string(r.expected_status)
       << " | " << format_real(r.printed_value) << " | "
       << format_real(r.computed_value) << " | "
       << (r.corrected_variant.empty() ? "-" : r.corrected_variant) << " | "
       << (r.corrected_value ? format_real(*r.corrected_value) : "-") << " | "
       << (r.note.empty() ? "-" : r.note) << " |\n";
  }
}

}  // namespace poisson
