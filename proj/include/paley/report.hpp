#pragma once
// JSON serialization for verification reports and the top-level report
// document. Payloads are deterministic for a fixed config and seed; wall-clock
// timings live under "timing" and are exempt from that contract.

#include <chrono>
#include <nlohmann/json.hpp>

#include "paley/carleman.hpp"
#include "paley/modulus.hpp"
#include "paley/paraproduct.hpp"
#include "paley/verifiers.hpp"
#include "paley/version.hpp"

namespace paley {

inline json to_json(const ConditionReport& r) {
  json j{{"condition", r.condition},
         {"verdict", to_string(r.verdict)},
         {"constant", r.constant},
         {"witness", r.witness},
         {"params", r.params}};
  if (!r.trace.empty()) j["trace"] = r.trace;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline json to_json(const EstimateReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples) {
    json e{{"ratio", s.ratio}, {"skipped", s.skipped}, {"descriptor", s.descriptor}};
    if (!s.values.empty()) e["values"] = s.values;
    samples.push_back(std::move(e));
  }
  return json{{"estimate", r.estimate},
              {"max_ratio", r.max_ratio},
              {"ceiling", r.ceiling},
              {"pass", r.pass},
              {"samples", std::move(samples)}};
}

inline json to_json(const RemainderRatios& r) {
  return json{{"a_norm", r.a_norm},
              {"b_norm", r.b_norm},
              {"numerators", r.numerator},
              {"ratios", r.ratio}};
}

inline json to_json(const SynthesisReport& r) {
  return json{{"sum_norm", r.sum_norm},
              {"sequence_norm", r.sequence_norm},
              {"ratio", r.ratio},
              {"pass", r.pass}};
}

inline json to_json(const BlockDiagnostic& d) {
  return json{{"q", d.q},
              {"degenerate", d.degenerate},
              {"elliptic_weight_term", d.elliptic_weight_term},
              {"curvature_term", d.curvature_term},
              {"penalty_term", d.penalty_term},
              {"kappa", d.degenerate ? 0.0 : d.kappa},
              {"high_regime_samples", d.high_regime_samples},
              {"low_regime_samples", d.low_regime_samples},
              {"lower_bound_ratio", d.lower_bound_ratio}};
}

inline json to_json(const CarlemanReport& r) {
  json sweep = json::array();
  for (const auto& g : r.sweep) {
    sweep.push_back(json{{"gamma", g.gamma},
                         {"lhs", g.lhs},
                         {"rhs_grad", g.rhs_grad},
                         {"rhs_l2", g.rhs_l2},
                         {"ratio", g.ratio}});
  }
  json diags = json::array();
  for (const auto& [gamma, blocks] : r.diagnostics) {
    json b = json::array();
    for (const auto& d : blocks) b.push_back(to_json(d));
    diags.push_back(json{{"gamma", gamma}, {"blocks", std::move(b)}});
  }
  json alt = json::array();
  for (const auto& a : r.alt_exponents) {
    alt.push_back(json{{"p1", a.p1}, {"p2", a.p2}, {"min_ratio", a.min_ratio}, {"holds", a.holds}});
  }
  return json{{"sweep", std::move(sweep)},
              {"degenerate", r.degenerate},
              {"gamma0_found", r.gamma0_found},
              {"gamma0", r.gamma0},
              {"constant", r.constant},
              {"coefficients",
               json{{"a0", r.coeff_a0},
                    {"mu_time_seminorm", r.coeff_mu_seminorm},
                    {"omega_space_norm", r.coeff_omega_norm}}},
              {"alt_exponents", std::move(alt)},
              {"diagnostics", std::move(diags)}};
}

/// Top-level document: version, config echo, payloads, timings.
class ReportDocument {
 public:
  explicit ReportDocument(json config_echo)
      : start_(std::chrono::steady_clock::now()) {
    doc_["tool"] = "paley";
    doc_["version"] = kVersion;
    doc_["config"] = std::move(config_echo);
    doc_["results"] = json::array();
  }

  void add(const std::string& name, json payload) {
    doc_["results"].push_back(json{{"name", name}, {"payload", std::move(payload)}});
  }

  void stage_done(const std::string& name) {
    const auto now = std::chrono::steady_clock::now();
    timing_[name] = std::chrono::duration<double>(now - start_).count();
    start_ = now;
  }

  /// Every verdict/pass flag in the stored payloads must be favorable.
  bool all_pass() const {
    bool ok = true;
    scan(doc_["results"], ok);
    return ok;
  }

  json render() const {
    json out = doc_;
    out["timing"] = timing_;
    return out;
  }

 private:
  static void scan(const json& node, bool& ok) {
    if (node.is_object()) {
      if (node.contains("verdict") && node["verdict"].get<std::string>() == "fail") ok = false;
      if (node.contains("pass") && node["pass"].is_boolean() && !node["pass"].get<bool>()) ok = false;
      for (const auto& [k, v] : node.items()) scan(v, ok);
    } else if (node.is_array()) {
      for (const auto& v : node) scan(v, ok);
    }
  }

  json doc_;
  json timing_ = json::object();
  std::chrono::steady_clock::time_point start_;
};

}  // namespace paley
