#pragma once
// Moduli of continuity: named families, tabulated data, the derived space
// modulus omega(s) = sqrt(mu(s^2)), and numerical checks of the integral /
// summability conditions the estimates require of them.

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "paley/numerics.hpp"

namespace paley {

enum class ModulusFamily { power, log_lipschitz, sqrt_of_square, tabulated };

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct ConditionReport {
  std::string condition;
  Verdict verdict = Verdict::inconclusive;
  double constant = 0.0;  // measured constant (worst sampled ratio / partial value)
  double witness = 0.0;   // sample where the worst ratio occurred
  std::map<std::string, double> params;
  std::vector<double> trace;  // partial integrals / sums, when meaningful
  std::string note;
};

/// A modulus of continuity on [0,1]: strictly increasing, concave, mu(0) = 0.
/// Instances are normalized so mu(1) = 1. Queries above 1 are served by the
/// linear continuation mu(1) * s (used only for the q = -1 dyadic weight).
/// Condition-check results are memoized per instance (shared across copies).
class Modulus {
 public:
  static Modulus power(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("power modulus: alpha in (0,1]");
    Modulus m;
    m.family_ = ModulusFamily::power;
    m.alpha_ = alpha;
    return m;
  }

  static Modulus log_lipschitz(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("log-lipschitz modulus: alpha > 0");
    Modulus m;
    m.family_ = ModulusFamily::log_lipschitz;
    m.alpha_ = alpha;
    return m;
  }

  /// Monotone sample table on [0,1]; rescaled on load so mu(1) = 1.
  static Modulus tabulated(std::vector<double> s, std::vector<double> values) {
    if (s.size() != values.size() || s.size() < 3) {
      throw std::invalid_argument("tabulated modulus: need >= 3 samples");
    }
    if (s.front() != 0.0 || values.front() != 0.0) {
      throw std::invalid_argument("tabulated modulus: first sample must be (0, 0)");
    }
    if (s.back() != 1.0) throw std::invalid_argument("tabulated modulus: last abscissa must be 1");
    const double v1 = values.back();
    if (!(v1 > 0.0)) throw std::invalid_argument("tabulated modulus: mu(1) must be positive");
    for (auto& v : values) v /= v1;
    Modulus m;
    m.family_ = ModulusFamily::tabulated;
    m.table_ = std::make_shared<MonotoneCubic>(std::move(s), std::move(values));
    return m;
  }

  /// The space modulus omega with omega(s) = sqrt(mu(s^2)).
  Modulus derived_omega() const {
    Modulus m;
    m.family_ = ModulusFamily::sqrt_of_square;
    m.base_ = std::make_shared<Modulus>(*this);
    return m;
  }

  double operator()(double s) const {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw std::domain_error("modulus: argument outside [0,1]: " + std::to_string(s));
    }
    return raw(s);
  }

  /// Linear continuation mu(1) * s beyond s = 1.
  double extended(double s) const {
    if (s < 0.0) throw std::domain_error("modulus: negative argument");
    return s <= 1.0 ? raw(s) : s;
  }

  ModulusFamily family() const { return family_; }
  double alpha() const { return alpha_; }
  const Modulus* base() const { return base_.get(); }

  std::string describe() const {
    std::ostringstream os;
    switch (family_) {
      case ModulusFamily::power: os << "power:" << alpha_; break;
      case ModulusFamily::log_lipschitz: os << "loglip:" << alpha_; break;
      case ModulusFamily::sqrt_of_square: os << "omega-of:" << base_->describe(); break;
      case ModulusFamily::tabulated: os << "tabulated[" << table_->xs().size() << "]"; break;
    }
    return os.str();
  }

  /// Memoized condition check; single-threaded use.
  template <class Compute>
  const ConditionReport& cached_check(const std::string& key, Compute&& compute) const {
    auto it = cache_->find(key);
    if (it == cache_->end()) it = cache_->emplace(key, compute()).first;
    return it->second;
  }

 private:
  double raw(double s) const {
    switch (family_) {
      case ModulusFamily::power:
        return s == 0.0 ? 0.0 : std::pow(s, alpha_);
      case ModulusFamily::log_lipschitz:
        return s == 0.0 ? 0.0 : s * std::pow(1.0 + std::abs(std::log(s)), alpha_);
      case ModulusFamily::sqrt_of_square:
        return std::sqrt(base_->raw(s * s));
      case ModulusFamily::tabulated:
        return (*table_)(s);
    }
    return 0.0;
  }

  ModulusFamily family_ = ModulusFamily::power;
  double alpha_ = 1.0;
  std::shared_ptr<const Modulus> base_;
  std::shared_ptr<const MonotoneCubic> table_;
  std::shared_ptr<std::map<std::string, ConditionReport>> cache_ =
      std::make_shared<std::map<std::string, ConditionReport>>();
};

// ---------------------------------------------------------------------------
// Osgood check: partial integrals I_k = int_{2^-k}^1 ds / mu(s).
//
// A finite computation cannot decide divergence; the classifier below is
// calibrated on the closed-form families:
//   * I_{k_max} > 50                                    -> divergent
//   * increments decaying geometrically (ratio < 0.95)  -> convergent
//   * otherwise fit d_k ~ k^-p over the last window:
//       p <= 1.1 -> divergent, p >= 1.5 -> convergent, else inconclusive.
// ---------------------------------------------------------------------------

namespace detail {

inline ConditionReport check_osgood_impl(const Modulus& mu, int k_max) {
  if (k_max < 8) throw std::invalid_argument("check_osgood: k_max >= 8");
  ConditionReport rep;
  rep.condition = "osgood";
  rep.params["k_max"] = k_max;

  const double ln2 = std::log(2.0);
  std::vector<double> partial(static_cast<std::size_t>(k_max) + 1, 0.0);
  std::vector<double> inc(static_cast<std::size_t>(k_max) + 1, 0.0);
  try {
    for (int k = 1; k <= k_max; ++k) {
      // I_k - I_{k-1} = ln2 * int_{k-1}^{k} 2^-u / mu(2^-u) du.
      inc[k] = ln2 * integrate(
                         [&](double u) {
                           const double s = std::exp2(-u);
                           return s / mu(s);
                         },
                         k - 1.0, k, 1e-11);
      partial[k] = partial[k - 1] + inc[k];
      if (!std::isfinite(partial[k])) throw std::runtime_error("non-finite partial integral");
    }
  } catch (const std::exception& e) {
    rep.verdict = Verdict::inconclusive;
    rep.note = std::string("quadrature failure near s = 0: ") + e.what();
    return rep;
  }

  rep.trace.assign(partial.begin() + 1, partial.end());
  rep.constant = partial[k_max];
  rep.witness = std::exp2(-k_max);

  const int w = std::min(10, k_max - 1);
  bool geometric = true;
  for (int k = k_max - w + 1; k <= k_max; ++k) {
    if (!(inc[k] < 0.95 * inc[k - 1])) geometric = false;
  }

  if (partial[k_max] > 50.0) {
    rep.verdict = Verdict::pass;
    rep.note = "partial integral exceeded 50";
    return rep;
  }
  if (geometric) {
    const double r = inc[k_max] / inc[k_max - 1];
    const double tail = inc[k_max] * r / (1.0 - r);
    rep.verdict = Verdict::fail;
    rep.constant = partial[k_max] + tail;
    rep.params["tail_estimate"] = tail;
    rep.note = "increments decay geometrically";
    return rep;
  }
  // Least-squares decay exponent of log d_k vs log k over the last window.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int cnt = 0;
  for (int k = k_max - w; k <= k_max; ++k) {
    if (!(inc[k] > 0.0)) continue;
    const double X = std::log(static_cast<double>(k));
    const double Y = std::log(inc[k]);
    sx += X; sy += Y; sxx += X * X; sxy += X * Y;
    ++cnt;
  }
  if (cnt < 3) {
    rep.verdict = Verdict::inconclusive;
    rep.note = "increments vanished before classification";
    return rep;
  }
  const double p_hat = -(cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  rep.params["decay_exponent"] = p_hat;
  if (p_hat <= 1.1) {
    rep.verdict = Verdict::pass;
    rep.note = "increment decay at most harmonic";
  } else if (p_hat >= 1.5) {
    const double tail = inc[k_max] * k_max / (p_hat - 1.0);
    rep.verdict = Verdict::fail;
    rep.constant = partial[k_max] + tail;
    rep.params["tail_estimate"] = tail;
    rep.note = "increment decay clearly summable";
  } else {
    rep.verdict = Verdict::inconclusive;
    rep.note = "decay exponent between harmonic and summable thresholds";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Conditions on the space modulus omega.
// ---------------------------------------------------------------------------

/// int_0^h omega(t)/t dt, h = 2^-k, with the substitution t = 2^-u.
/// Returns the sequence of values for k = 0..q_max.
inline std::vector<double> dini_integrals(const Modulus& omega, int q_max) {
  const double ln2 = std::log(2.0);
  const int depth = std::max(q_max + 60, 80);
  std::vector<double> seg(static_cast<std::size_t>(depth), 0.0);
  for (int j = 0; j < depth; ++j) {
    seg[j] = ln2 * integrate([&](double u) { return omega(std::exp2(-u)); },
                             static_cast<double>(j), j + 1.0, 1e-11);
  }
  // Geometric tail estimate past the truncation.
  double tail = 0.0;
  const double r = seg[depth - 1] / seg[depth - 2];
  if (r < 1.0) tail = seg[depth - 1] * r / (1.0 - r);
  std::vector<double> out(static_cast<std::size_t>(q_max) + 1, 0.0);
  double acc = tail;
  for (int j = depth - 1; j >= 0; --j) {
    acc += seg[j];
    if (j <= q_max) out[j] = acc;
  }
  return out;
}

inline ConditionReport check_dini_impl(const Modulus& omega, int q_max) {
  ConditionReport rep;
  rep.condition = "dini";
  rep.params["q_max"] = q_max;
  const auto ints = dini_integrals(omega, q_max);
  double worst = 0.0;
  double witness = 1.0;
  std::vector<double> ratios(ints.size());
  for (int k = 0; k <= q_max; ++k) {
    const double h = std::exp2(-k);
    ratios[k] = ints[k] / omega(h);
    if (ratios[k] > worst) {
      worst = ratios[k];
      witness = h;
    }
  }
  rep.constant = worst;
  rep.witness = witness;
  rep.trace = ratios;
  // Bounded if the ratio sequence has stopped growing over the last window.
  const int w = std::min(5, q_max / 2);
  double head = 0.0, tail = 0.0;
  for (int k = 0; k <= q_max - w; ++k) head = std::max(head, ratios[k]);
  for (int k = q_max - w + 1; k <= q_max; ++k) tail = std::max(tail, ratios[k]);
  rep.verdict = (tail <= head * 1.02 + 1e-12) ? Verdict::pass : Verdict::fail;
  if (rep.verdict == Verdict::fail) rep.note = "ratio still growing at the resolution limit";
  return rep;
}

inline ConditionReport check_techcond1_impl(const Modulus& omega, int q_max) {
  if (q_max < 10) throw std::invalid_argument("check_techcond1: q_max >= 10");
  ConditionReport rep;
  rep.condition = "techcond1";
  rep.params["q_max"] = q_max;
  std::vector<double> per_q(static_cast<std::size_t>(q_max) + 1, 0.0);
  double worst = 0.0, wit = 0.0;
  for (int q = 2; q <= q_max; ++q) {
    for (int p = 1; p <= q - 1; ++p) {
      const double r = omega(std::exp2(-q)) / (omega(std::exp2(-p)) * omega(std::exp2(p - q)));
      per_q[q] = std::max(per_q[q], r);
      if (r > worst) {
        worst = r;
        wit = static_cast<double>(q);
      }
    }
  }
  rep.constant = worst;
  rep.witness = wit;
  rep.trace = per_q;
  // The lattice maximum is always finite; flag clear growth at the edge.
  if (per_q[q_max] > 1.05 * per_q[std::max(2, q_max / 2)]) {
    rep.verdict = Verdict::fail;
    rep.note = "constant still growing in q";
  } else {
    rep.verdict = Verdict::pass;
  }
  return rep;
}

inline ConditionReport check_techcond2_impl(const Modulus& omega, double s, int k_terms) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("check_techcond2: s in (0,1)");
  ConditionReport rep;
  rep.condition = "techcond2";
  rep.params["s"] = s;
  rep.params["k_terms"] = k_terms;
  std::vector<double> terms(static_cast<std::size_t>(k_terms) + 1);
  double sum = 0.0;
  for (int k = 0; k <= k_terms; ++k) {
    terms[k] = std::exp2((1.0 - s) * k) * omega(std::exp2(-k));
    sum += terms[k];
    rep.trace.push_back(sum);
  }
  rep.constant = sum;
  rep.witness = std::exp2(-k_terms);
  double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
  for (int k = k_terms - 9; k <= k_terms; ++k) {
    const double r = terms[k] / terms[k - 1];
    rmax = std::max(rmax, r);
    rmin = std::min(rmin, r);
  }
  rep.params["tail_ratio"] = rmax;
  if (rmax <= 0.999) {
    rep.verdict = Verdict::pass;
    rep.constant = sum + terms[k_terms] * rmax / (1.0 - rmax);
  } else if (rmin >= 1.0 - 1e-9) {
    rep.verdict = Verdict::fail;
    rep.note = "terms non-decreasing; series diverges";
  } else {
    rep.verdict = Verdict::inconclusive;
    rep.note = "tail ratio straddles 1";
  }
  return rep;
}

}  // namespace detail

inline ConditionReport check_osgood(const Modulus& mu, int k_max) {
  return mu.cached_check("osgood:" + std::to_string(k_max),
                         [&] { return detail::check_osgood_impl(mu, k_max); });
}

inline ConditionReport check_dini(const Modulus& omega, int q_max) {
  return omega.cached_check("dini:" + std::to_string(q_max),
                            [&] { return detail::check_dini_impl(omega, q_max); });
}

inline ConditionReport check_techcond1(const Modulus& omega, int q_max) {
  return omega.cached_check("techcond1:" + std::to_string(q_max),
                            [&] { return detail::check_techcond1_impl(omega, q_max); });
}

/// Convergence of sum_k 2^{(1-s)k} omega(2^-k) by the tail ratio test.
inline ConditionReport check_techcond2(const Modulus& omega, double s, int k_terms = 120) {
  std::ostringstream key;
  key << "techcond2:" << s << ":" << k_terms;
  return omega.cached_check(key.str(),
                            [&] { return detail::check_techcond2_impl(omega, s, k_terms); });
}

/// Dini + the two technical conditions for omega, one report each
/// (techcond2 is reported once per requested s).
inline std::vector<ConditionReport> check_omega_conditions(const Modulus& omega,
                                                           std::span<const double> s_values,
                                                           int q_max) {
  if (q_max < 10) throw std::invalid_argument("check_omega_conditions: q_max >= 10");
  std::vector<ConditionReport> out;
  out.push_back(check_dini(omega, q_max));
  out.push_back(check_techcond1(omega, q_max));
  for (double s : s_values) out.push_back(check_techcond2(omega, s));
  return out;
}

// ---------------------------------------------------------------------------
// Axiom checks on the dyadic grid augmented with seeded random points.
// ---------------------------------------------------------------------------

inline std::vector<double> modulus_sample_points(int k_max, std::uint64_t seed) {
  std::vector<double> pts;
  for (int k = k_max; k >= 0; --k) pts.push_back(std::exp2(-k));
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> unif(1e-9, 1.0);
  for (int i = 0; i < 32; ++i) pts.push_back(unif(eng));
  std::sort(pts.begin(), pts.end());
  return pts;
}

inline std::vector<ConditionReport> check_modulus_axioms(const Modulus& mu, int k_max = 40,
                                                         std::uint64_t seed = 1234) {
  const double rtol = 1e-10;
  const auto pts = modulus_sample_points(k_max, seed);
  std::vector<ConditionReport> out;

  {
    ConditionReport r;
    r.condition = "monotone";
    r.verdict = Verdict::pass;
    double prev = 0.0;
    for (double s : pts) {
      const double v = mu(s);
      if (!(v > prev)) {
        r.verdict = Verdict::fail;
        r.witness = s;
        break;
      }
      prev = v;
    }
    out.push_back(r);
  }
  {
    ConditionReport r;
    r.condition = "concavity";
    r.verdict = Verdict::pass;
    r.constant = 0.0;
    for (std::size_t i = 0; i < pts.size(); i += 3) {
      for (std::size_t j = i + 1; j < pts.size(); j += 3) {
        const double s = pts[i], t = pts[j];
        const double lhs = mu(0.5 * (s + t));
        const double rhs = 0.5 * (mu(s) + mu(t));
        const double slack = (rhs - lhs) / std::max(rhs, 1e-300);
        if (slack > r.constant) {
          r.constant = slack;
          r.witness = s;
        }
      }
    }
    if (r.constant > rtol) r.verdict = Verdict::fail;
    out.push_back(r);
  }
  {
    ConditionReport r;
    r.condition = "duplication";
    r.verdict = Verdict::pass;
    for (double s : pts) {
      if (s > 0.5) continue;
      const double c = mu(2.0 * s) / mu(s);
      if (c > r.constant) {
        r.constant = c;
        r.witness = s;
      }
    }
    if (!std::isfinite(r.constant)) r.verdict = Verdict::fail;
    out.push_back(r);
  }
  {
    ConditionReport r;
    r.condition = "ratio-monotone";  // s -> mu(s)/s non-increasing
    r.verdict = Verdict::pass;
    double prev = std::numeric_limits<double>::infinity();
    for (double s : pts) {
      const double v = mu(s) / s;
      if (v > prev * (1.0 + rtol)) {
        r.verdict = Verdict::fail;
        r.witness = s;
        break;
      }
      prev = v;
    }
    out.push_back(r);
  }
  {
    ConditionReport r;
    r.condition = "lower-bound";  // mu(s) >= mu(1) s
    r.verdict = Verdict::pass;
    const double mu1 = mu(1.0);
    for (double s : pts) {
      if (mu(s) < mu1 * s * (1.0 - rtol)) {
        r.verdict = Verdict::fail;
        r.witness = s;
        break;
      }
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace paley
