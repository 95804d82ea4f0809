#include "asis/bounds.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace asis {

namespace {

void check_parameter(double a) {
  if (!(a >= 0.0) || !std::isfinite(a)) throw Error(ErrorCode::InvalidArgument, "a must be finite and >= 0");
}

/// q(s) = (a/2)s² − s + 1.  For 0 < a ≤ 1/2 the factored form (a/2)(s − s*)(s − s**)
/// keeps full relative accuracy near s*, where the expanded form cancels.
std::function<double(double)> quadratic(double a) {
  if (a > 0.0 && a <= 0.5) {
    const double root = std::sqrt(1.0 - 2.0 * a);
    const double lo = 2.0 / (1.0 + root), hi = (1.0 + root) / a;
    return [a, lo, hi](double s) { return 0.5 * a * (s - lo) * (s - hi); };
  }
  return [a](double s) { return (0.5 * a * s - 1.0) * s + 1.0; };
}

}  // namespace

std::vector<double> NewtonBoundSequences::partial_sums() const {
  std::vector<double> r(dn.size() + 1, 0.0);
  for (std::size_t k = 0; k < dn.size(); ++k) r[k + 1] = r[k] + dn[k];
  return r;
}

NewtonBoundSequences newton_sequences(double a, std::size_t n) {
  check_parameter(a);
  NewtonBoundSequences s;
  s.a = a;
  s.an.push_back(1.0);
  s.dn.push_back(1.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double denom = 1.0 - a * s.an[k] * s.dn[k];
    if (!(denom > 0.0)) {
      s.positive = false;
      break;
    }
    const double next = s.an[k] / denom;
    s.an.push_back(next);
    s.dn.push_back(0.5 * a * next * s.dn[k] * s.dn[k]);
  }
  return s;
}

SteffensenBoundSequences steffensen_sequences(double a, std::size_t n) {
  check_parameter(a);
  SteffensenBoundSequences s;
  s.a = a;
  s.an.push_back(1.0);
  s.cn.push_back(1.0);
  s.rn.push_back(0.0);
  for (std::size_t k = 0; k <= n; ++k) {
    const double db = 1.0 - 0.5 * a * s.an[k] * s.cn[k];
    if (!(db > 0.0)) {
      s.positive = false;
      break;
    }
    const double b = s.an[k] / db;
    const double d = b * s.cn[k];
    const double da = 1.0 - a * s.an[k] * d;
    if (!(da > 0.0)) {
      s.positive = false;
      break;
    }
    s.bn.push_back(b);
    s.dn.push_back(d);
    s.an.push_back(s.an[k] / da);
    s.cn.push_back(0.5 * a * a * d * d * (s.rn[k] + 0.5 * s.cn[k]));
    s.rn.push_back(s.rn[k] + d);
  }
  return s;
}

double newton_rate(double a, double d) { return 0.5 * a * d * d / std::sqrt(a * d * a * d + 1.0 - 2.0 * a); }

std::vector<double> newton_invariant_residuals(const NewtonBoundSequences& s) {
  std::vector<double> out;
  for (std::size_t k = 0; k < s.dn.size(); ++k) {
    const double inv = 1.0 / s.an[k];
    out.push_back(inv * inv - 2.0 * s.a * s.dn[k] * inv - (1.0 - 2.0 * s.a));
  }
  return out;
}

std::vector<double> steffensen_invariant_residuals(const SteffensenBoundSequences& s) {
  std::vector<double> out;
  for (std::size_t k = 0; k < s.an.size(); ++k) {
    const double inv = 1.0 / s.an[k];
    out.push_back(inv * inv - 2.0 * s.a * s.cn[k] - (1.0 - 2.0 * s.a));
  }
  return out;
}

PolynomialSteffensenRun steffensen_on_adim_poly(double a, std::size_t n) {
  check_parameter(a);
  PolynomialSteffensenRun run;
  const auto poly = quadratic(a);
  double s = 0.0;
  for (std::size_t k = 0;; ++k) {
    const double q = poly(s);
    const double dq = a * s - 1.0;
    run.s.push_back(s);
    run.values.push_back(q);
    run.derivatives.push_back(dq);
    if (k == n) break;
    const double op = dq + 0.5 * a * q;
    run.operators.push_back(op);
    if (op != 0.0) s -= q / op;
  }
  return run;
}

std::vector<double> newton_on_adim_poly(double a, std::size_t n) {
  check_parameter(a);
  const auto poly = quadratic(a);
  std::vector<double> t{0.0};
  for (std::size_t k = 0; k < n; ++k) {
    const double s = t.back();
    const double dq = a * s - 1.0;
    t.push_back(dq == 0.0 ? s : s - poly(s) / dq);
  }
  return t;
}

MajorizingRoots majorizing_roots(double a) {
  check_parameter(a);
  if (a > 0.5) {
    throw Error(ErrorCode::HypothesesNotSatisfied,
                "hypotheses not satisfied: a > 1/2, the majorizing quadratic has no real roots");
  }
  MajorizingRoots r;
  if (a == 0.0) return r;
  const double root = std::sqrt(1.0 - 2.0 * a);
  r.s_star = 2.0 / (1.0 + root);  // (1 − √(1−2a))/a without cancellation
  r.s_star_star = (1.0 + root) / a;
  return r;
}

const char* to_string(CubicRootKind k) {
  switch (k) {
    case CubicRootKind::TwoSimple: return "two-simple";
    case CubicRootKind::OneDouble: return "one-double";
    case CubicRootKind::OneSimple: return "one-simple";
    case CubicRootKind::None: return "none";
  }
  return "unknown";
}

CubicRoots cubic_positive_roots(double a, double b) {
  check_parameter(a);
  check_parameter(b);
  const auto q = [a, b](double s) { return ((b / 6.0 * s + 0.5 * a) * s - 1.0) * s + 1.0; };
  const auto bisect = [&q](double lo, double hi) {
    // q(lo) and q(hi) have opposite signs.
    const bool lo_positive = q(lo) > 0.0;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      ((q(mid) > 0.0) == lo_positive ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  CubicRoots out;
  if (a == 0.0 && b == 0.0) {
    out.kind = CubicRootKind::OneSimple;
    out.roots = {1.0};
    return out;
  }
  // q′(s) = (b/2)s² + a·s − 1 has exactly one positive zero: the minimizer of q on (0, ∞).
  const double s_min = 2.0 / (a + std::sqrt(a * a + 2.0 * b));
  const double q_min = q(s_min);
  if (std::abs(q_min) <= 1e-13) {
    out.kind = CubicRootKind::OneDouble;
    out.roots = {s_min};
  } else if (q_min < 0.0) {
    double hi = 2.0 * s_min;
    while (q(hi) < 0.0) hi *= 2.0;
    out.kind = CubicRootKind::TwoSimple;
    out.roots = {bisect(0.0, s_min), bisect(s_min, hi)};
  }
  return out;
}

ErrorEnvelopes error_envelopes(const KantorovichData& data, std::size_t n, BoundSystem system,
                               bool override_hypotheses) {
  const double a = data.a();
  ErrorEnvelopes env;
  env.system = system;
  env.a = a;
  env.hypotheses_satisfied = a <= 0.5;
  if (!env.hypotheses_satisfied && !override_hypotheses) {
    throw Error(ErrorCode::HypothesesNotSatisfied,
                "hypotheses not satisfied: a = K2*B*eta = " + std::to_string(a) + " > 1/2");
  }
  env.s_star = env.hypotheses_satisfied ? majorizing_roots(a).s_star : std::numeric_limits<double>::quiet_NaN();

  std::vector<double> an, dn;
  if (system == BoundSystem::Newton) {
    NewtonBoundSequences s = newton_sequences(a, n);
    an = std::move(s.an);
    dn = std::move(s.dn);
    env.positive = s.positive;
  } else {
    SteffensenBoundSequences s = steffensen_sequences(a, n);
    an.assign(s.an.begin(), s.an.begin() + static_cast<std::ptrdiff_t>(s.dn.size()));
    dn = std::move(s.dn);
    env.positive = s.positive;
  }

  // s* − rₙ as a suffix sum of dₖ avoids cancellation once rₙ ≈ s*.
  double total = 0.0;
  for (double d : dn) total += d;
  const double remainder = env.hypotheses_satisfied ? std::max(0.0, env.s_star - total) : 0.0;
  env.tail.assign(dn.size(), 0.0);
  double suffix = remainder;
  for (std::size_t k = dn.size(); k-- > 0;) {
    suffix += dn[k];
    env.tail[k] = suffix * data.eta;
  }
  for (std::size_t k = 0; k < dn.size(); ++k) {
    env.step.push_back(dn[k] * data.eta);
    env.inverse.push_back(an[k] * data.b);
  }
  return env;
}

}  // namespace asis
