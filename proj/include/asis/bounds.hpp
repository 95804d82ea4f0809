#pragma once

#include "asis/problem.hpp"

#include <cstddef>
#include <limits>
#include <vector>

namespace asis {

/// a-priori bound system for Newton's method:
///   a₀ = d₀ = 1,  aₙ₊₁ = aₙ/(1 − a·aₙdₙ),  dₙ₊₁ = (a/2)aₙ₊₁dₙ².
/// `positive` is false when a denominator reached 0 or below; the arrays then
/// stop at the last well-defined index.
struct NewtonBoundSequences {
  double a = 0.0;
  std::vector<double> an;
  std::vector<double> dn;
  bool positive = true;

  std::size_t size() const { return dn.size(); }
  /// Σ_{k<n} dₖ for n = 0..size().
  std::vector<double> partial_sums() const;
};

/// a-priori bound system for Steffensen's method on adimensional forms:
///   bₙ = aₙ/(1 − (a/2)aₙcₙ),  dₙ = bₙcₙ,  aₙ₊₁ = aₙ/(1 − a·aₙdₙ),
///   cₙ₊₁ = (a²/2)dₙ²(rₙ + cₙ/2),  rₙ₊₁ = rₙ + dₙ,
/// from a₀ = c₀ = 1, r₀ = 0.  an, cn, rn hold one more entry than bn, dn.
struct SteffensenBoundSequences {
  double a = 0.0;
  std::vector<double> an;
  std::vector<double> bn;
  std::vector<double> cn;
  std::vector<double> dn;
  std::vector<double> rn;
  bool positive = true;

  std::size_t size() const { return dn.size(); }
};

NewtonBoundSequences newton_sequences(double a, std::size_t n);
SteffensenBoundSequences steffensen_sequences(double a, std::size_t n);

/// dₙ₊₁ = (a/2)dₙ²/√((a·dₙ)² + 1 − 2a), the closed form of the Newton rate
/// obtained from the invariant (1/aₙ)² − 2a·dₙ/aₙ = 1 − 2a.
double newton_rate(double a, double d);

/// (1/aₙ)² − 2a·dₙ/aₙ − (1 − 2a) for every n.
std::vector<double> newton_invariant_residuals(const NewtonBoundSequences& s);
/// (1/aₙ)² − 2a·cₙ − (1 − 2a) for every n.
std::vector<double> steffensen_invariant_residuals(const SteffensenBoundSequences& s);

/// Exact Steffensen iteration on q(s) = (a/2)s² − s + 1 from s₀ = 0, with
/// q[s, s + q(s)] = q′(s) + (a/2)q(s).
struct PolynomialSteffensenRun {
  std::vector<double> s;           // s₀..s_N
  std::vector<double> values;      // q(sₙ)
  std::vector<double> derivatives; // q′(sₙ)
  std::vector<double> operators;   // q[sₙ, sₙ + q(sₙ)], one per step
};

PolynomialSteffensenRun steffensen_on_adim_poly(double a, std::size_t n);
/// Newton iterates tₙ on q(s) from t₀ = 0.
std::vector<double> newton_on_adim_poly(double a, std::size_t n);

struct MajorizingRoots {
  double s_star = 1.0;
  double s_star_star = std::numeric_limits<double>::infinity();  // +∞ when a = 0
};

/// Positive roots of q(s) = (a/2)s² − s + 1.  Throws
/// Error{HypothesesNotSatisfied} for a > 1/2 (no real roots).
MajorizingRoots majorizing_roots(double a);

enum class CubicRootKind { TwoSimple, OneDouble, OneSimple, None };

const char* to_string(CubicRootKind k);

struct CubicRoots {
  CubicRootKind kind = CubicRootKind::None;
  std::vector<double> roots;  // positive roots, ascending
};

/// Positive roots of (b/6)s³ + (a/2)s² − s + 1, a, b ≥ 0.  OneSimple only
/// arises for a = b = 0.
CubicRoots cubic_positive_roots(double a, double b);

enum class BoundSystem { Newton, Steffensen };

/// Dimensional error envelopes for a run started where `data` was measured.
struct ErrorEnvelopes {
  BoundSystem system = BoundSystem::Newton;
  double a = 0.0;
  double s_star = 1.0;
  bool hypotheses_satisfied = true;
  bool positive = true;
  std::vector<double> step;     // dₙη, bound on ‖xₙ₊₁ − xₙ‖
  std::vector<double> tail;     // (s* − rₙ)η, bound on ‖x* − xₙ‖
  std::vector<double> inverse;  // aₙB, bound on ‖F′(xₙ)⁻¹‖
};

/// Throws Error{HypothesesNotSatisfied} if a > 1/2 unless `override_hypotheses`,
/// in which case sequences are computed until positivity fails.
ErrorEnvelopes error_envelopes(const KantorovichData& data, std::size_t n, BoundSystem system,
                               bool override_hypotheses = false);

}  // namespace asis
