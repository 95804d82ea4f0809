#pragma once

#include <span>
#include <vector>

namespace asis {

enum class OrderNotion { Q, R, AQ };

const char* to_string(OrderNotion n);

struct OrderEstimate {
  OrderNotion notion = OrderNotion::Q;
  double order = 0.0;
  std::vector<double> per_step;
  bool stable = false;  // last three per-step values within 0.1
};

/// Entries below this are rounding noise and are dropped.
inline constexpr double kErrorFloor = 1e-14;

/// Entries ≥ 1e-14 forming the final strictly decreasing run of `errors`.
std::vector<double> usable_window(std::span<const double> errors);

/// pₙ = log(eₙ₊₁/eₙ)/log(eₙ/eₙ₋₁); headline = median of the last three.
/// Throws Error{InsufficientData} with fewer than four usable entries.
OrderEstimate q_order(std::span<const double> errors);

/// Least-squares slope of log(−log eₙ) against n over the last three usable
/// entries below 1; order = exp(slope).
OrderEstimate r_order(std::span<const double> errors);

/// q_order of dₙ = ‖Δₙ‖/η.
OrderEstimate aq_order(std::span<const double> step_norms, double eta);

}  // namespace asis
