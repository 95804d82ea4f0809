#include "asis/orders.hpp"

#include "asis/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace asis {

const char* to_string(OrderNotion n) {
  switch (n) {
    case OrderNotion::Q: return "Q";
    case OrderNotion::R: return "R";
    case OrderNotion::AQ: return "AQ";
  }
  return "unknown";
}

std::vector<double> usable_window(std::span<const double> errors) {
  std::vector<double> kept;
  for (double e : errors) {
    if (std::isfinite(e) && e >= kErrorFloor) kept.push_back(e);
  }
  std::size_t start = kept.size();
  while (start > 1 && kept[start - 2] > kept[start - 1]) --start;
  if (start > 0) --start;
  return {kept.begin() + static_cast<std::ptrdiff_t>(std::min(start, kept.size())), kept.end()};
}

namespace {

double median_of_last_three(const std::vector<double>& v) {
  std::vector<double> tail(v.end() - static_cast<std::ptrdiff_t>(std::min<std::size_t>(3, v.size())), v.end());
  std::sort(tail.begin(), tail.end());
  if (tail.size() == 2) return 0.5 * (tail[0] + tail[1]);
  return tail[tail.size() / 2];
}

bool last_three_stable(const std::vector<double>& v) {
  if (v.size() < 3) return false;
  const auto [lo, hi] = std::minmax_element(v.end() - 3, v.end());
  return *hi - *lo <= 0.1;
}

std::vector<double> checked_window(std::span<const double> errors) {
  std::vector<double> w = usable_window(errors);
  if (w.size() < 4) {
    throw Error(ErrorCode::InsufficientData, "insufficient data: need 4 strictly decreasing entries above 1e-14");
  }
  return w;
}

}  // namespace

OrderEstimate q_order(std::span<const double> errors) {
  const std::vector<double> w = checked_window(errors);
  OrderEstimate est;
  est.notion = OrderNotion::Q;
  for (std::size_t k = 1; k + 1 < w.size(); ++k) {
    est.per_step.push_back(std::log(w[k + 1] / w[k]) / std::log(w[k] / w[k - 1]));
  }
  est.order = median_of_last_three(est.per_step);
  est.stable = last_three_stable(est.per_step);
  return est;
}

OrderEstimate r_order(std::span<const double> errors) {
  std::vector<double> w = checked_window(errors);
  std::erase_if(w, [](double e) { return !(e < 1.0); });
  if (w.size() < 3) throw Error(ErrorCode::InsufficientData, "insufficient data: need 3 usable entries below 1");

  OrderEstimate est;
  est.notion = OrderNotion::R;
  std::vector<double> y;
  for (double e : w) y.push_back(std::log(-std::log(e)));
  for (std::size_t k = 0; k + 1 < y.size(); ++k) est.per_step.push_back(std::exp(y[k + 1] - y[k]));

  const std::size_t n = 3;
  const std::size_t first = y.size() - n;
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mean_x += static_cast<double>(k);
    mean_y += y[first + k];
  }
  mean_x /= n;
  mean_y /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = static_cast<double>(k) - mean_x;
    sxy += dx * (y[first + k] - mean_y);
    sxx += dx * dx;
  }
  est.order = std::exp(sxy / sxx);
  est.stable = last_three_stable(est.per_step);
  return est;
}

OrderEstimate aq_order(std::span<const double> step_norms, double eta) {
  if (!(eta > 0.0)) throw Error(ErrorCode::InvalidArgument, "eta must be positive");
  std::vector<double> d;
  d.reserve(step_norms.size());
  for (double s : step_norms) d.push_back(s / eta);
  OrderEstimate est = q_order(d);
  est.notion = OrderNotion::AQ;
  return est;
}

}  // namespace asis
