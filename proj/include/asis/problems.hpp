#pragma once

#include "asis/problem.hpp"

#include <string>
#include <vector>

namespace asis::problems {

/// f₁(x) = exp(x − 1) − 1, root 1.
Problem f1();

/// f₂(x) = exp(2x − 1) − 1 = f₁(2x), root 1/2.
Problem f2();

/// F₁ = −4x(y − x² + 2) − 2(1 − x),  F₂ = 2(y − x² + 2); root (1, −1).
Problem example3();

/// F(x, y) = (x, b·y), the gradient of (x² + b·y²)/2.
Problem zigzag(double b);

/// F(x) = A·x − rhs.
Problem linear(const Matrix& a, const Vector& rhs);

/// q(s) = (a/2)s² − s + 1 with K₂ = a.
Problem adimensional_quadratic(double a);

/// p(t) = (a/2)t² − t + η.  With η = 2/a the Steffensen operator
/// p[0, p(0)] vanishes; for η > 2/a it is positive and t₁ < t₀.
Problem steffensen_trap(double a, double eta);

/// Names accepted by by_name.
const std::vector<std::string>& names();

/// "f1", "f2", "example3", "zigzag" (uses `b`).
Problem by_name(const std::string& name, double b = 0.1);

}  // namespace asis::problems
