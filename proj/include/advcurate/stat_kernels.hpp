#pragma once

#include <optional>
#include <span>

namespace advcurate::stats {

/// Sample Pearson correlation coefficient. Returns std::nullopt when either
/// vector has zero variance. Throws DomainError on length mismatch or n < 2.
std::optional<double> pearson(std::span<const double> u, std::span<const double> v);

/// Regularized incomplete beta function I_x(a, b), evaluated with a Lentz
/// continued fraction. Absolute error is below 1e-10 for shapes up to a few
/// thousand.
double regularized_incomplete_beta(double x, double a, double b);

/// Inverse of I_x(a, b) in x: returns the q-th quantile of Beta(a, b).
/// Throws NumericalError if the safeguarded Newton iteration exhausts its cap.
double beta_quantile(double q, double a, double b);

/// Two-sided tail probability 2 * P(T >= |t|) for Student's t with `dof`
/// degrees of freedom. Infinite |t| yields exactly 0.
double student_t_two_sided_p(double t_stat, int dof);

}  // namespace advcurate::stats
