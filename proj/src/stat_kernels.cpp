#include "advcurate/stat_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "advcurate/errors.hpp"

namespace advcurate::stats {

namespace {

constexpr int kMaxContinuedFractionTerms = 20000;
constexpr int kMaxQuantileIterations = 1200;
constexpr double kTiny = 1e-300;

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// Continued fraction for I_x(a, b), modified Lentz.
double incomplete_beta_cf(double x, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxContinuedFractionTerms; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) return h;
  }
  throw NumericalError("incomplete beta continued fraction did not converge for a=" +
                       std::to_string(a) + ", b=" + std::to_string(b) + ", x=" + std::to_string(x));
}

double beta_density(double x, double a, double b, double lbeta) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - lbeta);
}

void check_shapes(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("beta shape parameters must be positive and finite");
  }
}

}  // namespace

std::optional<double> pearson(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DomainError("pearson: length mismatch");
  if (u.size() < 2) throw DomainError("pearson: need at least two observations");
  const auto constant = [](std::span<const double> x) {
    return std::all_of(x.begin(), x.end(), [&](double e) { return e == x.front(); });
  };
  if (constant(u) || constant(v)) return std::nullopt;

  const double n = static_cast<double>(u.size());
  double mu = 0.0;
  double mv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mu += u[i];
    mv += v[i];
  }
  mu /= n;
  mv /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double du = u[i] - mu;
    const double dv = v[i] - mv;
    sxy += du * dv;
    sxx += du * du;
    syy += dv * dv;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double regularized_incomplete_beta(double x, double a, double b) {
  check_shapes(a, b);
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("incomplete beta: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  // The continued fraction converges fastest below the mean; use the
  // reflection I_x(a, b) = 1 - I_{1-x}(b, a) above it.
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::clamp(front * incomplete_beta_cf(x, a, b) / a, 0.0, 1.0);
  }
  return std::clamp(1.0 - front * incomplete_beta_cf(1.0 - x, b, a) / b, 0.0, 1.0);
}

double beta_quantile(double q, double a, double b) {
  check_shapes(a, b);
  if (!(q > 0.0 && q < 1.0)) throw DomainError("beta quantile: q must lie in (0, 1)");

  const double lbeta = log_beta(a, b);
  double lo = 0.0;
  double hi = 1.0;
  double x = std::clamp(a / (a + b), 1e-6, 1.0 - 1e-6);
  for (int iter = 0; iter < kMaxQuantileIterations; ++iter) {
    const double f = regularized_incomplete_beta(x, a, b) - q;
    if (std::fabs(f) <= 1e-14) return x;
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) return x;  // bracket exhausted at double resolution

    const double pdf = beta_density(x, a, b, lbeta);
    double next = mid;
    if (pdf > 0.0 && std::isfinite(pdf)) {
      const double newton = x - f / pdf;
      if (newton > lo && newton < hi) next = newton;
    }
    // Fall back to bisection when Newton stalls in a flat region.
    if (std::fabs(next - x) < 1e-3 * (hi - lo) && iter % 8 == 7) next = mid;
    x = next;
  }
  throw NumericalError("beta quantile did not converge for q=" + std::to_string(q) +
                       ", a=" + std::to_string(a) + ", b=" + std::to_string(b));
}

double student_t_two_sided_p(double t_stat, int dof) {
  if (dof < 1) throw DomainError("student t: degrees of freedom must be >= 1");
  if (std::isnan(t_stat)) throw DomainError("student t: statistic is NaN");
  if (std::isinf(t_stat)) return 0.0;
  const double nu = static_cast<double>(dof);
  const double x = nu / (nu + t_stat * t_stat);
  return std::clamp(regularized_incomplete_beta(x, 0.5 * nu, 0.5), 0.0, 1.0);
}

}  // namespace advcurate::stats
