#pragma once

// Small self-contained statistics helpers for the randomized tests:
// a regularized incomplete gamma evaluation good to ~1e-10 over the ranges
// used here, and the chi-square goodness-of-fit p-value built on it.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace teststats {

// Regularized lower incomplete gamma P(s, x), series for x < s+1 and
// continued fraction otherwise (the classic Lentz scheme).
inline double gamma_p(double s, double x) {
  if (s <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_p domain");
  if (x == 0.0) return 0.0;
  const double lg = std::lgamma(s);
  if (x < s + 1.0) {
    double term = 1.0 / s;
    double sum = term;
    double a = s;
    for (int i = 0; i < 500; ++i) {
      a += 1.0;
      term *= x / a;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + s * std::log(x) - lg);
  }
  // Continued fraction for Q(s, x); P = 1 - Q.
  const double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-15) break;
  }
  const double q = std::exp(-x + s * std::log(x) - lg) * h;
  return 1.0 - q;
}

// Survival function of the chi-square distribution with df degrees of
// freedom: probability of a statistic at least this large under the null.
inline double chi2_sf(double stat, int df) {
  if (df <= 0) throw std::invalid_argument("chi2_sf needs df >= 1");
  if (stat <= 0.0) return 1.0;
  return 1.0 - gamma_p(df / 2.0, stat / 2.0);
}

// Pearson chi-square p-value of observed counts against equiprobable cells.
inline double chi2_uniform_pvalue(const std::vector<long>& observed) {
  if (observed.size() < 2) throw std::invalid_argument("need at least 2 cells");
  long total = 0;
  for (long c : observed) total += c;
  if (total <= 0) throw std::invalid_argument("empty sample");
  const double expected = static_cast<double>(total) / observed.size();
  double stat = 0.0;
  for (long c : observed) {
    const double d = c - expected;
    stat += d * d / expected;
  }
  return chi2_sf(stat, static_cast<int>(observed.size()) - 1);
}

}  // namespace teststats
