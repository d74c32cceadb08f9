#include "pairest/ratio.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "pairest/error.hpp"

namespace pairest {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

double compensated_sum(std::span<const double> xs) noexcept {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

double fpc_theta(std::uint64_t n, std::optional<std::uint64_t> population) {
  if (n == 0) throw Error(ErrorCode::InvalidDesign, "sample size must be at least 1");
  if (!population) return 1.0;
  const auto t = *population;
  if (n > t) {
    throw Error(ErrorCode::InvalidDesign, "sample size " + std::to_string(n) +
                                              " exceeds population size " + std::to_string(t));
  }
  if (n == 1) return 1.0;
  return 1.0 - static_cast<double>(n - 1) / static_cast<double>(t - 1);
}

RatioResult ratio_estimate_and_variance(std::span<const double> a, std::span<const double> b,
                                        double theta) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::InvalidInput, "ratio inputs differ in length");
  }
  const std::size_t n = a.size();
  if (n < 2) {
    throw Error(ErrorCode::InsufficientSample, "ratio estimation needs at least two samples");
  }
  const double nd = static_cast<double>(n);
  const double mean_a = compensated_sum(a) / nd;
  const double mean_b = compensated_sum(b) / nd;
  if (mean_a == 0.0 || !std::isfinite(mean_a) || !std::isfinite(mean_b)) {
    throw Error(ErrorCode::DegenerateRatio, "denominator sample mean is zero or not finite");
  }
  const double ratio = mean_b / mean_a;

  // Residuals d_s = (B_s - ratio * A_s) / mean(A) sum to zero, which lets the
  // correction be written in centred form sum (A_s/mean(A) - 1) d_s. It is
  // exactly zero when A is constant and never divides by mean(B).
  CompensatedSum correction;
  CompensatedSum squares;
  for (std::size_t s = 0; s < n; ++s) {
    const double d = (b[s] - ratio * a[s]) / mean_a;
    correction.add((a[s] / mean_a - 1.0) * d);
    squares.add(d * d);
  }
  const double scale = theta / (nd * (nd - 1.0));
  return {ratio + scale * correction.value(), scale * squares.value()};
}

double ratio_estimate(std::span<const double> a, std::span<const double> b, double theta) {
  return ratio_estimate_and_variance(a, b, theta).value;
}

double ratio_variance(std::span<const double> a, std::span<const double> b, double theta) {
  return ratio_estimate_and_variance(a, b, theta).variance;
}

}  // namespace pairest
