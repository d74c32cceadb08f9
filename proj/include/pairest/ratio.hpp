#pragma once

#include <cstdint>
#include <optional>
#include <span>

namespace pairest {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double compensated_sum(std::span<const double> xs) noexcept;

/// Finite-population correction 1 - (n-1)/(T-1); 1 when T is absent or n = 1.
/// InvalidDesign when n = 0 or n > T.
double fpc_theta(std::uint64_t n, std::optional<std::uint64_t> population);

/// Bias-corrected ratio of sample means, mean(B)/mean(A) with a first order
/// Taylor correction. Requires n >= 2 (InsufficientSample) and mean(A) != 0
/// (DegenerateRatio).
double ratio_estimate(std::span<const double> a, std::span<const double> b, double theta);

/// Taylor-linearised variance of the ratio of means. Same preconditions.
double ratio_variance(std::span<const double> a, std::span<const double> b, double theta);

struct RatioResult {
  double value = 0.0;
  double variance = 0.0;
};

/// Both quantities in one pass over the residuals.
RatioResult ratio_estimate_and_variance(std::span<const double> a, std::span<const double> b,
                                        double theta);

}  // namespace pairest
