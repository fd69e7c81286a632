#pragma once

// Small descriptive-statistics helpers shared by the baselines, experiments
// and CLI.

#include <cstddef>
#include <span>
#include <vector>

namespace geodepth::stats {

double mean(std::span<const double> x);
/// Unbiased sample variance (n - 1 denominator); 0 for fewer than two values.
double variance(std::span<const double> x);

/// Median; the average of the two central order statistics for even n.
double median(std::vector<double> x);
/// Median absolute deviation from the median (unscaled).
double mad(std::span<const double> x);
/// Quantile by linear interpolation at q * (n - 1).
double quantile(std::vector<double> x, double q);

/// Ranks starting at 1, ties receive their average rank.
std::vector<double> ranks(std::span<const double> x);
double pearson(std::span<const double> x, std::span<const double> y);
double spearman(std::span<const double> x, std::span<const double> y);

/// Standard normal upper tail P(Z > t).
double normal_upper_tail(double t);
double normal_cdf(double t);
/// P(chi^2_k > x).
double chi_square_sf(double x, double k);

/// Kolmogorov-Smirnov distance between the sample and N(mean, sd^2) fitted to it.
double ks_distance_to_fitted_normal(std::span<const double> x);

}  // namespace geodepth::stats
