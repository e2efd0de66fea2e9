#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace l1dist {

/**
 * Streaming count / mean / variance (Welford update, Chan et al. merge).
 *
 * An empty summary has no mean or variance; the accessors throw
 * std::logic_error instead of reporting zeroes.
 */
class MomentSummary
{
  public:
    void push(double x) noexcept;
    /// Combine with a summary over disjoint data.
    void merge(const MomentSummary& other) noexcept;

    std::uint64_t count() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }

    double mean() const;
    /// Divide-by-N variance.
    double variance_population() const;
    /// Divide-by-(N-1) variance; needs count >= 2.
    double variance_unbiased() const;

  private:
    std::uint64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;  // sum of squared deviations from mean_
};

MomentSummary summarize(std::span<const double> values) noexcept;

class Histogram
{
  public:
    Histogram(std::vector<double> edges, std::vector<std::uint64_t> counts, bool density_mode,
              std::uint64_t outside = 0);

    std::span<const double> edges() const noexcept { return edges_; }
    std::span<const std::uint64_t> counts() const noexcept { return counts_; }
    std::size_t bins() const noexcept { return counts_.size(); }
    bool density_mode() const noexcept { return density_mode_; }
    /// Observations that fell outside explicit edges.
    std::uint64_t outside() const noexcept { return outside_; }
    std::uint64_t in_range() const noexcept;

    double width(std::size_t bin) const noexcept { return edges_[bin + 1] - edges_[bin]; }
    /// counts / (in_range * width) in density mode, raw counts otherwise.
    double height(std::size_t bin) const noexcept;
    std::vector<double> heights() const;

  private:
    std::vector<double> edges_;
    std::vector<std::uint64_t> counts_;
    bool density_mode_;
    std::uint64_t outside_;
};

/**
 * Equal-width bins over [min, max] of the data, last bin closed on both
 * sides. When every value is equal the range widens to [v - 0.5, v + 0.5].
 * Throws std::invalid_argument for empty data or bins == 0.
 */
Histogram build_histogram(std::span<const double> values, std::size_t bins, bool density_mode);

/// Same binning rules with caller-supplied strictly increasing edges.
Histogram build_histogram(std::span<const double> values, std::vector<double> edges,
                          bool density_mode);

/// Step function F(x) = #(values <= x) / N.
class EmpiricalCdf
{
  public:
    explicit EmpiricalCdf(std::vector<double> values);

    std::size_t size() const noexcept { return sorted_.size(); }
    std::span<const double> sorted_values() const noexcept { return sorted_; }
    double operator()(double x) const noexcept;

  private:
    std::vector<double> sorted_;
};

using CdfFunction = std::function<double(double)>;

/**
 * Kolmogorov-Smirnov distance: max over order statistics x_(i) of
 * max(i/N - F(x_(i)), F(x_(i)) - (i-1)/N). Throws on an empty sample.
 */
double ks_statistic(const EmpiricalCdf& sample, const CdfFunction& reference_cdf);

/// Asymptotic Kolmogorov critical coefficients; the critical value is c / sqrt(N).
inline constexpr double ks_coefficient_05 = 1.358;
inline constexpr double ks_coefficient_01 = 1.628;

double ks_critical_05(std::size_t n);
double ks_critical_01(std::size_t n);

}  // namespace l1dist
