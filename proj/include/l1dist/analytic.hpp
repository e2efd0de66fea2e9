#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace l1dist {

/// Mean, variance and standardized shape of the distance distribution.
struct TheoreticalMoments
{
    std::size_t dim = 0;
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
};

/// n/3.
double theoretical_mean(std::size_t dim);
/// n/18.
double theoretical_variance(std::size_t dim);
/// (2*sqrt(2)/5) / sqrt(n); one-dimensional skewness shrinks by cumulant additivity.
double theoretical_skewness(std::size_t dim);
/// -3 / (5n).
double theoretical_excess_kurtosis(std::size_t dim);
/// All four closed forms together.
TheoreticalMoments theoretical_moments(std::size_t dim);

/// Density of |X - Y| for independent uniforms: 2(1 - z) on [0,1], 0 elsewhere.
double single_dim_density(double z) noexcept;

/**
 * Piecewise polynomial on [b_0, b_m].
 *
 * Segment k covers [b_k, b_{k+1}) and stores coefficients c_0..c_d of
 * c_0 + c_1 t + ... + c_d t^d in the local variable t = x - b_k. Local
 * coordinates keep the high-degree pieces of the iterated convolution
 * well conditioned. The last segment is closed on the right. Outside the
 * support the function is 0.
 */
class PiecewisePolynomial
{
  public:
    using Coefficients = std::vector<double>;

    PiecewisePolynomial(std::vector<double> breakpoints, std::vector<Coefficients> segments);

    std::span<const double> breakpoints() const noexcept { return breakpoints_; }
    std::span<const Coefficients> segments() const noexcept { return segments_; }
    std::size_t num_segments() const noexcept { return segments_.size(); }
    double lower() const noexcept { return breakpoints_.front(); }
    double upper() const noexcept { return breakpoints_.back(); }

    double operator()(double x) const noexcept;
    /// Integral from lower() to x using exact per-segment antiderivatives.
    /// Above the midpoint of the support it is evaluated as total minus the
    /// remaining mass so the upper tail stays monotone in floating point.
    double integral_to(double x) const noexcept;
    /// Integral over the whole support.
    double total_integral() const noexcept { return cumulative_.back(); }

  private:
    std::size_t locate(double x) const noexcept;

    std::vector<double> breakpoints_;
    std::vector<Coefficients> segments_;
    // antiderivatives_[k] vanishes at t = 0
    std::vector<Coefficients> antiderivatives_;
    // tail_antiderivatives_[k](s) = integral of segment k over [w - s, w]
    std::vector<Coefficients> tail_antiderivatives_;
    // cumulative_[k] = integral over [b_0, b_k]
    std::vector<double> cumulative_;
    // remaining_[k] = integral over [b_k, b_m]
    std::vector<double> remaining_;
};

/// Largest dimension served by the exact convolution engine.
inline constexpr std::size_t max_exact_dim = 30;

class UnsupportedDimension : public std::domain_error
{
  public:
    explicit UnsupportedDimension(std::size_t dim);
    std::size_t dim() const noexcept { return dim_; }

  private:
    std::size_t dim_;
};

/**
 * Exact density of the n-dimensional distance on [0, n], unit breakpoints.
 *
 * dim = 1 is the triangular density; higher dims fold in one more
 * triangular factor per step. Throws UnsupportedDimension above
 * max_exact_dim and std::invalid_argument for dim = 0.
 */
PiecewisePolynomial exact_density(std::size_t dim);

/// One convolution step: density on unit breakpoints [0, n] -> [0, n+1].
PiecewisePolynomial convolve_with_single_dim(const PiecewisePolynomial& density);

/// CDF of a density: 0 below the support, integral_to() inside, total mass above.
double exact_cdf(const PiecewisePolynomial& density, double x) noexcept;

/// Moments by exact polynomial integration; dim is the rounded upper support bound.
TheoreticalMoments moments_of(const PiecewisePolynomial& density);

struct NormalApprox
{
    double mean;
    double variance;

    NormalApprox(double mean, double variance);
    double stddev() const noexcept;
};

/// N(n/3, n/18).
NormalApprox normal_approx(std::size_t dim);

double normal_pdf(const NormalApprox& approx, double x) noexcept;
/// Uses std::erfc, so the result stays accurate in both tails.
double normal_cdf(const NormalApprox& approx, double x) noexcept;

enum class DensityBackend { exact, normal };

const char* to_string(DensityBackend backend) noexcept;

/**
 * Reference distribution for goodness-of-fit: the exact density when
 * dim <= max_exact_dim, otherwise the normal approximation. backend()
 * reports which one answers.
 */
class ReferenceDistribution
{
  public:
    explicit ReferenceDistribution(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }
    DensityBackend backend() const noexcept { return exact_ ? DensityBackend::exact : DensityBackend::normal; }
    bool has_exact() const noexcept { return exact_.has_value(); }
    const PiecewisePolynomial& exact() const;
    const NormalApprox& normal() const noexcept { return normal_; }

    double pdf(double x) const noexcept;
    double cdf(double x) const noexcept;

  private:
    std::size_t dim_;
    std::optional<PiecewisePolynomial> exact_;
    NormalApprox normal_;
};

/**
 * sup_x |exact_cdf(x) - normal_cdf(x)| for the given dim: dense grid over
 * [0, n] followed by golden-section refinement around the largest gap.
 */
double clt_sup_distance(std::size_t dim);

}  // namespace l1dist
