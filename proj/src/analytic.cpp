#include "l1dist/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace l1dist {

namespace {

using Poly = PiecewisePolynomial::Coefficients;

double horner(const Poly& c, double t) noexcept
{
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
}

// Antiderivative vanishing at t = 0.
Poly antiderivative(const Poly& c)
{
    Poly out(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) out[i + 1] = c[i] / static_cast<double>(i + 1);
    return out;
}

Poly times_t(const Poly& c)
{
    Poly out(c.size() + 1, 0.0);
    std::copy(c.begin(), c.end(), out.begin() + 1);
    return out;
}

void add_scaled(Poly& acc, const Poly& c, double scale)
{
    if (acc.size() < c.size()) acc.resize(c.size(), 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) acc[i] += scale * c[i];
}

// Coefficients of s -> p(w - s): Taylor shift by w, then flip odd powers.
Poly reflect(const Poly& c, double w)
{
    Poly out = c;
    const std::size_t n = out.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = n - 1; j > i; --j) out[j - 1] += w * out[j];
    }
    for (std::size_t j = 1; j < n; j += 2) out[j] = -out[j];
    return out;
}

// integral_0^w t^j p(t) dt
double local_moment(const Poly& p, double width, std::size_t j)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        auto e = static_cast<double>(i + j + 1);
        sum += p[i] * std::pow(width, e) / e;
    }
    return sum;
}

void check_dim(std::size_t dim)
{
    if (dim == 0) throw std::invalid_argument("dimension must be at least 1");
}

}  // namespace

double theoretical_mean(std::size_t dim)
{
    check_dim(dim);
    return static_cast<double>(dim) / 3.0;
}

double theoretical_variance(std::size_t dim)
{
    check_dim(dim);
    return static_cast<double>(dim) / 18.0;
}

double theoretical_skewness(std::size_t dim)
{
    check_dim(dim);
    return 2.0 * std::numbers::sqrt2 / 5.0 / std::sqrt(static_cast<double>(dim));
}

double theoretical_excess_kurtosis(std::size_t dim)
{
    check_dim(dim);
    return -3.0 / (5.0 * static_cast<double>(dim));
}

TheoreticalMoments theoretical_moments(std::size_t dim)
{
    return {dim, theoretical_mean(dim), theoretical_variance(dim), theoretical_skewness(dim),
            theoretical_excess_kurtosis(dim)};
}

double single_dim_density(double z) noexcept
{
    return (z >= 0.0 && z <= 1.0) ? 2.0 * (1.0 - z) : 0.0;
}

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> breakpoints,
                                         std::vector<Coefficients> segments)
    : breakpoints_(std::move(breakpoints)), segments_(std::move(segments))
{
    if (breakpoints_.size() < 2 || segments_.size() + 1 != breakpoints_.size()) {
        throw std::invalid_argument("piecewise polynomial needs m+1 breakpoints for m segments");
    }
    for (std::size_t k = 1; k < breakpoints_.size(); ++k) {
        if (!(breakpoints_[k] > breakpoints_[k - 1])) {
            throw std::invalid_argument("breakpoints must be strictly increasing");
        }
    }
    const std::size_t m = segments_.size();
    antiderivatives_.reserve(m);
    tail_antiderivatives_.reserve(m);
    std::vector<double> mass(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double w = breakpoints_[k + 1] - breakpoints_[k];
        antiderivatives_.push_back(antiderivative(segments_[k]));
        tail_antiderivatives_.push_back(antiderivative(reflect(segments_[k], w)));
        mass[k] = horner(antiderivatives_[k], w);
    }
    cumulative_.assign(m + 1, 0.0);
    remaining_.assign(m + 1, 0.0);
    for (std::size_t k = 0; k < m; ++k) cumulative_[k + 1] = cumulative_[k] + mass[k];
    for (std::size_t k = m; k-- > 0;) remaining_[k] = remaining_[k + 1] + mass[k];
}

std::size_t PiecewisePolynomial::locate(double x) const noexcept
{
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    auto k = static_cast<std::size_t>(std::distance(breakpoints_.begin(), it));
    k = k == 0 ? 0 : k - 1;
    return std::min(k, segments_.size() - 1);
}

double PiecewisePolynomial::operator()(double x) const noexcept
{
    if (x < lower() || x > upper()) return 0.0;
    auto k = locate(x);
    return horner(segments_[k], x - breakpoints_[k]);
}

double PiecewisePolynomial::integral_to(double x) const noexcept
{
    if (x <= lower()) return 0.0;
    if (x >= upper()) return cumulative_.back();
    auto k = locate(x);
    if (x <= 0.5 * (lower() + upper())) {
        return cumulative_[k] + horner(antiderivatives_[k], x - breakpoints_[k]);
    }
    const double tail = horner(tail_antiderivatives_[k], breakpoints_[k + 1] - x) + remaining_[k + 1];
    return cumulative_.back() - tail;
}

UnsupportedDimension::UnsupportedDimension(std::size_t dim)
    : std::domain_error("exact density unsupported for dimension " + std::to_string(dim)
                        + " (ceiling " + std::to_string(max_exact_dim) + ")")
    , dim_(dim)
{
}

PiecewisePolynomial convolve_with_single_dim(const PiecewisePolynomial& density)
{
    const std::size_t n = density.num_segments();
    const auto bp = density.breakpoints();
    for (std::size_t k = 0; k <= n; ++k) {
        if (bp[k] != static_cast<double>(k)) {
            throw std::invalid_argument("convolution requires unit breakpoints 0, 1, ..., n");
        }
    }

    // Segment k of the result at x = k + t collects two contributions:
    //   from piece k:     integral_0^t p_k(v) 2(1 - t + v) dv
    //   from piece k - 1: integral_t^1 p_{k-1}(v) 2(v - t) dv
    std::vector<Poly> out(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        Poly acc;
        if (k < n) {
            const Poly& p = density.segments()[k];
            Poly P = antiderivative(p);
            Poly Q = antiderivative(times_t(p));
            add_scaled(acc, P, 2.0);
            add_scaled(acc, times_t(P), -2.0);
            add_scaled(acc, Q, 2.0);
        }
        if (k > 0) {
            const Poly& p = density.segments()[k - 1];
            Poly P = antiderivative(p);
            Poly Q = antiderivative(times_t(p));
            double P1 = horner(P, 1.0);
            double Q1 = horner(Q, 1.0);
            add_scaled(acc, Poly{2.0 * Q1, -2.0 * P1}, 1.0);
            add_scaled(acc, Q, -2.0);
            add_scaled(acc, times_t(P), 2.0);
        }
        out[k] = std::move(acc);
    }

    std::vector<double> breakpoints(n + 2);
    for (std::size_t k = 0; k < breakpoints.size(); ++k) breakpoints[k] = static_cast<double>(k);
    return PiecewisePolynomial(std::move(breakpoints), std::move(out));
}

PiecewisePolynomial exact_density(std::size_t dim)
{
    check_dim(dim);
    if (dim > max_exact_dim) throw UnsupportedDimension(dim);
    PiecewisePolynomial base({0.0, 1.0}, {{2.0, -2.0}});
    PiecewisePolynomial density = base;
    for (std::size_t d = 1; d < dim; ++d) density = convolve_with_single_dim(density);
    return density;
}

double exact_cdf(const PiecewisePolynomial& density, double x) noexcept
{
    return density.integral_to(x);
}

TheoreticalMoments moments_of(const PiecewisePolynomial& density)
{
    const auto bp = density.breakpoints();
    const auto segs = density.segments();

    double mass = 0.0;
    double first = 0.0;
    for (std::size_t k = 0; k < segs.size(); ++k) {
        double w = bp[k + 1] - bp[k];
        double m0 = local_moment(segs[k], w, 0);
        mass += m0;
        first += bp[k] * m0 + local_moment(segs[k], w, 1);
    }
    const double mean = first / mass;

    // Central moments: (b_k - mean + t)^r expanded binomially in t.
    double central[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < segs.size(); ++k) {
        double w = bp[k + 1] - bp[k];
        double shift = bp[k] - mean;
        double lm[5];
        for (std::size_t j = 0; j < 5; ++j) lm[j] = local_moment(segs[k], w, j);
        for (int r = 2; r <= 4; ++r) {
            double binom = 1.0;
            double sum = 0.0;
            for (int j = 0; j <= r; ++j) {
                sum += binom * std::pow(shift, r - j) * lm[j];
                binom = binom * (r - j) / (j + 1);
            }
            central[r] += sum;
        }
    }
    const double var = central[2] / mass;
    const double mu3 = central[3] / mass;
    const double mu4 = central[4] / mass;

    TheoreticalMoments m;
    m.dim = static_cast<std::size_t>(std::lround(density.upper()));
    m.mean = mean;
    m.variance = var;
    m.skewness = mu3 / std::pow(var, 1.5);
    m.excess_kurtosis = mu4 / (var * var) - 3.0;
    return m;
}

NormalApprox::NormalApprox(double mean_, double variance_) : mean(mean_), variance(variance_)
{
    if (!(variance > 0.0)) throw std::invalid_argument("normal approximation needs variance > 0");
}

double NormalApprox::stddev() const noexcept
{
    return std::sqrt(variance);
}

NormalApprox normal_approx(std::size_t dim)
{
    return NormalApprox(theoretical_mean(dim), theoretical_variance(dim));
}

double normal_pdf(const NormalApprox& approx, double x) noexcept
{
    double z = (x - approx.mean) / approx.stddev();
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi * approx.variance);
}

double normal_cdf(const NormalApprox& approx, double x) noexcept
{
    double z = (x - approx.mean) / approx.stddev();
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

const char* to_string(DensityBackend backend) noexcept
{
    return backend == DensityBackend::exact ? "exact" : "normal";
}

ReferenceDistribution::ReferenceDistribution(std::size_t dim) : dim_(dim), normal_(normal_approx(dim))
{
    if (dim <= max_exact_dim) exact_.emplace(exact_density(dim));
}

const PiecewisePolynomial& ReferenceDistribution::exact() const
{
    if (!exact_) throw UnsupportedDimension(dim_);
    return *exact_;
}

double ReferenceDistribution::pdf(double x) const noexcept
{
    return exact_ ? (*exact_)(x) : normal_pdf(normal_, x);
}

double ReferenceDistribution::cdf(double x) const noexcept
{
    return exact_ ? exact_cdf(*exact_, x) : normal_cdf(normal_, x);
}

double clt_sup_distance(std::size_t dim)
{
    const auto density = exact_density(dim);
    const auto normal = normal_approx(dim);
    auto gap = [&](double x) { return std::abs(exact_cdf(density, x) - normal_cdf(normal, x)); };

    const double hi = static_cast<double>(dim);
    const std::size_t grid = 20000;
    const double h = hi / static_cast<double>(grid);
    double best = 0.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i <= grid; ++i) {
        double g = gap(static_cast<double>(i) * h);
        if (g > best) {
            best = g;
            best_i = i;
        }
    }

    double a = std::max(0.0, (static_cast<double>(best_i) - 1.0) * h);
    double b = std::min(hi, (static_cast<double>(best_i) + 1.0) * h);
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 80; ++it) {
        double c = b - ratio * (b - a);
        double d = a + ratio * (b - a);
        if (gap(c) > gap(d)) {
            b = d;
        } else {
            a = c;
        }
    }
    return std::max(best, gap(0.5 * (a + b)));
}

}  // namespace l1dist
