#include "l1dist/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace l1dist {

void MomentSummary::push(double x) noexcept
{
    ++count_;
    double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
}

void MomentSummary::merge(const MomentSummary& other) noexcept
{
    if (other.count_ == 0) return;
    if (count_ == 0) {
        *this = other;
        return;
    }
    auto na = static_cast<double>(count_);
    auto nb = static_cast<double>(other.count_);
    double n = na + nb;
    double delta = other.mean_ - mean_;
    mean_ += delta * nb / n;
    m2_ += other.m2_ + delta * delta * na * nb / n;
    count_ += other.count_;
}

double MomentSummary::mean() const
{
    if (empty()) throw std::logic_error("mean of an empty summary");
    return mean_;
}

double MomentSummary::variance_population() const
{
    if (empty()) throw std::logic_error("variance of an empty summary");
    return std::max(0.0, m2_ / static_cast<double>(count_));
}

double MomentSummary::variance_unbiased() const
{
    if (count_ < 2) throw std::logic_error("unbiased variance needs at least two values");
    return std::max(0.0, m2_ / static_cast<double>(count_ - 1));
}

MomentSummary summarize(std::span<const double> values) noexcept
{
    MomentSummary s;
    for (double v : values) s.push(v);
    return s;
}

Histogram::Histogram(std::vector<double> edges, std::vector<std::uint64_t> counts,
                     bool density_mode, std::uint64_t outside)
    : edges_(std::move(edges)), counts_(std::move(counts)), density_mode_(density_mode), outside_(outside)
{
    if (counts_.empty() || edges_.size() != counts_.size() + 1) {
        throw std::invalid_argument("histogram needs bins + 1 edges");
    }
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (!(edges_[i] > edges_[i - 1])) throw std::invalid_argument("histogram edges must increase");
    }
}

std::uint64_t Histogram::in_range() const noexcept
{
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

double Histogram::height(std::size_t bin) const noexcept
{
    if (!density_mode_) return static_cast<double>(counts_[bin]);
    auto total = in_range();
    if (total == 0) return 0.0;
    return static_cast<double>(counts_[bin]) / (static_cast<double>(total) * width(bin));
}

std::vector<double> Histogram::heights() const
{
    std::vector<double> out(bins());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = height(i);
    return out;
}

Histogram build_histogram(std::span<const double> values, std::vector<double> edges, bool density_mode)
{
    if (values.empty()) throw std::invalid_argument("histogram of an empty sample");
    if (edges.size() < 2) throw std::invalid_argument("histogram needs at least one bin");
    std::vector<std::uint64_t> counts(edges.size() - 1, 0);
    std::uint64_t outside = 0;
    const double lo = edges.front();
    const double hi = edges.back();
    for (double v : values) {
        if (!(v >= lo && v <= hi)) {
            ++outside;
            continue;
        }
        // Bin i holds [e_i, e_{i+1}); the last bin also takes hi.
        auto it = std::upper_bound(edges.begin(), edges.end(), v);
        auto idx = static_cast<std::size_t>(std::distance(edges.begin(), it)) - 1;
        idx = std::min(idx, counts.size() - 1);
        ++counts[idx];
    }
    return Histogram(std::move(edges), std::move(counts), density_mode, outside);
}

Histogram build_histogram(std::span<const double> values, std::size_t bins, bool density_mode)
{
    if (values.empty()) throw std::invalid_argument("histogram of an empty sample");
    if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
    auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    double lo = *mn;
    double hi = *mx;
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    std::vector<double> edges(bins + 1);
    const double step = (hi - lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i < bins; ++i) edges[i] = lo + static_cast<double>(i) * step;
    edges[bins] = hi;
    return build_histogram(values, std::move(edges), density_mode);
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> values) : sorted_(std::move(values))
{
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const noexcept
{
    if (sorted_.empty()) return 0.0;
    auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(std::distance(sorted_.begin(), it)) / static_cast<double>(sorted_.size());
}

double ks_statistic(const EmpiricalCdf& sample, const CdfFunction& reference_cdf)
{
    if (sample.size() == 0) throw std::invalid_argument("KS statistic of an empty sample");
    const auto xs = sample.sorted_values();
    const auto n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double f = reference_cdf(xs[i]);
        double above = static_cast<double>(i + 1) / n - f;
        double below = f - static_cast<double>(i) / n;
        d = std::max({d, above, below});
    }
    return std::clamp(d, 0.0, 1.0);
}

double ks_critical_05(std::size_t n)
{
    return ks_coefficient_05 / std::sqrt(static_cast<double>(n));
}

double ks_critical_01(std::size_t n)
{
    return ks_coefficient_01 / std::sqrt(static_cast<double>(n));
}

}  // namespace l1dist
