#include "l1dist/experiment.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "l1dist/sampling.hpp"

namespace l1dist {

void ExperimentConfig::validate() const
{
    if (dims.empty()) throw std::invalid_argument("dims must not be empty");
    for (auto d : dims) {
        if (d == 0) throw std::invalid_argument("invalid dimension 0 (must be >= 1)");
        if (d > std::numeric_limits<std::uint32_t>::max()) {
            throw std::invalid_argument("invalid dimension " + std::to_string(d) + " (too large)");
        }
    }
    if (num_pairs < 2) {
        throw std::invalid_argument("invalid pair count " + std::to_string(num_pairs) + " (must be >= 2)");
    }
    if (bins == 0) throw std::invalid_argument("invalid bin count 0 (must be >= 1)");
}

TheoryDeviation compare_to_theory(const MomentSummary& summary, std::size_t dim)
{
    if (summary.empty()) throw std::invalid_argument("cannot compare an empty summary to theory");
    const double mu = theoretical_mean(dim);
    const double var = theoretical_variance(dim);
    const double se = std::sqrt(var / static_cast<double>(summary.count()));
    return {(summary.mean() - mu) / se, (summary.variance_population() - var) / var};
}

std::uint32_t row_family(std::size_t dim)
{
    return static_cast<std::uint32_t>(dim);
}

ExperimentRow run_row(const ExperimentConfig& config, std::size_t dim, unsigned workers)
{
    SampleSpec spec{dim, config.num_pairs, config.seed, row_family(dim)};
    const auto distances = sample_distances(spec, workers);
    const auto summary = summarize(distances);
    const auto dev = compare_to_theory(summary, dim);

    ExperimentRow row;
    row.dim = dim;
    row.count = summary.count();
    row.mean_empirical = summary.mean();
    row.mean_theory = theoretical_mean(dim);
    row.variance_empirical = summary.variance_population();
    row.variance_theory = theoretical_variance(dim);
    row.mean_dev_se = dev.mean_dev_se;
    row.variance_dev_rel = dev.var_dev_rel;
    row.backend = dim <= max_exact_dim ? DensityBackend::exact : DensityBackend::normal;
    row.ks_critical_05 = ks_critical_05(distances.size());
    row.ks_critical_01 = ks_critical_01(distances.size());

    if (config.emit_histograms) {
        row.histogram = build_histogram(distances, config.bins, true);
    }
    if (config.emit_gof) {
        const EmpiricalCdf ecdf(distances);
        const auto normal = normal_approx(dim);
        row.ks_normal = ks_statistic(ecdf, [&](double x) { return normal_cdf(normal, x); });
        try {
            const auto density = exact_density(dim);
            row.ks_exact = ks_statistic(ecdf, [&](double x) { return exact_cdf(density, x); });
        } catch (const UnsupportedDimension&) {
            row.backend = DensityBackend::normal;
        }
    }
    return row;
}

ExperimentReport run_experiment(const ExperimentConfig& config, unsigned workers)
{
    config.validate();
    ExperimentReport report;
    report.config = config;
    report.rows.reserve(config.dims.size());
    for (auto dim : config.dims) report.rows.push_back(run_row(config, dim, workers));
    return report;
}

}  // namespace l1dist
