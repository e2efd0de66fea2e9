#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "l1dist/analytic.hpp"
#include "l1dist/estimation.hpp"

namespace l1dist {

inline constexpr const char* version_string = "0.1.0";

struct ExperimentConfig
{
    std::vector<std::size_t> dims{1, 2, 3, 5, 10, 20, 50, 100};
    std::size_t num_pairs = 10000;
    std::uint64_t seed = 0;
    std::size_t bins = 30;
    bool emit_histograms = false;
    bool emit_gof = false;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Deviation of empirical moments from n/3 and n/18.
struct TheoryDeviation
{
    /// (mean - n/3) / sqrt((n/18) / count)
    double mean_dev_se;
    /// (variance - n/18) / (n/18)
    double var_dev_rel;
};

/// Throws std::invalid_argument for an empty summary.
TheoryDeviation compare_to_theory(const MomentSummary& summary, std::size_t dim);

struct ExperimentRow
{
    std::size_t dim = 0;
    std::uint64_t count = 0;
    double mean_empirical = 0.0;
    double mean_theory = 0.0;
    /// population convention
    double variance_empirical = 0.0;
    double variance_theory = 0.0;
    double mean_dev_se = 0.0;
    double variance_dev_rel = 0.0;
    DensityBackend backend = DensityBackend::normal;
    std::optional<double> ks_exact;
    std::optional<double> ks_normal;
    double ks_critical_05 = 0.0;
    double ks_critical_01 = 0.0;
    std::optional<Histogram> histogram;
};

struct ExperimentReport
{
    ExperimentConfig config;
    std::string version = version_string;
    std::string variance_convention = "population";
    std::vector<ExperimentRow> rows;
};

/// Sample-stream family of a dimension's row.
std::uint32_t row_family(std::size_t dim);

/// One row: samples, moments, optional histogram and KS columns.
ExperimentRow run_row(const ExperimentConfig& config, std::size_t dim, unsigned workers = 1);

/**
 * Runs every dimension of the sweep in config order. Each row draws from
 * the substream family keyed by its dim value, so rows do not depend on
 * list position or on `workers`.
 */
ExperimentReport run_experiment(const ExperimentConfig& config, unsigned workers = 1);

}  // namespace l1dist
