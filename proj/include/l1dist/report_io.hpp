#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "l1dist/experiment.hpp"

namespace l1dist {

/// 17 significant digits, '.' decimal point, no grouping.
std::string format_number(double x);
/// Fixed-point with the given number of decimals, locale independent.
std::string format_fixed(double x, int decimals);

/// JSON report with stable key order; doubles print in shortest round-trip form.
std::string report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const std::string& text);

/// One row per dimension; absent KS values are empty fields.
std::string report_to_csv(const ExperimentReport& report);

/// Columns bin_left, bin_right, density.
std::string histogram_to_csv(const Histogram& histogram);

/// Grid points for overlay files.
inline constexpr std::size_t overlay_points = 512;

/// Columns x, exact_pdf (dim <= 30 only), normal_pdf over the histogram range.
std::string overlay_to_csv(const ExperimentRow& row);

/// Table 05-style console table; theory columns to four decimals.
std::string render_table(const ExperimentReport& report);

/**
 * Writes hist_n{dim}.csv and overlay_n{dim}.csv for every row and returns
 * the written paths in row order. Throws std::invalid_argument when the
 * report carries no histograms.
 */
std::vector<std::filesystem::path> emit_figure_data(const ExperimentReport& report,
                                                    const std::filesystem::path& out_dir);

/// Writes text to path, throwing std::runtime_error on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace l1dist
