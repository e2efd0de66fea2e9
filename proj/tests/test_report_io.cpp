#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "l1dist/report_io.hpp"

using namespace l1dist;
namespace fs = std::filesystem;

namespace {

std::vector<std::vector<std::string>> read_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

ExperimentReport small_report(bool histograms)
{
    ExperimentConfig c;
    c.dims = {1, 2, 100};
    c.num_pairs = 5000;
    c.seed = 7;
    c.emit_gof = true;
    c.emit_histograms = histograms;
    return run_experiment(c);
}

fs::path scratch_dir(const std::string& name)
{
    auto dir = fs::temp_directory_path() / ("l1dist_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("number formatting round-trips with 17 digits")
{
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(1.0 / 3.0) == "0.33333333333333331");
    CHECK(format_number(2.0) == "2");
    CHECK(format_fixed(1.0 / 3.0, 4) == "0.3333");
    CHECK(format_fixed(100.0 / 18.0, 4) == "5.5556");
    for (double x : {1e-300, 3.14159, 123456.789, 5.55e-17}) CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("json report keeps config and round-trips byte for byte")
{
    auto report = small_report(true);
    auto text = report_to_json(report);
    auto j = nlohmann::json::parse(text);
    CHECK(j["config"]["seed"] == 7);
    CHECK(j["config"]["dims"] == nlohmann::json::array({1, 2, 100}));
    CHECK(j["variance_convention"] == "population");
    CHECK(j["rows"][2]["backend"] == "normal");
    CHECK(j["rows"][2]["ks_exact"].is_null());
    CHECK(text.find("\"version\"") < text.find("\"config\""));
    CHECK(report_to_json(report_from_json(text)) == text);

    auto no_hist = report_to_json(small_report(false));
    CHECK(report_to_json(report_from_json(no_hist)) == no_hist);
}

TEST_CASE("csv table layout")
{
    auto report = small_report(false);
    auto rows = read_csv(report_to_csv(report));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0][0] == "dim");
    CHECK(rows[0].size() == 13);
    CHECK(rows[1][0] == "1");
    CHECK(rows[1][3] == "0.33333333333333331");
    CHECK(rows[3][8] == "normal");
    CHECK(rows[3][9].empty());
    CHECK(std::stod(rows[2][2]) == report.rows[1].mean_empirical);
}

TEST_CASE("figure data files")
{
    auto report = small_report(true);
    auto dir = scratch_dir("figures");
    auto files = emit_figure_data(report, dir);
    REQUIRE(files.size() == 6);
    CHECK(files[0].filename() == "hist_n1.csv");
    CHECK(files[1].filename() == "overlay_n1.csv");
    CHECK(files[5].filename() == "overlay_n100.csv");

    for (std::size_t dim : {1, 2, 100}) {
        auto hist = read_csv(slurp(dir / ("hist_n" + std::to_string(dim) + ".csv")));
        CHECK(hist[0] == std::vector<std::string>{"bin_left", "bin_right", "density"});
        CHECK(hist.size() == 31);
        double area = 0.0;
        for (std::size_t i = 1; i < hist.size(); ++i) {
            area += std::stod(hist[i][2]) * (std::stod(hist[i][1]) - std::stod(hist[i][0]));
        }
        CHECK(std::fabs(area - 1.0) <= 1e-9);
    }

    auto overlay1 = read_csv(slurp(dir / "overlay_n1.csv"));
    REQUIRE(overlay1.size() == overlay_points + 1);
    CHECK(overlay1[0] == std::vector<std::string>{"x", "exact_pdf", "normal_pdf"});
    CHECK(std::stod(overlay1[1][1]) == doctest::Approx(2.0).epsilon(0.01));
    // Histogram range ends at the sample maximum, just short of 1.
    double x_last = std::stod(overlay1.back()[0]);
    CHECK(x_last > 0.95);
    CHECK(std::stod(overlay1.back()[1]) == doctest::Approx(2.0 * (1.0 - x_last)).epsilon(1e-12));
    for (std::size_t i = 2; i < overlay1.size(); ++i) CHECK(std::stod(overlay1[i][1]) <= std::stod(overlay1[i - 1][1]));

    auto overlay100 = read_csv(slurp(dir / "overlay_n100.csv"));
    CHECK(overlay100[0] == std::vector<std::string>{"x", "normal_pdf"});
    std::size_t peak = 1;
    for (std::size_t i = 1; i < overlay100.size(); ++i) {
        if (std::stod(overlay100[i][1]) > std::stod(overlay100[peak][1])) peak = i;
    }
    double step = std::stod(overlay100[2][0]) - std::stod(overlay100[1][0]);
    CHECK(std::fabs(std::stod(overlay100[peak][0]) - 100.0 / 3.0) <= step);

    CHECK_THROWS_WITH_AS(emit_figure_data(small_report(false), dir), doctest::Contains("emit_histograms"),
                         std::invalid_argument);
    fs::remove_all(dir);
}

TEST_CASE("console table renders theory to four decimals")
{
    ExperimentConfig c;
    c.dims = {1, 100};
    auto table = render_table(run_experiment(c));
    CHECK(table.find("0.3333") != std::string::npos);
    CHECK(table.find("0.0556") != std::string::npos);
    CHECK(table.find("33.3333") != std::string::npos);
    CHECK(table.find("5.5556") != std::string::npos);
}
