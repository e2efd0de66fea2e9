#include "l1dist/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>

#include "l1dist/experiment.hpp"
#include "l1dist/report_io.hpp"

namespace l1dist {

namespace {

class UsageError : public std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct CliSettings
{
    ExperimentConfig config;
    std::optional<std::filesystem::path> out_dir;
    std::string format = "both";
    unsigned workers = 1;
};

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_unsigned(const std::string& text, const std::string& what)
{
    T value{};
    auto s = trim(text);
    auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw UsageError("invalid " + what + " '" + s + "'");
    }
    return value;
}

std::vector<std::size_t> parse_dims(const std::string& text)
{
    std::vector<std::size_t> dims;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        auto item = trim(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (item.empty()) throw UsageError("invalid dimension list '" + text + "'");
        if (item.front() == '-' || item == "0") throw UsageError("invalid dimension " + item + " (must be >= 1)");
        auto d = parse_unsigned<std::size_t>(item, "dimension");
        if (d == 0) throw UsageError("invalid dimension " + item + " (must be >= 1)");
        dims.push_back(d);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return dims;
}

bool parse_bool(const std::string& text, const std::string& key)
{
    auto v = trim(text);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw UsageError("invalid boolean '" + v + "' for " + key);
}

std::size_t parse_positive(const std::string& text, const std::string& what)
{
    if (!trim(text).empty() && trim(text).front() == '-') {
        throw UsageError("invalid " + what + " " + trim(text) + " (must be positive)");
    }
    return parse_unsigned<std::size_t>(text, what);
}

void apply_setting(CliSettings& s, const std::string& key, const std::string& value)
{
    if (key == "dims") {
        s.config.dims = parse_dims(value);
    } else if (key == "pairs") {
        s.config.num_pairs = parse_positive(value, "pair count");
    } else if (key == "seed") {
        s.config.seed = parse_unsigned<std::uint64_t>(value, "seed");
    } else if (key == "bins") {
        s.config.bins = parse_positive(value, "bin count");
    } else if (key == "out") {
        s.out_dir = trim(value);
    } else if (key == "gof") {
        s.config.emit_gof = parse_bool(value, key);
    } else if (key == "histograms") {
        s.config.emit_histograms = parse_bool(value, key);
    } else if (key == "format") {
        s.format = trim(value);
    } else if (key == "workers") {
        s.workers = parse_unsigned<unsigned>(value, "worker count");
    } else {
        throw UsageError("unknown config key '" + key + "'");
    }
}

void load_config_file(CliSettings& s, const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
        }
        apply_setting(s, trim(t.substr(0, eq)), t.substr(eq + 1));
    }
}

void prepare_out_dir(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw UsageError("output directory " + dir.string() + " is not writable");
    }
    auto probe = dir / ".l1dist_write_probe";
    {
        std::ofstream f(probe);
        if (!f) throw UsageError("output directory " + dir.string() + " is not writable");
    }
    std::filesystem::remove(probe, ec);
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Monte Carlo and exact analysis of Manhattan distances in the unit hypercube", "l1dist"};
    std::string dims, pairs, seed, bins, out_dir, config_path, format, workers;
    bool gof = false;
    bool histograms = false;
    app.add_option("--dims", dims, "Comma-separated dimensions (default 1,2,3,5,10,20,50,100)");
    app.add_option("--pairs", pairs, "Point pairs per dimension (default 10000)");
    app.add_option("--seed", seed, "64-bit seed (default 0)");
    app.add_option("--bins", bins, "Histogram bins (default 30)");
    app.add_option("--out", out_dir, "Output directory for report files");
    app.add_flag("--gof", gof, "Compute Kolmogorov-Smirnov columns");
    app.add_flag("--histograms", histograms, "Emit histogram and overlay grids");
    app.add_option("--config", config_path, "Flat key=value config file; flags override it");
    app.add_option("--format", format, "csv, json or both (default both)");
    app.add_option("--workers", workers, "Sampling threads; 0 = all cores (default 1)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    CliSettings s;
    try {
        if (app.count("--config")) load_config_file(s, config_path);
        if (app.count("--dims")) apply_setting(s, "dims", dims);
        if (app.count("--pairs")) apply_setting(s, "pairs", pairs);
        if (app.count("--seed")) apply_setting(s, "seed", seed);
        if (app.count("--bins")) apply_setting(s, "bins", bins);
        if (app.count("--out")) apply_setting(s, "out", out_dir);
        if (app.count("--format")) apply_setting(s, "format", format);
        if (app.count("--workers")) apply_setting(s, "workers", workers);
        if (gof) s.config.emit_gof = true;
        if (histograms) s.config.emit_histograms = true;

        if (s.format != "csv" && s.format != "json" && s.format != "both") {
            throw UsageError("invalid format '" + s.format + "' (expected csv, json or both)");
        }
        try {
            s.config.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        if (s.out_dir) prepare_out_dir(*s.out_dir);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        const auto report = run_experiment(s.config, s.workers);
        out << render_table(report);
        if (s.out_dir) {
            std::size_t files = 0;
            if (s.format != "csv") {
                write_text_file(*s.out_dir / "report.json", report_to_json(report));
                ++files;
            }
            if (s.format != "json") {
                write_text_file(*s.out_dir / "table.csv", report_to_csv(report));
                ++files;
            }
            if (s.config.emit_histograms) files += emit_figure_data(report, *s.out_dir).size();
            err << "wrote " << files << " files to " << s.out_dir->string() << '\n';
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_internal;
    }
    return exit_ok;
}

}  // namespace l1dist
