#include "l1dist/report_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace l1dist {

namespace {

using json = nlohmann::ordered_json;

json optional_number(const std::optional<double>& v)
{
    return v ? json(*v) : json(nullptr);
}

std::optional<double> read_optional(const json& j)
{
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

DensityBackend backend_from_string(const std::string& s)
{
    if (s == "exact") return DensityBackend::exact;
    if (s == "normal") return DensityBackend::normal;
    throw std::invalid_argument("unknown density backend '" + s + "'");
}

}  // namespace

std::string format_number(double x)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string format_fixed(double x, int decimals)
{
    char buf[128];
    auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed, decimals);
    return std::string(buf, res.ptr);
}

std::string report_to_json(const ExperimentReport& report)
{
    const auto& c = report.config;
    json j;
    j["version"] = report.version;
    j["config"] = {{"dims", c.dims},
                   {"num_pairs", c.num_pairs},
                   {"seed", c.seed},
                   {"bins", c.bins},
                   {"emit_histograms", c.emit_histograms},
                   {"emit_gof", c.emit_gof}};
    j["variance_convention"] = report.variance_convention;
    json rows = json::array();
    for (const auto& r : report.rows) {
        json row;
        row["dim"] = r.dim;
        row["count"] = r.count;
        row["mean_empirical"] = r.mean_empirical;
        row["mean_theory"] = r.mean_theory;
        row["variance_empirical"] = r.variance_empirical;
        row["variance_theory"] = r.variance_theory;
        row["mean_dev_se"] = r.mean_dev_se;
        row["variance_dev_rel"] = r.variance_dev_rel;
        row["backend"] = to_string(r.backend);
        row["ks_exact"] = optional_number(r.ks_exact);
        row["ks_normal"] = optional_number(r.ks_normal);
        row["ks_critical_05"] = r.ks_critical_05;
        row["ks_critical_01"] = r.ks_critical_01;
        if (r.histogram) {
            json h;
            h["edges"] = std::vector<double>(r.histogram->edges().begin(), r.histogram->edges().end());
            h["counts"] = std::vector<std::uint64_t>(r.histogram->counts().begin(),
                                                     r.histogram->counts().end());
            h["density"] = r.histogram->density_mode();
            row["histogram"] = std::move(h);
        } else {
            row["histogram"] = nullptr;
        }
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

ExperimentReport report_from_json(const std::string& text)
{
    const json j = json::parse(text);
    ExperimentReport report;
    report.version = j.at("version").get<std::string>();
    const auto& c = j.at("config");
    report.config.dims = c.at("dims").get<std::vector<std::size_t>>();
    report.config.num_pairs = c.at("num_pairs").get<std::size_t>();
    report.config.seed = c.at("seed").get<std::uint64_t>();
    report.config.bins = c.at("bins").get<std::size_t>();
    report.config.emit_histograms = c.at("emit_histograms").get<bool>();
    report.config.emit_gof = c.at("emit_gof").get<bool>();
    report.variance_convention = j.at("variance_convention").get<std::string>();
    for (const auto& row : j.at("rows")) {
        ExperimentRow r;
        r.dim = row.at("dim").get<std::size_t>();
        r.count = row.at("count").get<std::uint64_t>();
        r.mean_empirical = row.at("mean_empirical").get<double>();
        r.mean_theory = row.at("mean_theory").get<double>();
        r.variance_empirical = row.at("variance_empirical").get<double>();
        r.variance_theory = row.at("variance_theory").get<double>();
        r.mean_dev_se = row.at("mean_dev_se").get<double>();
        r.variance_dev_rel = row.at("variance_dev_rel").get<double>();
        r.backend = backend_from_string(row.at("backend").get<std::string>());
        r.ks_exact = read_optional(row.at("ks_exact"));
        r.ks_normal = read_optional(row.at("ks_normal"));
        r.ks_critical_05 = row.at("ks_critical_05").get<double>();
        r.ks_critical_01 = row.at("ks_critical_01").get<double>();
        if (const auto& h = row.at("histogram"); !h.is_null()) {
            r.histogram.emplace(h.at("edges").get<std::vector<double>>(),
                                h.at("counts").get<std::vector<std::uint64_t>>(),
                                h.at("density").get<bool>());
        }
        report.rows.push_back(std::move(r));
    }
    return report;
}

std::string report_to_csv(const ExperimentReport& report)
{
    std::ostringstream os;
    os << "dim,count,mean_empirical,mean_theory,variance_empirical,variance_theory,"
          "mean_dev_se,variance_dev_rel,backend,ks_exact,ks_normal,ks_critical_05,ks_critical_01\n";
    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
    for (const auto& r : report.rows) {
        os << r.dim << ',' << r.count << ',' << format_number(r.mean_empirical) << ','
           << format_number(r.mean_theory) << ',' << format_number(r.variance_empirical) << ','
           << format_number(r.variance_theory) << ',' << format_number(r.mean_dev_se) << ','
           << format_number(r.variance_dev_rel) << ',' << to_string(r.backend) << ','
           << opt(r.ks_exact) << ',' << opt(r.ks_normal) << ',' << format_number(r.ks_critical_05)
           << ',' << format_number(r.ks_critical_01) << '\n';
    }
    return os.str();
}

std::string histogram_to_csv(const Histogram& histogram)
{
    const Histogram density(std::vector<double>(histogram.edges().begin(), histogram.edges().end()),
                            std::vector<std::uint64_t>(histogram.counts().begin(), histogram.counts().end()),
                            true, histogram.outside());
    std::ostringstream os;
    os << "bin_left,bin_right,density\n";
    for (std::size_t i = 0; i < density.bins(); ++i) {
        os << format_number(density.edges()[i]) << ',' << format_number(density.edges()[i + 1]) << ','
           << format_number(density.height(i)) << '\n';
    }
    return os.str();
}

std::string overlay_to_csv(const ExperimentRow& row)
{
    if (!row.histogram) throw std::invalid_argument("overlay needs the row's histogram range");
    const double lo = row.histogram->edges().front();
    const double hi = row.histogram->edges().back();
    const auto normal = normal_approx(row.dim);
    std::optional<PiecewisePolynomial> exact;
    if (row.dim <= max_exact_dim) exact.emplace(exact_density(row.dim));

    std::ostringstream os;
    os << (exact ? "x,exact_pdf,normal_pdf\n" : "x,normal_pdf\n");
    const double step = (hi - lo) / static_cast<double>(overlay_points - 1);
    for (std::size_t i = 0; i < overlay_points; ++i) {
        double x = i + 1 == overlay_points ? hi : lo + static_cast<double>(i) * step;
        os << format_number(x) << ',';
        if (exact) os << format_number((*exact)(x)) << ',';
        os << format_number(normal_pdf(normal, x)) << '\n';
    }
    return os.str();
}

std::string render_table(const ExperimentReport& report)
{
    auto pad = [](std::string s, std::size_t w) {
        if (s.size() < w) s.insert(0, w - s.size(), ' ');
        return s;
    };
    std::ostringstream os;
    os << pad("n", 6) << pad("mean", 16) << pad("n/3", 12) << pad("variance", 16) << pad("n/18", 12)
       << pad("mean dev(SE)", 14) << pad("var dev(rel)", 14) << '\n';
    for (const auto& r : report.rows) {
        os << pad(std::to_string(r.dim), 6) << pad(format_fixed(r.mean_empirical, 10), 16)
           << pad(format_fixed(r.mean_theory, 4), 12) << pad(format_fixed(r.variance_empirical, 10), 16)
           << pad(format_fixed(r.variance_theory, 4), 12) << pad(format_fixed(r.mean_dev_se, 3), 14)
           << pad(format_fixed(r.variance_dev_rel, 5), 14) << '\n';
    }
    return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    out.close();
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::vector<std::filesystem::path> emit_figure_data(const ExperimentReport& report,
                                                    const std::filesystem::path& out_dir)
{
    for (const auto& r : report.rows) {
        if (!r.histogram) {
            throw std::invalid_argument("report has no histograms; rerun with emit_histograms enabled");
        }
    }
    std::vector<std::filesystem::path> written;
    for (const auto& r : report.rows) {
        auto hist = out_dir / ("hist_n" + std::to_string(r.dim) + ".csv");
        write_text_file(hist, histogram_to_csv(*r.histogram));
        written.push_back(hist);
        auto overlay = out_dir / ("overlay_n" + std::to_string(r.dim) + ".csv");
        write_text_file(overlay, overlay_to_csv(r));
        written.push_back(overlay);
    }
    return written;
}

}  // namespace l1dist
