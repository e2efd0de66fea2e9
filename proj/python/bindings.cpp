#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "l1dist/analytic.hpp"
#include "l1dist/cli.hpp"
#include "l1dist/estimation.hpp"
#include "l1dist/experiment.hpp"
#include "l1dist/metric.hpp"
#include "l1dist/report_io.hpp"
#include "l1dist/sampling.hpp"

namespace py = pybind11;
using namespace l1dist;

namespace {

py::array_t<double> to_array(std::vector<double> v)
{
    auto* heap = new std::vector<double>(std::move(v));
    py::capsule owner(heap, [](void* p) { delete static_cast<std::vector<double>*>(p); });
    return py::array_t<double>(static_cast<py::ssize_t>(heap->size()), heap->data(), owner);
}

std::vector<double> as_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a)
{
    if (a.ndim() != 1) throw std::invalid_argument("expected a one-dimensional array");
    return std::vector<double>(a.data(), a.data() + a.size());
}

// Scalars map to floats, arrays map element-wise to arrays of the same shape.
template <class F>
py::object elementwise(const py::object& x, F&& f)
{
    if (py::isinstance<py::float_>(x) || py::isinstance<py::int_>(x)) return py::float_(f(x.cast<double>()));
    auto in = py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(x);
    if (!in) throw std::invalid_argument("expected a number or an array of numbers");
    py::array_t<double> out(std::vector<py::ssize_t>(in.shape(), in.shape() + in.ndim()));
    const double* src = in.data();
    double* dst = out.mutable_data();
    for (py::ssize_t i = 0; i < in.size(); ++i) dst[i] = f(src[i]);
    return std::move(out);
}

}  // namespace

PYBIND11_MODULE(_l1dist, m)
{
    m.doc() = "Manhattan distances between uniform points of the unit hypercube";
    m.attr("__version__") = version_string;
    m.attr("max_exact_dim") = max_exact_dim;

    // A coordinate outside [0,1] is a bad value, not a bad index.
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const std::out_of_range& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", PyExc_ValueError);
    py::register_exception<UnsupportedDimension>(m, "UnsupportedDimension", PyExc_ValueError);

    py::class_<Point>(m, "Point")
        .def(py::init<std::vector<double>>(), py::arg("coords"))
        .def_property_readonly("dim", &Point::dim)
        .def_property_readonly("coords", [](const Point& p) { return std::vector<double>(p.coords().begin(), p.coords().end()); })
        .def("__len__", &Point::dim)
        .def("__repr__", [](const Point& p) { return "Point(dim=" + std::to_string(p.dim()) + ")"; });

    m.def("manhattan_distance", &manhattan_distance, py::arg("p"), py::arg("q"));
    m.def("batch_distances", [](const std::vector<PointPair>& pairs) { return to_array(batch_distances(pairs)); },
          py::arg("pairs"));

    py::class_<SampleSpec>(m, "SampleSpec")
        .def(py::init([](std::size_t dim, std::size_t num_pairs, std::uint64_t seed, std::uint32_t family) {
                 SampleSpec s{dim, num_pairs, seed, family};
                 s.validate();
                 return s;
             }),
             py::arg("dim"), py::arg("num_pairs"), py::arg("seed") = 0, py::arg("family") = 0)
        .def_readonly("dim", &SampleSpec::dim)
        .def_readonly("num_pairs", &SampleSpec::num_pairs)
        .def_readonly("seed", &SampleSpec::seed)
        .def_readonly("family", &SampleSpec::family);

    m.def("sample_distances",
          [](const SampleSpec& spec, unsigned workers) {
              std::vector<double> out;
              {
                  py::gil_scoped_release release;
                  out = sample_distances(spec, workers);
              }
              return to_array(std::move(out));
          },
          py::arg("spec"), py::arg("workers") = 1);
    m.def("uniform_stream",
          [](std::uint64_t seed, std::uint64_t stream_id, std::size_t count) {
              auto s = derive_stream(seed, stream_id);
              std::vector<double> out(count);
              for (auto& x : out) x = s.next_uniform();
              return to_array(std::move(out));
          },
          py::arg("seed"), py::arg("stream_id"), py::arg("count"),
          "First `count` uniforms of derive_stream(seed, stream_id).");

    m.def("theoretical_mean", &theoretical_mean, py::arg("dim"));
    m.def("theoretical_variance", &theoretical_variance, py::arg("dim"));
    m.def("single_dim_density", &single_dim_density, py::arg("z"));

    py::class_<TheoreticalMoments>(m, "TheoreticalMoments")
        .def_readonly("dim", &TheoreticalMoments::dim)
        .def_readonly("mean", &TheoreticalMoments::mean)
        .def_readonly("variance", &TheoreticalMoments::variance)
        .def_readonly("skewness", &TheoreticalMoments::skewness)
        .def_readonly("excess_kurtosis", &TheoreticalMoments::excess_kurtosis);
    m.def("theoretical_moments", &theoretical_moments, py::arg("dim"));

    py::class_<PiecewisePolynomial>(m, "PiecewisePolynomial")
        .def_property_readonly("breakpoints", [](const PiecewisePolynomial& p) {
            return std::vector<double>(p.breakpoints().begin(), p.breakpoints().end());
        })
        .def_property_readonly("segments", [](const PiecewisePolynomial& p) {
            return std::vector<std::vector<double>>(p.segments().begin(), p.segments().end());
        })
        .def("__call__", [](const PiecewisePolynomial& p, const py::object& x) { return elementwise(x, [&](double v) { return p(v); }); })
        .def("total_integral", &PiecewisePolynomial::total_integral);

    m.def("exact_density", &exact_density, py::arg("dim"));
    m.def("exact_cdf", [](const PiecewisePolynomial& p, const py::object& x) {
        return elementwise(x, [&](double v) { return exact_cdf(p, v); });
    }, py::arg("density"), py::arg("x"));
    m.def("moments_of", &moments_of, py::arg("density"));
    m.def("clt_sup_distance", &clt_sup_distance, py::arg("dim"));

    py::class_<NormalApprox>(m, "NormalApprox")
        .def(py::init<double, double>(), py::arg("mean"), py::arg("variance"))
        .def_readonly("mean", &NormalApprox::mean)
        .def_readonly("variance", &NormalApprox::variance);
    m.def("normal_approx", &normal_approx, py::arg("dim"));
    m.def("normal_pdf", [](const NormalApprox& a, const py::object& x) {
        return elementwise(x, [&](double v) { return normal_pdf(a, v); });
    }, py::arg("approx"), py::arg("x"));
    m.def("normal_cdf", [](const NormalApprox& a, const py::object& x) {
        return elementwise(x, [&](double v) { return normal_cdf(a, v); });
    }, py::arg("approx"), py::arg("x"));

    py::class_<MomentSummary>(m, "MomentSummary")
        .def(py::init<>())
        .def("push", &MomentSummary::push)
        .def("merge", &MomentSummary::merge)
        .def_property_readonly("count", &MomentSummary::count)
        .def_property_readonly("empty", &MomentSummary::empty)
        .def_property_readonly("mean", &MomentSummary::mean)
        .def_property_readonly("variance_population", &MomentSummary::variance_population)
        .def_property_readonly("variance_unbiased", &MomentSummary::variance_unbiased);
    m.def("summarize", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
        return summarize(as_vector(a));
    }, py::arg("values"));

    py::class_<Histogram>(m, "Histogram")
        .def_property_readonly("edges", [](const Histogram& h) { return std::vector<double>(h.edges().begin(), h.edges().end()); })
        .def_property_readonly("counts", [](const Histogram& h) {
            return std::vector<std::uint64_t>(h.counts().begin(), h.counts().end());
        })
        .def_property_readonly("heights", &Histogram::heights)
        .def_property_readonly("density_mode", &Histogram::density_mode)
        .def_property_readonly("outside", &Histogram::outside);
    m.def("build_histogram",
          [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a, std::size_t bins, bool density) {
              return build_histogram(as_vector(a), bins, density);
          },
          py::arg("values"), py::arg("bins") = 30, py::arg("density") = true);

    m.def("ks_statistic",
          [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a, const CdfFunction& cdf) {
              return ks_statistic(EmpiricalCdf(as_vector(a)), cdf);
          },
          py::arg("sample"), py::arg("reference_cdf"));
    m.def("ks_statistic_vs_reference",
          [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a, std::size_t dim) {
              ReferenceDistribution ref(dim);
              return py::make_tuple(ks_statistic(EmpiricalCdf(as_vector(a)), [&](double x) { return ref.cdf(x); }),
                                    to_string(ref.backend()));
          },
          py::arg("sample"), py::arg("dim"),
          "KS distance against the exact density (dim <= 30) or the normal approximation; returns (statistic, backend).");
    m.def("ks_critical_05", &ks_critical_05, py::arg("n"));
    m.def("ks_critical_01", &ks_critical_01, py::arg("n"));

    m.def("compare_to_theory",
          [](const MomentSummary& s, std::size_t dim) {
              auto d = compare_to_theory(s, dim);
              return py::make_tuple(d.mean_dev_se, d.var_dev_rel);
          },
          py::arg("summary"), py::arg("dim"));

    m.def("run_experiment_json",
          [](std::vector<std::size_t> dims, std::size_t num_pairs, std::uint64_t seed, std::size_t bins,
             bool histograms, bool gof, unsigned workers) {
              ExperimentConfig c;
              c.dims = std::move(dims);
              c.num_pairs = num_pairs;
              c.seed = seed;
              c.bins = bins;
              c.emit_histograms = histograms;
              c.emit_gof = gof;
              std::string json;
              {
                  py::gil_scoped_release release;
                  json = report_to_json(run_experiment(c, workers));
              }
              return json;
          },
          py::arg("dims") = std::vector<std::size_t>{1, 2, 3, 5, 10, 20, 50, 100}, py::arg("num_pairs") = 10000,
          py::arg("seed") = 0, py::arg("bins") = 30, py::arg("histograms") = false, py::arg("gof") = false,
          py::arg("workers") = 1);

    m.def("cli_main",
          [](const std::vector<std::string>& args) {
              std::ostringstream out, err;
              int code = cli_main(args, out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"), "Runs the command line; returns (exit_code, stdout, stderr).");
}
