#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bifbm/analysis.hpp"
#include "bifbm/error.hpp"
#include "bifbm/gram.hpp"
#include "bifbm/kernels.hpp"
#include "bifbm/oracles.hpp"
#include "bifbm/region.hpp"
#include "bifbm/report_io.hpp"
#include "bifbm/sampler.hpp"

namespace py = pybind11;
using namespace bifbm;

namespace {

// Reports go through the same JSON writer as the CLI.
template <class T>
py::object as_dict(const T& report) {
    return py::module_::import("json").attr("loads")(io::dump_json(io::to_json(report), -1));
}

TimeGrid to_grid(const std::vector<double>& times) { return TimeGrid(times); }

}  // namespace

PYBIND11_MODULE(_bifbm, m) {
    m.doc() = "Covariance kernels, PSD checks, exact sampling and analyses for bifractional Brownian motion";

    static py::exception<Error> base(m, "BifbmError");
    static py::exception<ParameterError> param(m, "ParameterError", PyExc_ValueError);
    static py::exception<GridError> grid_err(m, "GridError", PyExc_ValueError);
    static py::exception<NumericError> numeric(m, "NumericError", base.ptr());
    static py::exception<ConvergenceError> conv(m, "ConvergenceError", numeric.ptr());
    static py::exception<NotPsdError> not_psd(m, "NotPsdError", numeric.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const NotPsdError& e) {
            py::object exc = py::reinterpret_borrow<py::object>(not_psd.ptr())(e.what());
            exc.attr("min_eigenvalue") = e.min_eigenvalue();
            PyErr_SetObject(not_psd.ptr(), exc.ptr());
        } catch (const ConvergenceError& e) {
            PyErr_SetString(conv.ptr(), e.what());
        } catch (const NumericError& e) {
            PyErr_SetString(numeric.ptr(), e.what());
        } catch (const ParameterError& e) {
            PyErr_SetString(param.ptr(), e.what());
        } catch (const GridError& e) {
            PyErr_SetString(grid_err.ptr(), e.what());
        } catch (const Error& e) {
            PyErr_SetString(base.ptr(), e.what());
        }
    });

    py::class_<KernelSpec>(m, "Kernel")
        .def_static("bifbm", &KernelSpec::bifbm, py::arg("H"), py::arg("K"))
        .def_static("fbm", &KernelSpec::fbm, py::arg("H"))
        .def_static("c_gamma", &KernelSpec::c_gamma, py::arg("gamma"))
        .def_static("q_gamma", &KernelSpec::q_gamma, py::arg("gamma"))
        .def_static("lei_nualart_remainder", &KernelSpec::lei_nualart_remainder, py::arg("H"), py::arg("K"))
        .def_static("min", &KernelSpec::min)
        .def_static("time_change", &KernelSpec::time_change, py::arg("base"), py::arg("theta"))
        .def_static("scale", &KernelSpec::scale, py::arg("base"), py::arg("c"))
        .def_static("sum", &KernelSpec::sum, py::arg("left"), py::arg("right"))
        .def("__call__", [](const KernelSpec& k, double s, double t) { return eval_kernel(k, s, t); },
             py::arg("s"), py::arg("t"))
        .def("increment_variance", [](const KernelSpec& k, double s, double t) { return increment_variance(k, s, t); },
             py::arg("s"), py::arg("t"))
        .def("describe", &KernelSpec::describe)
        .def("__repr__", [](const KernelSpec& k) { return "Kernel(" + k.describe() + ")"; });

    py::class_<TimeGrid>(m, "TimeGrid")
        .def(py::init<std::vector<double>>(), py::arg("times"))
        .def_static("uniform", &TimeGrid::uniform, py::arg("a"), py::arg("b"), py::arg("n"))
        .def_static("geometric", &TimeGrid::geometric, py::arg("a"), py::arg("b"), py::arg("n"))
        .def_static("parse", [](const std::string& text) { return TimeGrid::parse(text); }, py::arg("text"))
        .def_property_readonly("times",
                               [](const TimeGrid& g) { return std::vector<double>(g.times().begin(), g.times().end()); })
        .def("__len__", &TimeGrid::size)
        .def("__repr__", [](const TimeGrid& g) { return "TimeGrid(n=" + std::to_string(g.size()) + ")"; });
    py::implicitly_convertible<std::vector<double>, TimeGrid>();

    m.def("classify_params",
          [](double H, double K) {
              const auto v = classify_params(H, K);
              return py::make_tuple(std::string(to_string(v.region)), v.explanation);
          },
          py::arg("H"), py::arg("K"));
    m.def("in_theorem_region", &in_theorem_region, py::arg("H"), py::arg("K"));

    m.def("gram", [](const KernelSpec& k, const TimeGrid& g, unsigned threads) { return build_gram(k, g, threads).values; },
          py::arg("kernel"), py::arg("grid"), py::arg("threads") = 1);
    m.def("min_eigenvalue", [](const Eigen::MatrixXd& a) { return min_eigenvalue(a); }, py::arg("matrix"));
    m.def("psd_check",
          [](const KernelSpec& k, const TimeGrid& g, double rel_tol) {
              return as_dict(psd_check(build_gram(k, g), rel_tol));
          },
          py::arg("kernel"), py::arg("grid"), py::arg("rel_tol") = kDefaultPsdRelTol);
    m.def("cholesky",
          [](const Eigen::MatrixXd& a) {
              const auto r = cholesky_psd(a);
              return py::make_tuple(r.lower, r.applied_jitter);
          },
          py::arg("matrix"), "Lower factor of matrix + jitter*I and the jitter used.");

    m.def("sample",
          [](const std::string& method, const TimeGrid& g, std::size_t n_paths, std::uint64_t seed,
             std::optional<KernelSpec> kernel, double H, double K, unsigned threads) -> Eigen::MatrixXd {
              const SeedSpec s{seed, 0};
              py::gil_scoped_release release;
              if (method == "direct") {
                  if (!kernel) throw ParameterError("sample: method 'direct' needs a kernel");
                  return sample_gaussian(*kernel, g, n_paths, s, threads).values;
              }
              if (method == "bifbm-sum") return sample_bifbm_sum(H, K, g, n_paths, s, threads).values;
              if (method == "fbm-decomposed") return sample_fbm_decomposed(H, g, n_paths, s, threads).values;
              if (method == "brownian") return sample_brownian(g, n_paths, s, threads).values;
              throw ParameterError("sample: unknown method '" + method + "'");
          },
          py::arg("method"), py::arg("grid"), py::arg("n_paths"), py::arg("seed") = kDefaultSeed,
          py::arg("kernel") = py::none(), py::arg("H") = 0.0, py::arg("K") = 0.0, py::arg("threads") = 1,
          "n_paths x len(grid) array of sample paths.");
    m.def("empirical_covariance",
          [](const RowMatrix& paths) {
              const auto e = empirical_covariance(paths);
              return py::make_tuple(e.covariance, e.standard_error);
          },
          py::arg("paths"));

    m.def("oracle_report",
          [](double gamma, const TimeGrid& g) { return as_dict(oracle_report(gamma, g)); }, py::arg("gamma"),
          py::arg("grid"));

    m.def("self_similarity_deviation",
          [](double H, double K, double a, const TimeGrid& g) { return as_dict(self_similarity_deviation(H, K, a, g)); },
          py::arg("H"), py::arg("K"), py::arg("a"), py::arg("grid"));
    m.def("lamperti_cov", &lamperti_cov, py::arg("H"), py::arg("K"), py::arg("u"), py::arg("v"));
    m.def("lamperti_stationarity",
          [](double H, double K, const std::vector<double>& lags, const std::vector<double>& bases) {
              return as_dict(lamperti_stationarity(H, K, lags, bases));
          },
          py::arg("H"), py::arg("K"), py::arg("lags"), py::arg("bases"));
    m.def("quasihelix_report",
          [](double H, double K, const TimeGrid& g) { return as_dict(quasihelix_report(H, K, g)); }, py::arg("H"),
          py::arg("K"), py::arg("grid"));
    m.def("increment_limit_error", &increment_limit_error, py::arg("H"), py::arg("K"), py::arg("T"), py::arg("grid"));
    m.def("p_variation",
          [](const std::vector<double>& path, const TimeGrid& g, double p, int levels) {
              return p_variation(path, g, p, levels);
          },
          py::arg("path"), py::arg("grid"), py::arg("p"), py::arg("levels"));
    m.def("f_counterexample", &f_counterexample, py::arg("gamma"), py::arg("a"));
    m.def("find_negative_a", &find_negative_a, py::arg("gamma"));

    m.def("critical_k",
          [](double H, std::optional<TimeGrid> g, double resolution, unsigned threads) {
              return as_dict(critical_k(H, g ? *g : default_exploration_grid(), resolution, kDefaultPsdRelTol, threads));
          },
          py::arg("H"), py::arg("grid") = py::none(), py::arg("resolution") = 1e-3, py::arg("threads") = 1);
}
