#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "mixeff/efficiency.hpp"
#include "mixeff/error.hpp"
#include "mixeff/mixture.hpp"
#include "mixeff/power_lab.hpp"
#include "mixeff/random.hpp"
#include "mixeff/rank_tests.hpp"

namespace py = pybind11;
using namespace mixeff;

namespace {

Sidedness parse_sidedness(const std::string& s) {
    if (s == "greater") return Sidedness::greater;
    if (s == "less") return Sidedness::less;
    if (s == "two-sided" || s == "two_sided") return Sidedness::two_sided;
    throw DomainError("sidedness must be 'greater', 'less' or 'two-sided', got '" + s + "'");
}

WilcoxonMode parse_mode(const std::string& s) {
    if (s == "exact") return WilcoxonMode::exact;
    if (s == "normal") return WilcoxonMode::normal_approx;
    if (s == "auto") return WilcoxonMode::automatic;
    throw DomainError("mode must be 'exact', 'normal' or 'auto', got '" + s + "'");
}

AreVariant parse_variant(const std::string& s) {
    if (s == "efficacy_derived" || s == "derived") return AreVariant::efficacy_derived();
    if (s == "as_printed" || s == "printed") return AreVariant::as_printed();
    throw DomainError("variant must be 'efficacy_derived' or 'as_printed', got '" + s + "'");
}

TestKind parse_kind(const std::string& s) {
    if (s == "t") return TestKind::t;
    if (s == "wilcoxon") return TestKind::wilcoxon;
    throw DomainError("test must be 't' or 'wilcoxon', got '" + s + "'");
}

SimConfig make_config(double alpha, const std::string& sided, std::uint64_t nreps, std::uint64_t seed,
                      unsigned threads, const std::string& mode) {
    SimConfig c;
    c.alpha = alpha;
    c.sidedness = parse_sidedness(sided);
    c.nreps = nreps;
    c.master_seed = seed;
    c.max_parallelism = threads;
    c.wilcoxon_mode = parse_mode(mode);
    c.validate();
    return c;
}

py::dict to_dict(const TestOutcome& o) {
    py::dict d;
    d["statistic"] = o.statistic;
    d["n_effective"] = o.n_effective;
    d["p_value"] = o.p_value;
    d["sidedness"] = std::string(to_string(o.sidedness));
    d["method"] = std::string(to_string(o.method));
    return d;
}

py::dict to_dict(const PowerEstimate& e) {
    py::dict d;
    d["power"] = e.power;
    d["mc_se"] = e.mc_se;
    d["nreps"] = e.nreps;
    d["rejections"] = e.rejections;
    d["degenerate"] = e.degenerate;
    d["test"] = std::string(to_string(e.test_kind));
    return d;
}

py::dict to_dict(const SampleSizeResult& r) {
    py::dict d;
    d["n_min"] = r.n_min;
    d["achieved_power_ci"] = r.achieved_power_ci;
    py::list trace;
    for (const auto& p : r.search_trace) {
        py::dict item = to_dict(p.estimate);
        item["n"] = p.n;
        trace.append(item);
    }
    d["search_trace"] = trace;
    return d;
}

}  // namespace

#define SIM_ARGS                                                                                          \
    py::arg("alpha") = 0.05, py::arg("sided") = "greater", py::arg("nreps") = 10000,                     \
        py::arg("seed") = 20130101, py::arg("threads") = 1, py::arg("mode") = "auto"

PYBIND11_MODULE(_core, m) {
    m.doc() = "Efficiency of the signed-rank and t tests under Gaussian mixture alternatives";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<InsufficientDataError>(m, "InsufficientDataError", base.ptr());
    py::register_exception<DegenerateSampleError>(m, "DegenerateSampleError", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<TiesUnsupportedError>(m, "TiesUnsupportedError", base.ptr());
    py::register_exception<SearchOverflowError>(m, "SearchOverflowError", base.ptr());

    py::class_<MixtureParams>(m, "MixtureParams")
        .def(py::init<double, double, double>(), py::arg("theta"), py::arg("mu"), py::arg("sigma"))
        .def_static("from_variance", &MixtureParams::from_variance, py::arg("theta"), py::arg("mu"),
                    py::arg("variance"))
        .def_property_readonly("theta", &MixtureParams::theta)
        .def_property_readonly("mu", &MixtureParams::mu)
        .def_property_readonly("sigma", &MixtureParams::sigma)
        .def("with_theta", &MixtureParams::with_theta, py::arg("theta"))
        .def(py::self == py::self)
        .def("__repr__", [](const MixtureParams& p) {
            return "MixtureParams(theta=" + py::repr(py::float_(p.theta())).cast<std::string>() +
                   ", mu=" + py::repr(py::float_(p.mu())).cast<std::string>() +
                   ", sigma=" + py::repr(py::float_(p.sigma())).cast<std::string>() + ")";
        });

    m.def("pdf", &pdf, py::arg("params"), py::arg("x"));
    m.def("cdf", &cdf, py::arg("params"), py::arg("x"));
    m.def(
        "moments",
        [](const MixtureParams& p) {
            const Moments mo = moments(p);
            return py::make_tuple(mo.mean, mo.variance);
        },
        py::arg("params"), "Mean and variance.");
    m.def(
        "sample",
        [](const MixtureParams& p, std::size_t n, std::uint64_t seed, std::uint32_t cell,
           std::uint32_t replication) {
            RandomStream stream({seed, cell, replication});
            return sample(p, n, stream);
        },
        py::arg("params"), py::arg("n"), py::arg("seed") = 0, py::arg("cell") = 0, py::arg("replication") = 0);
    m.def(
        "xi_t",
        [](const MixtureParams& p, const std::string& variant) {
            if (variant == "exact") return xi_t(p, MeanFunctionVariant::exact);
            if (variant == "simplified") return xi_t(p, MeanFunctionVariant::simplified);
            throw DomainError("variant must be 'exact' or 'simplified', got '" + variant + "'");
        },
        py::arg("params"), py::arg("variant") = "exact");
    m.def("xi_w", &xi_w, py::arg("params"));
    m.def("xi_w_slope_at_null", &xi_w_slope_at_null, py::arg("mu"), py::arg("sigma"));

    m.def(
        "t_test",
        [](std::vector<double> x, const std::string& sided) {
            const Sample s(std::move(x));
            return to_dict(t_test(s, parse_sidedness(sided)));
        },
        py::arg("x"), py::arg("sided") = "two-sided");
    m.def(
        "wilcoxon_test",
        [](std::vector<double> x, const std::string& sided, const std::string& mode) {
            const Sample s(std::move(x));
            return to_dict(wilcoxon_test(s, parse_sidedness(sided), parse_mode(mode)));
        },
        py::arg("x"), py::arg("sided") = "two-sided", py::arg("mode") = "auto");
    m.def(
        "signed_rank_statistic",
        [](std::vector<double> x) {
            const Sample s(std::move(x));
            const auto st = wilcoxon_statistic(s);
            py::dict d;
            d["w_plus"] = st.w_plus;
            d["n_effective"] = st.n_effective;
            d["tie_term"] = st.tie_term;
            return d;
        },
        py::arg("x"));
    m.def(
        "null_counts",
        [](int n) {
            const auto counts = cached_null_pmf(n).counts();
            return std::vector<std::uint64_t>(counts.begin(), counts.end());
        },
        py::arg("n"), "Number of sign patterns giving W+ = k, for k = 0 .. n(n+1)/2.");
    m.def(
        "u_statistic", [](std::vector<double> x) { return u_statistic(Sample(std::move(x))); }, py::arg("x"));
    m.def(
        "identity_check", [](std::vector<double> x) { return identity_check(Sample(std::move(x))); },
        py::arg("x"));

    m.def(
        "are", [](double mu, double sigma, const std::string& v) { return are(mu, sigma, parse_variant(v)); },
        py::arg("mu"), py::arg("sigma"), py::arg("variant") = "efficacy_derived");
    m.def(
        "are_small_shift_limit",
        [](double sigma, const std::string& v) { return are_small_shift_limit(sigma, parse_variant(v)); },
        py::arg("sigma"), py::arg("variant") = "efficacy_derived");
    m.def(
        "dominance_boundary",
        [](double sigma, const std::string& v) { return dominance_boundary(sigma, parse_variant(v)); },
        py::arg("sigma"), py::arg("variant") = "efficacy_derived");
    m.def(
        "dominance_grid",
        [](std::pair<double, double> mu_range, std::pair<double, double> sigma_range, std::size_t steps_mu,
           std::size_t steps_sigma, const std::string& v) {
            const auto g = dominance_grid({mu_range.first, mu_range.second},
                                          {sigma_range.first, sigma_range.second}, steps_mu, steps_sigma,
                                          parse_variant(v));
            std::vector<std::vector<double>> rows(g.mu_axis.size());
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (std::size_t j = 0; j < g.sigma_axis.size(); ++j) rows[i].push_back(g.at(i, j));
            return py::make_tuple(g.mu_axis, g.sigma_axis, rows);
        },
        py::arg("mu_range"), py::arg("sigma_range"), py::arg("steps_mu"), py::arg("steps_sigma"),
        py::arg("variant") = "efficacy_derived", "Returns (mu_axis, sigma_axis, values[mu][sigma]).");

    m.def(
        "estimate_power",
        [](const std::string& test, const MixtureParams& p, std::size_t n, double alpha, const std::string& sided,
           std::uint64_t nreps, std::uint64_t seed, unsigned threads, const std::string& mode,
           std::uint32_t cell) {
            const SimConfig c = make_config(alpha, sided, nreps, seed, threads, mode);
            PowerEstimate e;
            {
                py::gil_scoped_release release;
                e = estimate_power(parse_kind(test), p, n, c, cell);
            }
            return to_dict(e);
        },
        py::arg("test"), py::arg("params"), py::arg("n"), SIM_ARGS, py::arg("cell") = 0);
    m.def(
        "power_ratio_surface",
        [](double mu, double sigma, const std::vector<double>& thetas, const std::vector<std::size_t>& ns,
           double alpha, const std::string& sided, std::uint64_t nreps, std::uint64_t seed, unsigned threads,
           const std::string& mode) {
            const SimConfig c = make_config(alpha, sided, nreps, seed, threads, mode);
            std::vector<PowerRatioRow> rows;
            {
                py::gil_scoped_release release;
                rows = power_ratio_surface(mu, sigma, thetas, ns, c);
            }
            py::list out;
            for (const auto& r : rows) {
                py::dict d;
                d["theta"] = r.theta;
                d["n"] = r.n;
                d["power_w"] = r.power_w;
                d["se_w"] = r.se_w;
                d["power_t"] = r.power_t;
                d["se_t"] = r.se_t;
                d["ratio"] = r.ratio;
                d["ratio_se"] = r.ratio_se();
                d["near_null"] = r.near_null;
                d["degenerate"] = r.degenerate;
                out.append(d);
            }
            return out;
        },
        py::arg("mu"), py::arg("sigma"), py::arg("thetas"), py::arg("ns"), SIM_ARGS);
    m.def(
        "min_sample_size",
        [](const std::string& test, const MixtureParams& p, double target_power, double alpha,
           const std::string& sided, std::uint64_t nreps, std::uint64_t seed, unsigned threads,
           const std::string& mode, std::size_t max_n) {
            const SimConfig c = make_config(alpha, sided, nreps, seed, threads, mode);
            SampleSizeResult r;
            {
                py::gil_scoped_release release;
                r = min_sample_size(parse_kind(test), p, target_power, c, 0, max_n);
            }
            return to_dict(r);
        },
        py::arg("test"), py::arg("params"), py::arg("target_power"), SIM_ARGS,
        py::arg("max_n") = kDefaultMaxSampleSize);
    m.def(
        "empirical_are",
        [](double mu, double sigma, const std::vector<double>& thetas, double target_power, double alpha,
           const std::string& sided, std::uint64_t nreps, std::uint64_t seed, unsigned threads,
           const std::string& mode, std::size_t max_n) {
            const SimConfig c = make_config(alpha, sided, nreps, seed, threads, mode);
            std::vector<EmpiricalAreRow> rows;
            {
                py::gil_scoped_release release;
                rows = empirical_are(mu, sigma, thetas, target_power, c, max_n);
            }
            py::list out;
            for (const auto& r : rows) {
                py::dict d;
                d["theta"] = r.theta;
                d["n_t"] = r.n_t;
                d["n_w"] = r.n_w;
                d["ratio"] = r.ratio;
                out.append(d);
            }
            return out;
        },
        py::arg("mu"), py::arg("sigma"), py::arg("thetas"), py::arg("target_power"), SIM_ARGS,
        py::arg("max_n") = kDefaultMaxSampleSize);

    m.attr("__version__") = MIXEFF_VERSION;
}
