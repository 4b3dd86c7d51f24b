#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "kesten/audit.hpp"
#include "kesten/config.hpp"
#include "kesten/errors.hpp"
#include "kesten/exit.hpp"
#include "kesten/scaling.hpp"
#include "kesten/spectral.hpp"

namespace py = pybind11;
using namespace kesten;

namespace {

ModelSpec parse_model(const std::string& model_json) { return model_from_json(nlohmann::json::parse(model_json)); }

Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    Matrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw DimensionError("matrix rows must form a square matrix");
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<std::vector<double>> matrix_to_rows(const Matrix& m) {
    std::vector<std::vector<double>> rows(m.dim(), std::vector<double>(m.dim()));
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) rows[i][j] = m(i, j);
    return rows;
}

py::dict lyapunov_dict(const LyapunovEstimate& e) {
    py::dict d;
    d["gamma_hat"] = e.gamma_hat;
    d["std_err"] = e.std_err;
    d["n_steps"] = e.n_steps;
    d["replicas"] = e.replicas;
    return d;
}

py::dict h_dict(const HEstimate& h) {
    py::dict d;
    d["s"] = h.s;
    d["log_h_hat"] = h.log_h_hat;
    d["ci_halfwidth"] = h.ci_halfwidth;
    d["ess"] = h.ess;
    d["reliable"] = h.reliable();
    return d;
}

py::dict stats_dict(const ExitBatchStats& st) {
    py::dict d;
    d["R"] = st.r_ball;
    d["replicas"] = st.replicas;
    d["mean_tau"] = st.mean_tau;
    d["ci_halfwidth"] = st.ci_halfwidth;
    d["censored_frac"] = st.censored_frac;
    d["mean_log_exit_norm"] = st.mean_log_exit_norm;
    d["unreliable"] = st.unreliable;
    return d;
}

py::dict fit_dict(const ScalingFit& f) {
    py::dict d;
    d["mode"] = f.mode == ScalingFit::Mode::LogLog ? "loglog" : "semilog";
    d["slope"] = f.slope;
    d["intercept"] = f.intercept;
    d["r_squared"] = f.r_squared;
    d["residual_max"] = f.residual_max;
    d["points_used"] = f.points_used;
    return d;
}

}  // namespace

PYBIND11_MODULE(_kesten, m) {
    m.doc() = "Monte Carlo engines for random affine recursions x -> Ax + B: Lyapunov exponents, "
              "moment/tail indices, exit times, and assumption audits.";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<SingularMatrixError>(m, "SingularMatrixError", PyExc_ArithmeticError);
    py::register_exception<NoRootError>(m, "NoRootError", PyExc_ArithmeticError);
    py::register_exception<DegenerateTailError>(m, "DegenerateTailError", PyExc_ArithmeticError);

    m.def("operator_norm", [](const std::vector<std::vector<double>>& rows) {
        return operator_norm(matrix_from_rows(rows));
    }, py::arg("matrix"), "Spectral norm sup_{|x|=1} |Mx| of a square matrix.");

    m.def("invert", [](const std::vector<std::vector<double>>& rows) {
        return matrix_to_rows(invert(matrix_from_rows(rows)));
    }, py::arg("matrix"));

    m.def("model_dimension", [](const std::string& model_json) {
        return parse_model(model_json).dimension();
    }, py::arg("model_json"));

    m.def("sample_affine", [](const std::string& model_json, std::uint64_t seed, long count) {
        const ModelSpec model = parse_model(model_json);
        RngStream rng(seed, 0);
        py::list out;
        for (long i = 0; i < count; ++i) {
            const AffineMapSample s = model.sample(rng);
            out.append(py::make_tuple(matrix_to_rows(s.a), s.b));
        }
        return out;
    }, py::arg("model_json"), py::arg("seed"), py::arg("count") = 1,
       "Draw (A, B) pairs; returns a list of (rows, vector) tuples.");

    m.def("estimate_lyapunov", [](const std::string& model_json, long n_steps, long replicas, std::uint64_t seed,
                                   bool inverse, int threads) {
        const ModelSpec model = parse_model(model_json);
        return lyapunov_dict(inverse ? estimate_inverse_lyapunov(model, n_steps, replicas, seed, threads)
                                     : estimate_lyapunov(model, n_steps, replicas, seed, threads));
    }, py::arg("model_json"), py::arg("n_steps") = 64, py::arg("replicas") = 1024, py::arg("seed") = 0,
       py::arg("inverse") = false, py::arg("threads") = 1);

    m.def("estimate_h", [](const std::string& model_json, double s, long n_steps, long replicas, std::uint64_t seed,
                            int threads) {
        return h_dict(estimate_h(parse_model(model_json), s, n_steps, replicas, seed, threads));
    }, py::arg("model_json"), py::arg("s"), py::arg("n_steps") = 64, py::arg("replicas") = 10000,
       py::arg("seed") = 0, py::arg("threads") = 1);

    m.def("h_bounds", [](const std::string& model_json, double s, long replicas, std::uint64_t seed, int threads) {
        const HBounds b = h_bounds(parse_model(model_json), s, replicas, seed, threads);
        py::dict d;
        d["lower"] = b.lower;
        d["lower_se"] = b.lower_se;
        d["upper"] = b.upper;
        d["upper_se"] = b.upper_se;
        d["singular_frac"] = b.singular_frac;
        return d;
    }, py::arg("model_json"), py::arg("s"), py::arg("replicas") = 10000, py::arg("seed") = 0, py::arg("threads") = 1);

    m.def("solve_tail_index", [](const std::string& model_json, long n_steps, long replicas, std::uint64_t seed,
                                  double s_max, int threads) {
        const TailIndexResult t = solve_tail_index(parse_model(model_json), n_steps, replicas, seed, s_max, threads);
        py::dict d;
        d["alpha_hat"] = t.alpha_hat;
        d["s_lo"] = t.s_lo;
        d["s_hi"] = t.s_hi;
        d["iterations"] = t.iterations;
        d["ess_at_root"] = t.ess_at_root;
        d["convexity_ok"] = t.convexity.ok;
        return d;
    }, py::arg("model_json"), py::arg("n_steps") = 64, py::arg("replicas") = 10000, py::arg("seed") = 0,
       py::arg("s_max") = 64.0, py::arg("threads") = 1);

    m.def("moment_dichotomy_probe", [](const std::string& model_json, double gamma, double alpha_hat,
                                        const std::vector<long>& n_grid, long replicas, std::uint64_t seed,
                                        int threads) {
        const MomentTrend t =
            moment_dichotomy_probe(parse_model(model_json), gamma, alpha_hat, n_grid, replicas, seed, threads);
        py::dict d;
        d["gamma"] = t.gamma;
        d["slope"] = t.slope;
        d["trend"] = t.trend;
        d["matches_dichotomy"] = t.matches_dichotomy;
        py::list pts;
        for (const auto& p : t.points) pts.append(py::make_tuple(p.n, p.log_moment, p.ess));
        d["points"] = pts;
        return d;
    }, py::arg("model_json"), py::arg("gamma"), py::arg("alpha_hat"), py::arg("n_grid"), py::arg("replicas") = 10000,
       py::arg("seed") = 0, py::arg("threads") = 1);

    m.def("simulate_exit", [](const std::string& model_json, const Vec& x0, double r_ball, long cap,
                               std::uint64_t seed) {
        RngStream rng(seed, 0);
        const ExitRecord rec = simulate_exit(parse_model(model_json), x0, r_ball, cap, rng);
        py::dict d;
        d["exited"] = rec.exited;
        d["tau"] = rec.tau;
        d["cap"] = rec.cap;
        d["overflowed"] = rec.overflowed;
        if (rec.exited) d["exit_point"] = rec.exit_point;
        return d;
    }, py::arg("model_json"), py::arg("x0"), py::arg("R"), py::arg("cap"), py::arg("seed") = 0);

    m.def("estimate_mean_exit", [](const std::string& model_json, const Vec& x0, double r_ball, long replicas,
                                    long cap, std::uint64_t seed, int threads) {
        return stats_dict(estimate_mean_exit(parse_model(model_json), x0, r_ball, replicas, cap, seed, threads));
    }, py::arg("model_json"), py::arg("x0"), py::arg("R"), py::arg("replicas"), py::arg("cap"), py::arg("seed") = 0,
       py::arg("threads") = 1);

    m.def("exit_sweep", [](const std::string& model_json, const Vec& x0, const std::vector<double>& r_grid,
                            long replicas, long cap, std::uint64_t seed, int threads) {
        py::list out;
        for (const auto& st : exit_sweep(parse_model(model_json), x0, r_grid, replicas, cap, seed, threads))
            out.append(stats_dict(st));
        return out;
    }, py::arg("model_json"), py::arg("x0"), py::arg("R_grid"), py::arg("replicas"), py::arg("cap"),
       py::arg("seed") = 0, py::arg("threads") = 1);

    m.def("coupled_difference_check", [](const std::string& model_json, const Vec& y, const Vec& z, long n,
                                          std::uint64_t seed) {
        return coupled_difference_check(parse_model(model_json), y, z, n, seed);
    }, py::arg("model_json"), py::arg("y"), py::arg("z"), py::arg("n") = 30, py::arg("seed") = 0);

    m.def("arch_sandwich_check", [](const std::string& model_json, const Vec& x0, double r_ball, long replicas,
                                     long cap, std::uint64_t seed, int threads) {
        const SandwichReport rep =
            arch_sandwich_check(parse_model(model_json), x0, r_ball, replicas, cap, seed, threads);
        py::dict d;
        d["lower_violations"] = rep.lower_violations;
        d["upper_violations"] = rep.upper_violations;
        d["paths_checked"] = rep.paths_checked;
        d["censored"] = rep.censored;
        return d;
    }, py::arg("model_json"), py::arg("x0"), py::arg("R"), py::arg("replicas"), py::arg("cap"), py::arg("seed") = 0,
       py::arg("threads") = 1);

    m.def("long_run_norm_samples", [](const std::string& model_json, long count, long burn_in, long thin,
                                       std::uint64_t seed) {
        return long_run_norm_samples(parse_model(model_json), count, burn_in, thin, seed);
    }, py::arg("model_json"), py::arg("count"), py::arg("burn_in") = 1000, py::arg("thin") = 10, py::arg("seed") = 0);

    m.def("fit_contractive", [](const std::vector<std::pair<double, double>>& points) {
        return fit_dict(fit_contractive(points));
    }, py::arg("points"));
    m.def("fit_explosive", [](const std::vector<std::pair<double, double>>& points) {
        return fit_dict(fit_explosive(points));
    }, py::arg("points"));

    m.def("hill_tail_index", [](std::vector<double> samples, long k) {
        const HillEstimate h = hill_tail_index(std::move(samples), k);
        py::dict d;
        d["alpha_hill"] = h.alpha_hill;
        d["k"] = h.k;
        d["n_samples"] = h.n_samples;
        return d;
    }, py::arg("samples"), py::arg("k"));

    m.def("audit", [](const std::string& model_json, const std::string& regime, long budget, std::uint64_t seed,
                       int threads) {
        if (regime != "contractive" && regime != "explosive")
            throw ConfigError("regime must be 'contractive' or 'explosive'");
        const AuditReport rep = audit(parse_model(model_json),
                                      regime == "contractive" ? Regime::Contractive : Regime::Explosive, budget,
                                      seed, threads);
        py::list out;
        for (const auto& e : rep.entries) {
            py::dict d;
            d["check"] = e.name;
            d["verdict"] = to_string(e.verdict);
            d["statistic"] = e.statistic;
            d["detail"] = e.detail;
            out.append(d);
        }
        return out;
    }, py::arg("model_json"), py::arg("regime"), py::arg("budget") = 100000, py::arg("seed") = 0,
       py::arg("threads") = 1);

#ifdef KESTEN_VERSION
    m.attr("__version__") = KESTEN_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
