#include "comove/estimation.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "comove/errors.hpp"
#include "comove/garch.hpp"
#include "comove/kv_file.hpp"
#include "comove/mean_filter.hpp"
#include "comove/numerics.hpp"
#include "comove/rng.hpp"
#include "comove/transforms.hpp"

namespace comove {

namespace {

struct OlsFit {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd residuals;
};

OlsFit ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const std::string& what) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < X.cols())
        throw DegenerateRegressionError("rank-deficient regression in " + what);
    OlsFit fit;
    fit.coefficients = qr.solve(y);
    fit.residuals = y - X * fit.coefficients;
    return fit;
}

// Gaussian GARCH(1,1) likelihood for one residual series, used only to seed
// the joint optimization. Parameters travel through the same log/simplex
// transform device as the joint fit.
struct UnivariateGarch {
    double omega, kappa, lambda;
};

double univariate_garch_nll(const Eigen::VectorXd& e, double omega, double kappa,
                            double lambda, double h1) {
    const int n = static_cast<int>(e.size());
    double h = h1;
    double nll = 0.5 * (std::log(2.0 * M_PI * h) + e[0] * e[0] / h);
    for (int t = 1; t < n; ++t) {
        h = omega + kappa * e[t - 1] * e[t - 1] + lambda * h;
        nll += 0.5 * (std::log(2.0 * M_PI * h) + e[t] * e[t] / h);
    }
    return nll;
}

UnivariateGarch fit_univariate_garch(const Eigen::VectorXd& e) {
    const double var = (e.array() - e.mean()).square().sum() / e.size();
    if (!(var > 0.0))
        throw DegenerateRegressionError("univariate GARCH fit on a constant series");

    auto unpack = [&](const Eigen::VectorXd& t) -> UnivariateGarch {
        double m = std::max({0.0, t[1], t[2]});
        double denom = std::exp(-m) + std::exp(t[1] - m) + std::exp(t[2] - m);
        return {std::exp(t[0]), std::exp(t[1] - m) / denom, std::exp(t[2] - m) / denom};
    };
    Objective f = [&](const Eigen::VectorXd& t) {
        auto [omega, kappa, lambda] = unpack(t);
        double nll = univariate_garch_nll(e, omega, kappa, lambda, var);
        return std::isfinite(nll) ? nll : 1e12 + t.squaredNorm();
    };

    Eigen::VectorXd t0(3);
    t0[0] = std::log(0.1 * var);                    // omega = var (1 - kappa - lambda)
    t0[1] = std::log(0.10 / 0.10);                  // kappa = 0.10
    t0[2] = std::log(0.80 / 0.10);                  // lambda = 0.80
    BfgsOptions opt;
    opt.max_iterations = 300;
    opt.gradient_tolerance = 1e-6;
    BfgsResult res = bfgs_minimize(f, t0, opt);
    return unpack(res.x);
}

double clamp_phi(double phi) { return std::clamp(phi, -0.9999, 0.9999); }

Eigen::MatrixXd correlation_of(const Eigen::MatrixXd& z) {
    const int k = static_cast<int>(z.cols());
    Eigen::MatrixXd centered = z.rowwise() - z.colwise().mean();
    Eigen::MatrixXd cov = centered.transpose() * centered / z.rows();
    Eigen::MatrixXd S = normalize_q(cov);  // exact unit diagonal
    // Shrink toward identity only if sampling noise left S non-PD.
    for (int tries = 0; tries < 6; ++tries) {
        Eigen::LLT<Eigen::MatrixXd> llt(S);
        if (llt.info() == Eigen::Success) return S;
        S = 0.98 * S + 0.02 * Eigen::MatrixXd::Identity(k, k);
    }
    throw EstimationError("correlation target not positive definite");
}

// Correlation target implied by a parameter point: the sample correlation of
// the standardized residuals (operationalizes S = E[ee']).
Eigen::MatrixXd target_correlation(const SpreadPanel& panel, const MeanParams& mean,
                                   const GarchParams& variance, const HInit& h_init) {
    Eigen::MatrixXd r = mean_filter(panel, mean);
    Eigen::MatrixXd h = garch_filter(r, variance, h_init.resolve(r));
    return correlation_of(standardize(r, h));
}

SystemParams generic_start(const SpreadPanel& panel) {
    const int k = static_cast<int>(panel.x.cols());
    SystemParams p;
    p.mean.phi = Eigen::VectorXd::Constant(k, 0.5);
    p.mean.mu = 0.5 * panel.x.colwise().mean().transpose();
    p.mean.tau = 0.0;
    Eigen::MatrixXd r = mean_filter(panel, p.mean);
    Eigen::VectorXd var = sample_variance(r);
    p.variance.omega = 0.2 * var.cwiseMax(1e-8);
    p.variance.kappa = Eigen::VectorXd::Constant(k, 0.10);
    p.variance.lambda = Eigen::VectorXd::Constant(k, 0.70);
    p.correlation.alpha = 0.05;
    p.correlation.beta = 0.90;
    p.correlation.nu = 8.0;
    p.correlation.S = correlation_of(r);
    return p;
}

SystemParams unpack_natural(const Eigen::VectorXd& v) {
    SystemParams p;
    p.mean.mu.resize(5);
    p.mean.phi.resize(5);
    p.variance.omega.resize(5);
    p.variance.kappa.resize(5);
    p.variance.lambda.resize(5);
    for (int i = 0; i < 5; ++i) {
        p.mean.mu[i] = v[i];
        p.mean.phi[i] = v[5 + i];
        p.variance.omega[i] = v[11 + i];
        p.variance.kappa[i] = v[16 + i];
        p.variance.lambda[i] = v[21 + i];
    }
    p.mean.tau = v[10];
    p.correlation.alpha = v[26];
    p.correlation.beta = v[27];
    p.correlation.nu = v[28];
    p.correlation.S = Eigen::MatrixXd::Zero(5, 5);
    return p;
}

// Per-week log-density gradients in the transformed space, N x 29.
Eigen::MatrixXd per_week_gradients(const SpreadPanel& panel, const Eigen::VectorXd& theta,
                                   const Eigen::MatrixXd& S, const HInit& h_init,
                                   double h) {
    const int n = panel.weeks() - 1;
    const int dim = static_cast<int>(theta.size());
    Eigen::MatrixXd G(n, dim);
    const int threads = effective_threads();
    std::string error;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
#endif
    for (int j = 0; j < dim; ++j) {
        try {
            double hj = h * std::max(1.0, std::abs(theta[j]));
            Eigen::VectorXd tp = theta, tm = theta;
            tp[j] += hj;
            tm[j] -= hj;
            Eigen::VectorXd lp =
                log_likelihood(panel, from_unconstrained(tp, S), h_init).per_week;
            Eigen::VectorXd lm =
                log_likelihood(panel, from_unconstrained(tm, S), h_init).per_week;
            G.col(j) = (lp - lm) / (2.0 * hj);
        } catch (const Error& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
            error = e.what();
        }
    }
    if (!error.empty())
        throw EstimationError("standard_errors: likelihood failed near the fitted point: " +
                              error);
    return G;
}

}  // namespace

void FitConfig::validate() const {
    if (max_iterations < 1) throw EstimationError("config: max_iterations must be >= 1");
    if (!(gradient_tolerance > 0.0) || !(step_tolerance > 0.0))
        throw EstimationError("config: tolerances must be positive");
    if (multistarts < 1) throw EstimationError("config: multistarts must be >= 1");
}

SystemParams initialize(const SpreadPanel& panel) {
    const int T = panel.weeks();
    const int k = static_cast<int>(panel.x.cols());
    if (T < 30) throw PanelError("initialize: panel needs at least 30 weeks");
    if (!panel.x.allFinite() || !panel.b.allFinite())
        throw PanelError("initialize: panel has non-finite values");

    SystemParams p;
    p.mean.mu.resize(k);
    p.mean.phi.resize(k);
    p.variance.omega.resize(k);
    p.variance.kappa.resize(k);
    p.variance.lambda.resize(k);

    // Per-equation OLS of the AR(1) means; the last equation adds the
    // contemporaneous TB yield.
    Eigen::MatrixXd residuals(T - 1, k);
    for (int i = 0; i < k; ++i) {
        const bool with_covariate = (i == k - 1);
        Eigen::MatrixXd X(T - 1, with_covariate ? 3 : 2);
        Eigen::VectorXd y(T - 1);
        for (int t = 1; t < T; ++t) {
            X(t - 1, 0) = 1.0;
            X(t - 1, 1) = panel.x(t - 1, i);
            if (with_covariate) X(t - 1, 2) = panel.b[t];
            y[t - 1] = panel.x(t, i);
        }
        OlsFit f = ols(X, y, "mean equation " + std::to_string(i + 1));
        p.mean.mu[i] = f.coefficients[0];
        p.mean.phi[i] = clamp_phi(f.coefficients[1]);
        if (with_covariate) p.mean.tau = f.coefficients[2];
        residuals.col(i) = f.residuals;
    }

    for (int i = 0; i < k; ++i) {
        UnivariateGarch g = fit_univariate_garch(residuals.col(i));
        p.variance.omega[i] = std::max(g.omega, 1e-10);
        p.variance.kappa[i] = std::clamp(g.kappa, 1e-6, 0.999);
        p.variance.lambda[i] = std::clamp(g.lambda, 1e-6, 0.999 - p.variance.kappa[i]);
    }

    p.correlation.S = target_correlation(panel, p.mean, p.variance, HInit::sample_variance());
    p.correlation.alpha = 0.05;
    p.correlation.beta = 0.90;
    p.correlation.nu = 8.0;
    validate_system(p);
    return p;
}

FitReport fit(const SpreadPanel& panel, const FitConfig& config) {
    config.validate();
    if (panel.weeks() < 30) throw PanelError("fit: panel needs at least 30 weeks");
    if (!panel.x.allFinite() || !panel.b.allFinite())
        throw PanelError("fit: panel has non-finite values");

    SystemParams start = (config.stage == Stage::TwoStageInitThenJoint)
                             ? initialize(panel)
                             : generic_start(panel);
    const Eigen::VectorXd theta0 = to_unconstrained(start);
    const Eigen::MatrixXd S0 = start.correlation.S;

    NegLogLikelihoodObjective objective(panel, S0, config.h_init);
    Objective f = [&objective](const Eigen::VectorXd& t) { return objective(t); };

    std::function<void(const Eigen::VectorXd&)> on_step;
    if (config.retarget_correlation)
        on_step = [&](const Eigen::VectorXd& theta) {
            SystemParams p = from_unconstrained(theta, objective.correlation_target());
            objective.set_correlation_target(
                target_correlation(panel, p.mean, p.variance, config.h_init));
        };

    BfgsOptions opt;
    opt.max_iterations = config.max_iterations;
    opt.gradient_tolerance = config.gradient_tolerance;
    opt.step_tolerance = config.step_tolerance;

    BfgsResult best;
    bool have_best = false;
    Rng jitter(config.seed);
    for (int m = 0; m < config.multistarts; ++m) {
        Eigen::VectorXd theta_start = theta0;
        if (m > 0)
            for (int i = 0; i < theta_start.size(); ++i)
                theta_start[i] += 0.1 * jitter.normal();
        objective.set_correlation_target(S0);
        BfgsResult res = bfgs_minimize(f, theta_start, opt, on_step);
        if (!have_best || res.f < best.f) {
            best = std::move(res);
            have_best = true;
            if (config.retarget_correlation && m + 1 < config.multistarts)
                best.x = best.x;  // S of the best run is re-derived below
        }
    }

    FitReport report;
    const Eigen::MatrixXd S_final =
        config.retarget_correlation
            ? [&] {
                  SystemParams p = from_unconstrained(best.x, S0);
                  return target_correlation(panel, p.mean, p.variance, config.h_init);
              }()
            : S0;
    report.params = from_unconstrained(best.x, S_final);
    report.loglik = -best.f;
    report.iterations = best.iterations;
    report.converged = best.converged;
    report.gradient_inf_norm = best.gradient_inf_norm;

    // Correlation path at the fitted parameters.
    Eigen::MatrixXd r = mean_filter(panel, report.params.mean);
    Eigen::MatrixXd h = garch_filter(r, report.params.variance,
                                     config.h_init.resolve(r));
    CorrelationPath path = dcc_filter(standardize(r, h), report.params.correlation);
    std::vector<Date> dates(panel.week_end.begin() + 1, panel.week_end.end());
    report.comovements = extract_comovements(path, dates);

    report.std_errors = unpack_natural(
        Eigen::VectorXd::Constant(kThetaDim, std::numeric_limits<double>::quiet_NaN()));
    report.stars.assign(kThetaDim, "");
    if (config.compute_std_errors) {
        try {
            StdErrorReport se = standard_errors(panel, report.params, config);
            report.std_errors = se.as_params;
            Eigen::VectorXd est = pack_natural(report.params);
            for (int i = 0; i < kThetaDim; ++i)
                report.stars[i] = significance_stars(est[i], se.natural[i]);
        } catch (const Error&) {
            // Leave NaN std errors; callers can retry via standard_errors().
        }
    }
    return report;
}

StdErrorReport standard_errors(const SpreadPanel& panel, const SystemParams& params,
                               const FitConfig& config) {
    config.validate();
    validate_system(params);
    const Eigen::VectorXd theta = to_unconstrained(params);
    const Eigen::MatrixXd S = params.correlation.S;
    const int n = panel.weeks() - 1;
    const int dim = static_cast<int>(theta.size());

    NegLogLikelihoodObjective objective(panel, S, config.h_init);
    Objective neg_total = [&objective](const Eigen::VectorXd& t) { return objective(t); };

    Eigen::VectorXd grad = fd_gradient(neg_total, theta, 1e-5);
    const double gnorm = grad.cwiseAbs().maxCoeff();
    if (gnorm > 10.0 * config.gradient_tolerance)
        throw EstimationError(
            "standard_errors: gradient infinity norm " + std::to_string(gnorm) +
            " exceeds 10x tolerance; params are not near a stationary point");

    // Hessian of the mean per-week log density.
    Objective mean_loglik = [&](const Eigen::VectorXd& t) { return -objective(t) / n; };
    Eigen::MatrixXd H = fd_hessian(mean_loglik, theta, 1e-4);
    Eigen::MatrixXd A = -H;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig <= 0.0)
        throw EstimationError("standard_errors: indefinite Hessian, eigenvalue " +
                              std::to_string(-min_eig) + " of the mean log density");
    Eigen::MatrixXd A_inv = es.eigenvectors() *
                            es.eigenvalues().cwiseInverse().asDiagonal() *
                            es.eigenvectors().transpose();

    Eigen::MatrixXd var_theta;
    if (config.se_method == SeMethod::Sandwich) {
        Eigen::MatrixXd G = per_week_gradients(panel, theta, S, config.h_init, 1e-5);
        Eigen::MatrixXd B = G.transpose() * G / n;
        var_theta = A_inv * B * A_inv / n;
    } else {
        var_theta = A_inv / n;
    }

    // Delta method back to the natural parameters.
    Eigen::MatrixXd J(dim, dim);
    for (int j = 0; j < dim; ++j) {
        double hj = 1e-6 * std::max(1.0, std::abs(theta[j]));
        Eigen::VectorXd tp = theta, tm = theta;
        tp[j] += hj;
        tm[j] -= hj;
        J.col(j) = (pack_natural(from_unconstrained(tp, S)) -
                    pack_natural(from_unconstrained(tm, S))) /
                   (2.0 * hj);
    }
    Eigen::MatrixXd var_nat = J * var_theta * J.transpose();

    StdErrorReport out;
    out.theta_covariance = var_theta;
    out.natural = var_nat.diagonal().cwiseMax(0.0).cwiseSqrt();
    out.as_params = unpack_natural(out.natural);
    return out;
}

std::string significance_stars(double estimate, double std_error) {
    if (!(std_error > 0.0) || !std::isfinite(std_error) || !std::isfinite(estimate))
        return "";
    double z = std::abs(estimate / std_error);
    if (z >= 2.5758293035489004) return "***";  // 1%
    if (z >= 1.9599639845400545) return "**";   // 5%
    if (z >= 1.6448536269514722) return "*";    // 10%
    return "";
}

void write_fit_report(const std::filesystem::path& path, const FitReport& report) {
    KvFile kv;
    kv.comment("comove fit report");
    kv.set("converged", static_cast<long long>(report.converged ? 1 : 0));
    kv.set("iterations", static_cast<long long>(report.iterations));
    kv.set("loglik", report.loglik);
    kv.set("gradient_inf_norm", report.gradient_inf_norm);
    const Eigen::VectorXd est = pack_natural(report.params);
    const Eigen::VectorXd se = pack_natural(report.std_errors);
    const auto& names = natural_names();
    for (int i = 0; i < kThetaDim; ++i) kv.set(names[i], est[i]);
    for (int i = 0; i < kThetaDim; ++i) kv.set("se_" + names[i], se[i]);
    for (int i = 0; i < kThetaDim; ++i)
        kv.set("stars_" + names[i],
               static_cast<std::size_t>(i) < report.stars.size() ? report.stars[i]
                                                                 : std::string{});
    const Eigen::MatrixXd& S = report.params.correlation.S;
    for (int i = 1; i < S.rows(); ++i)
        for (int j = 0; j < i; ++j)
            kv.set("s_" + std::to_string(i + 1) + "_" + std::to_string(j + 1), S(i, j));
    kv.write(path);
}

FitReport read_fit_report(const std::filesystem::path& path) {
    KvFile kv = KvFile::read(path);
    FitReport report;
    report.converged = kv.get_int("converged") != 0;
    report.iterations = static_cast<int>(kv.get_int("iterations"));
    report.loglik = kv.get_double("loglik");
    report.gradient_inf_norm = kv.get_double("gradient_inf_norm");
    const auto& names = natural_names();
    Eigen::VectorXd est(kThetaDim), se(kThetaDim);
    report.stars.assign(kThetaDim, "");
    for (int i = 0; i < kThetaDim; ++i) {
        est[i] = kv.get_double(names[i]);
        const std::string se_key = "se_" + names[i];
        const std::string se_str = kv.get_or_throw(se_key);
        se[i] = (se_str == "nan" || se_str == "-nan")
                    ? std::numeric_limits<double>::quiet_NaN()
                    : kv.get_double(se_key);
        if (auto s = kv.get("stars_" + names[i])) report.stars[i] = *s;
    }
    report.params = unpack_natural(est);
    report.std_errors = unpack_natural(se);
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(5, 5);
    for (int i = 1; i < 5; ++i)
        for (int j = 0; j < i; ++j) {
            double v = kv.get_double("s_" + std::to_string(i + 1) + "_" +
                                     std::to_string(j + 1));
            S(i, j) = v;
            S(j, i) = v;
        }
    report.params.correlation.S = S;
    return report;
}

FitConfig read_fit_config(const std::filesystem::path& path) {
    KvFile kv = KvFile::read(path);
    FitConfig c;
    if (kv.has("max_iterations")) c.max_iterations = static_cast<int>(kv.get_int("max_iterations"));
    if (kv.has("gradient_tolerance")) c.gradient_tolerance = kv.get_double("gradient_tolerance");
    if (kv.has("step_tolerance")) c.step_tolerance = kv.get_double("step_tolerance");
    if (kv.has("stage")) {
        const std::string s = kv.get_or_throw("stage");
        if (s == "two_stage_init_then_joint")
            c.stage = Stage::TwoStageInitThenJoint;
        else if (s == "joint_only")
            c.stage = Stage::JointOnly;
        else
            throw SchemaError("config: unknown stage '" + s + "'");
    }
    if (kv.has("seed")) c.seed = static_cast<std::uint64_t>(kv.get_int("seed"));
    if (kv.has("multistarts")) c.multistarts = static_cast<int>(kv.get_int("multistarts"));
    if (kv.has("retarget_correlation"))
        c.retarget_correlation = kv.get_int("retarget_correlation") != 0;
    if (kv.has("compute_std_errors"))
        c.compute_std_errors = kv.get_int("compute_std_errors") != 0;
    if (kv.has("se_method")) {
        const std::string s = kv.get_or_throw("se_method");
        if (s == "sandwich")
            c.se_method = SeMethod::Sandwich;
        else if (s == "inverse_hessian")
            c.se_method = SeMethod::InverseHessian;
        else
            throw SchemaError("config: unknown se_method '" + s + "'");
    }
    if (kv.has("h_init")) {
        const std::string s = kv.get_or_throw("h_init");
        if (s == "sample_variance") {
            c.h_init = HInit::sample_variance();
        } else if (s == "fixed") {
            Eigen::VectorXd v(5);
            for (int i = 0; i < 5; ++i)
                v[i] = kv.get_double("h_init_" + std::to_string(i + 1));
            c.h_init = HInit::fixed_values(v);
        } else {
            throw SchemaError("config: unknown h_init '" + s + "'");
        }
    }
    c.validate();
    return c;
}

}  // namespace comove
