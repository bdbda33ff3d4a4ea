#include "comove/likelihood.hpp"

#include <cmath>
#include <string>

#include "comove/dcc.hpp"
#include "comove/errors.hpp"
#include "comove/garch.hpp"
#include "comove/mean_filter.hpp"
#include "comove/transforms.hpp"

namespace comove {

namespace {

constexpr double kConditionLimit = 1e12;

// Cheap proxy first; the exact spectrum only when the proxy trips.
void guard_condition(const Eigen::LLT<Eigen::MatrixXd>& llt,
                     const Eigen::Map<const Eigen::MatrixXd>& R, int week) {
    const auto& L = llt.matrixLLT();
    double dmin = L(0, 0), dmax = L(0, 0);
    for (int i = 1; i < L.rows(); ++i) {
        dmin = std::min(dmin, L(i, i));
        dmax = std::max(dmax, L(i, i));
    }
    double proxy = (dmax / dmin) * (dmax / dmin);
    if (proxy <= kConditionLimit) return;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R, Eigen::EigenvaluesOnly);
    double lmin = es.eigenvalues().minCoeff();
    double lmax = es.eigenvalues().maxCoeff();
    if (lmin <= 0.0 || lmax / lmin > kConditionLimit)
        throw LikelihoodError("numerically singular H at week " + std::to_string(week) +
                              " (condition above 1e12)");
}

}  // namespace

Eigen::VectorXd HInit::resolve(const Eigen::MatrixXd& innovations) const {
    if (mode == Mode::Fixed) {
        if (fixed.size() != innovations.cols())
            throw EstimationError("h_init: fixed vector has wrong dimension");
        return fixed;
    }
    return sample_variance(innovations);
}

LogLikelihood log_likelihood(const SpreadPanel& panel, const SystemParams& params,
                             const HInit& h_init) {
    validate_system(params);
    const int k = params.dim();
    if (panel.x.cols() != k) throw PanelError("log_likelihood: dimension mismatch");

    const Eigen::MatrixXd r = mean_filter(panel, params.mean);
    const Eigen::VectorXd h0 = h_init.resolve(r);
    const Eigen::MatrixXd h = garch_filter(r, params.variance, h0);
    const Eigen::MatrixXd eps = standardize(r, h);
    const CorrelationPath path = dcc_filter(eps, params.correlation);

    const double nu = params.correlation.nu;
    const int n = path.length();
    const double c0 = std::lgamma(0.5 * (nu + k)) - std::lgamma(0.5 * nu) -
                      0.5 * k * std::log((nu - 2.0) * M_PI);

    LogLikelihood out;
    out.per_week.resize(n);
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    Eigen::VectorXd z(k);
    for (int t = 0; t < n; ++t) {
        auto R = path.R(t);
        llt.compute(R);
        if (llt.info() != Eigen::Success)
            throw LikelihoodError("correlation matrix not positive definite at week " +
                                  std::to_string(t + 2));
        guard_condition(llt, R, t + 2);

        double logdet_h = 0.0;
        for (int i = 0; i < k; ++i) logdet_h += std::log(h(t, i));
        double logdet_r = 0.0;
        for (int i = 0; i < k; ++i) logdet_r += 2.0 * std::log(llt.matrixLLT()(i, i));

        // r' H^{-1} r = eps' R^{-1} eps since H = D R D.
        z = eps.row(t).transpose();
        double quad = z.dot(llt.solve(z));

        double term = c0 - 0.5 * (logdet_h + logdet_r) -
                      0.5 * (nu + k) * std::log1p(quad / (nu - 2.0));
        if (!std::isfinite(term))
            throw LikelihoodError("log-likelihood term not finite at week " +
                                  std::to_string(t + 2));
        out.per_week[t] = term;
        out.total += term;
    }
    return out;
}

double NegLogLikelihoodObjective::operator()(const Eigen::VectorXd& theta) const {
    if (!theta.allFinite()) return 1e12 + 1.0;
    try {
        SystemParams params = from_unconstrained(theta, S_);
        return -log_likelihood(*panel_, params, h_init_).total;
    } catch (const Error&) {
        // Finite, weakly sloped toward the origin so the optimizer can leave.
        return 1e12 + theta.squaredNorm();
    }
}

}  // namespace comove
