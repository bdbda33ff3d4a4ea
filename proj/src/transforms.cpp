#include "comove/transforms.hpp"

#include <cmath>

#include "comove/errors.hpp"

namespace comove {

namespace {

constexpr int kDim = 5;

// (a, b) -> (p, q) with p, q > 0 and p + q < 1, numerically stable for
// large coordinates.
std::pair<double, double> simplex_pair(double a, double b) {
    double m = std::max({0.0, a, b});
    double e0 = std::exp(-m);
    double ea = std::exp(a - m);
    double eb = std::exp(b - m);
    double denom = e0 + ea + eb;
    return {ea / denom, eb / denom};
}

std::pair<double, double> simplex_pair_inverse(double p, double q, const char* what) {
    double rest = 1.0 - p - q;
    if (!(p > 0.0) || !(q > 0.0) || !(rest > 0.0))
        throw EstimationError(std::string("transform: ") + what +
                              " not in the open simplex interior");
    return {std::log(p / rest), std::log(q / rest)};
}

}  // namespace

Eigen::VectorXd to_unconstrained(const SystemParams& p) {
    if (p.dim() != kDim) throw EstimationError("transform: system must be 5-variate");
    validate_system(p);
    Eigen::VectorXd theta(kThetaDim);
    for (int i = 0; i < kDim; ++i) theta[i] = p.mean.mu[i];
    for (int i = 0; i < kDim; ++i) theta[5 + i] = std::atanh(p.mean.phi[i]);
    theta[10] = p.mean.tau;
    for (int i = 0; i < kDim; ++i) {
        theta[11 + i] = std::log(p.variance.omega[i]);
        auto [a, b] = simplex_pair_inverse(p.variance.kappa[i], p.variance.lambda[i],
                                           "(kappa, lambda)");
        theta[16 + i] = a;
        theta[21 + i] = b;
    }
    {
        auto [a, b] =
            simplex_pair_inverse(p.correlation.alpha, p.correlation.beta, "(alpha, beta)");
        theta[26] = a;
        theta[27] = b;
    }
    theta[28] = std::log(p.correlation.nu - 2.0);
    return theta;
}

SystemParams from_unconstrained(const Eigen::VectorXd& theta, const Eigen::MatrixXd& S) {
    if (theta.size() != kThetaDim)
        throw EstimationError("transform: theta must have 29 coordinates");
    SystemParams p;
    p.mean.mu.resize(kDim);
    p.mean.phi.resize(kDim);
    p.variance.omega.resize(kDim);
    p.variance.kappa.resize(kDim);
    p.variance.lambda.resize(kDim);
    for (int i = 0; i < kDim; ++i) {
        p.mean.mu[i] = theta[i];
        p.mean.phi[i] = std::tanh(theta[5 + i]);
        p.variance.omega[i] = std::exp(theta[11 + i]);
        auto [kap, lam] = simplex_pair(theta[16 + i], theta[21 + i]);
        p.variance.kappa[i] = kap;
        p.variance.lambda[i] = lam;
    }
    p.mean.tau = theta[10];
    auto [alpha, beta] = simplex_pair(theta[26], theta[27]);
    p.correlation.alpha = alpha;
    p.correlation.beta = beta;
    p.correlation.nu = 2.0 + std::exp(theta[28]);
    p.correlation.S = S;
    return p;
}

Eigen::VectorXd pack_natural(const SystemParams& p) {
    Eigen::VectorXd v(kThetaDim);
    for (int i = 0; i < kDim; ++i) {
        v[i] = p.mean.mu[i];
        v[5 + i] = p.mean.phi[i];
        v[11 + i] = p.variance.omega[i];
        v[16 + i] = p.variance.kappa[i];
        v[21 + i] = p.variance.lambda[i];
    }
    v[10] = p.mean.tau;
    v[26] = p.correlation.alpha;
    v[27] = p.correlation.beta;
    v[28] = p.correlation.nu;
    return v;
}

const std::vector<std::string>& natural_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n(kThetaDim);
        for (int i = 0; i < kDim; ++i) {
            n[i] = "mu_" + std::to_string(i + 1);
            n[5 + i] = "phi_" + std::to_string(i + 1);
            n[11 + i] = "omega_" + std::to_string(i + 1);
            n[16 + i] = "kappa_" + std::to_string(i + 1);
            n[21 + i] = "lambda_" + std::to_string(i + 1);
        }
        n[10] = "tau";
        n[26] = "alpha";
        n[27] = "beta";
        n[28] = "nu";
        return n;
    }();
    return names;
}

}  // namespace comove
