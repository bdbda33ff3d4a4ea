#include "comove/params.hpp"

#include <cmath>
#include <sstream>

#include "comove/errors.hpp"

namespace comove {

namespace {

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

}  // namespace

std::string check_mean(const MeanParams& p) {
    if (p.mu.size() == 0 || p.mu.size() != p.phi.size())
        return "mean: mu/phi size mismatch";
    if (!all_finite(p.mu) || !all_finite(p.phi) || !std::isfinite(p.tau))
        return "mean: non-finite entry";
    for (int i = 0; i < p.phi.size(); ++i)
        if (std::abs(p.phi[i]) >= 1.0) {
            std::ostringstream os;
            os << "mean: |phi_" << i + 1 << "| = " << std::abs(p.phi[i]) << " >= 1";
            return os.str();
        }
    return {};
}

std::string check_garch(const GarchParams& p) {
    if (p.omega.size() == 0 || p.omega.size() != p.kappa.size() ||
        p.omega.size() != p.lambda.size())
        return "garch: omega/kappa/lambda size mismatch";
    if (!all_finite(p.omega) || !all_finite(p.kappa) || !all_finite(p.lambda))
        return "garch: non-finite entry";
    for (int i = 0; i < p.omega.size(); ++i) {
        std::ostringstream os;
        if (p.omega[i] <= 0.0) {
            os << "garch: omega_" << i + 1 << " <= 0";
            return os.str();
        }
        if (p.kappa[i] < 0.0) {
            os << "garch: kappa_" << i + 1 << " < 0";
            return os.str();
        }
        if (p.lambda[i] < 0.0) {
            os << "garch: lambda_" << i + 1 << " < 0";
            return os.str();
        }
        if (p.kappa[i] + p.lambda[i] >= 1.0) {
            os << "garch: kappa_" << i + 1 << " + lambda_" << i + 1 << " >= 1";
            return os.str();
        }
    }
    return {};
}

std::string check_dcc(const DccParams& p) {
    if (!std::isfinite(p.alpha) || !std::isfinite(p.beta) || !std::isfinite(p.nu))
        return "dcc: non-finite scalar";
    if (p.alpha < 0.0) return "dcc: alpha < 0";
    if (p.beta < 0.0) return "dcc: beta < 0";
    if (p.alpha + p.beta >= 1.0) return "dcc: alpha + beta >= 1";
    if (p.nu <= 2.0) return "dcc: nu <= 2";
    const auto& S = p.S;
    if (S.rows() == 0 || S.rows() != S.cols()) return "dcc: S not square";
    if (!S.allFinite()) return "dcc: S has non-finite entry";
    if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-12) return "dcc: S not symmetric";
    for (int i = 0; i < S.rows(); ++i)
        if (std::abs(S(i, i) - 1.0) > 1e-12) return "dcc: S diagonal not 1";
    Eigen::LLT<Eigen::MatrixXd> llt(S);
    if (llt.info() != Eigen::Success) return "dcc: S not positive definite";
    return {};
}

std::string check_system(const SystemParams& p) {
    if (auto s = check_mean(p.mean); !s.empty()) return s;
    if (auto s = check_garch(p.variance); !s.empty()) return s;
    if (auto s = check_dcc(p.correlation); !s.empty()) return s;
    if (p.mean.dim() != p.variance.dim() || p.mean.dim() != p.correlation.dim())
        return "system: component dimension mismatch";
    return {};
}

void validate_mean(const MeanParams& p) {
    if (auto s = check_mean(p); !s.empty()) throw EstimationError(s);
}
void validate_garch(const GarchParams& p) {
    if (auto s = check_garch(p); !s.empty()) throw EstimationError(s);
}
void validate_dcc(const DccParams& p) {
    if (auto s = check_dcc(p); !s.empty()) throw EstimationError(s);
}
void validate_system(const SystemParams& p) {
    if (auto s = check_system(p); !s.empty()) throw EstimationError(s);
}

SystemParams reference_params() {
    SystemParams p;
    p.mean.mu = Eigen::VectorXd{{0.914, 1.052, 0.636, 1.764, 0.947}};
    p.mean.phi = Eigen::VectorXd{{0.888, 0.816, 0.735, 0.948, 0.944}};
    p.mean.tau = -0.224;
    p.variance.omega = Eigen::VectorXd{{0.006, 0.024, 0.016, 0.029, 0.002}};
    p.variance.kappa = Eigen::VectorXd{{0.432, 0.526, 0.125, 0.756, 0.316}};
    p.variance.lambda = Eigen::VectorXd{{0.567, 0.473, 0.768, 0.243, 0.575}};
    p.correlation.alpha = 0.033;
    p.correlation.beta = 0.945;
    p.correlation.nu = 8.0;
    p.correlation.S = Eigen::MatrixXd{{1.00, 0.45, 0.30, 0.35, 0.25},
                                      {0.45, 1.00, 0.40, 0.30, 0.30},
                                      {0.30, 0.40, 1.00, 0.25, 0.20},
                                      {0.35, 0.30, 0.25, 1.00, 0.30},
                                      {0.25, 0.30, 0.20, 0.30, 1.00}};
    return p;
}

}  // namespace comove
