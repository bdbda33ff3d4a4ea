#include "comove/mean_filter.hpp"

#include "comove/errors.hpp"

namespace comove {

Eigen::MatrixXd mean_filter(const SpreadPanel& panel, const MeanParams& params) {
    const int T = panel.weeks();
    const int k = params.dim();
    if (T < 2) throw PanelError("mean_filter: panel needs at least 2 weeks");
    if (panel.x.cols() != k) throw PanelError("mean_filter: dimension mismatch");

    Eigen::MatrixXd r(T - 1, k);
    for (int t = 1; t < T; ++t) {
        for (int i = 0; i < k; ++i)
            r(t - 1, i) = panel.x(t, i) - params.mu[i] - params.phi[i] * panel.x(t - 1, i);
        r(t - 1, k - 1) -= params.tau * panel.b[t];
    }
    return r;
}

Eigen::MatrixXd mean_unfilter(const Eigen::MatrixXd& r, const MeanParams& params,
                              const Eigen::VectorXd& x0, const Eigen::VectorXd& b) {
    const int n = static_cast<int>(r.rows());
    const int k = params.dim();
    if (r.cols() != k || x0.size() != k) throw PanelError("mean_unfilter: dimension mismatch");
    if (b.size() != n + 1) throw PanelError("mean_unfilter: covariate length must be T");

    Eigen::MatrixXd x(n + 1, k);
    x.row(0) = x0.transpose();
    for (int t = 1; t <= n; ++t) {
        for (int i = 0; i < k; ++i)
            x(t, i) = params.mu[i] + params.phi[i] * x(t - 1, i) + r(t - 1, i);
        x(t, k - 1) += params.tau * b[t];
    }
    return x;
}

}  // namespace comove
