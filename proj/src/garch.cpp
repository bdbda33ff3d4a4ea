#include "comove/garch.hpp"

#include "comove/errors.hpp"

namespace comove {

Eigen::MatrixXd garch_filter(const Eigen::MatrixXd& r, const GarchParams& params,
                             const Eigen::VectorXd& h_init) {
    const int T = static_cast<int>(r.rows());
    const int k = params.dim();
    if (r.cols() != k || h_init.size() != k)
        throw EstimationError("garch_filter: dimension mismatch");
    if (T == 0) throw EstimationError("garch_filter: empty innovation matrix");
    for (int i = 0; i < k; ++i)
        if (!(h_init[i] > 0.0))
            throw EstimationError("garch_filter: h_init must be positive (series " +
                                  std::to_string(i + 1) + ")");

    Eigen::MatrixXd h(T, k);
    h.row(0) = h_init.transpose();
    for (int t = 1; t < T; ++t)
        for (int i = 0; i < k; ++i)
            h(t, i) = params.omega[i] + params.kappa[i] * r(t - 1, i) * r(t - 1, i) +
                      params.lambda[i] * h(t - 1, i);
    return h;
}

Eigen::MatrixXd standardize(const Eigen::MatrixXd& r, const Eigen::MatrixXd& h) {
    if (r.rows() != h.rows() || r.cols() != h.cols())
        throw EstimationError("standardize: shape mismatch");
    if ((h.array() <= 0.0).any())
        throw EstimationError("standardize: conditional variance must be positive");
    return r.array() / h.array().sqrt();
}

Eigen::VectorXd sample_variance(const Eigen::MatrixXd& r) {
    const double n = static_cast<double>(r.rows());
    Eigen::VectorXd mean = r.colwise().mean();
    Eigen::VectorXd v(r.cols());
    for (int i = 0; i < r.cols(); ++i)
        v[i] = (r.col(i).array() - mean[i]).square().sum() / n;
    return v;
}

}  // namespace comove
