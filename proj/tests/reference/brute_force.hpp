#pragma once

// Independent reference evaluation of the full AR(1)-DCC(1,1)-GARCH(1,1)
// Student-t log-likelihood. Every recursion is unrolled with plain loops on
// std::vector storage and the 5x5 solves use Gaussian elimination with
// partial pivoting, so nothing here shares a code path with the library
// engine it is used to check. Keep it dumb; speed does not matter.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "comove/data_pipeline.hpp"
#include "comove/params.hpp"

namespace brute_force {

using Mat = std::vector<std::vector<double>>;

inline Mat make_mat(int n, int m) { return Mat(n, std::vector<double>(m, 0.0)); }

// Solves A x = rhs and returns {x, log|det A|}; throws on a pivot collapse.
inline std::pair<std::vector<double>, double> solve_logdet(Mat A, std::vector<double> rhs) {
    const int n = static_cast<int>(A.size());
    double logdet = 0.0;
    double detsign = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row)
            if (std::fabs(A[row][col]) > std::fabs(A[pivot][col])) pivot = row;
        if (std::fabs(A[pivot][col]) < 1e-300)
            throw std::runtime_error("brute_force: singular matrix");
        if (pivot != col) {
            std::swap(A[pivot], A[col]);
            std::swap(rhs[pivot], rhs[col]);
            detsign = -detsign;
        }
        logdet += std::log(std::fabs(A[col][col]));
        if (A[col][col] < 0.0) detsign = -detsign;
        for (int row = col + 1; row < n; ++row) {
            double f = A[row][col] / A[col][col];
            for (int j = col; j < n; ++j) A[row][j] -= f * A[col][j];
            rhs[row] -= f * rhs[col];
        }
    }
    if (detsign < 0.0) throw std::runtime_error("brute_force: negative determinant");
    std::vector<double> x(n, 0.0);
    for (int row = n - 1; row >= 0; --row) {
        double s = rhs[row];
        for (int j = row + 1; j < n; ++j) s -= A[row][j] * x[j];
        x[row] = s / A[row][row];
    }
    return {x, logdet};
}

struct Paths {
    Mat r;        // innovations, (T-1) x k
    Mat h;        // conditional variances
    Mat eps;      // standardized residuals
    std::vector<Mat> Q;
    std::vector<Mat> R;
    std::vector<double> per_week;
    double total = 0.0;
};

// h_init must be supplied explicitly so caller and engine agree on the policy.
inline Paths log_likelihood(const comove::SpreadPanel& panel,
                            const comove::SystemParams& p,
                            const std::vector<double>& h_init) {
    const int T = panel.weeks();
    const int k = p.dim();
    const int n = T - 1;
    Paths out;

    // Equations (AR means): r_{i,t} = x_{i,t} - mu_i - phi_i x_{i,t-1},
    // last series also subtracts tau * B_t.
    out.r = make_mat(n, k);
    for (int t = 1; t < T; ++t) {
        for (int i = 0; i < k; ++i)
            out.r[t - 1][i] =
                panel.x(t, i) - p.mean.mu[i] - p.mean.phi[i] * panel.x(t - 1, i);
        out.r[t - 1][k - 1] -= p.mean.tau * panel.b[t];
    }

    // GARCH recursion.
    out.h = make_mat(n, k);
    for (int i = 0; i < k; ++i) out.h[0][i] = h_init[i];
    for (int t = 1; t < n; ++t)
        for (int i = 0; i < k; ++i)
            out.h[t][i] = p.variance.omega[i] +
                          p.variance.kappa[i] * out.r[t - 1][i] * out.r[t - 1][i] +
                          p.variance.lambda[i] * out.h[t - 1][i];

    out.eps = make_mat(n, k);
    for (int t = 0; t < n; ++t)
        for (int i = 0; i < k; ++i) out.eps[t][i] = out.r[t][i] / std::sqrt(out.h[t][i]);

    // DCC recursion in its elementwise GARCH-on-correlations form:
    //   q_ij = rho_ij + alpha (e_i e_j - rho_ij) + beta (q_prev - rho_ij).
    const double a = p.correlation.alpha;
    const double b = p.correlation.beta;
    out.Q.assign(n, make_mat(k, k));
    out.R.assign(n, make_mat(k, k));
    for (int t = 0; t < n; ++t) {
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                double rho_bar = p.correlation.S(i, j);
                if (t == 0)
                    out.Q[t][i][j] = rho_bar;
                else
                    out.Q[t][i][j] = rho_bar +
                                     a * (out.eps[t - 1][i] * out.eps[t - 1][j] - rho_bar) +
                                     b * (out.Q[t - 1][i][j] - rho_bar);
            }
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                out.R[t][i][j] =
                    out.Q[t][i][j] / std::sqrt(out.Q[t][i][i] * out.Q[t][j][j]);
    }

    // Student-t log density with conditional covariance H_t = D_t R_t D_t
    // (scale H_t (nu-2)/nu), assembled explicitly and solved by elimination.
    const double nu = p.correlation.nu;
    out.per_week.assign(n, 0.0);
    for (int t = 0; t < n; ++t) {
        Mat H = make_mat(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                H[i][j] = std::sqrt(out.h[t][i]) * out.R[t][i][j] * std::sqrt(out.h[t][j]);
        auto [Hinv_r, logdetH] = solve_logdet(H, out.r[t]);
        double quad = 0.0;
        for (int i = 0; i < k; ++i) quad += out.r[t][i] * Hinv_r[i];
        double term = std::lgamma(0.5 * (nu + k)) - std::lgamma(0.5 * nu) -
                      0.5 * k * std::log((nu - 2.0) * M_PI) - 0.5 * logdetH -
                      0.5 * (nu + k) * std::log1p(quad / (nu - 2.0));
        out.per_week[t] = term;
        out.total += term;
    }
    return out;
}

}  // namespace brute_force
