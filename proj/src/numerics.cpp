#include "comove/numerics.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "comove/errors.hpp"

namespace comove {

int effective_threads() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
#ifdef _OPENMP
    hw = omp_get_max_threads();
#endif
    if (const char* env = std::getenv("COMOVE_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 0) {
            if (v == 0) return 1;  // sequential reference mode
            hw = std::min<long>(v, hw > 0 ? hw : v);
        }
    }
    return hw > 0 ? hw : 1;
}

namespace {

double coordinate_step(double h, double xi) { return h * std::max(1.0, std::abs(xi)); }

}  // namespace

Eigen::VectorXd fd_gradient_serial(const Objective& f, const Eigen::VectorXd& x, double h) {
    const int n = static_cast<int>(x.size());
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) {
        double hi = coordinate_step(h, x[i]);
        Eigen::VectorXd xp = x, xm = x;
        xp[i] += hi;
        xm[i] -= hi;
        g[i] = (f(xp) - f(xm)) / (2.0 * hi);
    }
    return g;
}

Eigen::VectorXd fd_gradient(const Objective& f, const Eigen::VectorXd& x, double h) {
    const int threads = effective_threads();
#ifdef _OPENMP
    if (threads > 1) {
        const int n = static_cast<int>(x.size());
        Eigen::VectorXd g(n);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (int i = 0; i < n; ++i) {
            double hi = coordinate_step(h, x[i]);
            Eigen::VectorXd xp = x, xm = x;
            xp[i] += hi;
            xm[i] -= hi;
            g[i] = (f(xp) - f(xm)) / (2.0 * hi);
        }
        return g;
    }
#else
    (void)threads;
#endif
    return fd_gradient_serial(f, x, h);
}

Eigen::MatrixXd fd_hessian_serial(const Objective& f, const Eigen::VectorXd& x, double h) {
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd H(n, n);
    const double f0 = f(x);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double hi = coordinate_step(h, x[i]);
            double hj = coordinate_step(h, x[j]);
            double v;
            if (i == j) {
                Eigen::VectorXd xp = x, xm = x;
                xp[i] += hi;
                xm[i] -= hi;
                v = (f(xp) - 2.0 * f0 + f(xm)) / (hi * hi);
            } else {
                Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
                xpp[i] += hi;
                xpp[j] += hj;
                xpm[i] += hi;
                xpm[j] -= hj;
                xmp[i] -= hi;
                xmp[j] += hj;
                xmm[i] -= hi;
                xmm[j] -= hj;
                v = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * hi * hj);
            }
            H(i, j) = v;
            H(j, i) = v;
        }
    return H;
}

Eigen::MatrixXd fd_hessian(const Objective& f, const Eigen::VectorXd& x, double h) {
    const int threads = effective_threads();
#ifdef _OPENMP
    if (threads > 1) {
        const int n = static_cast<int>(x.size());
        Eigen::MatrixXd H(n, n);
        const double f0 = f(x);
        // Flatten the upper triangle so the pair loop balances.
        std::vector<std::pair<int, int>> pairs;
        pairs.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) pairs.emplace_back(i, j);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            auto [i, j] = pairs[p];
            double hi = coordinate_step(h, x[i]);
            double hj = coordinate_step(h, x[j]);
            double v;
            if (i == j) {
                Eigen::VectorXd xp = x, xm = x;
                xp[i] += hi;
                xm[i] -= hi;
                v = (f(xp) - 2.0 * f0 + f(xm)) / (hi * hi);
            } else {
                Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
                xpp[i] += hi;
                xpp[j] += hj;
                xpm[i] += hi;
                xpm[j] -= hj;
                xmp[i] -= hi;
                xmp[j] += hj;
                xmm[i] -= hi;
                xmm[j] -= hj;
                v = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * hi * hj);
            }
            H(i, j) = v;
            H(j, i) = v;
        }
        return H;
    }
#else
    (void)threads;
#endif
    return fd_hessian_serial(f, x, h);
}

BfgsResult bfgs_minimize(const Objective& f, const Eigen::VectorXd& x0,
                         const BfgsOptions& opt,
                         const std::function<void(const Eigen::VectorXd&)>& on_step) {
    const int n = static_cast<int>(x0.size());
    BfgsResult res;
    res.x = x0;
    res.f = f(x0);
    if (!std::isfinite(res.f))
        throw EstimationError("bfgs: objective not finite at the starting point");
    res.accepted_values.push_back(res.f);

    Eigen::MatrixXd Hinv = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd g = fd_gradient(f, res.x, opt.fd_step);
    double last_rel_step = std::numeric_limits<double>::infinity();

    for (int iter = 0; iter < opt.max_iterations; ++iter) {
        res.gradient = g;
        res.gradient_inf_norm = g.cwiseAbs().maxCoeff();
        if (res.gradient_inf_norm <= opt.gradient_tolerance &&
            last_rel_step < opt.step_tolerance) {
            res.converged = true;
            return res;
        }

        Eigen::VectorXd d = -(Hinv * g);
        double slope = g.dot(d);
        if (!(slope < 0.0)) {  // not a descent direction, reset to steepest
            Hinv.setIdentity();
            d = -g;
            slope = g.dot(d);
            if (!(slope < 0.0)) break;  // gradient numerically zero
        }

        // Backtracking Armijo line search; accepted values never increase.
        double step = 1.0;
        double f_new = 0.0;
        Eigen::VectorXd x_new;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            x_new = res.x + step * d;
            f_new = f(x_new);
            if (std::isfinite(f_new) && f_new <= res.f + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        ++res.iterations;
        if (!accepted) {
            // Objective at finite-difference noise floor; cannot improve.
            res.converged = res.gradient_inf_norm <= opt.gradient_tolerance;
            return res;
        }

        Eigen::VectorXd g_new = fd_gradient(f, x_new, opt.fd_step);
        Eigen::VectorXd s = x_new - res.x;
        Eigen::VectorXd y = g_new - g;
        double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            // Standard BFGS inverse update.
            Eigen::VectorXd Hy = Hinv * y;
            double yHy = y.dot(Hy);
            Hinv += ((sy + yHy) / (sy * sy)) * (s * s.transpose()) -
                    (Hy * s.transpose() + s * Hy.transpose()) / sy;
        }

        last_rel_step = s.norm() / std::max(1.0, res.x.norm());
        res.x = x_new;
        res.f = f_new;
        res.accepted_values.push_back(f_new);
        g = g_new;
        if (on_step) on_step(res.x);
    }

    res.gradient = g;
    res.gradient_inf_norm = g.cwiseAbs().maxCoeff();
    res.converged = res.gradient_inf_norm <= opt.gradient_tolerance &&
                    last_rel_step < opt.step_tolerance;
    return res;
}

}  // namespace comove
