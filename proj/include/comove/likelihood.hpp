#pragma once

#include <Eigen/Dense>

#include "comove/data_pipeline.hpp"
#include "comove/params.hpp"

namespace comove {

struct LogLikelihood {
    double total = 0.0;
    Eigen::VectorXd per_week;  // one term per filtered week (panel weeks 2..T)
};

// Initialization policy for the GARCH recursion. SampleVariance recomputes
// the per-series variance of the current innovations on every evaluation
// (smooth in the parameters); Fixed pins explicit values.
struct HInit {
    enum class Mode { SampleVariance, Fixed };
    Mode mode = Mode::SampleVariance;
    Eigen::VectorXd fixed;

    static HInit sample_variance() { return {}; }
    static HInit fixed_values(Eigen::VectorXd v) {
        HInit h;
        h.mode = Mode::Fixed;
        h.fixed = std::move(v);
        return h;
    }
    Eigen::VectorXd resolve(const Eigen::MatrixXd& innovations) const;
};

// Exact joint log quasi-likelihood: mean filter -> GARCH filter ->
// standardize -> DCC filter, then per week the log density of r_t under a
// multivariate Student-t with nu degrees of freedom whose conditional
// covariance is H_t = D_t R_t D_t (scale matrix H_t (nu-2)/nu). Throws
// LikelihoodError when an H_t is numerically singular (condition estimate
// beyond 1e12) or a term is not finite; never returns a silent -inf.
LogLikelihood log_likelihood(const SpreadPanel& panel, const SystemParams& params,
                             const HInit& h_init = HInit::sample_variance());

// Total objective for the optimizer: maps an unconstrained vector through
// the parameter transforms and returns -log_likelihood; numerical failures
// map to a large finite penalty so the surface never produces NaN.
class NegLogLikelihoodObjective {
public:
    NegLogLikelihoodObjective(const SpreadPanel& panel, Eigen::MatrixXd S,
                              HInit h_init = HInit::sample_variance())
        : panel_(&panel), S_(std::move(S)), h_init_(std::move(h_init)) {}

    double operator()(const Eigen::VectorXd& theta) const;

    const Eigen::MatrixXd& correlation_target() const { return S_; }
    void set_correlation_target(Eigen::MatrixXd S) { S_ = std::move(S); }

private:
    const SpreadPanel* panel_;
    Eigen::MatrixXd S_;
    HInit h_init_;
};

}  // namespace comove
