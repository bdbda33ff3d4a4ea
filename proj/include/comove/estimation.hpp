#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "comove/dcc.hpp"
#include "comove/likelihood.hpp"
#include "comove/params.hpp"

namespace comove {

enum class Stage { TwoStageInitThenJoint, JointOnly };
enum class SeMethod { Sandwich, InverseHessian };

struct FitConfig {
    int max_iterations = 500;
    double gradient_tolerance = 1e-5;  // infinity norm in transformed space
    double step_tolerance = 1e-9;      // relative accepted step
    Stage stage = Stage::TwoStageInitThenJoint;
    std::uint64_t seed = 0;  // jitter stream for additional starts
    int multistarts = 1;
    HInit h_init;  // GARCH initialization policy
    // Re-target S from the standardized residuals after every accepted
    // optimizer step (sensitivity knob; off keeps S at its initial target).
    bool retarget_correlation = false;
    SeMethod se_method = SeMethod::Sandwich;
    bool compute_std_errors = true;

    void validate() const;
};

struct StdErrorReport {
    SystemParams as_params;   // same shape as the estimates; S block is zero
    Eigen::VectorXd natural;  // aligned with pack_natural()/natural_names()
    Eigen::MatrixXd theta_covariance;
};

struct FitReport {
    SystemParams params;
    SystemParams std_errors;         // NaN-filled when not computed
    std::vector<std::string> stars;  // per natural parameter: "", "*", "**", "***"
    double loglik = 0.0;
    int iterations = 0;
    bool converged = false;
    double gradient_inf_norm = 0.0;
    ComovementSeries comovements;
};

// Staged starting values: per-equation OLS for the mean, univariate
// Gaussian GARCH(1,1) fits on the OLS residuals, correlation targeting for
// S, (alpha, beta) = (0.05, 0.90) and nu = 8. Panel must have >= 30 weeks.
SystemParams initialize(const SpreadPanel& panel);

// Joint QML fit over all 29 free parameters in the transformed space.
FitReport fit(const SpreadPanel& panel, const FitConfig& config = {});

// Robust (sandwich) or inverse-Hessian standard errors at a fitted point.
// Precondition: transformed-space gradient infinity norm of the total
// log-likelihood below 10x gradient_tolerance.
StdErrorReport standard_errors(const SpreadPanel& panel, const SystemParams& params,
                               const FitConfig& config = {});

// Significance stars at the 10/5/1 percent two-sided normal levels.
std::string significance_stars(double estimate, double std_error);

// Flat key-value serialization of a fit report (see README for the keys).
void write_fit_report(const std::filesystem::path& path, const FitReport& report);
FitReport read_fit_report(const std::filesystem::path& path);

FitConfig read_fit_config(const std::filesystem::path& path);

}  // namespace comove
