#pragma once

#include <Eigen/Dense>
#include <array>
#include <filesystem>
#include <utility>
#include <vector>

#include "comove/calendar.hpp"
#include "comove/params.hpp"

namespace comove {

// Per-week pseudo-correlation Q_t and correlation R_t, stored contiguously
// (row-major dim x dim blocks) to keep the likelihood loop allocation-free.
class CorrelationPath {
public:
    CorrelationPath(int length, int dim)
        : length_(length), dim_(dim), q_(static_cast<std::size_t>(length) * dim * dim),
          r_(q_.size()) {}

    int length() const { return length_; }
    int dim() const { return dim_; }

    Eigen::Map<const Eigen::MatrixXd> Q(int t) const {
        return {q_.data() + block(t), dim_, dim_};
    }
    Eigen::Map<const Eigen::MatrixXd> R(int t) const {
        return {r_.data() + block(t), dim_, dim_};
    }
    Eigen::Map<Eigen::MatrixXd> Q(int t) { return {q_.data() + block(t), dim_, dim_}; }
    Eigen::Map<Eigen::MatrixXd> R(int t) { return {r_.data() + block(t), dim_, dim_}; }

private:
    std::size_t block(int t) const { return static_cast<std::size_t>(t) * dim_ * dim_; }

    int length_;
    int dim_;
    std::vector<double> q_;
    std::vector<double> r_;
};

// DCC(1,1) recursion over standardized residuals (rows of epsilon):
//   Q_1 = S,  Q_t = (1-alpha-beta) S + alpha e_{t-1} e_{t-1}' + beta Q_{t-1},
//   R_t = diag(Q_t)^{-1/2} Q_t diag(Q_t)^{-1/2}.
// Only the upper triangle is computed, then mirrored, so Q_t stays exactly
// symmetric over long horizons.
CorrelationPath dcc_filter(const Eigen::MatrixXd& epsilon, const DccParams& params);

// R[i][j] = Q[i][j] / sqrt(Q[i][i] Q[j][j]); requires positive diagonal.
Eigen::MatrixXd normalize_q(const Eigen::MatrixXd& Q);

// The six named co-movement series read off the 5x5 correlation path.
// Column order: 1a=R(x1,x3), 1b=R(x2,x3), 2a=R(x1,x5), 2b=R(x1,x4),
// 2c=R(x2,x5), 2d=R(x2,x4).
inline constexpr int kNumComovements = 6;
inline constexpr std::array<const char*, kNumComovements> kComovementColumns = {
    "rho_1a", "rho_1b", "rho_2a", "rho_2b", "rho_2c", "rho_2d"};
// (row, col) index pairs into R_t for each co-movement, zero-based.
inline constexpr std::array<std::pair<int, int>, kNumComovements> kComovementIndex = {
    {{0, 2}, {1, 2}, {0, 4}, {0, 3}, {1, 4}, {1, 3}}};

struct ComovementSeries {
    std::vector<Date> week_end;
    Eigen::MatrixXd rho;  // length x 6, columns as kComovementColumns

    int length() const { return static_cast<int>(week_end.size()); }
};

// dates must have one entry per path step (the filtered weeks, i.e. panel
// weeks 2..T).
ComovementSeries extract_comovements(const CorrelationPath& path,
                                     const std::vector<Date>& dates);

// CSV: week_end,rho_1a,...,rho_2d; with the optional full path, appends the
// 15 lower-triangle entries r_i_j of R_t per row.
void write_comovements_csv(const std::filesystem::path& path, const ComovementSeries& series,
                           const CorrelationPath* full = nullptr);
ComovementSeries read_comovements_csv(const std::filesystem::path& path);

}  // namespace comove
