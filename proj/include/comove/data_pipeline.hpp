#pragma once

#include <Eigen/Dense>
#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "comove/calendar.hpp"

namespace comove {

// Column order of the six raw daily rates, matching the input CSV.
inline constexpr int kNumRates = 6;
inline constexpr std::array<const char*, kNumRates> kRateColumns = {
    "shibor_1m", "ir_1m", "er_1m", "cp_1m", "pfb_1m", "tb_1m"};

// Number of spread series (each non-TB rate minus the TB yield).
inline constexpr int kNumSpreads = 5;
inline constexpr std::array<const char*, kNumSpreads> kSpreadColumns = {
    "x1_shibor_tb", "x2_ir_tb", "x3_er_tb", "x4_cp_tb", "x5_pfb_tb"};
inline constexpr std::array<const char*, kNumSpreads> kSpreadLabels = {
    "Shibor-TB", "IR-TB", "ER-TB", "CP-TB", "PFB-TB"};

struct DailyRateRow {
    Date date;
    // Empty cell in the CSV = rate not observed that day. Observed values
    // are finite and nonnegative (enforced at ingestion).
    std::array<std::optional<double>, kNumRates> rates;

    bool complete() const {
        for (const auto& r : rates)
            if (!r) return false;
        return true;
    }
};

struct DailyRateTable {
    std::vector<DailyRateRow> rows;  // sorted by date, no duplicates
};

struct WeeklyRates {
    std::vector<Date> week_end;  // last trading day present in each ISO week
    Eigen::MatrixXd rates;       // weeks x 6, column order as kRateColumns

    int weeks() const { return static_cast<int>(week_end.size()); }
};

struct SpreadPanel {
    std::vector<Date> week_end;
    Eigen::MatrixXd x;  // weeks x 5: x1=Shibor-TB, x2=IR-TB, x3=ER-TB, x4=CP-TB, x5=PFB-TB
    Eigen::VectorXd b;  // weekly TB yield covariate

    int weeks() const { return static_cast<int>(week_end.size()); }
};

// Reads a daily-rate CSV. Header must be exactly
//   date,shibor_1m,ir_1m,er_1m,cp_1m,pfb_1m,tb_1m
// Rows may appear in any order; the result is sorted by date. Malformed
// values, non-finite or negative rates and duplicate dates raise
// IngestionError naming the offending line. Empty cells mark a missing
// observation and are allowed.
DailyRateTable load_daily(const std::filesystem::path& path);

// Same validation applied to an in-memory table (used by tests and the
// simulator round-trip).
void validate_table(const DailyRateTable& table);

// Aggregates to ISO-week (Mon-Sun) arithmetic means. A day missing any of
// the six rates is dropped from all six means for that week, so every
// weekly row averages one common set of days. Weeks with no usable day are
// skipped. week_end is the last usable trading day of the week.
WeeklyRates weekly_average(const DailyRateTable& table);

// x_i = rate_i - tb per week; b carries the weekly TB yield.
SpreadPanel build_spreads(const WeeklyRates& weekly);

// Panel CSV: week_end,x1_shibor_tb,...,x5_pfb_tb,b_tb_yield
void write_panel_csv(const std::filesystem::path& path, const SpreadPanel& panel);
SpreadPanel read_panel_csv(const std::filesystem::path& path);

}  // namespace comove
