#include "comove/data_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "comove/errors.hpp"

namespace comove {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            out.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(field);
    return out;
}

double parse_rate(const std::string& field, const char* column, int line_no) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        std::ostringstream os;
        os << "line " << line_no << ": column " << column << " has non-numeric value '"
           << field << "'";
        throw IngestionError(os.str());
    }
    if (!std::isfinite(value)) {
        std::ostringstream os;
        os << "line " << line_no << ": column " << column << " is not finite";
        throw IngestionError(os.str());
    }
    if (value < 0.0) {
        std::ostringstream os;
        os << "line " << line_no << ": column " << column << " is negative (" << value
           << ")";
        throw IngestionError(os.str());
    }
    return value;
}

const std::string kDailyHeader = "date,shibor_1m,ir_1m,er_1m,cp_1m,pfb_1m,tb_1m";
const std::string kPanelHeader =
    "week_end,x1_shibor_tb,x2_ir_tb,x3_er_tb,x4_cp_tb,x5_pfb_tb,b_tb_yield";

std::string read_header_line(std::ifstream& in, const std::filesystem::path& path) {
    std::string header;
    if (!std::getline(in, header))
        throw SchemaError(path.string() + ": empty file");
    if (!header.empty() && header.back() == '\r') header.pop_back();
    return header;
}

}  // namespace

DailyRateTable load_daily(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path.string());

    if (read_header_line(in, path) != kDailyHeader)
        throw SchemaError(path.string() + ": header must be '" + kDailyHeader + "'");

    DailyRateTable table;
    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != kNumRates + 1) {
            std::ostringstream os;
            os << "line " << line_no << ": expected " << kNumRates + 1 << " columns, got "
               << fields.size();
            throw IngestionError(os.str());
        }
        DailyRateRow row;
        try {
            row.date = parse_date(fields[0]);
        } catch (const IngestionError& e) {
            std::ostringstream os;
            os << "line " << line_no << ": " << e.what();
            throw IngestionError(os.str());
        }
        for (int i = 0; i < kNumRates; ++i) {
            if (fields[i + 1].empty()) continue;  // missing observation
            row.rates[i] = parse_rate(fields[i + 1], kRateColumns[i], line_no);
        }
        table.rows.push_back(row);
    }

    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const DailyRateRow& a, const DailyRateRow& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < table.rows.size(); ++i)
        if (table.rows[i].date == table.rows[i - 1].date)
            throw IngestionError("duplicate date " + format_date(table.rows[i].date));
    return table;
}

void validate_table(const DailyRateTable& table) {
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (i > 0 && !(table.rows[i - 1].date < table.rows[i].date))
            throw IngestionError("dates not strictly increasing at row " +
                                 std::to_string(i + 1));
        for (int j = 0; j < kNumRates; ++j) {
            const auto& r = table.rows[i].rates[j];
            if (r && (!std::isfinite(*r) || *r < 0.0))
                throw IngestionError(std::string("invalid value in column ") +
                                     kRateColumns[j] + " on " +
                                     format_date(table.rows[i].date));
        }
    }
}

WeeklyRates weekly_average(const DailyRateTable& table) {
    if (table.rows.empty()) throw PanelError("weekly_average: empty table");

    // Group complete days by the Monday of their ISO week. Incomplete days
    // are dropped from all six means so the weekly row stays aligned.
    std::map<Date, std::pair<Date, Eigen::Matrix<double, kNumRates, 1>>> weeks;
    std::map<Date, int> counts;
    for (const auto& row : table.rows) {
        if (!row.complete()) continue;
        Date monday = iso_week_monday(row.date);
        auto [it, inserted] =
            weeks.try_emplace(monday, row.date, Eigen::Matrix<double, kNumRates, 1>::Zero());
        if (!inserted) it->second.first = std::max(it->second.first, row.date);
        for (int j = 0; j < kNumRates; ++j) it->second.second[j] += *row.rates[j];
        counts[monday] += 1;
    }
    if (weeks.empty())
        throw PanelError("weekly_average: no week has a complete trading day");

    WeeklyRates out;
    out.rates.resize(static_cast<int>(weeks.size()), kNumRates);
    int w = 0;
    for (const auto& [monday, acc] : weeks) {
        out.week_end.push_back(acc.first);
        out.rates.row(w) = (acc.second / counts[monday]).transpose();
        ++w;
    }
    return out;
}

SpreadPanel build_spreads(const WeeklyRates& weekly) {
    if (weekly.weeks() == 0) throw PanelError("build_spreads: empty weekly rates");
    if (weekly.rates.cols() != kNumRates)
        throw PanelError("build_spreads: expected six rate series per week");
    if (!weekly.rates.allFinite())
        throw PanelError("build_spreads: missing series for some week");

    SpreadPanel panel;
    panel.week_end = weekly.week_end;
    panel.x.resize(weekly.weeks(), kNumSpreads);
    panel.b = weekly.rates.col(kNumRates - 1);
    for (int i = 0; i < kNumSpreads; ++i)
        panel.x.col(i) = weekly.rates.col(i) - panel.b;
    return panel;
}

void write_panel_csv(const std::filesystem::path& path, const SpreadPanel& panel) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write " + path.string());
    out << kPanelHeader << "\n";
    out.precision(12);
    for (int t = 0; t < panel.weeks(); ++t) {
        out << format_date(panel.week_end[t]);
        for (int i = 0; i < kNumSpreads; ++i) out << ',' << panel.x(t, i);
        out << ',' << panel.b[t] << "\n";
    }
}

SpreadPanel read_panel_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path.string());
    if (read_header_line(in, path) != kPanelHeader)
        throw SchemaError(path.string() + ": header must be '" + kPanelHeader + "'");

    std::vector<Date> dates;
    std::vector<std::array<double, kNumSpreads + 1>> values;
    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != kNumSpreads + 2) {
            std::ostringstream os;
            os << "line " << line_no << ": expected " << kNumSpreads + 2 << " columns, got "
               << fields.size();
            throw IngestionError(os.str());
        }
        try {
            dates.push_back(parse_date(fields[0]));
        } catch (const IngestionError& e) {
            std::ostringstream os;
            os << "line " << line_no << ": " << e.what();
            throw IngestionError(os.str());
        }
        std::array<double, kNumSpreads + 1> row{};
        for (int i = 0; i <= kNumSpreads; ++i) {
            const std::string& f = fields[i + 1];
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc{} || ptr != f.data() + f.size() || !std::isfinite(v)) {
                std::ostringstream os;
                os << "line " << line_no << ": non-numeric value '" << f << "'";
                throw IngestionError(os.str());
            }
            row[i] = v;
        }
        values.push_back(row);
    }
    if (dates.empty()) throw PanelError(path.string() + ": panel has no rows");
    for (std::size_t i = 1; i < dates.size(); ++i)
        if (!(dates[i - 1] < dates[i]))
            throw IngestionError("week_end dates not strictly increasing at row " +
                                 std::to_string(i + 1));

    SpreadPanel panel;
    panel.week_end = std::move(dates);
    panel.x.resize(static_cast<int>(values.size()), kNumSpreads);
    panel.b.resize(static_cast<int>(values.size()));
    for (std::size_t t = 0; t < values.size(); ++t) {
        for (int i = 0; i < kNumSpreads; ++i) panel.x(static_cast<int>(t), i) = values[t][i];
        panel.b[static_cast<int>(t)] = values[t][kNumSpreads];
    }
    return panel;
}

}  // namespace comove
