#include "comove/dcc.hpp"

#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>

#include "comove/errors.hpp"

namespace comove {

CorrelationPath dcc_filter(const Eigen::MatrixXd& epsilon, const DccParams& params) {
    validate_dcc(params);
    const int k = params.dim();
    const int n = static_cast<int>(epsilon.rows());
    if (epsilon.cols() != k) throw EstimationError("dcc_filter: dimension mismatch");
    if (n == 0) throw EstimationError("dcc_filter: empty residual matrix");

    CorrelationPath path(n, k);
    const double a = params.alpha;
    const double b = params.beta;
    const double c = 1.0 - a - b;

    Eigen::MatrixXd Q = params.S;
    for (int t = 0; t < n; ++t) {
        if (t > 0) {
            // Upper triangle only, mirrored afterwards: no asymmetric drift.
            for (int i = 0; i < k; ++i)
                for (int j = i; j < k; ++j) {
                    double q = c * params.S(i, j) +
                               a * epsilon(t - 1, i) * epsilon(t - 1, j) + b * Q(i, j);
                    Q(i, j) = q;
                    Q(j, i) = q;
                }
        }
        path.Q(t) = Q;
        path.R(t) = normalize_q(Q);
    }
    return path;
}

Eigen::MatrixXd normalize_q(const Eigen::MatrixXd& Q) {
    const int k = static_cast<int>(Q.rows());
    if (Q.cols() != k) throw EstimationError("normalize_q: matrix not square");
    Eigen::VectorXd inv_sqrt(k);
    for (int i = 0; i < k; ++i) {
        if (!(Q(i, i) > 0.0))
            throw EstimationError("normalize_q: non-positive diagonal at " +
                                  std::to_string(i + 1));
        inv_sqrt[i] = 1.0 / std::sqrt(Q(i, i));
    }
    Eigen::MatrixXd R(k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) R(i, j) = Q(i, j) * inv_sqrt[i] * inv_sqrt[j];
        R(i, i) = 1.0;  // exact unit diagonal
    }
    return R;
}

ComovementSeries extract_comovements(const CorrelationPath& path,
                                     const std::vector<Date>& dates) {
    if (static_cast<int>(dates.size()) != path.length())
        throw EstimationError("extract_comovements: path length does not match dates");
    if (path.dim() != 5)
        throw EstimationError("extract_comovements: path must be 5-variate");

    ComovementSeries out;
    out.week_end = dates;
    out.rho.resize(path.length(), kNumComovements);
    for (int t = 0; t < path.length(); ++t) {
        auto R = path.R(t);
        for (int c = 0; c < kNumComovements; ++c)
            out.rho(t, c) = R(kComovementIndex[c].first, kComovementIndex[c].second);
    }
    return out;
}

void write_comovements_csv(const std::filesystem::path& file, const ComovementSeries& series,
                           const CorrelationPath* full) {
    std::ofstream out(file);
    if (!out) throw SchemaError("cannot write " + file.string());
    out << "week_end";
    for (auto* c : kComovementColumns) out << ',' << c;
    if (full) {
        for (int i = 1; i < full->dim(); ++i)
            for (int j = 0; j < i; ++j) out << ",r_" << i + 1 << '_' << j + 1;
    }
    out << "\n";
    out.precision(12);
    for (int t = 0; t < series.length(); ++t) {
        out << format_date(series.week_end[t]);
        for (int c = 0; c < kNumComovements; ++c) out << ',' << series.rho(t, c);
        if (full) {
            auto R = full->R(t);
            for (int i = 1; i < full->dim(); ++i)
                for (int j = 0; j < i; ++j) out << ',' << R(i, j);
        }
        out << "\n";
    }
}

ComovementSeries read_comovements_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw SchemaError("cannot open " + file.string());
    std::string header;
    if (!std::getline(in, header)) throw SchemaError(file.string() + ": empty file");
    std::string expected = "week_end";
    for (auto* c : kComovementColumns) expected += std::string(",") + c;
    if (header.rfind(expected, 0) != 0)
        throw SchemaError(file.string() + ": header must start with '" + expected + "'");

    ComovementSeries out;
    std::vector<std::array<double, kNumComovements>> rows;
    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        std::istringstream ss(line);
        std::string field;
        std::getline(ss, field, ',');
        out.week_end.push_back(parse_date(field));
        std::array<double, kNumComovements> row{};
        for (int c = 0; c < kNumComovements; ++c) {
            if (!std::getline(ss, field, ','))
                throw IngestionError("line " + std::to_string(line_no) + ": too few columns");
            double v = 0.0;
            auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            if (ec != std::errc{} || p != field.data() + field.size())
                throw IngestionError("line " + std::to_string(line_no) +
                                     ": non-numeric value '" + field + "'");
            row[c] = v;
        }
        rows.push_back(row);
    }
    out.rho.resize(static_cast<int>(rows.size()), kNumComovements);
    for (std::size_t t = 0; t < rows.size(); ++t)
        for (int c = 0; c < kNumComovements; ++c)
            out.rho(static_cast<int>(t), c) = rows[t][c];
    return out;
}

}  // namespace comove
