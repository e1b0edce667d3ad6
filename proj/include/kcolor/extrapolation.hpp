#pragma once

// Least-squares fit of a finite-size sequence to a polynomial in 1/p:
//   value(p) ~ a_0 + a_1 / p + ... + a_d / p^d
// a_0 is the extrapolated p -> infinity limit.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kcolor {

struct DataPoint {
    double p = 0.0;
    double value = 0.0;
};

struct FitResult {
    std::vector<double> coefficients;
    int degree = 0;
    double residual_rms = 0.0;
    /// 2-norm condition number of the column-scaled design matrix.
    double condition = 0.0;
    std::vector<DataPoint> data;

    double evaluate(double p) const {
        double acc = 0.0;
        for (int i = degree; i >= 0; --i) acc = acc / p + coefficients[static_cast<std::size_t>(i)];
        return acc;
    }
};

inline FitResult fit_inverse_poly(const std::vector<DataPoint>& data, int degree) {
    if (degree < 0 || degree > 8) throw std::invalid_argument("degree must be in 0..8");
    if (data.size() < static_cast<std::size_t>(degree) + 1)
        throw std::invalid_argument("need at least degree+1 = " + std::to_string(degree + 1) + " points, got " +
                                    std::to_string(data.size()));
    std::set<double> seen;
    for (const auto& d : data) {
        if (!(d.p >= 1.0)) throw std::invalid_argument("p values must be >= 1");
        if (!seen.insert(d.p).second)
            throw std::invalid_argument("duplicate p value " + std::to_string(d.p) + " makes the fit rank-deficient");
    }

    const auto rows = static_cast<Eigen::Index>(data.size());
    const auto cols = static_cast<Eigen::Index>(degree + 1);
    Eigen::MatrixXd x(rows, cols);
    Eigen::VectorXd y(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double inv = 1.0 / data[static_cast<std::size_t>(i)].p;
        double term = 1.0;
        for (Eigen::Index j = 0; j < cols; ++j, term *= inv) x(i, j) = term;
        y(i) = data[static_cast<std::size_t>(i)].value;
    }
    // Unit-norm columns before the orthogonal solve.
    Eigen::VectorXd scale = x.colwise().norm().transpose();
    for (Eigen::Index j = 0; j < cols; ++j) x.col(j) /= scale(j);

    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    if (qr.rank() < cols) throw std::invalid_argument("design matrix is rank-deficient");
    const Eigen::VectorXd z = qr.solve(y);

    FitResult out;
    out.degree = degree;
    out.data = data;
    out.coefficients.resize(static_cast<std::size_t>(cols));
    for (Eigen::Index j = 0; j < cols; ++j) out.coefficients[static_cast<std::size_t>(j)] = z(j) / scale(j);

    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(x);
    const auto& sv = svd.singularValues();
    out.condition = sv(0) / sv(sv.size() - 1);

    double ss = 0.0;
    for (const auto& d : data) {
        const double r = out.evaluate(d.p) - d.value;
        ss += r * r;
    }
    out.residual_rms = std::sqrt(ss / static_cast<double>(data.size()));
    return out;
}

/// Reads "p,value" rows after a header line of exactly "p,value".
inline std::vector<DataPoint> read_fit_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty CSV input");
    auto trim = [](std::string s) {
        while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
        while (!s.empty() && s.front() == ' ') s.erase(s.begin());
        return s;
    };
    if (trim(line) != "p,value") throw std::invalid_argument("CSV header must be 'p,value', got '" + line + "'");
    std::vector<DataPoint> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'p,value'");
        try {
            std::size_t used = 0;
            const std::string ps = trim(line.substr(0, comma)), vs = trim(line.substr(comma + 1));
            const double p = std::stod(ps, &used);
            if (used != ps.size()) throw std::invalid_argument("trailing characters");
            const double v = std::stod(vs, &used);
            if (used != vs.size()) throw std::invalid_argument("trailing characters");
            out.push_back({p, v});
        } catch (const std::exception&) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": cannot parse '" + line + "'");
        }
    }
    return out;
}

/// Two gnuplot data blocks (index 0: data, index 1: fitted curve), '#' comments.
inline void write_gnuplot(std::ostream& os, const FitResult& fit, int samples = 200) {
    os << "# p value\n";
    for (const auto& d : fit.data) os << d.p << ' ' << d.value << '\n';
    double lo = fit.data.front().p, hi = fit.data.front().p;
    for (const auto& d : fit.data) {
        lo = std::min(lo, d.p);
        hi = std::max(hi, d.p);
    }
    os << "\n\n# p fitted (degree " << fit.degree << ", a0 = " << fit.coefficients[0] << ")\n";
    for (int i = 0; i < samples; ++i) {
        const double p = lo + (hi - lo) * i / (samples - 1);
        os << p << ' ' << fit.evaluate(p) << '\n';
    }
}

}  // namespace kcolor
