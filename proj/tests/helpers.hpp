#pragma once

// Shared fixtures and independent reference implementations for the test
// suite. Reference code here is deliberately written from the definitions
// (recursive edit distance, explicit CDF comparisons, O(n^2) rank counts)
// rather than reusing library internals.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "bkr/column.hpp"
#include "bkr/dp_posterior.hpp"
#include "bkr/kernels.hpp"
#include "bkr/rng.hpp"

namespace test_helpers {

/// Random kernel-like PSD matrix: A A^T rescaled to a unit diagonal.
inline bkr::GramMatrix random_psd_gram(Eigen::Index n, bkr::RngStream& rng) {
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = rng.next_gaussian();
    Eigen::MatrixXd k = a * a.transpose();
    Eigen::VectorXd d = k.diagonal().cwiseMax(1e-12).cwiseSqrt().cwiseInverse();
    k = d.asDiagonal() * k * d.asDiagonal();
    k = 0.5 * (k + k.transpose()).eval();
    return bkr::GramMatrix(std::move(k));
}

inline bkr::WeightVector random_weights(Eigen::Index n, bkr::RngStream& rng) {
    return bkr::sample_weights(n, rng);
}

/// Latent Gaussian pair (X, rho X + sqrt(1-rho^2) W) as n x 1 point sets.
inline std::pair<Eigen::MatrixXd, Eigen::MatrixXd> gaussian_copula_pair(
    Eigen::Index n, double rho, bkr::RngStream& rng) {
    Eigen::MatrixXd x(n, 1), y(n, 1);
    const double noise = std::sqrt(1.0 - rho * rho);
    for (Eigen::Index i = 0; i < n; ++i) {
        x(i, 0) = rng.next_gaussian();
        y(i, 0) = rho * x(i, 0) + noise * rng.next_gaussian();
    }
    return {x, y};
}

/// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na -
                                 static_cast<double>(j) / nb));
    }
    return d;
}

/// Asymptotic two-sided KS critical value c(alpha) * sqrt((n+m)/(nm)).
inline double ks_two_sample_critical(double alpha, std::size_t n, std::size_t m) {
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    return c * std::sqrt(static_cast<double>(n + m) /
                         (static_cast<double>(n) * static_cast<double>(m)));
}

/// One-sample KS statistic against a supplied CDF.
template <typename Cdf>
double ks_one_sample(std::vector<double> xs, Cdf cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max(d, std::max((static_cast<double>(i) + 1.0) / n - f,
                                 f - static_cast<double>(i) / n));
    }
    return d;
}

inline double ks_one_sample_critical(double alpha, std::size_t n) {
    return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

/// Memoised recursive Levenshtein distance, independent of the library's
/// dynamic-programming implementation.
inline int edit_distance_ref(const std::string& a, const std::string& b) {
    std::map<std::pair<std::size_t, std::size_t>, int> memo;
    auto rec = [&](auto&& self, std::size_t i, std::size_t j) -> int {
        if (i == 0) return static_cast<int>(j);
        if (j == 0) return static_cast<int>(i);
        const auto key = std::make_pair(i, j);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        const int subst = self(self, i - 1, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1);
        const int del = self(self, i - 1, j) + 1;
        const int ins = self(self, i, j - 1) + 1;
        const int best = std::min({subst, del, ins});
        memo.emplace(key, best);
        return best;
    };
    return rec(rec, a.size(), b.size());
}

/// O(n^2) Kendall rank correlation (ties counted as zero).
inline double kendall_tau(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const Eigen::Index n = x.size();
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double prod = (x[i] - x[j]) * (y[i] - y[j]);
            if (prod > 0) s += 1.0;
            else if (prod < 0) s -= 1.0;
        }
    }
    return 2.0 * s / (static_cast<double>(n) * (static_cast<double>(n) - 1.0));
}

inline bkr::Column numeric_column(std::string name, Eigen::VectorXd v) {
    bkr::Column col;
    col.name = std::move(name);
    Eigen::MatrixXd m(v.size(), 1);
    m.col(0) = v;
    col.missing.assign(static_cast<std::size_t>(v.size()), 0);
    col.payload = std::move(m);
    return col;
}

inline bkr::Column categorical_column(std::string name, std::vector<std::string> labels) {
    bkr::Column col;
    col.name = std::move(name);
    col.missing.assign(labels.size(), 0);
    col.payload = bkr::CategoricalData{std::move(labels)};
    return col;
}

inline bkr::Column string_column(std::string name, std::vector<std::string> values) {
    bkr::Column col;
    col.name = std::move(name);
    col.missing.assign(values.size(), 0);
    col.payload = bkr::StringData{std::move(values)};
    return col;
}

/// Pearson correlation of two equally sized samples.
inline double pearson(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const double mx = x.mean();
    const double my = y.mean();
    const Eigen::VectorXd dx = x.array() - mx;
    const Eigen::VectorXd dy = y.array() - my;
    return dx.dot(dy) / std::sqrt(dx.squaredNorm() * dy.squaredNorm());
}

}  // namespace test_helpers
