#include "bkr/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bkr/error.hpp"

namespace bkr {

Lengthscale::Lengthscale(double v) : value(v) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw config_error("Lengthscale must be strictly positive and finite");
}

GramMatrix::GramMatrix(Eigen::MatrixXd entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols())
        throw data_error("GramMatrix: matrix must be square");
    if (m_.rows() == 0)
        throw data_error("GramMatrix: matrix must be non-empty");
    const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    for (Eigen::Index j = 0; j < m_.cols(); ++j) {
        for (Eigen::Index i = j + 1; i < m_.rows(); ++i) {
            if (std::abs(m_(i, j) - m_(j, i)) > 1e-9 * scale)
                throw data_error("GramMatrix: matrix is not symmetric");
            m_(j, i) = m_(i, j);  // make symmetry exact
        }
    }
    if (!m_.allFinite()) throw data_error("GramMatrix: non-finite entries");
}

GramMatrix GramMatrix::scaled(double c) const {
    if (!(c > 0.0) || !std::isfinite(c))
        throw config_error("GramMatrix::scaled: factor must be positive and finite");
    return GramMatrix(c * m_);
}

namespace detail {

Eigen::MatrixXd squared_distance_matrix(const Eigen::MatrixXd& points) {
    // Direct pairwise differences: slightly slower than the Gram-trick but
    // free of the large-norm cancellation that breaks translation
    // invariance at the 1e-12 level.
    const Eigen::Index n = points.rows();
    Eigen::MatrixXd d2(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        d2(j, j) = 0.0;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const double v = (points.row(i) - points.row(j)).squaredNorm();
            d2(i, j) = v;
            d2(j, i) = v;
        }
    }
    return d2;
}

double median_distance(std::vector<double>&& dists) {
    if (dists.empty())
        throw config_error("median heuristic needs at least two points");
    const std::size_t mid = (dists.size() - 1) / 2;  // lower median
    std::nth_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(mid),
                     dists.end());
    double med = dists[mid];
    if (med > 0.0) return med;
    // Heavily duplicated data: use the smallest strictly positive distance.
    double smallest = std::numeric_limits<double>::infinity();
    for (double d : dists)
        if (d > 0.0) smallest = std::min(smallest, d);
    if (!std::isfinite(smallest))
        throw degenerate_error("median heuristic: all points are identical");
    return smallest;
}

}  // namespace detail

namespace {

void check_points(const Eigen::MatrixXd& points) {
    if (points.rows() < 1) throw data_error("kernel input must have at least one row");
    if (!points.allFinite()) throw data_error("kernel input has non-finite entries");
}

Eigen::MatrixXd stack_rows(const std::vector<Eigen::VectorXd>& points) {
    if (points.empty()) throw data_error("kernel input must have at least one row");
    const Eigen::Index d = points.front().size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(points.size()), d);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != d)
            throw data_error("kernel input has mismatched vector dimensions");
        m.row(static_cast<Eigen::Index>(i)) = points[i].transpose();
    }
    return m;
}

GramMatrix gram_from_squared_distances(Eigen::MatrixXd d2, double ell) {
    const double inv = -1.0 / (2.0 * ell * ell);
    Eigen::MatrixXd k = (d2 * inv).array().exp().matrix();
    k.diagonal().setOnes();
    return GramMatrix(std::move(k));
}

}  // namespace

GramMatrix gram_rbf(const Eigen::MatrixXd& points, Lengthscale ell) {
    check_points(points);
    return gram_from_squared_distances(detail::squared_distance_matrix(points),
                                       ell.value);
}

GramMatrix gram_rbf(const std::vector<Eigen::VectorXd>& points, Lengthscale ell) {
    return gram_rbf(stack_rows(points), ell);
}

Lengthscale median_heuristic(const Eigen::MatrixXd& points) {
    check_points(points);
    const Eigen::Index n = points.rows();
    if (n < 2) throw config_error("median_heuristic: need at least two points");
    std::vector<double> dists;
    dists.reserve(static_cast<std::size_t>(n) * (static_cast<std::size_t>(n) - 1) / 2);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            dists.push_back((points.row(i) - points.row(j)).norm());
    return Lengthscale(detail::median_distance(std::move(dists)));
}

Lengthscale median_heuristic(const std::vector<Eigen::VectorXd>& points) {
    return median_heuristic(stack_rows(points));
}

namespace {

template <typename Label>
GramMatrix gram_indicator_impl(const std::vector<Label>& labels) {
    if (labels.empty()) throw data_error("gram_indicator: empty input");
    const auto n = static_cast<Eigen::Index>(labels.size());
    Eigen::MatrixXd k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v =
                labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)]
                    ? 1.0
                    : 0.0;
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return GramMatrix(std::move(k));
}

}  // namespace

GramMatrix gram_indicator(const std::vector<std::string>& labels) {
    return gram_indicator_impl(labels);
}

GramMatrix gram_indicator(const std::vector<int>& labels) {
    return gram_indicator_impl(labels);
}

int edit_distance(std::string_view a, std::string_view b) {
    if (a.size() < b.size()) std::swap(a, b);
    const std::size_t m = b.size();
    if (m == 0) return static_cast<int>(a.size());
    std::vector<int> row(m + 1);
    for (std::size_t j = 0; j <= m; ++j) row[j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        int diag = row[0];
        row[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= m; ++j) {
            const int subst = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
            diag = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, subst});
        }
    }
    return row[m];
}

namespace {

Eigen::MatrixXd edit_distance_matrix(const std::vector<std::string>& strings) {
    if (strings.empty()) throw data_error("edit-distance kernel: empty input");
    const auto n = static_cast<Eigen::Index>(strings.size());
    Eigen::MatrixXd d(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        d(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = edit_distance(strings[static_cast<std::size_t>(i)],
                                           strings[static_cast<std::size_t>(j)]);
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return d;
}

}  // namespace

GramMatrix gram_edit_rbf(const std::vector<std::string>& strings, Lengthscale ell) {
    Eigen::MatrixXd d = edit_distance_matrix(strings);
    return gram_from_squared_distances(d.cwiseProduct(d), ell.value);
}

Lengthscale median_heuristic_edit(const std::vector<std::string>& strings) {
    if (strings.size() < 2)
        throw config_error("median_heuristic_edit: need at least two strings");
    const Eigen::MatrixXd d = edit_distance_matrix(strings);
    std::vector<double> dists;
    dists.reserve(strings.size() * (strings.size() - 1) / 2);
    for (Eigen::Index i = 0; i < d.rows(); ++i)
        for (Eigen::Index j = i + 1; j < d.cols(); ++j) dists.push_back(d(i, j));
    return Lengthscale(detail::median_distance(std::move(dists)));
}

}  // namespace bkr
