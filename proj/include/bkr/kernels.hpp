#pragma once

#include <Eigen/Core>
#include <string>
#include <string_view>
#include <vector>

namespace bkr {

/// RBF bandwidth in distance units of the underlying space.
/// Strictly positive and finite.
struct Lengthscale {
    double value;

    explicit Lengthscale(double v);
};

/// Symmetric n x n kernel evaluation matrix. Symmetry is exact (constructors
/// mirror the upper triangle); the built-in kernels additionally keep entries
/// in [0, 1] with a unit diagonal, but scaled copies used in tests need not.
class GramMatrix {
public:
    GramMatrix() = default;
    explicit GramMatrix(Eigen::MatrixXd entries);

    Eigen::Index size() const { return m_.rows(); }
    double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
    const Eigen::MatrixXd& mat() const { return m_; }

    GramMatrix scaled(double c) const;

private:
    Eigen::MatrixXd m_;
};

/// Square-exponential kernel exp(-|x - y|^2 / (2 ell^2)) over rows of
/// `points` (one observation per row). The diagonal is exactly 1.
GramMatrix gram_rbf(const Eigen::MatrixXd& points, Lengthscale ell);

/// Convenience overload taking one vector per observation; all vectors must
/// share the same dimension.
GramMatrix gram_rbf(const std::vector<Eigen::VectorXd>& points, Lengthscale ell);

/// Median of the n(n-1)/2 pairwise Euclidean distances (lower median for an
/// even count). Falls back to the smallest strictly positive distance when
/// the median is zero; throws degenerate_error when all points coincide.
Lengthscale median_heuristic(const Eigen::MatrixXd& points);
Lengthscale median_heuristic(const std::vector<Eigen::VectorXd>& points);

/// Indicator kernel: 1 when labels are equal, 0 otherwise.
GramMatrix gram_indicator(const std::vector<std::string>& labels);
GramMatrix gram_indicator(const std::vector<int>& labels);

/// Levenshtein distance with unit insert/delete/substitute costs.
int edit_distance(std::string_view a, std::string_view b);

/// RBF over edit distance: exp(-edit(s, t)^2 / (2 ell^2)).
GramMatrix gram_edit_rbf(const std::vector<std::string>& strings, Lengthscale ell);

/// Median heuristic over pairwise edit distances, same conventions as the
/// Euclidean version.
Lengthscale median_heuristic_edit(const std::vector<std::string>& strings);

namespace detail {

/// Squared Euclidean distance matrix of the rows of `points`, exact zeros on
/// the diagonal, entries clamped at zero.
Eigen::MatrixXd squared_distance_matrix(const Eigen::MatrixXd& points);

/// Lower median of a multiset of distances with the zero fallback shared by
/// the numeric and edit-distance heuristics. `dists` is consumed.
double median_distance(std::vector<double>&& dists);

}  // namespace detail

}  // namespace bkr
