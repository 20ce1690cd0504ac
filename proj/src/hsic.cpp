#include "bkr/hsic.hpp"

#include "bkr/error.hpp"

namespace bkr {
namespace {

void check_sizes(Eigen::Index nx, Eigen::Index ny, Eigen::Index nw) {
    if (nx != ny) throw data_error("hsic: Gram matrices have mismatched sizes");
    if (nw >= 0 && nx != nw)
        throw data_error("hsic: weight vector size does not match Gram matrices");
}

// w' (Kx o Ky) w without materialising the Schur product. Column-major
// traversal; both matrices are symmetric so rows and columns coincide.
double weighted_schur_quadratic(const Eigen::MatrixXd& kx, const Eigen::MatrixXd& ky,
                                const Eigen::VectorXd& w) {
    const Eigen::Index n = kx.rows();
    double total = 0.0;
    for (Eigen::Index c = 0; c < n; ++c) {
        const double s = kx.col(c).cwiseProduct(ky.col(c)).dot(w);
        total += w[c] * s;
    }
    return total;
}

}  // namespace

double hsic_sample(const GramMatrix& kx, const GramMatrix& ky, const WeightVector& w) {
    check_sizes(kx.size(), ky.size(), w.size());
    const Eigen::MatrixXd& x = kx.mat();
    const Eigen::MatrixXd& y = ky.mat();

    const double t1 = weighted_schur_quadratic(x, y, w.w);
    const Eigen::VectorXd ax = x * w.w;
    const Eigen::VectorXd ay = y * w.w;
    const double t2 = w.w.dot(ax.cwiseProduct(ay));
    const double t3 = w.w.dot(ax) * w.w.dot(ay);
    return detail::clamp_roundoff(t1 - 2.0 * t2 + t3);
}

double hsic_empirical(const GramMatrix& kx, const GramMatrix& ky) {
    check_sizes(kx.size(), ky.size(), -1);
    if (kx.size() < 2) throw data_error("hsic_empirical: need at least two rows");
    return detail::hsic_empirical_core(kx.mat(), ky.mat(), nullptr);
}

double hsic_sample_lowrank(const Eigen::MatrixXd& phi_x, const Eigen::MatrixXd& phi_y,
                           const WeightVector& w) {
    if (phi_x.rows() != phi_y.rows())
        throw data_error("hsic_sample_lowrank: feature matrices have mismatched row counts");
    if (phi_x.rows() != w.size())
        throw data_error("hsic_sample_lowrank: weight vector size does not match features");

    const Eigen::VectorXd xbar = phi_x.transpose() * w.w;
    const Eigen::VectorXd ybar = phi_y.transpose() * w.w;
    Eigen::MatrixXd m = phi_x.transpose() * (w.w.asDiagonal() * phi_y);
    m.noalias() -= xbar * ybar.transpose();
    return m.squaredNorm();
}

namespace detail {

double hsic_empirical_core(const Eigen::MatrixXd& kx, const Eigen::MatrixXd& ky,
                           const Eigen::Index* pi) {
    const Eigen::Index n = kx.rows();
    const double dn = static_cast<double>(n);

    double cross = 0.0;      // sum_ij Kx_ij Ky'_ij
    Eigen::VectorXd rx(n), ry(n);
    for (Eigen::Index c = 0; c < n; ++c) {
        double s = 0.0;
        if (pi) {
            const double* kyc = ky.col(pi[c]).data();
            for (Eigen::Index r = 0; r < n; ++r) s += kx(r, c) * kyc[pi[r]];
        } else {
            const double* kyc = ky.col(c).data();
            for (Eigen::Index r = 0; r < n; ++r) s += kx(r, c) * kyc[r];
        }
        cross += s;
        rx[c] = kx.col(c).sum();
    }
    for (Eigen::Index c = 0; c < n; ++c) ry[c] = ky.col(c).sum();

    double row_dot = 0.0;    // sum_i (row_i Kx)(row_i Ky')
    if (pi) {
        for (Eigen::Index i = 0; i < n; ++i) row_dot += rx[i] * ry[pi[i]];
    } else {
        row_dot = rx.dot(ry);
    }

    const double sum_x = rx.sum();
    const double sum_y = ry.sum();
    return cross / (dn * dn) + (sum_x * sum_y) / (dn * dn * dn * dn) -
           2.0 * row_dot / (dn * dn * dn);
}

}  // namespace detail

}  // namespace bkr
