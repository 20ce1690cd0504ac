#include "bkr/oracles.hpp"

#include "bkr/error.hpp"

namespace bkr::oracles {
namespace {

void check_oracle_inputs(const GramMatrix& kx, const GramMatrix& ky, Eigen::Index nw,
                         Eigen::Index max_n, const char* name) {
    if (kx.size() != ky.size())
        throw data_error(std::string(name) + ": Gram size mismatch");
    if (nw >= 0 && nw != kx.size())
        throw data_error(std::string(name) + ": weight size mismatch");
    if (kx.size() > max_n)
        throw config_error(std::string(name) + ": size guard exceeded (test-scale oracle)");
}

}  // namespace

double hsic_trace_naive(const GramMatrix& kx, const GramMatrix& ky,
                        const WeightVector& w) {
    check_oracle_inputs(kx, ky, w.size(), 64, "hsic_trace_naive");
    const Eigen::MatrixXd r =
        Eigen::MatrixXd(w.w.asDiagonal()) - w.w * w.w.transpose();
    return (kx.mat() * r * ky.mat() * r).trace();
}

double hsic_empirical_naive(const GramMatrix& kx, const GramMatrix& ky) {
    check_oracle_inputs(kx, ky, -1, 20, "hsic_empirical_naive");
    const Eigen::Index n = kx.size();
    const double dn = static_cast<double>(n);

    double t1 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) t1 += kx(i, j) * ky(i, j);

    double t2 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index q = 0; q < n; ++q)
                for (Eigen::Index r = 0; r < n; ++r) t2 += kx(i, j) * ky(q, r);

    double t3 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index q = 0; q < n; ++q) t3 += kx(i, j) * ky(i, q);

    return t1 / (dn * dn) + t2 / (dn * dn * dn * dn) - 2.0 * t3 / (dn * dn * dn);
}

double hsic_expanded_naive(const GramMatrix& kx, const GramMatrix& ky,
                         const WeightVector& w) {
    check_oracle_inputs(kx, ky, w.size(), 20, "hsic_expanded_naive");
    const Eigen::Index n = kx.size();

    double t1 = 0.0;  // W (Kx o Ky) W^T
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            t1 += w.w[i] * w.w[j] * kx(i, j) * ky(i, j);

    std::vector<double> u(static_cast<std::size_t>(n), 0.0);
    std::vector<double> v(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            u[static_cast<std::size_t>(i)] += kx(i, j) * w.w[j];
            v[static_cast<std::size_t>(i)] += ky(i, j) * w.w[j];
        }
    }

    double qx = 0.0, qy = 0.0, t3 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        qx += w.w[i] * u[static_cast<std::size_t>(i)];
        qy += w.w[i] * v[static_cast<std::size_t>(i)];
        t3 += w.w[i] * u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
    }

    return t1 + qx * qy - 2.0 * t3;
}

}  // namespace bkr::oracles
