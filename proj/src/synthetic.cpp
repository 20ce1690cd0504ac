#include "bkr/synthetic.hpp"

#include <cmath>

#include "bkr/error.hpp"
#include "bkr/normal.hpp"

namespace bkr {
namespace {

constexpr Eigen::Index kImageDim = 1024;  // 32 x 32 grid flattened

int pair_index(int i, int j) {
    return i * (2 * kSyntheticColumns - i - 1) / 2 + (j - i - 1);
}

bool same_family(int i, int j) {
    // Columns driven by the first latent: X, C_X, D_X, CC_X. The second
    // latent drives Y and D_Y.
    auto x_family = [](int c) { return c == 0 || c == 2 || c == 3 || c == 5; };
    return x_family(i) == x_family(j);
}

Column make_numeric(std::string name, Eigen::VectorXd values) {
    Column col;
    col.name = std::move(name);
    const auto n = values.size();
    Eigen::MatrixXd m(n, 1);
    m.col(0) = values;
    col.payload = std::move(m);
    col.missing.assign(static_cast<std::size_t>(n), 0);
    return col;
}

Column make_binary(std::string name, const std::vector<bool>& bits) {
    Column col;
    col.name = std::move(name);
    CategoricalData data;
    data.labels.reserve(bits.size());
    for (bool b : bits) data.labels.emplace_back(b ? "1" : "0");
    col.payload = std::move(data);
    col.missing.assign(bits.size(), 0);
    return col;
}

Column make_matrix(std::string name, Eigen::MatrixXd values) {
    Column col;
    col.name = std::move(name);
    col.missing.assign(static_cast<std::size_t>(values.rows()), 0);
    col.payload = std::move(values);
    return col;
}

Schema template_schema() {
    Schema schema;
    schema.columns = {
        {"X", ColumnType::Numeric, 1, {}},
        {"Y", ColumnType::Categorical, 1, {}},
        {"C_X", ColumnType::Numeric, 1, {}},
        {"D_X", ColumnType::Categorical, 1, {}},
        {"D_Y", ColumnType::Categorical, 1, {}},
        {"CC_X", ColumnType::NumericVector, kImageDim, {}},
    };
    return schema;
}

}  // namespace

CopulaParam::CopulaParam(double r) : rho(r) {
    if (!(r >= 0.0 && r < 1.0) || !std::isfinite(r))
        throw config_error("CopulaParam: rho must lie in [0, 1)");
}

int SyntheticTruth::n_dependent() const {
    int count = 0;
    for (bool d : dependent) count += d ? 1 : 0;
    return count;
}

bool SyntheticTruth::pair(int i, int j) const {
    if (i > j) std::swap(i, j);
    return dependent[static_cast<std::size_t>(pair_index(i, j))];
}

SyntheticTruth synthetic_truth(double rho) {
    SyntheticTruth truth;
    for (int i = 0; i < kSyntheticColumns; ++i)
        for (int j = i + 1; j < kSyntheticColumns; ++j)
            truth.dependent[static_cast<std::size_t>(pair_index(i, j))] =
                rho > 0.0 && same_family(i, j);
    return truth;
}

SyntheticData generate_d1(Eigen::Index n, CopulaParam rho, RngStream& rng) {
    if (n < 1) throw config_error("generate_d1: n must be at least 1");
    const double r = rho.rho;
    const double noise = std::sqrt(1.0 - r * r);

    Eigen::VectorXd x(n), cx(n);
    std::vector<bool> y(static_cast<std::size_t>(n)), dx(static_cast<std::size_t>(n)),
        dy(static_cast<std::size_t>(n));
    Eigen::MatrixXd image(n, kImageDim);

    for (Eigen::Index row = 0; row < n; ++row) {
        const double xv = rng.next_gaussian();
        const double tv = rng.next_gaussian();
        const double w1 = rng.next_gaussian();
        const double w2 = rng.next_gaussian();
        const double w3 = rng.next_gaussian();
        x[row] = xv;
        // Bernoulli inverse CDF: 1 iff Phi(z) >= 0.5, i.e. z >= 0.
        y[static_cast<std::size_t>(row)] = tv >= 0.0;
        cx[row] = r * xv + noise * w1;
        dx[static_cast<std::size_t>(row)] = r * xv + noise * w2 >= 0.0;
        dy[static_cast<std::size_t>(row)] = r * tv + noise * w3 >= 0.0;
        for (Eigen::Index d = 0; d < kImageDim; ++d)
            image(row, d) = norm_cdf(r * xv + noise * rng.next_gaussian());
    }

    SyntheticData out;
    out.dataset.columns.push_back(make_numeric("X", std::move(x)));
    out.dataset.columns.push_back(make_binary("Y", y));
    out.dataset.columns.push_back(make_numeric("C_X", std::move(cx)));
    out.dataset.columns.push_back(make_binary("D_X", dx));
    out.dataset.columns.push_back(make_binary("D_Y", dy));
    out.dataset.columns.push_back(make_matrix("CC_X", std::move(image)));
    out.schema = template_schema();
    out.truth = synthetic_truth(r);
    return out;
}

double clayton_conditional(double u, double w, double theta) {
    if (!(theta > 0.0)) throw config_error("clayton_conditional: theta must be positive");
    if (!(u > 0.0 && u < 1.0 && w > 0.0 && w < 1.0))
        throw config_error("clayton_conditional: u and w must lie in (0, 1)");
    // v = ((w^{-theta/(1+theta)} - 1) u^{-theta} + 1)^{-1/theta}, evaluated in
    // log space so large theta cannot overflow.
    const double a = -theta / (1.0 + theta) * std::log(w);  // >= 0
    const double log_em1 =
        a < 50.0 ? std::log(std::expm1(a)) : a + std::log1p(-std::exp(-a));
    const double log_inner = log_em1 - theta * std::log(u);
    const double log_sum =
        log_inner < 50.0 ? std::log1p(std::exp(log_inner)) : log_inner;
    return std::exp(-log_sum / theta);
}

SyntheticData generate_d2(Eigen::Index n, CopulaParam rho, RngStream& rng) {
    if (n < 1) throw config_error("generate_d2: n must be at least 1");
    const double r = rho.rho;
    if (!(r > 0.0 && r < 1.0))
        throw config_error("generate_d2: rho must lie strictly inside (0, 1)");
    const double theta = 2.0 * r / (1.0 - r);  // Kendall's tau equals rho

    Eigen::VectorXd x(n), cx(n);
    std::vector<bool> y(static_cast<std::size_t>(n)), dx(static_cast<std::size_t>(n)),
        dy(static_cast<std::size_t>(n));
    Eigen::MatrixXd image(n, kImageDim);

    auto clamp_unit = [](double u) {
        return std::min(std::max(u, 1e-300), 1.0 - 1e-16);
    };

    for (Eigen::Index row = 0; row < n; ++row) {
        const double xv = rng.next_gaussian();
        const double tv = rng.next_gaussian();
        const double u = clamp_unit(norm_cdf(xv));
        const double ut = clamp_unit(norm_cdf(tv));
        const double w1 = rng.next_open_double();
        const double w2 = rng.next_open_double();
        const double w3 = rng.next_open_double();
        x[row] = xv;
        y[static_cast<std::size_t>(row)] = ut >= 0.5;
        cx[row] = norm_ppf(clamp_unit(clayton_conditional(u, w1, theta)));
        dx[static_cast<std::size_t>(row)] = clayton_conditional(u, w2, theta) >= 0.5;
        dy[static_cast<std::size_t>(row)] = clayton_conditional(ut, w3, theta) >= 0.5;
        for (Eigen::Index d = 0; d < kImageDim; ++d)
            image(row, d) = clayton_conditional(u, rng.next_open_double(), theta);
    }

    SyntheticData out;
    out.dataset.columns.push_back(make_numeric("X", std::move(x)));
    out.dataset.columns.push_back(make_binary("Y", y));
    out.dataset.columns.push_back(make_numeric("C_X", std::move(cx)));
    out.dataset.columns.push_back(make_binary("D_X", dx));
    out.dataset.columns.push_back(make_binary("D_Y", dy));
    out.dataset.columns.push_back(make_matrix("CC_X", std::move(image)));
    out.schema = template_schema();
    out.truth = synthetic_truth(r);
    return out;
}

}  // namespace bkr
