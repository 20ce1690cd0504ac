#include <doctest.h>

#include <cmath>

#include "bkr/error.hpp"
#include "bkr/multiple_comparisons.hpp"
#include "helpers.hpp"

using namespace bkr;
namespace th = test_helpers;

namespace {

/// Hand-built pairwise result from per-iteration indicator rows.
PairwiseResult indicator_table(const std::vector<std::vector<std::uint8_t>>& indicators,
                               int k) {
    PairwiseResult result;
    result.n_mc = static_cast<int>(indicators.front().size());
    result.ropi = 0.025;
    result.shared_streams = true;
    for (int c = 0; c < k; ++c) result.column_names.push_back("v" + std::to_string(c));
    std::size_t idx = 0;
    for (int i = 0; i < k && idx < indicators.size(); ++i) {
        for (int j = i + 1; j < k && idx < indicators.size(); ++j, ++idx) {
            PairCell cell;
            cell.i = i;
            cell.j = j;
            cell.exceeds_ropi = indicators[idx];
            std::size_t above = 0;
            for (auto v : cell.exceeds_ropi) above += v;
            cell.p_dependent =
                static_cast<double>(above) / static_cast<double>(result.n_mc);
            cell.posterior_mean = cell.p_dependent;
            result.pairs.push_back(std::move(cell));
        }
    }
    return result;
}

Dataset two_column_dataset(Eigen::Index n, double rho, RngStream& rng) {
    const auto [x, y] = th::gaussian_copula_pair(n, rho, rng);
    Dataset d;
    d.columns.push_back(th::numeric_column("x", x.col(0)));
    d.columns.push_back(th::numeric_column("y", y.col(0)));
    return d;
}

Schema two_column_schema() {
    Schema s;
    s.columns = {{"x", ColumnType::Numeric, 1, {}}, {"y", ColumnType::Numeric, 1, {}}};
    return s;
}

}  // namespace

TEST_SUITE("multiple_comparisons") {

TEST_CASE("a two-column matrix reproduces the standalone test bitwise") {
    RngStream data_rng(110);
    const Dataset d = two_column_dataset(60, 0.5, data_rng);
    const Schema s = two_column_schema();

    PairwiseOptions opts;
    opts.n_mc = 300;
    const RngStream rng(111);
    const PairwiseResult matrix = pairwise_matrix(d, s, opts, rng);
    REQUIRE(matrix.pairs.size() == 1);

    const GramMatrix kx = build_gram(d.columns[0], {});
    const GramMatrix ky = build_gram(d.columns[1], {});
    const PosteriorSamples standalone = bdcor_posterior(kx, ky, 300, rng);

    CHECK(matrix.pairs[0].samples == standalone.samples);
    CHECK(matrix.pairs[0].tau_mean == standalone.tau_mean);
}

TEST_CASE("duplicated columns give posterior mean one") {
    RngStream data_rng(112);
    Dataset d = two_column_dataset(50, 0.3, data_rng);
    d.columns[1] = d.columns[0];
    d.columns[1].name = "y";

    PairwiseOptions opts;
    opts.n_mc = 200;
    const PairwiseResult matrix = pairwise_matrix(d, two_column_schema(), opts,
                                                  RngStream(113));
    CHECK(matrix.pairs[0].posterior_mean == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(matrix.pairs[0].p_dependent == 1.0);
}

TEST_CASE("constructed three-statement table accepts exactly two") {
    // Marginals 0.9 each; S1 and S2 hold jointly in 0.86 of iterations,
    // all three in 0.84. With gamma = 0.85 the prefix of length 2 passes
    // and length 3 does not.
    const int n_mc = 100;
    std::vector<std::uint8_t> a(n_mc, 0), b(n_mc, 0), c(n_mc, 0);
    for (int t = 0; t < 90; ++t) a[static_cast<std::size_t>(t)] = 1;
    for (int t = 0; t < 86; ++t) b[static_cast<std::size_t>(t)] = 1;
    for (int t = 90; t < 94; ++t) b[static_cast<std::size_t>(t)] = 1;
    for (int t = 0; t < 84; ++t) c[static_cast<std::size_t>(t)] = 1;
    for (int t = 86; t < 92; ++t) c[static_cast<std::size_t>(t)] = 1;

    const PairwiseResult table = indicator_table({a, b, c}, 3);
    CHECK(table.pairs[0].p_dependent == doctest::Approx(0.9));
    CHECK(table.pairs[1].p_dependent == doctest::Approx(0.9));
    CHECK(table.pairs[2].p_dependent == doctest::Approx(0.9));

    const JointReport report = joint_accept(table, 0.85);
    REQUIRE(report.accepted.size() == 2);
    CHECK(report.joint_probability == doctest::Approx(0.86));
    REQUIRE(report.next_joint_probability.has_value());
    CHECK(*report.next_joint_probability == doctest::Approx(0.84));
}

TEST_CASE("single confident statement is accepted") {
    const int n_mc = 100;
    std::vector<std::uint8_t> a(n_mc, 0);
    for (int t = 0; t < 95; ++t) a[static_cast<std::size_t>(t)] = 1;
    const PairwiseResult table = indicator_table({a}, 2);
    const JointReport report = joint_accept(table, 0.85);
    REQUIRE(report.accepted.size() == 1);
    CHECK(report.accepted[0].dependent);
    CHECK(report.joint_probability == doctest::Approx(0.95));
}

TEST_CASE("no statement reaches a strict gamma") {
    const int n_mc = 100;
    std::vector<std::uint8_t> a(n_mc, 0);
    for (int t = 0; t < 60; ++t) a[static_cast<std::size_t>(t)] = 1;  // marginal 0.6
    const PairwiseResult table = indicator_table({a}, 2);
    const JointReport report = joint_accept(table, 0.85);
    CHECK(report.accepted.empty());
    CHECK(report.joint_probability == 1.0);
    REQUIRE(report.next_joint_probability.has_value());
    CHECK(*report.next_joint_probability <= 0.85);
}

TEST_CASE("joint probability is monotone and bounded by the smallest marginal") {
    RngStream rng(114);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<std::vector<std::uint8_t>> indicators;
        const int n_mc = 200;
        for (int p = 0; p < 6; ++p) {
            std::vector<std::uint8_t> ind(n_mc);
            const double bias = 0.5 + 0.5 * rng.next_double();
            for (int t = 0; t < n_mc; ++t)
                ind[static_cast<std::size_t>(t)] = rng.next_double() < bias ? 1 : 0;
            indicators.push_back(std::move(ind));
        }
        const PairwiseResult table = indicator_table(indicators, 4);
        const double gamma = 0.55 + 0.3 * rng.next_double();
        const JointReport report = joint_accept(table, gamma);

        if (!report.accepted.empty()) {
            CHECK(report.joint_probability > gamma);
            double min_marginal = 1.0;
            for (const auto& stmt : report.accepted)
                min_marginal = std::min(min_marginal, stmt.marginal);
            CHECK(report.joint_probability <= min_marginal + 1e-12);
        }
        if (report.next_joint_probability)
            CHECK(*report.next_joint_probability <= gamma);
        // FWER restated: error probability of the accepted list stays below
        // 1 - gamma by the stopping rule.
        CHECK(1.0 - report.joint_probability < 1.0 - gamma + 1e-12);
    }
}

TEST_CASE("missing cells are rejected in joint mode") {
    RngStream data_rng(115);
    Dataset d = two_column_dataset(30, 0.2, data_rng);
    d.columns[1].missing[4] = 1;
    PairwiseOptions opts;
    opts.n_mc = 50;
    CHECK_THROWS_AS(pairwise_matrix(d, two_column_schema(), opts, RngStream(116)),
                    data_error);
}

TEST_CASE("marginal mode drops rows per pair and refuses joint acceptance") {
    RngStream data_rng(117);
    Dataset d = two_column_dataset(40, 0.9, data_rng);
    d.columns[0].missing[0] = 1;
    d.columns[1].missing[1] = 1;

    PairwiseOptions opts;
    opts.n_mc = 200;
    const PairwiseResult result =
        pairwise_matrix_marginal(d, two_column_schema(), opts, RngStream(118));
    REQUIRE(result.pairs.size() == 1);
    CHECK(result.pairs[0].n_used == 38);
    CHECK_FALSE(result.shared_streams);
    CHECK_THROWS_AS(joint_accept(result, 0.85), config_error);
}

TEST_CASE("marginal mode reports undecided cells when overlap is too small") {
    RngStream data_rng(119);
    Dataset d = two_column_dataset(5, 0.5, data_rng);
    for (int r = 0; r < 3; ++r) d.columns[0].missing[static_cast<std::size_t>(r)] = 1;
    PairwiseOptions opts;
    opts.n_mc = 50;
    const PairwiseResult result =
        pairwise_matrix_marginal(d, two_column_schema(), opts, RngStream(120));
    CHECK(result.pairs[0].p_dependent == 0.5);
    CHECK(std::isnan(result.pairs[0].posterior_mean));
}

TEST_CASE("house-shaped mixed schema runs end to end") {
    const Eigen::Index n = 40;
    RngStream rng(121);

    Dataset d;
    Schema s;
    const char* numeric_names[] = {"price", "bedrooms", "bathrooms", "area"};
    for (const char* name : numeric_names) {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.next_gaussian();
        d.columns.push_back(th::numeric_column(name, v));
        s.columns.push_back({name, ColumnType::Numeric, 1, {}});
    }
    std::vector<std::string> locations;
    for (Eigen::Index i = 0; i < n; ++i)
        locations.push_back("zone" + std::to_string(rng.next_below(4)));
    d.columns.push_back(th::categorical_column("location", locations));
    s.columns.push_back({"location", ColumnType::Categorical, 1, {}});

    Eigen::MatrixXd image(n, 4096);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < 4096; ++j) image(i, j) = rng.next_gaussian();
    Column img;
    img.name = "image";
    img.payload = std::move(image);
    img.missing.assign(static_cast<std::size_t>(n), 0);
    d.columns.push_back(std::move(img));
    s.columns.push_back({"image", ColumnType::NumericVector, 4096, {}});

    Eigen::VectorXd sizes(n);
    for (Eigen::Index i = 0; i < n; ++i) sizes[i] = rng.next_gaussian();
    d.columns.push_back(th::numeric_column("imagesize", sizes));
    s.columns.push_back({"imagesize", ColumnType::Numeric, 1, {}});

    PairwiseOptions opts;
    opts.n_mc = 60;
    const PairwiseResult result = pairwise_matrix(d, s, opts, RngStream(122));
    CHECK(result.column_names.size() == 7);
    CHECK(result.pairs.size() == 21);
    for (const auto& cell : result.pairs) {
        CHECK(std::isfinite(cell.posterior_mean));
        CHECK(cell.p_dependent >= 0.0);
        CHECK(cell.p_dependent <= 1.0);
    }
    CHECK_NOTHROW(joint_accept(result, 0.9));
}

TEST_CASE("low-rank matrix mode approximates the exact decisions") {
    RngStream data_rng(124);
    const Dataset d = two_column_dataset(300, 0.7, data_rng);
    const Schema s = two_column_schema();

    PairwiseOptions exact_opts;
    exact_opts.n_mc = 400;
    PairwiseOptions low_opts = exact_opts;
    low_opts.nystrom_m = 32;

    const PairwiseResult exact = pairwise_matrix(d, s, exact_opts, RngStream(125));
    const PairwiseResult low = pairwise_matrix(d, s, low_opts, RngStream(125));
    CHECK(low.pairs[0].posterior_mean ==
          doctest::Approx(exact.pairs[0].posterior_mean).epsilon(0.10));
    CHECK(std::abs(low.pairs[0].p_dependent - exact.pairs[0].p_dependent) <= 0.1);
}

TEST_CASE("matrix runs are deterministic under a fixed seed") {
    RngStream data_rng(123);
    const Dataset d = two_column_dataset(30, 0.5, data_rng);
    PairwiseOptions opts;
    opts.n_mc = 100;
    const PairwiseResult a = pairwise_matrix(d, two_column_schema(), opts, RngStream(9));
    const PairwiseResult b = pairwise_matrix(d, two_column_schema(), opts, RngStream(9));
    CHECK(a.pairs[0].samples == b.pairs[0].samples);
    const JointReport ja = joint_accept(a, 0.85);
    const JointReport jb = joint_accept(b, 0.85);
    CHECK(ja.accepted.size() == jb.accepted.size());
    CHECK(ja.joint_probability == jb.joint_probability);
}

}  // TEST_SUITE
