#include <doctest.h>

#include <array>
#include <map>

#include "bkr/dp_posterior.hpp"
#include "bkr/error.hpp"
#include "helpers.hpp"

using namespace bkr;
namespace th = test_helpers;

TEST_SUITE("dp_posterior") {

TEST_CASE("weights on one atom are the point mass") {
    RngStream rng(1);
    const WeightVector w = sample_weights(1, rng);
    CHECK(w.w[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("weights are a simplex point") {
    RngStream rng(2);
    for (int rep = 0; rep < 200; ++rep) {
        const WeightVector w = sample_weights(17, rng);
        CHECK(w.w.minCoeff() >= 0.0);
        CHECK(w.w.sum() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(sample_weights(0, rng), config_error);
}

TEST_CASE("pair moments match the flat-Dirichlet second moments") {
    // E(w_i w_j) = (1 + [i==j]) / (n (n+1)); smaller replicate of the
    // acceptance run so the unit suite stays fast.
    const Eigen::Index n = 10;
    const int draws = 20000;
    RngStream rng(3);
    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd mean_sq = Eigen::MatrixXd::Zero(n, n);
    for (int t = 0; t < draws; ++t) {
        const WeightVector w = sample_weights(n, rng);
        const Eigen::MatrixXd outer = w.w * w.w.transpose();
        mean += outer;
        mean_sq += outer.cwiseProduct(outer);
    }
    mean /= draws;
    mean_sq /= draws;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double expected = (i == j ? 2.0 : 1.0) / (10.0 * 11.0);
            const double var = mean_sq(i, j) - mean(i, j) * mean(i, j);
            const double se = std::sqrt(var / draws);
            CHECK(std::abs(mean(i, j) - expected) <= 3.0 * se);
        }
    }
}

TEST_CASE("permutation of one element is the identity") {
    RngStream rng(4);
    const Permutation pi = sample_permutation(1, rng);
    REQUIRE(pi.size() == 1);
    CHECK(pi[0] == 0);
}

TEST_CASE("permutations are bijections") {
    RngStream rng(5);
    for (int rep = 0; rep < 100; ++rep) {
        const auto n = 1 + static_cast<Eigen::Index>(rng.next_below(30));
        Permutation pi = sample_permutation(n, rng);
        std::sort(pi.begin(), pi.end());
        for (Eigen::Index i = 0; i < n; ++i) CHECK(pi[static_cast<std::size_t>(i)] == i);
    }
    CHECK_THROWS_AS(sample_permutation(0, rng), config_error);
}

TEST_CASE("permutations of three elements are uniform over S3") {
    // Exhaustive enumeration of S3: each of the 6 permutations should appear
    // with frequency 1/6 within 3 binomial standard errors.
    const int draws = 60000;
    RngStream rng(6);
    std::map<std::array<Eigen::Index, 3>, int> counts;
    for (int t = 0; t < draws; ++t) {
        const Permutation pi = sample_permutation(3, rng);
        counts[{pi[0], pi[1], pi[2]}]++;
    }
    CHECK(counts.size() == 6);
    const double p = 1.0 / 6.0;
    const double se = std::sqrt(p * (1.0 - p) / draws);
    for (const auto& [perm, count] : counts) {
        const double freq = static_cast<double>(count) / draws;
        CHECK(std::abs(freq - p) <= 3.0 * se);
    }
}

TEST_CASE("identical seed and stream reproduce draws bitwise") {
    RngStream a(123456789, 42);
    RngStream b(123456789, 42);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

    RngStream wa(99, 7), wb(99, 7);
    const WeightVector w1 = sample_weights(50, wa);
    const WeightVector w2 = sample_weights(50, wb);
    CHECK(w1.w == w2.w);

    RngStream pa(99, 8), pb(99, 8);
    CHECK(sample_permutation(64, pa) == sample_permutation(64, pb));
}

TEST_CASE("child streams are disjoint and reproducible") {
    const RngStream root(2024, 0);
    auto c1 = root.child(stream_tag::weights, 5);
    auto c2 = root.child(stream_tag::weights, 5);
    CHECK(c1.next_u64() == c2.next_u64());
    auto d1 = root.child(stream_tag::weights, 6);
    CHECK(c1.next_u64() != d1.next_u64());
    auto e1 = root.child(stream_tag::permutation, 5);
    CHECK(e1.next_u64() != c2.next_u64());
}

TEST_CASE("first and last weights are exchangeable") {
    const int draws = 10000;
    const Eigen::Index n = 12;
    RngStream rng(8);
    std::vector<double> first, last;
    first.reserve(draws);
    last.reserve(draws);
    for (int t = 0; t < draws; ++t) {
        const WeightVector w = sample_weights(n, rng);
        first.push_back(w.w[0]);
        last.push_back(w.w[n - 1]);
    }
    const double d = th::ks_two_sample(first, last);
    CHECK(d < th::ks_two_sample_critical(0.01, draws, draws));
}

}  // TEST_SUITE
