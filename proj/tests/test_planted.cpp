#include "kdc/planted.hpp"

#include "kdc/graph_core.hpp"

#include <doctest.h>

#include <cmath>

using namespace kdc;

TEST_CASE("distribution specs") {
    DistributionSpec b = DistributionSpec::bernoulli(0.3);
    CHECK(b.variance() == doctest::Approx(0.21));
    DistributionSpec u = DistributionSpec::uniform(0.5, 0.2);
    CHECK(u.variance() == doctest::Approx(0.04 / 3.0));
    CHECK_THROWS_AS(DistributionSpec::uniform(0.1, 0.5).validate(),
                    std::invalid_argument);

    CounterRng rng(1);
    for (int i = 0; i < 1000; ++i) {
        const double x = u.sample(rng);
        CHECK(x >= 0.3);
        CHECK(x <= 0.7);
    }
}

TEST_CASE("planted cluster sampling") {
    PlantedCliqueSpec spec{make_clique_plan({3, 2}, 1),
                           DistributionSpec::bernoulli(1.0),
                           DistributionSpec::bernoulli(0.0)};
    SymmetricWeights w = sample_planted_cluster(spec, 7);
    Matrix expected = Matrix::Zero(6, 6);
    expected.topLeftCorner(3, 3).setOnes();
    expected.block(3, 3, 2, 2).setOnes();
    CHECK((w.w() - expected).cwiseAbs().maxCoeff() == 0.0);

    // Determinism: identical matrices for identical seeds.
    PlantedCliqueSpec noisy{make_clique_plan({4, 4}, 2),
                            DistributionSpec::bernoulli(0.8),
                            DistributionSpec::uniform(0.3, 0.2)};
    CHECK(sample_planted_cluster(noisy, 123).w() ==
          sample_planted_cluster(noisy, 123).w());
    CHECK(sample_planted_cluster(noisy, 123).w() !=
          sample_planted_cluster(noisy, 124).w());

    // Entries stay in [0,1].
    SymmetricWeights wn = sample_planted_cluster(noisy, 5);
    CHECK(wn.w().minCoeff() >= 0.0);
    CHECK(wn.w().maxCoeff() <= 1.0);
}

TEST_CASE("planted cluster block-mean concentration") {
    // Mean over the 50*51/2 independent in-block draws stays within
    // 3 sigma / sqrt(draws) of alpha in at least 99 of 100 seeds.
    PlantedCliqueSpec spec{make_clique_plan({50}, 10),
                           DistributionSpec::bernoulli(0.8),
                           DistributionSpec::bernoulli(0.2)};
    const double sigma = std::sqrt(spec.omega_in.variance());
    const double draws = 50.0 * 51.0 / 2.0;
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SymmetricWeights w = sample_planted_cluster(spec, seed);
        double sum = 0.0;
        for (int i = 0; i < 50; ++i)
            for (int j = i; j < 50; ++j) sum += w.w()(i, j);
        if (std::abs(sum / draws - 0.8) <= 3.0 * sigma / std::sqrt(draws)) ++ok;
    }
    CHECK(ok >= 99);
}

TEST_CASE("planted bicluster sampling") {
    PlantedBicliqueSpec spec{make_biclique_plan({2, 2}, {3, 2}, 1, 0),
                             DistributionSpec::bernoulli(1.0),
                             DistributionSpec::bernoulli(0.0)};
    BipartiteWeights w = sample_planted_bicluster(spec, 3);
    Matrix expected = Matrix::Zero(5, 5);
    expected.topLeftCorner(2, 3).setOnes();
    expected.block(2, 3, 2, 2).setOnes();
    CHECK((w.w() - expected).cwiseAbs().maxCoeff() == 0.0);

    PlantedBicliqueSpec noisy{make_biclique_plan({30}, {30}, 0, 0),
                              DistributionSpec::bernoulli(0.8),
                              DistributionSpec::bernoulli(0.2)};
    CHECK(sample_planted_bicluster(noisy, 9).w() ==
          sample_planted_bicluster(noisy, 9).w());

    const double sigma = std::sqrt(noisy.omega_in.variance());
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        BipartiteWeights bw = sample_planted_bicluster(noisy, seed);
        const double mean = bw.w().sum() / 900.0;
        if (std::abs(mean - 0.8) <= 3.0 * sigma / 30.0) ++ok;
    }
    CHECK(ok >= 99);
}

TEST_CASE("gamma formulas") {
    CHECK(gamma_clique(0.8, 0.2, 0) == doctest::Approx(1.2));
    CHECK(gamma_clique(0.8, 0.2, 5) == doctest::Approx(0.4));
    CHECK(gamma_clique(0.4, 0.25, 3) == doctest::Approx(-0.1));

    CHECK(gamma_biclique(0.8, 0.2, 0, 0) == doctest::Approx(1.2));
    CHECK(gamma_biclique(0.8, 0.2, 0, 4) == doctest::Approx(0.4));
    CHECK(gamma_biclique(0.5, 0.3, 2, 2) == doctest::Approx(-0.1));

    // The doubling term is worth exactly alpha, for any alpha, beta.
    CounterRng rng(2);
    for (int t = 0; t < 200; ++t) {
        const double a = rng.next_double(), b = rng.next_double();
        CHECK(gamma_clique(a, b, 0) - gamma_clique(a, b, 1 + t % 5) ==
              doctest::Approx(a).epsilon(1e-12));
    }
}

TEST_CASE("clique guarantee check") {
    GuaranteeParams params; // c1 = c2 = c3 = 1
    PlantedCliqueSpec spec{make_clique_plan({5000, 5000}, 0),
                           DistributionSpec::bernoulli(0.8),
                           DistributionSpec::bernoulli(0.2)};
    auto rep = check_clique_guarantee(spec, params);
    CHECK(rep.gamma == doctest::Approx(1.2));
    CHECK(rep.lhs == doctest::Approx(100.0));
    CHECK(rep.rhs == doctest::Approx(6000.0));
    CHECK(rep.holds);

    PlantedCliqueSpec bad{make_clique_plan({50, 50}, 10),
                          DistributionSpec::bernoulli(0.4),
                          DistributionSpec::bernoulli(0.25)};
    CHECK_FALSE(check_clique_guarantee(bad, params).holds);

    PlantedCliqueSpec boundary{make_clique_plan(std::vector<int>(10, 10), 0),
                               DistributionSpec::bernoulli(0.8),
                               DistributionSpec::bernoulli(0.2)};
    auto rep2 = check_clique_guarantee(boundary, params);
    CHECK(rep2.lhs == doctest::Approx(10.0));
    CHECK(rep2.rhs == doctest::Approx(12.0));
    CHECK(rep2.holds);
}

TEST_CASE("biclique guarantee check") {
    GuaranteeParams params;
    PlantedBicliqueSpec even{make_biclique_plan({10, 10}, {10, 10}, 0, 0),
                             DistributionSpec::bernoulli(0.8),
                             DistributionSpec::bernoulli(0.2)};
    CHECK(check_biclique_guarantee(even, params).tau_condition_holds);

    PlantedBicliqueSpec skew{make_biclique_plan({1, 9}, {1, 1}, 0, 0),
                             DistributionSpec::bernoulli(0.5),
                             DistributionSpec::bernoulli(0.2)};
    CHECK_FALSE(check_biclique_guarantee(skew, params).tau_condition_holds);

    PlantedBicliqueSpec one{make_biclique_plan({100}, {100}, 0, 0),
                            DistributionSpec::bernoulli(0.8),
                            DistributionSpec::bernoulli(0.2)};
    auto rep = check_biclique_guarantee(one, params);
    CHECK(rep.gamma == doctest::Approx(1.2));
    CHECK(rep.lhs == doctest::Approx(20.0));
    CHECK(rep.rhs == doctest::Approx(120.0));
    CHECK(rep.holds);
}
