#include "kdc/bench.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace kdc;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SweepSpec tiny_sweep() {
    SweepSpec spec;
    spec.kind = SdpVariant::Clique;
    spec.block_sizes_grid = {{4, 4}};
    spec.noise_grid = {0, 2};
    spec.alpha_grid = {0.9};
    spec.beta_grid = {0.1};
    spec.trials = 2;
    spec.base_seed = 7;
    spec.output_path = "kdc_test_sweep.csv";
    return spec;
}

} // namespace

TEST_CASE("run_trial on the deterministic ideal instance") {
    SweepCell cell;
    cell.kind = SdpVariant::Clique;
    cell.block_sizes = {5, 5};
    cell.alpha = 1.0;
    cell.beta = 0.0;
    cell.dist_in = DistributionSpec::bernoulli(1.0);
    cell.dist_out = DistributionSpec::bernoulli(0.0);
    TrialRecord rec = run_trial(cell, 0, 0, 1, SolverOptions{}, GuaranteeParams{});
    CHECK(rec.exact);
    CHECK(rec.cert_built);
    CHECK(rec.cert_passed);
    CHECK(rec.uniqueness);
    CHECK(rec.solver_status == SolveStatus::Converged);
    CHECK(rec.gamma == doctest::Approx(2.0));
}

TEST_CASE("run_trial with no signal still produces a complete record") {
    SweepCell cell;
    cell.kind = SdpVariant::Clique;
    cell.block_sizes = {6, 6};
    cell.alpha = 0.5;
    cell.beta = 0.5;
    cell.dist_in = DistributionSpec::bernoulli(0.5);
    cell.dist_out = DistributionSpec::bernoulli(0.5);
    SolverOptions opts;
    opts.max_iter = 2000;
    TrialRecord rec = run_trial(cell, 0, 0, 3, opts, GuaranteeParams{});
    // Model-level gamma is exactly zero; the certificate may or may not be
    // refused depending on the estimated block means of the draw.
    CHECK(rec.gamma == doctest::Approx(0.0));
    CHECK_FALSE(rec.guarantee_holds);
    CHECK(rec.iterations > 0);
    // The row still serializes with the fixed schema.
    const std::string row = rec.csv_row(false);
    std::stringstream ss(row);
    std::string cell_str;
    int cols = 0;
    while (std::getline(ss, cell_str, ',')) ++cols;
    std::stringstream hs(TrialRecord::csv_header(false));
    int header_cols = 0;
    while (std::getline(hs, cell_str, ',')) ++header_cols;
    CHECK(cols == header_cols);
}

TEST_CASE("sweep rows, ordering, and byte determinism") {
    SweepSpec spec = tiny_sweep();
    auto records = run_sweep(spec);
    CHECK(records.size() == 4); // 2 cells x 2 trials
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].cell_index == static_cast<int>(i / 2));
        CHECK(records[i].trial_index == static_cast<int>(i % 2));
    }
    const std::string first = slurp(spec.output_path);
    {
        std::stringstream ss(first);
        std::string line;
        int lines = 0;
        while (std::getline(ss, line)) ++lines;
        CHECK(lines == 5); // header + 4 rows
    }

    run_sweep(spec);
    CHECK(slurp(spec.output_path) == first);

    // Worker count cannot change the output.
    setenv("KDC_WORKERS", "1", 1);
    run_sweep(spec);
    unsetenv("KDC_WORKERS");
    CHECK(slurp(spec.output_path) == first);
    std::remove(spec.output_path.c_str());
}

TEST_CASE("per-trial seeds depend on every index") {
    CHECK(trial_seed(1, 0, 0) != trial_seed(1, 0, 1));
    CHECK(trial_seed(1, 0, 0) != trial_seed(1, 1, 0));
    CHECK(trial_seed(1, 0, 0) != trial_seed(2, 0, 0));
    CHECK(trial_seed(5, 3, 2) == trial_seed(5, 3, 2));
}

TEST_CASE("recovery rate degrades as beta approaches alpha") {
    SweepSpec spec;
    spec.kind = SdpVariant::Clique;
    spec.block_sizes_grid = {{20, 20}};
    spec.noise_grid = {0};
    spec.alpha_grid = {0.8};
    spec.beta_grid = {0.2, 0.5, 0.8};
    spec.trials = 20;
    spec.base_seed = 11;
    spec.solver.max_iter = 4000;
    spec.output_path.clear();
    auto records = run_sweep(spec);
    REQUIRE(records.size() == 60);
    int rate[3] = {0, 0, 0};
    for (const auto& r : records) rate[r.cell_index] += r.exact ? 1 : 0;
    CHECK(rate[0] + 1 >= rate[1]);
    CHECK(rate[1] + 1 >= rate[2]);
    CHECK(rate[0] >= 18); // strong signal regime should recover
}

TEST_CASE("empirical norm suite") {
    // Symmetric Bernoulli(0.5): the 3 sigma sqrt(n) bound holds in every trial.
    NormSuiteReport rep = empirical_norm_suite(DistributionSpec::bernoulli(0.5), 200,
                                               NormShape{true, 1.0}, 50, 5);
    CHECK(rep.count_above(3.0) == 0);
    CHECK(rep.max_ratio > 1.0); // the deviation norm is not trivially small
    CHECK(rep.q50 <= rep.q95);
    CHECK(rep.q95 <= rep.q99);
    CHECK(rep.q99 <= rep.max_ratio);

    // Rectangular case stays under the Geman-style constant.
    NormSuiteReport rect = empirical_norm_suite(DistributionSpec::bernoulli(0.5), 200,
                                                NormShape{false, 0.5}, 50, 6);
    CHECK(rect.count_above(5.0) == 0);

    // Constant distribution: deviation is exactly zero.
    NormSuiteReport flat = empirical_norm_suite(DistributionSpec::uniform(0.4, 0.0),
                                                100, NormShape{true, 1.0}, 10, 7);
    CHECK(flat.max_ratio == 0.0);

    CHECK_THROWS_AS(empirical_norm_suite(DistributionSpec::bernoulli(0.5), 5,
                                         NormShape{true, 1.0}, 100, 0),
                    std::invalid_argument);
}

TEST_CASE("hoeffding suite") {
    HoeffdingReport rep = hoeffding_suite(DistributionSpec::bernoulli(0.5), 1000, 500, 9);
    REQUIRE(rep.points.size() == 2);
    // t = sqrt(m): the bound 2 exp(-2) ~ 0.27 dominates the empirical rate.
    CHECK(rep.points[0].bound == doctest::Approx(2.0 * std::exp(-2.0)));
    CHECK(rep.points[0].empirical_frequency <= rep.points[0].bound);
    // t = m^(3/4): essentially impossible.
    CHECK(rep.points[1].empirical_frequency == 0.0);
    CHECK(rep.points[1].bound <= 1e-20);
}
