// Monte-Carlo trials, parameter sweeps, and the empirical random-matrix
// norm suites.
#pragma once

#include "kdc/certificates.hpp"
#include "kdc/planted.hpp"
#include "kdc/recovery.hpp"
#include "kdc/sdp.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kdc {

// One fully instantiated parameter point of a sweep.
struct SweepCell {
    SdpVariant kind = SdpVariant::Clique;
    std::vector<int> block_sizes;        // clique sizes, or biclique left sizes
    std::vector<int> right_sizes;        // biclique only
    int noise = 0;                       // clique noise, or biclique left noise
    int right_noise = 0;                 // biclique only
    double alpha = 0.8;
    double beta = 0.2;
    DistributionSpec dist_in = DistributionSpec::bernoulli(0.8);
    DistributionSpec dist_out = DistributionSpec::bernoulli(0.2);

    int k() const { return static_cast<int>(block_sizes.size()); }
    int total_n() const;
    int total_m() const; // biclique left side; 0 for cliques
};

struct SweepSpec {
    SdpVariant kind = SdpVariant::Clique;
    std::vector<std::vector<int>> block_sizes_grid;
    std::vector<std::vector<int>> right_sizes_grid; // biclique; paired with block grid entry-wise when sizes match, else crossed
    std::vector<int> noise_grid{0};
    std::vector<int> right_noise_grid{0};
    std::vector<double> alpha_grid;
    std::vector<double> beta_grid;
    // Distribution templates; means are overridden per cell by alpha/beta.
    std::vector<std::pair<DistributionSpec, DistributionSpec>> dist_grid{
        {DistributionSpec::bernoulli(0.5), DistributionSpec::bernoulli(0.5)}};
    int trials = 1;
    std::uint64_t base_seed = 0;
    SolverOptions solver;
    GuaranteeParams params;
    std::string output_path;
    bool include_timing = false; // timing column breaks byte-level reproducibility

    void validate() const;
    std::vector<SweepCell> cells() const; // deterministic nested enumeration
};

// One row of the sweep CSV. Column order is fixed; see csv_header().
struct TrialRecord {
    int schema_version = 1;
    SdpVariant kind = SdpVariant::Clique;
    int cell_index = 0;
    int trial_index = 0;
    std::uint64_t seed = 0;
    int n_total = 0;
    int m_total = 0;
    int k = 0;
    std::vector<int> block_sizes;
    std::vector<int> right_sizes;
    int noise = 0;
    int right_noise = 0;
    double alpha = 0.0;
    double beta = 0.0;
    std::string dist_in, dist_out;
    double gamma = 0.0;
    double guarantee_lhs = 0.0;
    double guarantee_rhs = 0.0;
    bool guarantee_holds = false;
    bool tau_condition = true;
    SolveStatus solver_status = SolveStatus::IterLimit;
    double objective = 0.0;
    int iterations = 0;
    double wall_ms = 0.0; // emitted only when include_timing
    bool exact = false;
    bool cert_built = false;
    bool cert_passed = false;
    double min_lambda = 0.0;
    double min_phi = 0.0;
    double min_eta = 0.0;
    double min_eig_s = 0.0;
    double s_part_norm = 0.0;
    bool uniqueness = false;

    static std::string csv_header(bool include_timing);
    std::string csv_row(bool include_timing) const;
};

// Per-trial seeds derive from (base_seed, cell, trial) so execution order
// and worker count cannot change results.
std::uint64_t trial_seed(std::uint64_t base_seed, int cell_index, int trial_index);

TrialRecord run_trial(const SweepCell& cell, int cell_index, int trial_index,
                      std::uint64_t base_seed, const SolverOptions& solver,
                      const GuaranteeParams& params, bool measure_time = false);

// Runs every (cell, trial) on a worker pool (capped by KDC_WORKERS), writes
// one row per trial ordered by (cell, trial), and returns the records.
std::vector<TrialRecord> run_sweep(const SweepSpec& spec);

struct NormShape {
    bool symmetric = true;
    double y = 1.0; // rectangular: ceil(y n) x n
};

struct NormSuiteReport {
    std::vector<double> ratios; // |A - mu ee^T| / (sigma sqrt(n)); plain norms when sigma = 0
    double max_ratio = 0.0;
    double q50 = 0.0, q95 = 0.0, q99 = 0.0;
    int count_above(double threshold) const;
};

// Empirical spectral-norm concentration for the symmetric (Furedi-Komlos,
// target ratio 3) and rectangular (Geman) regimes.
NormSuiteReport empirical_norm_suite(const DistributionSpec& dist, int n,
                                     const NormShape& shape, int trials,
                                     std::uint64_t seed);

struct HoeffdingPoint {
    double t = 0.0;
    double empirical_frequency = 0.0; // of |S - E S| > t
    double bound = 0.0;               // 2 exp(-2 t^2 / m)
};

struct HoeffdingReport {
    int m = 0;
    int trials = 0;
    std::vector<HoeffdingPoint> points; // t in {sqrt(m), m^(3/4)}
};

HoeffdingReport hoeffding_suite(const DistributionSpec& dist, int m, int trials,
                                std::uint64_t seed);

} // namespace kdc
