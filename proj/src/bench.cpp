#include "kdc/bench.hpp"

#include "kdc/graph_core.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace kdc {

int SweepCell::total_n() const {
    int t = 0;
    if (kind == SdpVariant::Clique) {
        for (int r : block_sizes) t += r;
        return t + noise;
    }
    for (int r : right_sizes) t += r;
    return t + right_noise;
}

int SweepCell::total_m() const {
    if (kind == SdpVariant::Clique) return 0;
    int t = 0;
    for (int r : block_sizes) t += r;
    return t + noise;
}

void SweepSpec::validate() const {
    if (block_sizes_grid.empty() || alpha_grid.empty() || beta_grid.empty() ||
        noise_grid.empty() || dist_grid.empty())
        throw std::invalid_argument("SweepSpec: grids must be nonempty");
    if (kind == SdpVariant::Biclique &&
        right_sizes_grid.size() != block_sizes_grid.size())
        throw std::invalid_argument(
            "SweepSpec: biclique sweeps pair left and right size grids entry-wise");
    if (trials < 1) throw std::invalid_argument("SweepSpec: trials must be >= 1");
    solver.validate();
    params.validate();
}

std::vector<SweepCell> SweepSpec::cells() const {
    validate();
    std::vector<SweepCell> out;
    const auto& rn_grid =
        kind == SdpVariant::Biclique ? right_noise_grid : std::vector<int>{0};
    for (std::size_t bi = 0; bi < block_sizes_grid.size(); ++bi)
        for (int noise : noise_grid)
            for (int rnoise : rn_grid)
                for (double alpha : alpha_grid)
                    for (double beta : beta_grid)
                        for (const auto& [din, dout] : dist_grid) {
                            SweepCell c;
                            c.kind = kind;
                            c.block_sizes = block_sizes_grid[bi];
                            if (kind == SdpVariant::Biclique)
                                c.right_sizes = right_sizes_grid[bi];
                            c.noise = noise;
                            c.right_noise = rnoise;
                            c.alpha = alpha;
                            c.beta = beta;
                            c.dist_in = din;
                            c.dist_in.mean = alpha;
                            c.dist_out = dout;
                            c.dist_out.mean = beta;
                            out.push_back(std::move(c));
                        }
    return out;
}

namespace {

std::string dist_label(const DistributionSpec& d) {
    std::ostringstream os;
    if (d.kind == DistributionSpec::Kind::Bernoulli)
        os << "bernoulli";
    else
        os << "uniform(hw=" << d.half_width << ")";
    return os.str();
}

std::string join_sizes(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(v[i]);
    }
    return s.empty() ? "-" : s;
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

} // namespace

std::string TrialRecord::csv_header(bool include_timing) {
    std::string h =
        "schema_version,kind,cell_index,trial_index,seed,n_total,m_total,k,"
        "block_sizes,right_sizes,noise,right_noise,alpha,beta,dist_in,dist_out,"
        "gamma,guarantee_lhs,guarantee_rhs,guarantee_holds,tau_condition,"
        "solver_status,objective,iterations,";
    if (include_timing) h += "wall_ms,";
    h += "exact,cert_built,cert_passed,min_lambda,min_phi,min_eta,min_eig_s,"
         "s_part_norm,uniqueness";
    return h;
}

std::string TrialRecord::csv_row(bool include_timing) const {
    std::ostringstream os;
    os << schema_version << ',' << (kind == SdpVariant::Clique ? "clique" : "biclique")
       << ',' << cell_index << ',' << trial_index << ',' << seed << ',' << n_total
       << ',' << m_total << ',' << k << ',' << join_sizes(block_sizes) << ','
       << join_sizes(right_sizes) << ',' << noise << ',' << right_noise << ','
       << fmt_double(alpha) << ',' << fmt_double(beta) << ',' << dist_in << ','
       << dist_out << ',' << fmt_double(gamma) << ',' << fmt_double(guarantee_lhs)
       << ',' << fmt_double(guarantee_rhs) << ',' << (guarantee_holds ? 1 : 0) << ','
       << (tau_condition ? 1 : 0) << ','
       << (solver_status == SolveStatus::Converged ? "converged" : "iter_limit")
       << ',' << fmt_double(objective) << ',' << iterations << ',';
    if (include_timing) os << fmt_double(wall_ms) << ',';
    os << (exact ? 1 : 0) << ',' << (cert_built ? 1 : 0) << ',' << (cert_passed ? 1 : 0)
       << ',' << fmt_double(min_lambda) << ',' << fmt_double(min_phi) << ','
       << fmt_double(min_eta) << ',' << fmt_double(min_eig_s) << ','
       << fmt_double(s_part_norm) << ',' << (uniqueness ? 1 : 0);
    return os.str();
}

std::uint64_t trial_seed(std::uint64_t base_seed, int cell_index, int trial_index) {
    return seed_mix(seed_mix(base_seed, static_cast<std::uint64_t>(cell_index)),
                    static_cast<std::uint64_t>(trial_index));
}

TrialRecord run_trial(const SweepCell& cell, int cell_index, int trial_index,
                      std::uint64_t base_seed, const SolverOptions& solver_opts,
                      const GuaranteeParams& params, bool measure_time) {
    TrialRecord rec;
    rec.kind = cell.kind;
    rec.cell_index = cell_index;
    rec.trial_index = trial_index;
    rec.seed = trial_seed(base_seed, cell_index, trial_index);
    rec.k = cell.k();
    rec.block_sizes = cell.block_sizes;
    rec.right_sizes = cell.right_sizes;
    rec.noise = cell.noise;
    rec.right_noise = cell.right_noise;
    rec.alpha = cell.alpha;
    rec.beta = cell.beta;
    rec.dist_in = dist_label(cell.dist_in);
    rec.dist_out = dist_label(cell.dist_out);
    rec.n_total = cell.total_n();
    rec.m_total = cell.total_m();

    const auto t0 = std::chrono::steady_clock::now();
    if (cell.kind == SdpVariant::Clique) {
        PlantedCliqueSpec spec{make_clique_plan(cell.block_sizes, cell.noise),
                               cell.dist_in, cell.dist_out};
        const auto guarantee = check_clique_guarantee(spec, params);
        rec.gamma = guarantee.gamma;
        rec.guarantee_lhs = guarantee.lhs;
        rec.guarantee_rhs = guarantee.rhs;
        rec.guarantee_holds = guarantee.holds;
        rec.tau_condition = guarantee.tau_condition_holds;

        SymmetricWeights w = sample_planted_cluster(spec, rec.seed);
        SolverResult res = solve(assemble_clique_sdp(w, rec.k), solver_opts);
        rec.solver_status = res.status;
        rec.objective = res.objective;
        rec.iterations = res.iterations;
        rec.exact = recover_clique(res.x, spec.plan).exact;
        rec.uniqueness = clique_uniqueness_holds(w, spec.plan);
        try {
            const auto cert = build_clique_certificate(w, spec.plan, params.epsilon);
            const auto report = verify_clique_kkt(w, spec.plan, cert, 1e-6);
            rec.cert_built = true;
            rec.cert_passed = report.passed;
            rec.min_lambda = report.min_lambda;
            rec.min_phi = report.min_phi;
            rec.min_eta = report.min_eta;
            rec.min_eig_s = report.min_eig_s;
            rec.s_part_norm = report.s_part_norm;
        } catch (const std::domain_error&) {
            rec.cert_built = false;
        }
    } else {
        PlantedBicliqueSpec spec{
            make_biclique_plan(cell.block_sizes, cell.right_sizes, cell.noise,
                               cell.right_noise),
            cell.dist_in, cell.dist_out};
        const auto guarantee = check_biclique_guarantee(spec, params);
        rec.gamma = guarantee.gamma;
        rec.guarantee_lhs = guarantee.lhs;
        rec.guarantee_rhs = guarantee.rhs;
        rec.guarantee_holds = guarantee.holds;
        rec.tau_condition = guarantee.tau_condition_holds;

        BipartiteWeights w = sample_planted_bicluster(spec, rec.seed);
        SolverResult res = solve(assemble_biclique_sdp(w, rec.k), solver_opts);
        rec.solver_status = res.status;
        rec.objective = res.objective;
        rec.iterations = res.iterations;
        rec.exact = recover_biclique(res.x, spec.plan).exact;
        rec.uniqueness = biclique_uniqueness_holds(w, spec.plan);
        try {
            const auto cert = build_biclique_certificate(w, spec.plan, params.epsilon,
                                                         params.kappa);
            const auto report = verify_biclique_kkt(w, spec.plan, cert, 1e-6);
            rec.cert_built = true;
            rec.cert_passed = report.passed;
            rec.min_lambda = report.min_lambda;
            rec.min_phi = report.min_phi;
            rec.min_eta = report.min_eta;
            rec.min_eig_s = report.min_eig_s;
            rec.s_part_norm = report.s_part_norm;
        } catch (const std::domain_error&) {
            rec.cert_built = false;
        }
    }
    if (measure_time) {
        rec.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    }
    return rec;
}

namespace {

int worker_count(std::size_t jobs) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("KDC_WORKERS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return static_cast<int>(std::min<std::size_t>(n, jobs));
}

} // namespace

std::vector<TrialRecord> run_sweep(const SweepSpec& spec) {
    const auto cells = spec.cells();
    const std::size_t jobs = cells.size() * static_cast<std::size_t>(spec.trials);
    std::vector<TrialRecord> records(jobs);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) {
            const int cell_index = static_cast<int>(i / spec.trials);
            const int trial_index = static_cast<int>(i % spec.trials);
            records[i] = run_trial(cells[cell_index], cell_index, trial_index,
                                   spec.base_seed, spec.solver, spec.params,
                                   spec.include_timing);
        }
    };
    const int workers = worker_count(jobs);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    if (!spec.output_path.empty()) {
        std::ofstream out(spec.output_path, std::ios::binary);
        if (!out)
            throw std::runtime_error("run_sweep: cannot open " + spec.output_path);
        out << TrialRecord::csv_header(spec.include_timing) << '\n';
        for (const auto& rec : records) out << rec.csv_row(spec.include_timing) << '\n';
    }
    return records;
}

NormSuiteReport empirical_norm_suite(const DistributionSpec& dist, int n,
                                     const NormShape& shape, int trials,
                                     std::uint64_t seed) {
    if (n < 10 || trials < 10)
        throw std::invalid_argument("empirical_norm_suite: need n >= 10, trials >= 10");
    dist.validate();
    const double sigma = std::sqrt(dist.variance());
    NormSuiteReport rep;
    rep.ratios.reserve(trials);

    for (int t = 0; t < trials; ++t) {
        CounterRng rng(seed_mix(seed, static_cast<std::uint64_t>(t)));
        double norm;
        if (shape.symmetric) {
            Matrix a(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) a(i, j) = a(j, i) = dist.sample(rng);
            a.array() -= dist.mean;
            Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
            norm = es.eigenvalues().cwiseAbs().maxCoeff();
        } else {
            const int rows = static_cast<int>(std::ceil(shape.y * n));
            Matrix a(rows, n);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < n; ++j) a(i, j) = dist.sample(rng);
            a.array() -= dist.mean;
            // Largest singular value via the smaller Gram matrix.
            Matrix g = rows <= n ? Matrix(a * a.transpose()) : Matrix(a.transpose() * a);
            Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
            norm = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
        }
        const double denom = sigma * std::sqrt(static_cast<double>(n));
        rep.ratios.push_back(denom > 0.0 ? norm / denom : norm);
    }

    std::vector<double> sorted = rep.ratios;
    std::sort(sorted.begin(), sorted.end());
    auto quantile = [&](double q) {
        const double pos = q * (sorted.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
        return sorted[lo] + (pos - lo) * (sorted[hi] - sorted[lo]);
    };
    rep.max_ratio = sorted.back();
    rep.q50 = quantile(0.50);
    rep.q95 = quantile(0.95);
    rep.q99 = quantile(0.99);
    return rep;
}

int NormSuiteReport::count_above(double threshold) const {
    return static_cast<int>(
        std::count_if(ratios.begin(), ratios.end(),
                      [&](double r) { return r > threshold; }));
}

HoeffdingReport hoeffding_suite(const DistributionSpec& dist, int m, int trials,
                                std::uint64_t seed) {
    if (m < 1 || trials < 10)
        throw std::invalid_argument("hoeffding_suite: need m >= 1, trials >= 10");
    dist.validate();
    HoeffdingReport rep;
    rep.m = m;
    rep.trials = trials;
    const std::vector<double> ts{std::sqrt(static_cast<double>(m)),
                                 std::pow(static_cast<double>(m), 0.75)};
    std::vector<int> exceed(ts.size(), 0);
    const double mean_sum = dist.mean * m;
    for (int t = 0; t < trials; ++t) {
        CounterRng rng(seed_mix(seed, static_cast<std::uint64_t>(t)));
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += dist.sample(rng);
        for (std::size_t j = 0; j < ts.size(); ++j)
            if (std::abs(s - mean_sum) > ts[j]) ++exceed[j];
    }
    for (std::size_t j = 0; j < ts.size(); ++j) {
        HoeffdingPoint p;
        p.t = ts[j];
        p.empirical_frequency = static_cast<double>(exceed[j]) / trials;
        p.bound = 2.0 * std::exp(-2.0 * ts[j] * ts[j] / m);
        rep.points.push_back(p);
    }
    return rep;
}

} // namespace kdc
