// kdclique command line: instance generation, solving, oracles, certificate
// checks, sweeps, and the empirical norm suites.
#include "kdc/cli.hpp"

#include "kdc/bench.hpp"
#include "kdc/graph_core.hpp"
#include "kdc/instance_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace kdc {

namespace {

using nlohmann::json;

void write_output(const json& j, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << j.dump(2) << '\n';
}

DistributionSpec make_dist(const std::string& kind, double mean, double hw) {
    if (kind == "bernoulli") return DistributionSpec::bernoulli(mean);
    if (kind == "uniform") return DistributionSpec::uniform(mean, hw);
    throw std::invalid_argument("unknown distribution kind: " + kind);
}

struct GenArgs {
    std::string type = "clique";
    std::vector<int> blocks;
    std::vector<int> right_blocks;
    int noise = 0;
    int right_noise = 0;
    double alpha = 0.8;
    double beta = 0.2;
    std::string dist_in = "bernoulli";
    std::string dist_out = "bernoulli";
    double hw_in = 0.0;
    double hw_out = 0.0;
    std::uint64_t seed = 0;
    int k = 0; // 0: number of blocks
    std::string points; // CSV path: similarity instance instead of planted
    bool rescale = false;
    std::string output;
};

int run_gen(const GenArgs& a) {
    Instance inst;
    if (!a.points.empty()) {
        // Similarity graph of a point cloud; no planted ground truth.
        inst.kind = SdpVariant::Clique;
        inst.k = a.k > 0 ? a.k : 1;
        inst.sym = similarity_from_points(load_point_cloud_csv(a.points), a.rescale);
        write_output(to_json(inst), a.output);
        return 0;
    }
    inst.k = a.k > 0 ? a.k : static_cast<int>(a.blocks.size());
    GenSpec gen;
    gen.dist_in = make_dist(a.dist_in, a.alpha, a.hw_in);
    gen.dist_out = make_dist(a.dist_out, a.beta, a.hw_out);
    gen.seed = a.seed;
    inst.gen = gen;
    if (a.type == "clique") {
        inst.kind = SdpVariant::Clique;
        PlantedCliqueSpec spec{make_clique_plan(a.blocks, a.noise), gen.dist_in,
                               gen.dist_out};
        inst.sym = sample_planted_cluster(spec, a.seed);
        inst.truth_clique = spec.plan;
    } else if (a.type == "biclique") {
        inst.kind = SdpVariant::Biclique;
        PlantedBicliqueSpec spec{
            make_biclique_plan(a.blocks, a.right_blocks, a.noise, a.right_noise),
            gen.dist_in, gen.dist_out};
        inst.bip = sample_planted_bicluster(spec, a.seed);
        inst.truth_biclique = spec.plan;
    } else {
        throw std::invalid_argument("gen: --type must be clique or biclique");
    }
    write_output(to_json(inst), a.output);
    return 0;
}

SdpProblem problem_of(const Instance& inst) {
    return inst.kind == SdpVariant::Clique ? assemble_clique_sdp(*inst.sym, inst.k)
                                           : assemble_biclique_sdp(*inst.bip, inst.k);
}

int run_solve(const std::string& instance_path, const SolverOptions& opts,
              const std::string& output) {
    const Instance inst = load_instance(instance_path);
    const SdpProblem problem = problem_of(inst);
    const SolverResult res = solve(problem, opts);

    json j;
    j["objective"] = res.objective;
    j["status"] = res.status == SolveStatus::Converged ? "converged" : "iter_limit";
    j["iterations"] = res.iterations;
    j["residuals"] = to_json(res.residuals);
    j["spectral_norm"] = res.spectral_norm;
    std::vector<double> flat;
    flat.reserve(res.x.mat().size());
    for (int i = 0; i < res.x.n(); ++i)
        for (int jj = 0; jj < res.x.n(); ++jj) flat.push_back(res.x.mat()(i, jj));
    j["x"] = flat;
    j["dim"] = res.x.n();

    if (inst.kind == SdpVariant::Clique) {
        RoundDiagnostics diag;
        auto plan = round_clique_solution(res.x, inst.k, 0.0, &diag);
        if (plan) j["rounded"] = to_json(*plan);
        else j["rounding_failure"] = diag.reason;
        if (inst.truth_clique)
            j["exact"] = plan && partitions_equal(*plan, *inst.truth_clique);
    } else {
        RoundDiagnostics diag;
        auto plan = round_biclique_solution(res.x, inst.bip->m(), inst.bip->n(),
                                            inst.k, 0.0, &diag);
        if (plan) j["rounded"] = to_json(*plan);
        else j["rounding_failure"] = diag.reason;
        if (inst.truth_biclique)
            j["exact"] = plan && partitions_equal(*plan, *inst.truth_biclique);
    }
    write_output(j, output);
    return 0;
}

int run_oracle(const std::string& instance_path, const std::string& output) {
    const Instance inst = load_instance(instance_path);
    json j;
    if (inst.kind == SdpVariant::Clique) {
        auto [plan, value] = brute_force_densest_kdc(*inst.sym, inst.k);
        j["plan"] = to_json(plan);
        j["value"] = value;
    } else {
        auto [plan, value] = brute_force_densest_kdb(*inst.bip, inst.k);
        j["plan"] = to_json(plan);
        j["value"] = value;
    }
    write_output(j, output);
    return 0;
}

int run_certify(const std::string& instance_path, const std::string& plan_path,
                double epsilon, double kappa, double tol, const std::string& output) {
    const Instance inst = load_instance(instance_path);
    json j;
    // Certificates match the proofs when built from the planted plan; a
    // user-supplied (e.g. recovered) plan is allowed but flagged.
    const std::string plan_source = plan_path.empty() ? "ground_truth" : "user";
    if (inst.kind == SdpVariant::Clique) {
        CliquePlan plan;
        if (!plan_path.empty()) {
            std::ifstream in(plan_path);
            if (!in) throw std::runtime_error("cannot open plan file: " + plan_path);
            json pj;
            in >> pj;
            plan = clique_plan_from_json(pj);
        } else if (inst.truth_clique) {
            plan = *inst.truth_clique;
        } else {
            throw std::invalid_argument("certify: no plan given and no ground truth");
        }
        const auto cert = build_clique_certificate(*inst.sym, plan, epsilon);
        const auto report = verify_clique_kkt(*inst.sym, plan, cert, tol);
        j = to_json(report);
        const auto norms = spectral_norm_report(cert, plan);
        j["s_tilde_parts"] = norms.part_norms;
        j["bound"] = norms.bound;
        j["uniqueness"] = clique_uniqueness_holds(*inst.sym, plan);
        j["gamma"] = cert.gamma;
        j["mu"] = cert.mu;
        j["plan_source"] = plan_source;
    } else {
        BicliquePlan plan;
        if (!plan_path.empty()) {
            std::ifstream in(plan_path);
            if (!in) throw std::runtime_error("cannot open plan file: " + plan_path);
            json pj;
            in >> pj;
            plan = biclique_plan_from_json(pj);
        } else if (inst.truth_biclique) {
            plan = *inst.truth_biclique;
        } else {
            throw std::invalid_argument("certify: no plan given and no ground truth");
        }
        const auto cert = build_biclique_certificate(*inst.bip, plan, epsilon, kappa);
        const auto report = verify_biclique_kkt(*inst.bip, plan, cert, tol);
        j = to_json(report);
        const auto norms = spectral_norm_report(cert, plan);
        j["s1_parts"] = norms.part_norms;
        j["bound"] = norms.bound;
        j["uniqueness"] = biclique_uniqueness_holds(*inst.bip, plan);
        j["gamma"] = cert.gamma;
        j["mu1"] = cert.mu1;
        j["mu2"] = cert.mu2;
        j["plan_source"] = plan_source;
    }
    write_output(j, output);
    return 0;
}

int run_norms(const std::string& dist_kind, double mean, double hw, int n,
              const std::string& shape_name, double y, int trials, int hoeffding_m,
              int hoeffding_trials, std::uint64_t seed, const std::string& output) {
    const DistributionSpec dist = make_dist(dist_kind, mean, hw);
    NormShape shape;
    shape.symmetric = shape_name != "rectangular";
    shape.y = y;
    const auto rep = empirical_norm_suite(dist, n, shape, trials, seed);
    const auto hoeff = hoeffding_suite(dist, hoeffding_m, hoeffding_trials,
                                       seed_mix(seed, 0x686F656666ULL));
    json j;
    j["shape"] = shape.symmetric ? "symmetric" : "rectangular";
    j["n"] = n;
    j["trials"] = trials;
    j["max_ratio"] = rep.max_ratio;
    j["q50"] = rep.q50;
    j["q95"] = rep.q95;
    j["q99"] = rep.q99;
    j["count_above_3"] = rep.count_above(3.0);
    j["ratios"] = rep.ratios;
    json hj = json::array();
    for (const auto& p : hoeff.points)
        hj.push_back({{"t", p.t},
                      {"empirical_frequency", p.empirical_frequency},
                      {"bound", p.bound}});
    j["hoeffding"] = {{"m", hoeff.m}, {"trials", hoeff.trials}, {"points", hj}};
    write_output(j, output);
    return 0;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Densest k-disjoint-clique / biclique SDP toolkit"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* cmd_gen = app.add_subcommand("gen", "Generate a planted instance");
    cmd_gen->add_option("--type", gen.type, "clique or biclique");
    auto* gen_source = cmd_gen->add_option_group("source");
    gen_source->add_option("--blocks", gen.blocks,
                           "block sizes (left sizes for biclique)")
        ->delimiter(',');
    gen_source->add_option("--points", gen.points,
                           "point cloud CSV: build a similarity instance instead");
    gen_source->require_option(1);
    cmd_gen->add_option("--right-blocks", gen.right_blocks, "biclique right sizes")
        ->delimiter(',');
    cmd_gen->add_option("--noise", gen.noise, "noise vertices (left noise for biclique)");
    cmd_gen->add_option("--right-noise", gen.right_noise, "biclique right noise");
    cmd_gen->add_option("--alpha", gen.alpha, "in-block mean");
    cmd_gen->add_option("--beta", gen.beta, "out-of-block mean");
    cmd_gen->add_option("--dist-in", gen.dist_in, "bernoulli or uniform");
    cmd_gen->add_option("--dist-out", gen.dist_out, "bernoulli or uniform");
    cmd_gen->add_option("--hw-in", gen.hw_in, "uniform half width (in)");
    cmd_gen->add_option("--hw-out", gen.hw_out, "uniform half width (out)");
    cmd_gen->add_option("--seed", gen.seed, "generator seed");
    cmd_gen->add_option("--k", gen.k, "trace budget (default: block count)");
    cmd_gen->add_flag("--rescale", gen.rescale,
                      "scale points so the max pairwise distance is 1");
    cmd_gen->add_option("-o,--output", gen.output, "output path (default stdout)");

    std::string instance_path, output, plan_path, trace_csv;
    SolverOptions solver_opts;
    auto* cmd_solve = app.add_subcommand("solve", "Solve the semidefinite relaxation");
    cmd_solve->add_option("instance", instance_path, "instance JSON")->required();
    cmd_solve->add_option("-o,--output", output, "solution JSON (default stdout)");
    cmd_solve->add_option("--tol-feas", solver_opts.tol_feas, "feasibility tolerance");
    cmd_solve->add_option("--tol-obj", solver_opts.tol_obj_rel, "objective tolerance");
    cmd_solve->add_option("--max-iter", solver_opts.max_iter, "iteration cap");
    cmd_solve->add_option("--penalty", solver_opts.penalty, "ADMM penalty");
    cmd_solve->add_option("--trace-csv", solver_opts.trace_csv, "iteration trace CSV");

    auto* cmd_oracle = app.add_subcommand("oracle", "Exhaustive combinatorial optimum");
    std::string oracle_instance, oracle_output;
    cmd_oracle->add_option("instance", oracle_instance, "instance JSON")->required();
    cmd_oracle->add_option("-o,--output", oracle_output, "output (default stdout)");

    auto* cmd_certify = app.add_subcommand("certify", "Build and verify a dual certificate");
    std::string certify_instance, certify_output;
    double epsilon = 0.1, kappa = 0.9, tol = 1e-6;
    cmd_certify->add_option("instance", certify_instance, "instance JSON")->required();
    cmd_certify->add_option("--plan", plan_path, "plan JSON (default: ground truth)");
    cmd_certify->add_option("--epsilon", epsilon, "mu scale in (0,1)");
    cmd_certify->add_option("--kappa", kappa, "pi4 scale in (0,1)");
    cmd_certify->add_option("--tol", tol, "verification tolerance");
    cmd_certify->add_option("-o,--output", certify_output, "output (default stdout)");

    auto* cmd_sweep = app.add_subcommand("sweep", "Run a Monte-Carlo sweep to CSV");
    std::string sweep_path;
    cmd_sweep->add_option("spec", sweep_path, "SweepSpec JSON")->required();

    auto* cmd_norms = app.add_subcommand("norms", "Empirical random-matrix norm suite");
    std::string norm_dist = "bernoulli", shape_name = "symmetric", norms_output;
    double norm_mean = 0.5, norm_hw = 0.0, norm_y = 0.5;
    int norm_n = 400, norm_trials = 100, hoeff_m = 1000, hoeff_trials = 1000;
    std::uint64_t norm_seed = 0;
    cmd_norms->add_option("--dist", norm_dist, "bernoulli or uniform");
    cmd_norms->add_option("--mean", norm_mean, "distribution mean");
    cmd_norms->add_option("--hw", norm_hw, "uniform half width");
    cmd_norms->add_option("--n", norm_n, "matrix dimension");
    cmd_norms->add_option("--shape", shape_name, "symmetric or rectangular");
    cmd_norms->add_option("--y", norm_y, "rectangular aspect: ceil(y n) x n");
    cmd_norms->add_option("--trials", norm_trials, "norm trials");
    cmd_norms->add_option("--hoeffding-m", hoeff_m, "Hoeffding sample count");
    cmd_norms->add_option("--hoeffding-trials", hoeff_trials, "Hoeffding trials");
    cmd_norms->add_option("--seed", norm_seed, "suite seed");
    cmd_norms->add_option("-o,--output", norms_output, "output (default stdout)");

    auto* cmd_export = app.add_subcommand("export-sdpa", "Write sparse SDPA format");
    std::string export_instance, export_output;
    cmd_export->add_option("instance", export_instance, "instance JSON")->required();
    cmd_export->add_option("-o,--output", export_output, "output .dat-s path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_gen->parsed()) return run_gen(gen);
        if (cmd_solve->parsed()) return run_solve(instance_path, solver_opts, output);
        if (cmd_oracle->parsed()) return run_oracle(oracle_instance, oracle_output);
        if (cmd_certify->parsed())
            return run_certify(certify_instance, plan_path, epsilon, kappa, tol,
                               certify_output);
        if (cmd_sweep->parsed()) {
            run_sweep(load_sweep_spec(sweep_path));
            return 0;
        }
        if (cmd_norms->parsed())
            return run_norms(norm_dist, norm_mean, norm_hw, norm_n, shape_name, norm_y,
                             norm_trials, hoeff_m, hoeff_trials, norm_seed,
                             norms_output);
        if (cmd_export->parsed()) {
            export_sdpa_file(problem_of(load_instance(export_instance)), export_output);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace kdc
