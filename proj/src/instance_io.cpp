#include "kdc/instance_io.hpp"

#include <fstream>
#include <sstream>

namespace kdc {

using nlohmann::json;

json to_json(const DistributionSpec& d) {
    json j;
    j["kind"] = d.kind == DistributionSpec::Kind::Bernoulli ? "bernoulli" : "uniform";
    j["mean"] = d.mean;
    if (d.kind == DistributionSpec::Kind::UniformInterval)
        j["half_width"] = d.half_width;
    return j;
}

DistributionSpec distribution_from_json(const json& j) {
    DistributionSpec d;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "bernoulli")
        d.kind = DistributionSpec::Kind::Bernoulli;
    else if (kind == "uniform")
        d.kind = DistributionSpec::Kind::UniformInterval;
    else
        throw std::invalid_argument("unknown distribution kind: " + kind);
    d.mean = j.at("mean").get<double>();
    d.half_width = j.value("half_width", 0.0);
    d.validate();
    return d;
}

json to_json(const CliquePlan& p) {
    json j;
    j["n"] = p.n;
    j["cliques"] = p.cliques;
    j["noise"] = p.noise;
    return j;
}

CliquePlan clique_plan_from_json(const json& j) {
    CliquePlan p;
    p.n = j.at("n").get<int>();
    p.cliques = j.at("cliques").get<std::vector<VertexSet>>();
    p.noise = j.value("noise", VertexSet{});
    p.validate();
    return p;
}

json to_json(const BicliquePlan& p) {
    json j;
    j["m"] = p.m;
    j["n"] = p.n;
    j["left_blocks"] = p.left_blocks;
    j["right_blocks"] = p.right_blocks;
    j["left_noise"] = p.left_noise;
    j["right_noise"] = p.right_noise;
    return j;
}

BicliquePlan biclique_plan_from_json(const json& j) {
    BicliquePlan p;
    p.m = j.at("m").get<int>();
    p.n = j.at("n").get<int>();
    p.left_blocks = j.at("left_blocks").get<std::vector<VertexSet>>();
    p.right_blocks = j.at("right_blocks").get<std::vector<VertexSet>>();
    p.left_noise = j.value("left_noise", VertexSet{});
    p.right_noise = j.value("right_noise", VertexSet{});
    p.validate();
    return p;
}

json to_json(const Instance& inst) {
    json j;
    j["type"] = inst.kind == SdpVariant::Clique ? "clique" : "biclique";
    j["k"] = inst.k;
    std::vector<double> flat;
    if (inst.kind == SdpVariant::Clique) {
        const Matrix& w = inst.sym->w();
        j["n"] = static_cast<int>(w.rows());
        flat.reserve(w.size());
        for (int i = 0; i < w.rows(); ++i)
            for (int jj = 0; jj < w.cols(); ++jj) flat.push_back(w(i, jj));
    } else {
        const Matrix& w = inst.bip->w();
        j["m"] = static_cast<int>(w.rows());
        j["n"] = static_cast<int>(w.cols());
        flat.reserve(w.size());
        for (int i = 0; i < w.rows(); ++i)
            for (int jj = 0; jj < w.cols(); ++jj) flat.push_back(w(i, jj));
    }
    j["weights"] = flat;
    if (inst.truth_clique) j["ground_truth"] = to_json(*inst.truth_clique);
    if (inst.truth_biclique) j["ground_truth"] = to_json(*inst.truth_biclique);
    if (inst.gen) {
        json g;
        g["dist_in"] = to_json(inst.gen->dist_in);
        g["dist_out"] = to_json(inst.gen->dist_out);
        g["seed"] = inst.gen->seed;
        j["gen"] = g;
    }
    return j;
}

Instance instance_from_json(const json& j) {
    Instance inst;
    const std::string type = j.at("type").get<std::string>();
    inst.k = j.at("k").get<int>();
    const auto flat = j.at("weights").get<std::vector<double>>();
    if (type == "clique") {
        inst.kind = SdpVariant::Clique;
        const int n = j.at("n").get<int>();
        if (static_cast<int>(flat.size()) != n * n)
            throw std::invalid_argument("instance: weights length != n*n");
        Matrix w(n, n);
        for (int i = 0; i < n; ++i)
            for (int jj = 0; jj < n; ++jj) w(i, jj) = flat[i * n + jj];
        inst.sym = SymmetricWeights(std::move(w));
        if (j.contains("ground_truth"))
            inst.truth_clique = clique_plan_from_json(j.at("ground_truth"));
    } else if (type == "biclique") {
        inst.kind = SdpVariant::Biclique;
        const int m = j.at("m").get<int>();
        const int n = j.at("n").get<int>();
        if (static_cast<int>(flat.size()) != m * n)
            throw std::invalid_argument("instance: weights length != m*n");
        Matrix w(m, n);
        for (int i = 0; i < m; ++i)
            for (int jj = 0; jj < n; ++jj) w(i, jj) = flat[i * n + jj];
        inst.bip = BipartiteWeights(std::move(w));
        if (j.contains("ground_truth"))
            inst.truth_biclique = biclique_plan_from_json(j.at("ground_truth"));
    } else {
        throw std::invalid_argument("instance: unknown type " + type);
    }
    if (j.contains("gen")) {
        GenSpec g;
        g.dist_in = distribution_from_json(j.at("gen").at("dist_in"));
        g.dist_out = distribution_from_json(j.at("gen").at("dist_out"));
        g.seed = j.at("gen").at("seed").get<std::uint64_t>();
        inst.gen = g;
    }
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    json j;
    in >> j;
    return instance_from_json(j);
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << to_json(inst).dump(2) << '\n';
}

SweepSpec sweep_spec_from_json(const json& j) {
    SweepSpec spec;
    const std::string kind = j.value("kind", std::string("clique"));
    spec.kind = kind == "biclique" ? SdpVariant::Biclique : SdpVariant::Clique;
    spec.block_sizes_grid = j.at("block_sizes").get<std::vector<std::vector<int>>>();
    if (j.contains("right_sizes"))
        spec.right_sizes_grid = j.at("right_sizes").get<std::vector<std::vector<int>>>();
    spec.noise_grid = j.value("noise", std::vector<int>{0});
    spec.right_noise_grid = j.value("right_noise", std::vector<int>{0});
    spec.alpha_grid = j.at("alpha").get<std::vector<double>>();
    spec.beta_grid = j.at("beta").get<std::vector<double>>();
    if (j.contains("dists")) {
        spec.dist_grid.clear();
        for (const auto& d : j.at("dists"))
            spec.dist_grid.emplace_back(distribution_from_json(d.at("in")),
                                        distribution_from_json(d.at("out")));
    }
    spec.trials = j.value("trials", 1);
    spec.base_seed = j.value("base_seed", std::uint64_t{0});
    if (j.contains("solver")) {
        const auto& s = j.at("solver");
        spec.solver.tol_feas = s.value("tol_feas", spec.solver.tol_feas);
        spec.solver.tol_obj_rel = s.value("tol_obj_rel", spec.solver.tol_obj_rel);
        spec.solver.max_iter = s.value("max_iter", spec.solver.max_iter);
        spec.solver.penalty = s.value("penalty", spec.solver.penalty);
        spec.solver.adaptive_penalty =
            s.value("adaptive_penalty", spec.solver.adaptive_penalty);
    }
    if (j.contains("params")) {
        const auto& p = j.at("params");
        spec.params.c1 = p.value("c1", spec.params.c1);
        spec.params.c2 = p.value("c2", spec.params.c2);
        spec.params.c3 = p.value("c3", spec.params.c3);
        spec.params.b1 = p.value("b1", spec.params.b1);
        spec.params.b2 = p.value("b2", spec.params.b2);
        spec.params.epsilon = p.value("epsilon", spec.params.epsilon);
        spec.params.kappa = p.value("kappa", spec.params.kappa);
    }
    spec.output_path = j.value("output", std::string("sweep.csv"));
    spec.include_timing = j.value("include_timing", false);
    spec.validate();
    return spec;
}

json to_json(const SweepSpec& spec) {
    json j;
    j["kind"] = spec.kind == SdpVariant::Clique ? "clique" : "biclique";
    j["block_sizes"] = spec.block_sizes_grid;
    if (!spec.right_sizes_grid.empty()) j["right_sizes"] = spec.right_sizes_grid;
    j["noise"] = spec.noise_grid;
    j["right_noise"] = spec.right_noise_grid;
    j["alpha"] = spec.alpha_grid;
    j["beta"] = spec.beta_grid;
    json dists = json::array();
    for (const auto& [din, dout] : spec.dist_grid) {
        json d;
        d["in"] = to_json(din);
        d["out"] = to_json(dout);
        dists.push_back(d);
    }
    j["dists"] = dists;
    j["trials"] = spec.trials;
    j["base_seed"] = spec.base_seed;
    j["solver"] = {{"tol_feas", spec.solver.tol_feas},
                   {"tol_obj_rel", spec.solver.tol_obj_rel},
                   {"max_iter", spec.solver.max_iter},
                   {"penalty", spec.solver.penalty},
                   {"adaptive_penalty", spec.solver.adaptive_penalty}};
    j["params"] = {{"c1", spec.params.c1},   {"c2", spec.params.c2},
                   {"c3", spec.params.c3},   {"b1", spec.params.b1},
                   {"b2", spec.params.b2},   {"epsilon", spec.params.epsilon},
                   {"kappa", spec.params.kappa}};
    j["output"] = spec.output_path;
    j["include_timing"] = spec.include_timing;
    return j;
}

SweepSpec load_sweep_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sweep spec: " + path);
    json j;
    in >> j;
    return sweep_spec_from_json(j);
}

PointCloud load_point_cloud_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open point cloud: " + path);
    PointCloud pts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::vector<double> row;
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        Vector v(row.size());
        for (std::size_t i = 0; i < row.size(); ++i) v(i) = row[i];
        pts.points.push_back(std::move(v));
    }
    pts.validate();
    return pts;
}

json to_json(const KktReport& r) {
    return json{{"stationarity_resid", r.stationarity_resid},
                {"cs_rowsum_resid", r.cs_rowsum_resid},
                {"cs_nonneg_resid", r.cs_nonneg_resid},
                {"cs_sdp_resid", r.cs_sdp_resid},
                {"min_lambda", r.min_lambda},
                {"min_phi", r.min_phi},
                {"min_eta", r.min_eta},
                {"min_eig_s", r.min_eig_s},
                {"s_norm2", r.s_norm2},
                {"min_mu", r.min_mu},
                {"s_part_norm", r.s_part_norm},
                {"sufficient_margin", r.sufficient_margin},
                {"passed", r.passed}};
}

json to_json(const ResidualReport& r) {
    return json{{"psd", r.psd},
                {"nonneg", r.nonneg},
                {"trace", r.trace},
                {"rowsum", r.rowsum}};
}

} // namespace kdc
