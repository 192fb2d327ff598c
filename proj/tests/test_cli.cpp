#include "kdc/cli.hpp"

#include "kdc/graph_core.hpp"
#include "kdc/instance_io.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <vector>

using namespace kdc;
using nlohmann::json;

namespace {

int run_cli(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"kdclique"};
    argv.insert(argv.end(), args.begin(), args.end());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    json j;
    in >> j;
    return j;
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("gen produces a valid instance document") {
    TempFile f{"cli_gen_test.json"};
    CHECK(run_cli({"gen", "--type", "clique", "--blocks", "4,4", "--noise", "2",
                   "--alpha", "0.9", "--beta", "0.05", "--seed", "7", "-o",
                   f.path.c_str()}) == 0);
    json j = read_json(f.path);
    CHECK(j.at("type") == "clique");
    CHECK(j.at("n") == 10);
    CHECK(j.at("k") == 2);
    CHECK(j.at("weights").size() == 100);
    CHECK(j.contains("ground_truth"));
    CHECK(j.at("gen").at("seed") == 7);

    // The document round-trips through the typed loader.
    Instance inst = load_instance(f.path);
    CHECK(inst.kind == SdpVariant::Clique);
    CHECK(inst.sym->n() == 10);
    CHECK(inst.truth_clique->k() == 2);
    save_instance(inst, f.path);
    Instance again = load_instance(f.path);
    CHECK(again.sym->w() == inst.sym->w());
    CHECK(partitions_equal(*again.truth_clique, *inst.truth_clique));
}

TEST_CASE("solve then certify on an ideal instance") {
    TempFile inst{"cli_ideal_test.json"};
    TempFile sol{"cli_ideal_sol.json"};
    TempFile cert{"cli_ideal_cert.json"};
    CHECK(run_cli({"gen", "--type", "clique", "--blocks", "5,5", "--alpha", "1.0",
                   "--beta", "0.0", "--seed", "1", "-o", inst.path.c_str()}) == 0);
    CHECK(run_cli({"solve", inst.path.c_str(), "-o", sol.path.c_str()}) == 0);
    json s = read_json(sol.path);
    CHECK(s.at("status") == "converged");
    CHECK(s.at("exact") == true);
    CHECK(std::abs(s.at("objective").get<double>() - 10.0) <= 1e-3);

    CHECK(run_cli({"certify", inst.path.c_str(), "-o", cert.path.c_str()}) == 0);
    json c = read_json(cert.path);
    CHECK(c.at("passed") == true);
    CHECK(c.at("uniqueness") == true);
}

TEST_CASE("biclique gen/solve/oracle agree on a small instance") {
    TempFile inst{"cli_bic_test.json"};
    TempFile sol{"cli_bic_sol.json"};
    TempFile orc{"cli_bic_orc.json"};
    CHECK(run_cli({"gen", "--type", "biclique", "--blocks", "3,3", "--right-blocks",
                   "3,3", "--alpha", "0.95", "--beta", "0.05", "--seed", "5", "-o",
                   inst.path.c_str()}) == 0);
    CHECK(run_cli({"solve", inst.path.c_str(), "-o", sol.path.c_str()}) == 0);
    CHECK(run_cli({"oracle", inst.path.c_str(), "-o", orc.path.c_str()}) == 0);
    json s = read_json(sol.path);
    json o = read_json(orc.path);
    CHECK(s.at("objective").get<double>() >= o.at("value").get<double>() - 1e-4);
}

TEST_CASE("oracle refuses instances above the enumeration cap") {
    TempFile inst{"cli_cap_test.json"};
    CHECK(run_cli({"gen", "--type", "clique", "--blocks", "7,7", "--alpha", "0.9",
                   "--beta", "0.1", "--seed", "2", "-o", inst.path.c_str()}) == 0);
    CHECK(run_cli({"oracle", inst.path.c_str()}) == 1);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli({"frobnicate"}) == 2);
    CHECK(run_cli({"gen"}) == 2);        // missing required --blocks
    CHECK(run_cli({}) == 2);             // missing subcommand
}

TEST_CASE("export-sdpa writes the problem file") {
    TempFile inst{"cli_sdpa_test.json"};
    TempFile out{"cli_sdpa_test.dat-s"};
    CHECK(run_cli({"gen", "--type", "clique", "--blocks", "2,2", "--alpha", "0.9",
                   "--beta", "0.1", "--seed", "3", "-o", inst.path.c_str()}) == 0);
    CHECK(run_cli({"export-sdpa", inst.path.c_str(), "-o", out.path.c_str()}) == 0);
    std::ifstream in(out.path);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line.substr(0, 10) == "\"kdclique ");
    std::getline(in, line);
    CHECK(line.find("= mDIM") != std::string::npos);
}

TEST_CASE("sweep subcommand runs a spec file") {
    TempFile specf{"cli_sweep_spec.json"};
    TempFile out{"cli_sweep_out.csv"};
    json spec;
    spec["kind"] = "clique";
    spec["block_sizes"] = {{4, 4}};
    spec["noise"] = {0};
    spec["alpha"] = {0.9};
    spec["beta"] = {0.1};
    spec["trials"] = 2;
    spec["base_seed"] = 9;
    spec["output"] = out.path;
    {
        std::ofstream o(specf.path);
        o << spec.dump(2);
    }
    CHECK(run_cli({"sweep", specf.path.c_str()}) == 0);
    std::ifstream in(out.path);
    REQUIRE(in.good());
    int lines = 0;
    std::string line;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 3); // header + 1 cell x 2 trials
}

TEST_CASE("norms subcommand emits the suite report") {
    TempFile out{"cli_norms_out.json"};
    CHECK(run_cli({"norms", "--n", "50", "--trials", "10", "--hoeffding-m", "100",
                   "--hoeffding-trials", "20", "-o", out.path.c_str()}) == 0);
    json j = read_json(out.path);
    CHECK(j.at("trials") == 10);
    CHECK(j.at("ratios").size() == 10);
    CHECK(j.at("hoeffding").at("points").size() == 2);
}

TEST_CASE("point cloud csv loader") {
    TempFile f{"cli_points_test.csv"};
    {
        std::ofstream o(f.path);
        o << "0.0,0.0\n0.1,0.2\n0.3,0.1\n";
    }
    PointCloud pts = load_point_cloud_csv(f.path);
    CHECK(pts.size() == 3);
    CHECK(pts.dim() == 2);
    CHECK(pts.points[1](1) == doctest::Approx(0.2));
}

TEST_CASE("gen builds similarity instances from point clouds") {
    TempFile pts{"cli_points_gen.csv"};
    TempFile inst{"cli_points_inst.json"};
    {
        std::ofstream o(pts.path);
        o << "0.0,0.0\n0.02,0.01\n0.5,0.5\n0.52,0.49\n";
    }
    CHECK(run_cli({"gen", "--points", pts.path.c_str(), "--k", "2", "-o",
                   inst.path.c_str()}) == 0);
    Instance loaded = load_instance(inst.path);
    CHECK(loaded.sym->n() == 4);
    CHECK(loaded.k == 2);
    CHECK_FALSE(loaded.truth_clique.has_value());
    // Near points weigh close to 1, far pairs visibly lower.
    CHECK(loaded.sym->w()(0, 1) > 0.99);
    CHECK(loaded.sym->w()(0, 2) < 0.6);

    // --blocks and --points together is a usage error.
    CHECK(run_cli({"gen", "--blocks", "2,2", "--points", pts.path.c_str()}) == 2);
}
