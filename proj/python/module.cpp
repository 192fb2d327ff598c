// Python bindings for the main operations: planted instance generation,
// densities and lifts, the SDP solver, rounding, and dual certificates.
#include "kdc/bench.hpp"
#include "kdc/certificates.hpp"
#include "kdc/graph_core.hpp"
#include "kdc/planted.hpp"
#include "kdc/recovery.hpp"
#include "kdc/sdp.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace kdc;

namespace {

DistributionSpec make_dist(const std::string& kind, double mean, double half_width) {
    if (kind == "bernoulli") return DistributionSpec::bernoulli(mean);
    if (kind == "uniform") return DistributionSpec::uniform(mean, half_width);
    throw std::invalid_argument("unknown distribution kind: " + kind);
}

PointCloud cloud_from_rows(const Matrix& rows) {
    PointCloud pts;
    for (int i = 0; i < rows.rows(); ++i) pts.points.push_back(rows.row(i));
    return pts;
}

} // namespace

PYBIND11_MODULE(_kdclique, m) {
    m.doc() = "Densest k-disjoint-clique / biclique SDP relaxations, planted "
              "models, dual certificates, and recovery experiments";

    py::class_<CliquePlan>(m, "CliquePlan")
        .def(py::init<>())
        .def_readwrite("n", &CliquePlan::n)
        .def_readwrite("cliques", &CliquePlan::cliques)
        .def_readwrite("noise", &CliquePlan::noise)
        .def("k", &CliquePlan::k)
        .def("r_hat", &CliquePlan::r_hat)
        .def("validate", &CliquePlan::validate);

    py::class_<BicliquePlan>(m, "BicliquePlan")
        .def(py::init<>())
        .def_readwrite("m", &BicliquePlan::m)
        .def_readwrite("n", &BicliquePlan::n)
        .def_readwrite("left_blocks", &BicliquePlan::left_blocks)
        .def_readwrite("right_blocks", &BicliquePlan::right_blocks)
        .def_readwrite("left_noise", &BicliquePlan::left_noise)
        .def_readwrite("right_noise", &BicliquePlan::right_noise)
        .def("k", &BicliquePlan::k)
        .def("tau", &BicliquePlan::tau)
        .def("validate", &BicliquePlan::validate);

    m.def("make_clique_plan", &make_clique_plan, py::arg("block_sizes"),
          py::arg("noise") = 0);
    m.def("make_biclique_plan", &make_biclique_plan, py::arg("left_sizes"),
          py::arg("right_sizes"), py::arg("left_noise") = 0,
          py::arg("right_noise") = 0);

    m.def(
        "sample_planted_cluster",
        [](const CliquePlan& plan, double alpha, double beta, std::uint64_t seed,
           const std::string& dist, double hw_in, double hw_out) {
            PlantedCliqueSpec spec{plan, make_dist(dist, alpha, hw_in),
                                   make_dist(dist, beta, hw_out)};
            return sample_planted_cluster(spec, seed).w();
        },
        py::arg("plan"), py::arg("alpha"), py::arg("beta"), py::arg("seed") = 0,
        py::arg("dist") = "bernoulli", py::arg("hw_in") = 0.0,
        py::arg("hw_out") = 0.0);
    m.def(
        "sample_planted_bicluster",
        [](const BicliquePlan& plan, double alpha, double beta, std::uint64_t seed,
           const std::string& dist, double hw_in, double hw_out) {
            PlantedBicliqueSpec spec{plan, make_dist(dist, alpha, hw_in),
                                     make_dist(dist, beta, hw_out)};
            return sample_planted_bicluster(spec, seed).w();
        },
        py::arg("plan"), py::arg("alpha"), py::arg("beta"), py::arg("seed") = 0,
        py::arg("dist") = "bernoulli", py::arg("hw_in") = 0.0,
        py::arg("hw_out") = 0.0);

    m.def("clique_density", [](const Matrix& w, const VertexSet& c) {
        return clique_density(SymmetricWeights{w}, c);
    });
    m.def("clique_sum_density", [](const Matrix& w, const CliquePlan& plan) {
        return clique_sum_density(SymmetricWeights{w}, plan);
    });
    m.def("biclique_density",
          [](const Matrix& w, const VertexSet& us, const VertexSet& vs) {
              return biclique_density(BipartiteWeights{w}, us, vs);
          });
    m.def("biclique_sum_density", [](const Matrix& w, const BicliquePlan& plan) {
        return biclique_sum_density(BipartiteWeights{w}, plan);
    });
    m.def("lift_clique",
          [](const CliquePlan& plan) { return lift_clique(plan).mat(); });
    m.def("lift_biclique",
          [](const BicliquePlan& plan) { return lift_biclique(plan).mat(); });
    m.def(
        "similarity_from_points",
        [](const Matrix& points, bool rescale) {
            return similarity_from_points(cloud_from_rows(points), rescale).w();
        },
        py::arg("points"), py::arg("rescale") = false);
    m.def("brute_force_densest_kdc", [](const Matrix& w, int k) {
        return brute_force_densest_kdc(SymmetricWeights{w}, k);
    });
    m.def("brute_force_densest_kdb", [](const Matrix& w, int k) {
        return brute_force_densest_kdb(BipartiteWeights{w}, k);
    });

    m.def("gamma_clique", &gamma_clique);
    m.def("gamma_biclique", &gamma_biclique);
    m.def("smw_solve", &smw_solve);

    py::class_<ResidualReport>(m, "ResidualReport")
        .def_readonly("psd", &ResidualReport::psd)
        .def_readonly("nonneg", &ResidualReport::nonneg)
        .def_readonly("trace", &ResidualReport::trace)
        .def_readonly("rowsum", &ResidualReport::rowsum)
        .def("max", &ResidualReport::max);

    py::class_<SolverOptions>(m, "SolverOptions")
        .def(py::init<>())
        .def_readwrite("tol_feas", &SolverOptions::tol_feas)
        .def_readwrite("tol_obj_rel", &SolverOptions::tol_obj_rel)
        .def_readwrite("max_iter", &SolverOptions::max_iter)
        .def_readwrite("penalty", &SolverOptions::penalty)
        .def_readwrite("adaptive_penalty", &SolverOptions::adaptive_penalty)
        .def_readwrite("trace_csv", &SolverOptions::trace_csv);

    py::class_<SolverResult>(m, "SolverResult")
        .def_property_readonly("x",
                               [](const SolverResult& r) { return r.x.mat(); })
        .def_readonly("objective", &SolverResult::objective)
        .def_readonly("residuals", &SolverResult::residuals)
        .def_readonly("iterations", &SolverResult::iterations)
        .def_readonly("spectral_norm", &SolverResult::spectral_norm)
        .def_property_readonly("converged", [](const SolverResult& r) {
            return r.status == SolveStatus::Converged;
        });

    m.def(
        "solve_clique_sdp",
        [](const Matrix& w, int k, const SolverOptions& opts) {
            return solve(assemble_clique_sdp(SymmetricWeights{w}, k), opts);
        },
        py::arg("w"), py::arg("k"), py::arg("options") = SolverOptions{});
    m.def(
        "solve_biclique_sdp",
        [](const Matrix& w, int k, const SolverOptions& opts) {
            return solve(assemble_biclique_sdp(BipartiteWeights{w}, k), opts);
        },
        py::arg("w"), py::arg("k"), py::arg("options") = SolverOptions{});
    m.def("project_psd",
          [](const Matrix& x) { return project_psd(DenseSymMatrix{x}).mat(); });
    m.def(
        "export_sdpa_clique",
        [](const Matrix& w, int k, const std::string& path) {
            export_sdpa_file(assemble_clique_sdp(SymmetricWeights{w}, k), path);
        },
        py::arg("w"), py::arg("k"), py::arg("path"));
    m.def(
        "export_sdpa_biclique",
        [](const Matrix& w, int k, const std::string& path) {
            export_sdpa_file(assemble_biclique_sdp(BipartiteWeights{w}, k), path);
        },
        py::arg("w"), py::arg("k"), py::arg("path"));

    m.def(
        "round_clique_solution",
        [](const Matrix& x, int k, double theta) {
            return round_clique_solution(DenseSymMatrix{x}, k, theta);
        },
        py::arg("x"), py::arg("k"), py::arg("theta") = 0.0);
    m.def(
        "round_biclique_solution",
        [](const Matrix& z, int m, int n, int k, double theta) {
            return round_biclique_solution(DenseSymMatrix{z}, m, n, k, theta);
        },
        py::arg("z"), py::arg("m"), py::arg("n"), py::arg("k"),
        py::arg("theta") = 0.0);
    m.def("partitions_equal",
          py::overload_cast<const CliquePlan&, const CliquePlan&>(&partitions_equal));
    m.def("partitions_equal", py::overload_cast<const BicliquePlan&, const BicliquePlan&>(
                                  &partitions_equal));
    m.def(
        "is_lift_of",
        [](const Matrix& x, const CliquePlan& plan, double tol) {
            return is_lift_of(DenseSymMatrix{x}, plan, tol);
        },
        py::arg("x"), py::arg("plan"), py::arg("tol") = 1e-6);

    py::class_<KktReport>(m, "KktReport")
        .def_readonly("stationarity_resid", &KktReport::stationarity_resid)
        .def_readonly("cs_rowsum_resid", &KktReport::cs_rowsum_resid)
        .def_readonly("cs_nonneg_resid", &KktReport::cs_nonneg_resid)
        .def_readonly("cs_sdp_resid", &KktReport::cs_sdp_resid)
        .def_readonly("min_lambda", &KktReport::min_lambda)
        .def_readonly("min_phi", &KktReport::min_phi)
        .def_readonly("min_eta", &KktReport::min_eta)
        .def_readonly("min_eig_s", &KktReport::min_eig_s)
        .def_readonly("s_norm2", &KktReport::s_norm2)
        .def_readonly("s_part_norm", &KktReport::s_part_norm)
        .def_readonly("sufficient_margin", &KktReport::sufficient_margin)
        .def_readonly("passed", &KktReport::passed);

    py::class_<CliqueCertificate>(m, "CliqueCertificate")
        .def_readonly("mu", &CliqueCertificate::mu)
        .def_readonly("gamma", &CliqueCertificate::gamma)
        .def_readonly("alpha_hat", &CliqueCertificate::alpha_hat)
        .def_readonly("beta_hat", &CliqueCertificate::beta_hat)
        .def_readonly("lambda_", &CliqueCertificate::lambda)
        .def_readonly("eta", &CliqueCertificate::eta)
        .def_readonly("s", &CliqueCertificate::s)
        .def_readonly("s_tilde", &CliqueCertificate::s_tilde);

    py::class_<BicliqueCertificate>(m, "BicliqueCertificate")
        .def_readonly("mu1", &BicliqueCertificate::mu1)
        .def_readonly("mu2", &BicliqueCertificate::mu2)
        .def_readonly("gamma", &BicliqueCertificate::gamma)
        .def_readonly("alpha_hat", &BicliqueCertificate::alpha_hat)
        .def_readonly("beta_hat", &BicliqueCertificate::beta_hat)
        .def_readonly("lambda_", &BicliqueCertificate::lambda)
        .def_readonly("phi", &BicliqueCertificate::phi)
        .def_readonly("eta", &BicliqueCertificate::eta)
        .def_readonly("s", &BicliqueCertificate::s)
        .def_readonly("s1", &BicliqueCertificate::s1);

    m.def(
        "build_clique_certificate",
        [](const Matrix& w, const CliquePlan& plan, double epsilon) {
            return build_clique_certificate(SymmetricWeights{w}, plan, epsilon);
        },
        py::arg("w"), py::arg("plan"), py::arg("epsilon") = 0.1);
    m.def(
        "verify_clique_kkt",
        [](const Matrix& w, const CliquePlan& plan, const CliqueCertificate& cert,
           double tol) {
            return verify_clique_kkt(SymmetricWeights{w}, plan, cert, tol);
        },
        py::arg("w"), py::arg("plan"), py::arg("cert"), py::arg("tol") = 1e-6);
    m.def(
        "build_biclique_certificate",
        [](const Matrix& w, const BicliquePlan& plan, double epsilon, double kappa,
           double rho1) {
            return build_biclique_certificate(BipartiteWeights{w}, plan, epsilon,
                                              kappa, rho1);
        },
        py::arg("w"), py::arg("plan"), py::arg("epsilon") = 0.1,
        py::arg("kappa") = 0.9, py::arg("rho1") = 1.0);
    m.def(
        "verify_biclique_kkt",
        [](const Matrix& w, const BicliquePlan& plan, const BicliqueCertificate& cert,
           double tol) {
            return verify_biclique_kkt(BipartiteWeights{w}, plan, cert, tol);
        },
        py::arg("w"), py::arg("plan"), py::arg("cert"), py::arg("tol") = 1e-6);
    m.def("clique_uniqueness_holds", [](const Matrix& w, const CliquePlan& plan) {
        return clique_uniqueness_holds(SymmetricWeights{w}, plan);
    });
    m.def("biclique_uniqueness_holds", [](const Matrix& w, const BicliquePlan& plan) {
        return biclique_uniqueness_holds(BipartiteWeights{w}, plan);
    });

    py::class_<HoeffdingPoint>(m, "HoeffdingPoint")
        .def_readonly("t", &HoeffdingPoint::t)
        .def_readonly("empirical_frequency", &HoeffdingPoint::empirical_frequency)
        .def_readonly("bound", &HoeffdingPoint::bound);
    py::class_<HoeffdingReport>(m, "HoeffdingReport")
        .def_readonly("m", &HoeffdingReport::m)
        .def_readonly("trials", &HoeffdingReport::trials)
        .def_readonly("points", &HoeffdingReport::points);
    py::class_<NormSuiteReport>(m, "NormSuiteReport")
        .def_readonly("ratios", &NormSuiteReport::ratios)
        .def_readonly("max_ratio", &NormSuiteReport::max_ratio)
        .def_readonly("q50", &NormSuiteReport::q50)
        .def_readonly("q95", &NormSuiteReport::q95)
        .def_readonly("q99", &NormSuiteReport::q99)
        .def("count_above", &NormSuiteReport::count_above);
    m.def(
        "empirical_norm_suite",
        [](const std::string& dist, double mean, double hw, int n, bool symmetric,
           double y, int trials, std::uint64_t seed) {
            return empirical_norm_suite(make_dist(dist, mean, hw), n,
                                        NormShape{symmetric, y}, trials, seed);
        },
        py::arg("dist") = "bernoulli", py::arg("mean") = 0.5, py::arg("hw") = 0.0,
        py::arg("n") = 400, py::arg("symmetric") = true, py::arg("y") = 0.5,
        py::arg("trials") = 100, py::arg("seed") = 0);
    m.def(
        "hoeffding_suite",
        [](const std::string& dist, double mean, double hw, int m_samples, int trials,
           std::uint64_t seed) {
            return hoeffding_suite(make_dist(dist, mean, hw), m_samples, trials, seed);
        },
        py::arg("dist") = "bernoulli", py::arg("mean") = 0.5, py::arg("hw") = 0.0,
        py::arg("m") = 1000, py::arg("trials") = 1000, py::arg("seed") = 0);
}
