#include "kdc/sdp.hpp"

#include "kdc/graph_core.hpp"
#include "kdc/planted.hpp"
#include "kdc/recovery.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <fstream>
#include <sstream>

using namespace kdc;

namespace {

SymmetricWeights random_weights(int n, std::uint64_t seed) {
    CounterRng rng(seed);
    Matrix w(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) w(i, j) = w(j, i) = rng.next_double();
    return SymmetricWeights(std::move(w));
}

SymmetricWeights ideal_weights(const CliquePlan& plan) {
    Matrix w = Matrix::Zero(plan.n, plan.n);
    for (const auto& c : plan.cliques)
        for (int i : c)
            for (int j : c) w(i, j) = 1.0;
    return SymmetricWeights(std::move(w));
}

// Exact projection of a symmetric 3x3 matrix onto the clique polytope via
// active-set enumeration over the 9 inequality constraints (6 sign, 3 row
// sums), with the trace equality always active. Convex QP: any KKT point
// with feasible primal and nonnegative multipliers is the projection.
Matrix qp_projection_oracle_3x3(const Matrix& m, double k) {
    // Variables v = (x00, x01, x02, x11, x12, x22); off-diagonals weighted 2.
    const int idx[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    Vector weights(6), target(6);
    weights << 1, 2, 2, 1, 2, 1;
    target << m(0, 0), m(0, 1), m(0, 2), m(1, 1), m(1, 2), m(2, 2);

    // Inequality rows: 6 sign constraints (-v_i <= 0), 3 row sums (<= 1).
    std::vector<Vector> ineq;
    std::vector<double> rhs;
    for (int i = 0; i < 6; ++i) {
        Vector a = Vector::Zero(6);
        a(i) = -1.0;
        ineq.push_back(a);
        rhs.push_back(0.0);
    }
    for (int r = 0; r < 3; ++r) {
        Vector a = Vector::Zero(6);
        for (int c = 0; c < 3; ++c) a(idx[r][c]) += 1.0;
        ineq.push_back(a);
        rhs.push_back(1.0);
    }
    Vector trace_row = Vector::Zero(6);
    trace_row(0) = trace_row(3) = trace_row(5) = 1.0;

    double best_obj = std::numeric_limits<double>::infinity();
    Vector best = Vector::Zero(6);
    for (int mask = 0; mask < (1 << 9); ++mask) {
        std::vector<int> active;
        for (int i = 0; i < 9; ++i)
            if (mask & (1 << i)) active.push_back(i);
        const int na = static_cast<int>(active.size());
        // KKT: [2 diag(w), A^T; A, 0] (v; mult) = (2 w .* target; b)
        Matrix kkt = Matrix::Zero(7 + na, 7 + na);
        Vector rhsv = Vector::Zero(7 + na);
        for (int i = 0; i < 6; ++i) {
            kkt(i, i) = 2.0 * weights(i);
            rhsv(i) = 2.0 * weights(i) * target(i);
        }
        kkt.block(6, 0, 1, 6) = trace_row.transpose();
        kkt.block(0, 6, 6, 1) = trace_row;
        rhsv(6) = k;
        for (int a = 0; a < na; ++a) {
            kkt.block(7 + a, 0, 1, 6) = ineq[active[a]].transpose();
            kkt.block(0, 7 + a, 6, 1) = ineq[active[a]];
            rhsv(7 + a) = rhs[active[a]];
        }
        Eigen::FullPivLU<Matrix> lu(kkt);
        if (!lu.isInvertible()) continue;
        Vector sol = lu.solve(rhsv);
        const Vector v = sol.head(6);
        bool ok = true;
        for (int i = 0; i < 9; ++i)
            if (ineq[i].dot(v) > rhs[i] + 1e-9) ok = false;
        for (int a = 0; a < na; ++a)
            if (sol(7 + a) < -1e-9) ok = false;
        if (!ok) continue;
        double obj = 0.0;
        for (int i = 0; i < 6; ++i)
            obj += weights(i) * (v(i) - target(i)) * (v(i) - target(i));
        if (obj < best_obj) {
            best_obj = obj;
            best = v;
        }
    }
    Matrix out(3, 3);
    out << best(0), best(1), best(2), best(1), best(3), best(4), best(2), best(4),
        best(5);
    return out;
}

} // namespace

TEST_CASE("assembly and preconditions") {
    SymmetricWeights w = random_weights(5, 1);
    CHECK_THROWS_AS(assemble_clique_sdp(w, 0), std::invalid_argument);
    CHECK_THROWS_AS(assemble_clique_sdp(w, 6), std::invalid_argument);
    SdpProblem p = assemble_clique_sdp(w, 2);
    CHECK(p.dim == 5);
    CHECK(p.block_count() == 1);

    BipartiteWeights bw{Matrix::Ones(2, 3)};
    CHECK_THROWS_AS(assemble_biclique_sdp(bw, 3), std::invalid_argument);
    SdpProblem bp = assemble_biclique_sdp(bw, 2);
    CHECK(bp.dim == 5);
    CHECK(bp.block_count() == 2);
    CHECK(bp.cost.topRightCorner(2, 3) == 0.5 * bw.w());
}

TEST_CASE("project_psd") {
    // Already psd: unchanged.
    Matrix a(2, 2);
    a << 2, 1, 1, 2;
    CHECK((project_psd(DenseSymMatrix(a)).mat() - a).cwiseAbs().maxCoeff() <= 1e-12);

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = -2.0;
    Matrix pd = project_psd(DenseSymMatrix(d)).mat();
    CHECK(pd(0, 0) == doctest::Approx(1.0));
    CHECK(pd(1, 1) == doctest::Approx(0.0).epsilon(1e-12));

    // Frobenius optimality against random psd witnesses, plus idempotence.
    CounterRng rng(4);
    Matrix msym(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j)
            msym(i, j) = msym(j, i) = 2.0 * rng.next_double() - 1.0;
    Matrix proj = project_psd(DenseSymMatrix(msym)).mat();
    Eigen::SelfAdjointEigenSolver<Matrix> es(proj, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
    const double dist = (msym - proj).norm();
    for (int t = 0; t < 100; ++t) {
        Matrix g(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) g(i, j) = 2.0 * rng.next_double() - 1.0;
        Matrix witness = g * g.transpose();
        CHECK(dist <= (msym - witness).norm() + 1e-12);
    }
    CHECK((project_psd(DenseSymMatrix(proj)).mat() - proj).cwiseAbs().maxCoeff() <=
          1e-10);
}

TEST_CASE("project_polyhedral") {
    // Feasible input passes through.
    CliquePlan plan = make_clique_plan({2, 2}, 1);
    SdpProblem p = assemble_clique_sdp(random_weights(5, 2), 2);
    const Matrix lift = lift_clique(plan).mat();
    CHECK((project_polyhedral(DenseSymMatrix(lift), p).mat() - lift)
              .cwiseAbs()
              .maxCoeff() <= 1e-9);

    // All-ones with k = 2: row sums force the identity.
    SdpProblem p2 = assemble_clique_sdp(random_weights(2, 3), 2);
    Matrix proj = project_polyhedral(DenseSymMatrix(Matrix::Ones(2, 2)), p2).mat();
    CHECK((proj - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-8);

    // Active-set QP oracle at n = 3, k = 1, and idempotence.
    SdpProblem p3 = assemble_clique_sdp(random_weights(3, 4), 1);
    CounterRng rng(8);
    for (int t = 0; t < 25; ++t) {
        Matrix m(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j)
                m(i, j) = m(j, i) = 2.0 * rng.next_double() - 0.5;
        const Matrix got = project_polyhedral(DenseSymMatrix(m), p3).mat();
        const Matrix want = qp_projection_oracle_3x3(m, 1.0);
        CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-6);
        CHECK((project_polyhedral(DenseSymMatrix(got), p3).mat() - got)
                  .cwiseAbs()
                  .maxCoeff() <= 1e-8);
    }
}

TEST_CASE("residual report") {
    CliquePlan plan = make_clique_plan({3, 2}, 1);
    SdpProblem p = assemble_clique_sdp(random_weights(6, 5), 2);
    ResidualReport r = residuals(lift_clique(plan), p);
    CHECK(r.psd <= 1e-12);
    CHECK(r.nonneg <= 1e-12);
    CHECK(r.trace <= 1e-12);
    CHECK(r.rowsum <= 1e-12);

    ResidualReport rz = residuals(DenseSymMatrix(Matrix::Zero(6, 6)), p);
    CHECK(rz.trace == doctest::Approx(2.0));
    CHECK(rz.psd == 0.0);
    CHECK(rz.nonneg == 0.0);
    CHECK(rz.rowsum == 0.0);

    SdpProblem p1 = assemble_clique_sdp(random_weights(2, 6), 1);
    ResidualReport rn = residuals(DenseSymMatrix(Matrix(-Matrix::Identity(2, 2))), p1);
    CHECK(rn.psd == doctest::Approx(1.0));
    CHECK(rn.nonneg == doctest::Approx(1.0));
    CHECK(rn.trace == doctest::Approx(3.0));
}

TEST_CASE("solve ideal planted instances") {
    CliquePlan plan = make_clique_plan({3, 4}, 1);
    SymmetricWeights w = ideal_weights(plan);
    SolverResult res = solve(assemble_clique_sdp(w, 2));
    CHECK(res.status == SolveStatus::Converged);
    CHECK(res.objective == doctest::Approx(7.0).epsilon(1e-4));
    CHECK(is_lift_of(res.x, plan, 1e-3));
    CHECK(res.spectral_norm <= 1.0 + 1e-6);

    // Reported residuals are re-measured on the returned matrix.
    ResidualReport again = residuals(res.x, assemble_clique_sdp(w, 2));
    CHECK(again.psd == res.residuals.psd);
    CHECK(again.nonneg == res.residuals.nonneg);
    CHECK(again.trace == res.residuals.trace);
    CHECK(again.rowsum == res.residuals.rowsum);

    // Determinism.
    SolverResult res2 = solve(assemble_clique_sdp(w, 2));
    CHECK(res.x.mat() == res2.x.mat());

    // k = n admits the identity as a witness.
    SymmetricWeights wr = random_weights(6, 9);
    SolverResult full = solve(assemble_clique_sdp(wr, 6));
    CHECK(full.objective >= wr.w().trace() - 1e-4);

    // n = 3, k = 1 identity-cost problem: every feasible point has value 1.
    SolverResult unit = solve(assemble_clique_sdp(
        SymmetricWeights{Matrix::Identity(3, 3)}, 1));
    CHECK(unit.objective == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("solve ideal biclique instances") {
    // Single unit biclique: optimum 1 at the all-ones 2x2 matrix.
    SolverResult tiny = solve(assemble_biclique_sdp(BipartiteWeights{Matrix::Ones(1, 1)}, 1));
    CHECK(tiny.objective == doctest::Approx(1.0).epsilon(1e-4));

    BicliquePlan plan = make_biclique_plan({4, 2}, {1, 2}, 0, 0);
    Matrix w = Matrix::Zero(6, 3);
    for (int q = 0; q < 2; ++q)
        for (int u : plan.left_blocks[q])
            for (int v : plan.right_blocks[q]) w(u, v) = 1.0;
    SolverResult res = solve(assemble_biclique_sdp(BipartiteWeights{w}, 2));
    CHECK(res.status == SolveStatus::Converged);
    CHECK(res.objective == doctest::Approx(2.0 + 2.0).epsilon(1e-4));
    CHECK(is_lift_of(res.x, plan, 1e-3));
}

TEST_CASE("relaxation dominates the combinatorial optimum") {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        PlantedCliqueSpec spec{make_clique_plan({4, 4}, 2),
                               DistributionSpec::bernoulli(0.9),
                               DistributionSpec::bernoulli(0.1)};
        SymmetricWeights w = sample_planted_cluster(spec, seed);
        auto [plan, oracle_value] = brute_force_densest_kdc(w, 2);
        SolverResult res = solve(assemble_clique_sdp(w, 2));
        CHECK(res.objective >= oracle_value - 1e-4);
        // Feasibility witness dominance for the planted plan.
        CHECK(res.objective >= (w.w() * lift_clique(spec.plan).mat()).trace() - 1e-4);
    }
    for (std::uint64_t seed : {21u, 22u}) {
        PlantedBicliqueSpec spec{make_biclique_plan({2, 2}, {2, 2}, 0, 0),
                                 DistributionSpec::bernoulli(0.9),
                                 DistributionSpec::bernoulli(0.1)};
        BipartiteWeights w = sample_planted_bicluster(spec, seed);
        auto [plan, oracle_value] = brute_force_densest_kdb(w, 1);
        SolverResult res = solve(assemble_biclique_sdp(w, 1));
        CHECK(res.objective >= oracle_value - 1e-5);
    }
}

TEST_CASE("iteration limit is a status, not an exception") {
    SymmetricWeights w = random_weights(8, 31);
    SolverOptions opts;
    opts.max_iter = 3;
    SolverResult res = solve(assemble_clique_sdp(w, 2), opts);
    CHECK(res.status == SolveStatus::IterLimit);
    CHECK(res.iterations == 3);
}

TEST_CASE("objective trace and best-iterate trend") {
    CliquePlan plan = make_clique_plan({4, 4}, 0);
    SymmetricWeights w = ideal_weights(plan);
    SolverOptions opts;
    opts.trace_csv = "solver_trace_test.csv";
    SolverResult res = solve(assemble_clique_sdp(w, 2), opts);
    CHECK(res.status == SolveStatus::Converged);

    std::ifstream in(opts.trace_csv);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line == "iteration,objective,primal_resid,dual_resid,rho");
    std::vector<double> objectives;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');
        std::getline(ss, cell, ',');
        objectives.push_back(std::stod(cell));
    }
    REQUIRE(objectives.size() >= 10);
    // Best-so-far objective is non-decreasing up to 10x the objective
    // tolerance over the final tenth of the run.
    const std::size_t start = objectives.size() - objectives.size() / 10 - 1;
    double best = *std::max_element(objectives.begin(), objectives.begin() + start + 1);
    for (std::size_t i = start; i < objectives.size(); ++i) {
        CHECK(objectives[i] >= best - 10.0 * opts.tol_obj_rel * (1.0 + std::abs(best)));
        best = std::max(best, objectives[i]);
    }
    std::remove(opts.trace_csv.c_str());
}

TEST_CASE("sdpa export") {
    Matrix w(2, 2);
    w << 1.0, 0.5, 0.5, 0.0;
    SdpProblem p = assemble_clique_sdp(SymmetricWeights{w}, 1);
    std::ostringstream out;
    export_sdpa(p, out);
    const std::string expected =
        "\"kdclique clique relaxation: dim=2 k=1\"\n"
        "4 = mDIM\n"
        "3 = nBLOCK\n"
        "2 -2 -1 = bLOCKsTRUCT\n"
        "1 1 1 0\n"
        "0 1 1 1 1\n"
        "0 1 1 2 0.5\n"
        "1 1 1 1 1\n"
        "1 1 2 2 1\n"
        "2 1 1 1 1\n"
        "2 1 1 2 0.5\n"
        "2 2 1 1 1\n"
        "3 1 1 2 0.5\n"
        "3 1 2 2 1\n"
        "3 2 2 2 1\n"
        "4 1 1 2 0.5\n"
        "4 3 1 1 -1\n";
    CHECK(out.str() == expected);

    std::ostringstream out2;
    export_sdpa(p, out2);
    CHECK(out.str() == out2.str());
}
