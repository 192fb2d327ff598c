#include "kdc/sdp.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace kdc {

void SolverOptions::validate() const {
    if (tol_feas <= 0 || tol_obj_rel <= 0 || max_iter <= 0 || penalty <= 0)
        throw std::invalid_argument("SolverOptions: all parameters must be positive");
}

SdpProblem assemble_clique_sdp(const SymmetricWeights& w, int k) {
    if (k < 1 || k > w.n())
        throw std::invalid_argument("assemble_clique_sdp: k out of range");
    SdpProblem p;
    p.variant = SdpVariant::Clique;
    p.dim = w.n();
    p.split = w.n();
    p.k = k;
    p.cost = w.w();
    return p;
}

SdpProblem assemble_biclique_sdp(const BipartiteWeights& w, int k) {
    if (k < 1 || k > std::min(w.m(), w.n()))
        throw std::invalid_argument("assemble_biclique_sdp: k out of range");
    SdpProblem p;
    p.variant = SdpVariant::Biclique;
    p.dim = w.m() + w.n();
    p.split = w.m();
    p.k = k;
    p.cost = 0.5 * w.symmetrized();
    return p;
}

DenseSymMatrix project_psd(const DenseSymMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m.mat());
    double shift = 0.0;
    if (es.info() != Eigen::Success) {
        // The tridiagonal QL iteration can stall on matrices with exactly
        // clustered spectra (near block-constant iterates). A diagonal shift
        // keeps the eigenvectors and moves every eigenvalue by delta, which
        // is subtracted again below.
        const double scale = std::max(1.0, m.mat().cwiseAbs().maxCoeff());
        for (double rel : {1e-12, 1e-9, 1e-6}) {
            shift = rel * scale;
            es.compute(m.mat() + shift * Matrix::Identity(m.n(), m.n()));
            if (es.info() == Eigen::Success) break;
        }
        if (es.info() != Eigen::Success)
            throw std::runtime_error("project_psd: eigensolver failed to converge");
    }
    Vector clamped = (es.eigenvalues().array() - shift).cwiseMax(0.0);
    return DenseSymMatrix(es.eigenvectors() * clamped.asDiagonal() *
                          es.eigenvectors().transpose());
}

namespace {

// Single-set projections used by the Dykstra cycle. Each is the exact
// Frobenius projection onto its set.
void project_nonneg(Matrix& m) { m = m.cwiseMax(0.0); }

void project_trace(Matrix& m, const SdpProblem& p) {
    for (int b = 0; b < p.block_count(); ++b) {
        auto [lo, hi] = p.block_range(b);
        double tr = 0.0;
        for (int i = lo; i < hi; ++i) tr += m(i, i);
        const double shift = (p.k - tr) / (hi - lo);
        for (int i = lo; i < hi; ++i) m(i, i) += shift;
    }
}

void project_rowsum(Matrix& m, const SdpProblem& p) {
    // Halfspace {x : x^T e <= 1} per block row, rows independent.
    for (int b = 0; b < p.block_count(); ++b) {
        auto [lo, hi] = p.block_range(b);
        const int len = hi - lo;
        auto blk = m.block(lo, lo, len, len);
        Vector excess =
            ((blk.rowwise().sum().array() - 1.0).max(0.0) / len).matrix();
        blk.colwise() -= excess;
    }
}

void project_symmetric(Matrix& m, Matrix& scratch) {
    scratch.noalias() = m.transpose();
    m = 0.5 * (m + scratch);
}

struct DykstraState {
    std::array<Matrix, 4> p; // per-set corrections

    void reset(int n) {
        for (auto& m : p) m = Matrix::Zero(n, n);
    }
};

// Cyclic Dykstra over {>=0}, {block traces = k}, {block row sums <= 1},
// {symmetric}. All four sets are polyhedral, so the iteration is dual block
// coordinate ascent and converges to the exact projection from any
// correction warm start; the solver reuses corrections across iterations.
void dykstra_project(Matrix& x, const SdpProblem& problem, double tol,
                     int max_cycles, DykstraState& state) {
    Matrix prev(x.rows(), x.cols());
    Matrix scratch(x.rows(), x.cols());
    for (int cycle = 0; cycle < max_cycles; ++cycle) {
        prev = x;

        x += state.p[0];
        state.p[0] = x;
        project_nonneg(x);
        state.p[0] -= x;

        x += state.p[1];
        state.p[1] = x;
        project_trace(x, problem);
        state.p[1] -= x;

        x += state.p[2];
        state.p[2] = x;
        project_rowsum(x, problem);
        state.p[2] -= x;

        x += state.p[3];
        state.p[3] = x;
        project_symmetric(x, scratch);
        state.p[3] -= x;

        if ((x - prev).cwiseAbs().maxCoeff() <= tol) break;
    }
}

} // namespace

DenseSymMatrix project_polyhedral(const DenseSymMatrix& m, const SdpProblem& problem,
                                  double tol, int max_cycles) {
    if (m.n() != problem.dim)
        throw std::invalid_argument("project_polyhedral: dimension mismatch");
    Matrix x = m.mat();
    DykstraState state;
    state.reset(problem.dim);
    dykstra_project(x, problem, tol, max_cycles, state);
    return DenseSymMatrix(std::move(x));
}

ResidualReport residuals(const DenseSymMatrix& x, const SdpProblem& problem) {
    if (x.n() != problem.dim)
        throw std::invalid_argument("residuals: dimension mismatch");
    const Matrix& m = x.mat();
    ResidualReport r;
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    r.psd = std::max(0.0, -es.eigenvalues().minCoeff());
    r.nonneg = std::max(0.0, -m.minCoeff());
    for (int b = 0; b < problem.block_count(); ++b) {
        auto [lo, hi] = problem.block_range(b);
        double tr = 0.0;
        for (int i = lo; i < hi; ++i) tr += m(i, i);
        r.trace = std::max(r.trace, std::abs(tr - problem.k));
        for (int i = lo; i < hi; ++i) {
            double sum = 0.0;
            for (int j = lo; j < hi; ++j) sum += m(i, j);
            r.rowsum = std::max(r.rowsum, sum - 1.0);
        }
    }
    r.rowsum = std::max(r.rowsum, 0.0);
    return r;
}

double sdp_objective(const DenseSymMatrix& x, const SdpProblem& problem) {
    return (problem.cost.array() * x.mat().array()).sum();
}

SolverResult solve(const SdpProblem& problem, const SolverOptions& opts) {
    opts.validate();
    const int n = problem.dim;
    const Matrix& c = problem.cost;

    // Scaled-form consensus ADMM between the psd set (x side, objective
    // folded into the proximal step) and the polyhedral set (y side).
    // opts.penalty multiplies the problem's natural scale (Gershgorin bound
    // on |cost|_2) so the default 1.0 behaves across instance sizes.
    const double rho_scale =
        std::max(1.0, c.cwiseAbs().rowwise().sum().maxCoeff());
    double rho = opts.penalty * rho_scale;
    Matrix y = Matrix::Identity(n, n) * (static_cast<double>(problem.k) / n);
    if (problem.variant == SdpVariant::Biclique) {
        y.setZero();
        for (int b = 0; b < 2; ++b) {
            auto [lo, hi] = problem.block_range(b);
            for (int i = lo; i < hi; ++i)
                y(i, i) = static_cast<double>(problem.k) / (hi - lo);
        }
    }
    Matrix x = y;
    Matrix u = Matrix::Zero(n, n);

    std::ofstream trace;
    if (!opts.trace_csv.empty()) {
        trace.open(opts.trace_csv);
        trace << "iteration,objective,primal_resid,dual_resid,rho\n";
    }

    std::vector<double> obj_window;
    SolverResult best;
    double best_score = std::numeric_limits<double>::infinity();
    int it = 0;
    bool converged = false;

    auto consider = [&](const Matrix& cand, int iter) {
        DenseSymMatrix dm(cand);
        ResidualReport rr = residuals(dm, problem);
        const double obj = sdp_objective(dm, problem);
        // Any candidate within tol_feas beats any that is not; among
        // feasible candidates the objective decides, otherwise the residual.
        const double score =
            rr.max() <= opts.tol_feas ? -obj : 1e18 + rr.max();
        if (score < best_score) {
            best_score = score;
            best.x = std::move(dm);
            best.objective = obj;
            best.residuals = rr;
            best.iterations = iter;
        }
        return rr;
    };

    const int check_every = 25;
    // Dykstra tolerance tracks the outer residual; the floor only needs to
    // keep the returned iterate's polyhedral feasibility beyond tol_feas.
    // Corrections are carried across iterations (warm dual start).
    const double inner_floor = std::min(1e-9, 0.01 * opts.tol_feas);
    double inner_tol = 1e-7;
    DykstraState dykstra;
    dykstra.reset(n);
    Matrix y_prev(n, n);
    for (it = 1; it <= opts.max_iter; ++it) {
        x = project_psd(DenseSymMatrix(y - u + c / rho)).mat();
        y_prev = y;
        y = x + u;
        // The cycle budget bounds per-iteration work far from convergence;
        // warm corrections make the projection cheap and tight near it, and
        // the convergence test measures the returned iterate exactly.
        dykstra_project(y, problem, inner_tol, 100, dykstra);
        u += x - y;

        const double primal = (x - y).norm();
        const double dual = rho * (y - y_prev).norm();
        inner_tol = std::clamp(0.01 * std::min(primal, dual), inner_floor, 1e-7);

        if (trace.is_open()) {
            trace << it << ',' << std::setprecision(12)
                  << (c.array() * y.array()).sum() << ',' << primal << ',' << dual
                  << ',' << rho << '\n';
        }

        if (opts.adaptive_penalty && it % 100 == 0) {
            // Clamped so a stagnating side cannot drive rho to 0 or infinity.
            const double rho0 = opts.penalty * rho_scale;
            if (primal > 10.0 * dual && rho < 1e4 * rho0) {
                rho *= 2.0;
                u *= 0.5;
            } else if (dual > 10.0 * primal && rho > 1e-4 * rho0) {
                rho *= 0.5;
                u *= 2.0;
            }
        }

        if (it % check_every == 0 || it == opts.max_iter) {
            ResidualReport rr = consider(y, it);
            obj_window.push_back((c.array() * y.array()).sum());
            const int window = 100 / check_every;
            if (static_cast<int>(obj_window.size()) > window) {
                const double now = obj_window.back();
                const double then = obj_window[obj_window.size() - 1 - window];
                const bool stationary =
                    std::abs(now - then) <= opts.tol_obj_rel * (1.0 + std::abs(now));
                if (stationary && rr.max() <= opts.tol_feas) {
                    converged = true;
                    break;
                }
            }
        }
    }

    best.status = converged ? SolveStatus::Converged : SolveStatus::IterLimit;
    best.iterations = it > opts.max_iter ? opts.max_iter : it;
    {
        Eigen::SelfAdjointEigenSolver<Matrix> es(best.x.mat(), Eigen::EigenvaluesOnly);
        best.spectral_norm = es.eigenvalues().cwiseAbs().maxCoeff();
    }
    return best;
}

namespace {

// Entry formatting shared by every SDPA line; shortest round-trip doubles.
std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

struct SdpaEntry {
    int matno, block, i, j; // 1-based, upper triangle
    double value;
};

} // namespace

void export_sdpa(const SdpProblem& problem, std::ostream& out) {
    const int n = problem.dim;
    // Constraints: per-block traces, then block row sums (with diagonal
    // slack block), then one link per strict upper-triangle entry tying the
    // matrix variable to an LP block enforcing entrywise nonnegativity.
    // Diagonal entries are nonnegative on the psd block already.
    const int n_trace = problem.block_count();
    int n_rowsum = 0;
    for (int b = 0; b < problem.block_count(); ++b) {
        auto [lo, hi] = problem.block_range(b);
        n_rowsum += hi - lo;
    }
    const int n_link = n * (n - 1) / 2;
    const int m_dim = n_trace + n_rowsum + n_link;

    out << "\"kdclique " << (problem.variant == SdpVariant::Clique ? "clique" : "biclique")
        << " relaxation: dim=" << n << " k=" << problem.k << "\"\n";
    out << m_dim << " = mDIM\n";
    out << 3 << " = nBLOCK\n";
    out << n << " -" << n_rowsum << " -" << n_link << " = bLOCKsTRUCT\n";

    // Right-hand sides.
    for (int i = 0; i < n_trace; ++i) out << (i ? " " : "") << problem.k;
    for (int i = 0; i < n_rowsum; ++i) out << " 1";
    for (int i = 0; i < n_link; ++i) out << " 0";
    out << "\n";

    std::vector<SdpaEntry> entries;
    // F0: objective on the matrix block.
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (problem.cost(i, j) != 0.0)
                entries.push_back({0, 1, i + 1, j + 1, problem.cost(i, j)});

    int con = 1;
    for (int b = 0; b < problem.block_count(); ++b) {
        auto [lo, hi] = problem.block_range(b);
        for (int i = lo; i < hi; ++i) entries.push_back({con, 1, i + 1, i + 1, 1.0});
        ++con;
    }
    int slack = 1;
    for (int b = 0; b < problem.block_count(); ++b) {
        auto [lo, hi] = problem.block_range(b);
        for (int i = lo; i < hi; ++i) {
            for (int j = lo; j < hi; ++j) {
                const int r = std::min(i, j) + 1, cjj = std::max(i, j) + 1;
                entries.push_back({con, 1, r, cjj, i == j ? 1.0 : 0.5});
            }
            entries.push_back({con, 2, slack, slack, 1.0});
            ++con;
            ++slack;
        }
    }
    int link = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            entries.push_back({con, 1, i + 1, j + 1, 0.5});
            entries.push_back({con, 3, link, link, -1.0});
            ++con;
            ++link;
        }

    for (const auto& e : entries)
        out << e.matno << ' ' << e.block << ' ' << e.i << ' ' << e.j << ' '
            << fmt(e.value) << '\n';
}

void export_sdpa_file(const SdpProblem& problem, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("export_sdpa_file: cannot open " + path);
    export_sdpa(problem, out);
}

} // namespace kdc
