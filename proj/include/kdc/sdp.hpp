// The two semidefinite relaxations and a first-order consensus splitting
// solver built from exact projections.
#pragma once

#include "kdc/types.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace kdc {

enum class SdpVariant { Clique, Biclique };
enum class SolveStatus { Converged, IterLimit };

// Assembled relaxation:
//   Clique:   max Tr(W X),        X e <= e, Tr X = k, X >= 0, X psd (dim N)
//   Biclique: max 1/2 Tr(Wt Z),   Z_UU e <= e, Z_VV e <= e,
//             Tr Z_UU = Tr Z_VV = k, Z >= 0, Z psd (dim M+N)
// For Biclique the row-sum and trace constraints act on the diagonal blocks
// only; cross blocks are constrained by psd + nonnegativity alone.
struct SdpProblem {
    SdpVariant variant = SdpVariant::Clique;
    int dim = 0;
    int split = 0; // Biclique: |U|; Clique: unused (= dim)
    int k = 0;
    Matrix cost; // W, or 1/2 Wt

    int block_count() const { return variant == SdpVariant::Biclique ? 2 : 1; }
    // [begin, end) of block b in the matrix index space.
    std::pair<int, int> block_range(int b) const {
        if (variant == SdpVariant::Clique) return {0, dim};
        return b == 0 ? std::pair<int, int>{0, split}
                      : std::pair<int, int>{split, dim};
    }
};

struct SolverOptions {
    double tol_feas = 1e-6;
    double tol_obj_rel = 1e-6;
    int max_iter = 50000;
    double penalty = 1.0;       // ADMM step parameter rho
    bool adaptive_penalty = true;
    std::string trace_csv;      // optional per-iteration trace destination

    void validate() const;
};

struct ResidualReport {
    double psd = 0.0;    // max(0, -lambda_min(x))
    double nonneg = 0.0; // max(0, -min entry)
    double trace = 0.0;  // max over blocks of |Tr - k|
    double rowsum = 0.0; // max(0, max block row sum - 1)

    double max() const { return std::max(std::max(psd, nonneg), std::max(trace, rowsum)); }
};

struct SolverResult {
    DenseSymMatrix x;
    double objective = 0.0;
    ResidualReport residuals; // re-measured on x, not on internal iterates
    int iterations = 0;
    SolveStatus status = SolveStatus::IterLimit;
    double spectral_norm = 0.0; // diagnostic; feasible X satisfies |X| <= 1
};

SdpProblem assemble_clique_sdp(const SymmetricWeights& w, int k);
SdpProblem assemble_biclique_sdp(const BipartiteWeights& w, int k);

// Frobenius-nearest positive semidefinite matrix (eigenvalue clamping).
DenseSymMatrix project_psd(const DenseSymMatrix& m);

// Frobenius-nearest point of {entrywise >= 0} n {block traces = k}
// n {block row sums <= 1} n {symmetric}, by cyclic Dykstra iteration over
// the four sets, each with a closed-form projection.
DenseSymMatrix project_polyhedral(const DenseSymMatrix& m, const SdpProblem& problem,
                                  double tol = 1e-10, int max_cycles = 1000);

ResidualReport residuals(const DenseSymMatrix& x, const SdpProblem& problem);

double sdp_objective(const DenseSymMatrix& x, const SdpProblem& problem);

// Two-set consensus splitting (psd side vs polyhedral side) with the linear
// objective folded into the psd proximal step. Deterministic for fixed
// (problem, opts). IterLimit is a status, not an exception.
SolverResult solve(const SdpProblem& problem, const SolverOptions& opts = {});

// Sparse SDPA (".dat-s") encoding of the problem; output is byte-stable for
// a fixed input. Entrywise nonnegativity is linked to an LP block, row-sum
// caps get diagonal slacks.
void export_sdpa(const SdpProblem& problem, std::ostream& out);
void export_sdpa_file(const SdpProblem& problem, const std::string& path);

} // namespace kdc
