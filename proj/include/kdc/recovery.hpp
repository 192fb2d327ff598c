// Rounding SDP solutions back to combinatorial partitions and deciding
// exact recovery. Failure is a value, not an exception: sweeps must be able
// to record non-recovery.
#pragma once

#include "kdc/types.hpp"

#include <optional>
#include <string>

namespace kdc {

struct RoundDiagnostics {
    int components_found = 0;
    std::string reason; // empty on success
};

// Support thresholding: edge (i,j) iff X_ij >= theta (i != j); connected
// components of size >= 2, or isolated vertices with X_ii >= theta, become
// cliques. Requires exactly k cliques, each internally dense (no
// in-component entry below theta/2); the remainder is noise.
// theta <= 0 selects the default 1/(2n).
std::optional<CliquePlan> round_clique_solution(const DenseSymMatrix& x, int k,
                                                double theta = 0.0,
                                                RoundDiagnostics* diag = nullptr);

// Bipartite components of the (U,V) block thresholded at theta (default
// 1/(2 max(m,n))); every component must touch both sides.
std::optional<BicliquePlan> round_biclique_solution(const DenseSymMatrix& z, int m,
                                                    int n, int k,
                                                    double theta = 0.0,
                                                    RoundDiagnostics* diag = nullptr);

// Equality as sets of sets (labels ignored); bicliques compare (U_q, V_q)
// pairs jointly. Universe sizes must match.
bool partitions_equal(const CliquePlan& a, const CliquePlan& b);
bool partitions_equal(const BicliquePlan& a, const BicliquePlan& b);

// max_inf |X - lift(plan)| <= tol.
bool is_lift_of(const DenseSymMatrix& x, const CliquePlan& plan, double tol);
bool is_lift_of(const DenseSymMatrix& z, const BicliquePlan& plan, double tol);

struct RecoveryReport {
    std::optional<CliquePlan> recovered_clique;
    std::optional<BicliquePlan> recovered_biclique;
    bool exact = false;
    double max_offplan_entry = 0.0; // leakage outside the truth blocks
    double min_inplan_entry = 0.0;
    double rounding_threshold = 0.0;
    std::string failure_reason;
};

RecoveryReport recover_clique(const DenseSymMatrix& x, const CliquePlan& truth,
                              double theta = 0.0);
RecoveryReport recover_biclique(const DenseSymMatrix& z, const BicliquePlan& truth,
                                double theta = 0.0);

} // namespace kdc
