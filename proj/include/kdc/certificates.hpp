// Dual optimality certificates for the lifted planted solutions, built
// exactly from the KKT systems, and their verification.
//
// Block means alpha, beta are estimated from W itself (in-block mean vs the
// rest); every exact identity (gradient equation, S * lift = 0, the y/z and
// Pi systems) holds for the estimated means just as for the model means.
#pragma once

#include "kdc/types.hpp"

#include <array>
#include <map>
#include <utility>
#include <vector>

namespace kdc {

// Solves (a I + u u^T) x = rhs via Sherman-Morrison-Woodbury; a > 0.
Vector smw_solve(double a, const Vector& u, const Vector& rhs);

// Key (q, s) with 0-based block ids; k() stands for the noise block.
using BlockPair = std::pair<int, int>;

struct CliqueCertificate {
    double mu = 0.0;
    double epsilon = 0.0;
    double gamma = 0.0;       // from estimated block means
    double alpha_hat = 0.0;
    double beta_hat = 0.0;
    Vector lambda;            // zero on the noise set
    Matrix eta;               // zero diagonal blocks
    Matrix s;                 // -W + lambda e^T + e lambda^T - eta + mu I
    Matrix s_tilde;           // diagnostic decomposition, see spectral report
    std::map<BlockPair, Vector> y; // y^{q,s} on C_q
    std::map<BlockPair, Vector> z; // z^{q,s} on C_s
    std::map<BlockPair, Vector> b; // stacked (b_{C_q}; b_{C_s})
};

struct BicliqueCertificate {
    double mu1 = 0.0, mu2 = 0.0;
    double epsilon = 0.0, kappa = 0.0, rho1 = 1.0;
    double gamma = 0.0;
    double alpha_hat = 0.0;
    double beta_hat = 0.0;
    Vector lambda; // length M, zero on U noise
    Vector phi;    // length N, zero on V noise
    Matrix eta;    // (M+N)^2, zero diagonal blocks
    Matrix s;
    std::map<BlockPair, std::array<double, 4>> pi; // (pi1, pi2, pi3, pi4)
    std::map<BlockPair, Vector> y;
    std::map<BlockPair, Vector> z;
    std::map<BlockPair, Vector> b;
    Matrix s1, s2, s3, s4; // s == s1 + s2 + s3 + s4
};

struct KktReport {
    double stationarity_resid = 0.0; // gradient equation, max abs entry
    double cs_rowsum_resid = 0.0;    // |lambda^T (X e - e)| (+ phi side)
    double cs_nonneg_resid = 0.0;    // |Tr(X eta)|
    double cs_sdp_resid = 0.0;       // |S X|_F / (1 + |S|_F)
    double min_lambda = 0.0;
    double min_phi = 0.0;            // biclique only; 0 otherwise
    double min_eta = 0.0;
    double min_eig_s = 0.0;
    double s_norm2 = 0.0;            // |S|_2, scales the psd tolerance
    double min_mu = 0.0;
    double s_part_norm = 0.0;        // |S tilde| (clique) or |S_1| (biclique)
    double sufficient_margin = 0.0;  // mu - |S tilde|, resp. the S_1 analog
    bool passed = false;
};

// Appendix construction: mu = eps gamma r_hat; lambda from the row-sum
// system (r_q I + ee^T) lambda_{C_q} = W_{C_q,C_q} e - mu e; eta blocks are
// the expected deviation matrices plus y e^T + e z^T with (y, z) solving the
// singular orthogonality system through its theta = 1 perturbation.
// Refuses when the estimated gamma is nonpositive.
CliqueCertificate build_clique_certificate(const SymmetricWeights& w,
                                           const CliquePlan& plan,
                                           double epsilon);

KktReport verify_clique_kkt(const SymmetricWeights& w, const CliquePlan& plan,
                            const CliqueCertificate& cert, double tol);

// Strict inequality r_s e^T W_{C_q,C_q} e > r_q e^T W_{C_q,C_s} e over all
// ordered pairs q != s.
bool clique_uniqueness_holds(const SymmetricWeights& w, const CliquePlan& plan);

// Section 4.3 construction: mu_i = eps gamma (m_hat, n_hat); lambda / phi
// from the SMW solves; Pi from the pair systems with
// pi4 = kappa (phibar - beta max{tau_q, tau_s}); noise pairs use
// pi1 = pi2 = (lambdabar - beta/tau_q)/2 and the tau-free products of
// pi3 = pi4 = (phibar - tau_q beta) / (2 tau_noise tau_q). Refuses on
// nonpositive gamma, a failed tau condition, or nonpositive Pi entries.
BicliqueCertificate build_biclique_certificate(const BipartiteWeights& w,
                                               const BicliquePlan& plan,
                                               double epsilon, double kappa,
                                               double rho1 = 1.0);

KktReport verify_biclique_kkt(const BipartiteWeights& w, const BicliquePlan& plan,
                              const BicliqueCertificate& cert, double tol);

bool biclique_uniqueness_holds(const BipartiteWeights& w, const BicliquePlan& plan);

// Spectral norms of the dual slack decomposition parts against the theorem
// bound evaluated with the given constants.
struct SpectralNormReport {
    double s_part_norm = 0.0;           // |S tilde| or |S_1|
    std::vector<double> part_norms;     // |S~_i| pieces
    double bound = 0.0;                 // rho1 sqrt(N) + rho2 sqrt(k r_noise) + beta r_noise,
                                        // resp. c1 sqrt(kN) + c2 sqrt(N) + beta tau n_noise
    double ratio = 0.0;                 // s_part_norm / bound (0 when bound is 0)
};

SpectralNormReport spectral_norm_report(const CliqueCertificate& cert,
                                        const CliquePlan& plan,
                                        double rho1 = 1.0, double rho2 = 1.0);

SpectralNormReport spectral_norm_report(const BicliqueCertificate& cert,
                                        const BicliquePlan& plan,
                                        double c1 = 1.0, double c2 = 1.0);

} // namespace kdc
