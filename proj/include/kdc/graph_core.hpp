// Densities, lifted feasible solutions, point-cloud ingestion, and
// exhaustive combinatorial oracles.
#pragma once

#include "kdc/types.hpp"

#include <optional>
#include <utility>

namespace kdc {

// Average weighted degree of the subgraph induced by C, diagonal included:
// d = v^T W v / |C| for the characteristic vector v of C.
double clique_density(const SymmetricWeights& w, const VertexSet& c);

// Sum of clique_density over the plan's cliques; the noise set contributes 0.
double clique_sum_density(const SymmetricWeights& w, const CliquePlan& plan);

// d = sum_{u in U', v in V'} W_uv / sqrt(|U'| |V'|).
double biclique_density(const BipartiteWeights& w, const VertexSet& us,
                        const VertexSet& vs);

double biclique_sum_density(const BipartiteWeights& w, const BicliquePlan& plan);

// X* = sum_q v_q v_q^T / r_q: trace k, PSD, rank k, row sums 1 off noise.
DenseSymMatrix lift_clique(const CliquePlan& plan);

// Z* = sum_q (u_q/|u_q|; v_q/|v_q|)(...)^T of dimension m+n.
DenseSymMatrix lift_biclique(const BicliquePlan& plan);

// W_ij = 1 - |x_i - x_j|^2, diagonal 1. With rescale, points are scaled
// first so the maximum pairwise distance is exactly 1; without it a max
// distance above 1 is a domain error.
SymmetricWeights similarity_from_points(const PointCloud& pts, bool rescale);

// Sum of squared distances to assigned cluster centers (the k-means
// objective); the identity sum densities == N - 2f ties it to densities.
double kmeans_objective(const PointCloud& pts, const CliquePlan& plan);

inline constexpr int kCliqueEnumerationCap = 13;
inline constexpr int kBicliqueEnumerationCap = 12;

// Exact maximizer over all assignments of vertices to k cliques or noise,
// cliques nonempty. Ties broken by lexicographically smallest canonical
// labeling. Refuses n above the enumeration cap.
std::pair<CliquePlan, double> brute_force_densest_kdc(const SymmetricWeights& w,
                                                      int k,
                                                      int cap = kCliqueEnumerationCap);

// Bipartite analog; every block needs at least one vertex on each side.
// Refuses m + n above the cap.
std::pair<BicliquePlan, double> brute_force_densest_kdb(const BipartiteWeights& w,
                                                        int k,
                                                        int cap = kBicliqueEnumerationCap);

} // namespace kdc
