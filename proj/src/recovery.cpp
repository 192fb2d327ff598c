#include "kdc/recovery.hpp"

#include "kdc/graph_core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace kdc {

namespace {

// Union-find over n elements.
struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::string fmt_components(int found, int wanted) {
    return "expected " + std::to_string(wanted) + " components, found " +
           std::to_string(found);
}

} // namespace

std::optional<CliquePlan> round_clique_solution(const DenseSymMatrix& x, int k,
                                                double theta,
                                                RoundDiagnostics* diag) {
    const int n = x.n();
    const Matrix& m = x.mat();
    if (theta <= 0.0) theta = 1.0 / (2.0 * n);

    Dsu dsu(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (m(i, j) >= theta) dsu.unite(i, j);

    std::vector<VertexSet> comps;
    {
        std::vector<int> root_of(n, -1);
        for (int v = 0; v < n; ++v) {
            int r = dsu.find(v);
            if (root_of[r] < 0) {
                root_of[r] = static_cast<int>(comps.size());
                comps.emplace_back();
            }
            comps[root_of[r]].push_back(v);
        }
    }

    CliquePlan plan;
    plan.n = n;
    for (auto& comp : comps) {
        const bool is_clique =
            comp.size() >= 2 || (comp.size() == 1 && m(comp[0], comp[0]) >= theta);
        if (is_clique)
            plan.cliques.push_back(std::move(comp));
        else
            plan.noise.insert(plan.noise.end(), comp.begin(), comp.end());
    }

    if (plan.k() != k) {
        if (diag) {
            diag->components_found = plan.k();
            diag->reason = fmt_components(plan.k(), k);
        }
        return std::nullopt;
    }
    for (const auto& c : plan.cliques)
        for (int i : c)
            for (int j : c)
                if (m(i, j) < theta / 2.0) {
                    if (diag) {
                        diag->components_found = plan.k();
                        diag->reason = "component not internally dense";
                    }
                    return std::nullopt;
                }
    plan.canonicalize();
    plan.validate();
    if (diag) diag->components_found = k;
    return plan;
}

std::optional<BicliquePlan> round_biclique_solution(const DenseSymMatrix& z, int m,
                                                    int n, int k, double theta,
                                                    RoundDiagnostics* diag) {
    if (z.n() != m + n)
        throw std::invalid_argument("round_biclique_solution: dimension mismatch");
    const Matrix& zm = z.mat();
    if (theta <= 0.0) theta = 1.0 / (2.0 * std::max(m, n));

    // Components of the bipartite graph on the thresholded (U,V) block.
    Dsu dsu(m + n);
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < n; ++v)
            if (zm(u, m + v) >= theta) dsu.unite(u, m + v);

    std::vector<VertexSet> comp_left(m + n), comp_right(m + n);
    for (int u = 0; u < m; ++u) comp_left[dsu.find(u)].push_back(u);
    for (int v = 0; v < n; ++v) comp_right[dsu.find(m + v)].push_back(v);

    BicliquePlan plan;
    plan.m = m;
    plan.n = n;
    for (int r = 0; r < m + n; ++r) {
        const auto& lu = comp_left[r];
        const auto& rv = comp_right[r];
        if (lu.empty() && rv.empty()) continue;
        if (!lu.empty() && !rv.empty()) {
            plan.left_blocks.push_back(lu);
            plan.right_blocks.push_back(rv);
        } else if (lu.size() + rv.size() > 1) {
            // A multi-vertex component confined to one side means thresholded
            // structure exists but is not a biclique.
            if (diag) diag->reason = "one-sided component";
            return std::nullopt;
        } else {
            plan.left_noise.insert(plan.left_noise.end(), lu.begin(), lu.end());
            plan.right_noise.insert(plan.right_noise.end(), rv.begin(), rv.end());
        }
    }

    if (plan.k() != k) {
        if (diag) {
            diag->components_found = plan.k();
            diag->reason = fmt_components(plan.k(), k);
        }
        return std::nullopt;
    }
    for (int q = 0; q < plan.k(); ++q)
        for (int u : plan.left_blocks[q])
            for (int v : plan.right_blocks[q])
                if (zm(u, m + v) < theta / 2.0) {
                    if (diag) diag->reason = "component not internally dense";
                    return std::nullopt;
                }
    plan.canonicalize();
    plan.validate();
    if (diag) diag->components_found = k;
    return plan;
}

bool partitions_equal(const CliquePlan& a, const CliquePlan& b) {
    if (a.n != b.n)
        throw std::invalid_argument("partitions_equal: universe size mismatch");
    if (a.k() != b.k()) return false;
    CliquePlan ca = a, cb = b;
    ca.canonicalize();
    cb.canonicalize();
    return ca.cliques == cb.cliques && ca.noise == cb.noise;
}

bool partitions_equal(const BicliquePlan& a, const BicliquePlan& b) {
    if (a.m != b.m || a.n != b.n)
        throw std::invalid_argument("partitions_equal: universe size mismatch");
    if (a.k() != b.k()) return false;
    BicliquePlan ca = a, cb = b;
    ca.canonicalize();
    cb.canonicalize();
    return ca.left_blocks == cb.left_blocks && ca.right_blocks == cb.right_blocks &&
           ca.left_noise == cb.left_noise && ca.right_noise == cb.right_noise;
}

bool is_lift_of(const DenseSymMatrix& x, const CliquePlan& plan, double tol) {
    if (x.n() != plan.n)
        throw std::invalid_argument("is_lift_of: dimension mismatch");
    return (x.mat() - lift_clique(plan).mat()).cwiseAbs().maxCoeff() <= tol;
}

bool is_lift_of(const DenseSymMatrix& z, const BicliquePlan& plan, double tol) {
    if (z.n() != plan.m + plan.n)
        throw std::invalid_argument("is_lift_of: dimension mismatch");
    return (z.mat() - lift_biclique(plan).mat()).cwiseAbs().maxCoeff() <= tol;
}

namespace {

// Leakage outside / mass inside the truth blocks, off-diagonal entries.
template <typename InPlan>
void plan_entry_stats(const Matrix& m, const InPlan& in_plan,
                      double* max_off, double* min_in) {
    *max_off = 0.0;
    *min_in = std::numeric_limits<double>::infinity();
    bool any_in = false;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (i == j) continue;
            if (in_plan(i, j)) {
                *min_in = std::min(*min_in, m(i, j));
                any_in = true;
            } else {
                *max_off = std::max(*max_off, std::abs(m(i, j)));
            }
        }
    if (!any_in) *min_in = 0.0;
}

} // namespace

RecoveryReport recover_clique(const DenseSymMatrix& x, const CliquePlan& truth,
                              double theta) {
    truth.validate();
    RecoveryReport rep;
    rep.rounding_threshold = theta > 0.0 ? theta : 1.0 / (2.0 * x.n());
    RoundDiagnostics diag;
    rep.recovered_clique = round_clique_solution(x, truth.k(), theta, &diag);
    rep.failure_reason = diag.reason;
    rep.exact = rep.recovered_clique && partitions_equal(*rep.recovered_clique, truth);
    const auto label = truth.labels();
    plan_entry_stats(
        x.mat(),
        [&](int i, int j) { return label[i] >= 0 && label[i] == label[j]; },
        &rep.max_offplan_entry, &rep.min_inplan_entry);
    return rep;
}

RecoveryReport recover_biclique(const DenseSymMatrix& z, const BicliquePlan& truth,
                                double theta) {
    truth.validate();
    RecoveryReport rep;
    rep.rounding_threshold =
        theta > 0.0 ? theta : 1.0 / (2.0 * std::max(truth.m, truth.n));
    RoundDiagnostics diag;
    rep.recovered_biclique =
        round_biclique_solution(z, truth.m, truth.n, truth.k(), theta, &diag);
    rep.failure_reason = diag.reason;
    rep.exact =
        rep.recovered_biclique && partitions_equal(*rep.recovered_biclique, truth);
    const auto lu = truth.left_labels();
    const auto lv = truth.right_labels();
    const int m = truth.m;
    plan_entry_stats(
        z.mat(),
        [&](int i, int j) {
            const int li = i < m ? lu[i] : lv[i - m];
            const int lj = j < m ? lu[j] : lv[j - m];
            return li >= 0 && li == lj;
        },
        &rep.max_offplan_entry, &rep.min_inplan_entry);
    return rep;
}

} // namespace kdc
