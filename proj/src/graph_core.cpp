#include "kdc/graph_core.hpp"

#include <algorithm>
#include <numeric>

namespace kdc {

namespace {

void check_vertex_range(const VertexSet& s, int n, const char* what) {
    for (int v : s)
        if (v < 0 || v >= n)
            throw std::invalid_argument(std::string(what) + ": vertex out of range");
}

void sort_blocks_canonical(std::vector<VertexSet>& blocks) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
}

} // namespace

void CliquePlan::validate() const {
    std::vector<int> seen(n, 0);
    for (const auto& c : cliques) {
        if (c.empty()) throw std::invalid_argument("CliquePlan: empty clique");
        check_vertex_range(c, n, "CliquePlan");
        for (int v : c) ++seen[v];
    }
    check_vertex_range(noise, n, "CliquePlan");
    for (int v : noise) ++seen[v];
    for (int v = 0; v < n; ++v)
        if (seen[v] != 1)
            throw std::invalid_argument("CliquePlan: cliques and noise must partition the vertices");
}

void CliquePlan::canonicalize() {
    sort_blocks_canonical(cliques);
    std::sort(noise.begin(), noise.end());
}

void BicliquePlan::validate() const {
    if (left_blocks.size() != right_blocks.size())
        throw std::invalid_argument("BicliquePlan: left/right block counts differ");
    std::vector<int> seen_left(m, 0), seen_right(n, 0);
    for (const auto& b : left_blocks) {
        if (b.empty()) throw std::invalid_argument("BicliquePlan: empty left block");
        check_vertex_range(b, m, "BicliquePlan");
        for (int v : b) ++seen_left[v];
    }
    for (const auto& b : right_blocks) {
        if (b.empty()) throw std::invalid_argument("BicliquePlan: empty right block");
        check_vertex_range(b, n, "BicliquePlan");
        for (int v : b) ++seen_right[v];
    }
    check_vertex_range(left_noise, m, "BicliquePlan");
    check_vertex_range(right_noise, n, "BicliquePlan");
    for (int v : left_noise) ++seen_left[v];
    for (int v : right_noise) ++seen_right[v];
    for (int v = 0; v < m; ++v)
        if (seen_left[v] != 1)
            throw std::invalid_argument("BicliquePlan: left side must be partitioned");
    for (int v = 0; v < n; ++v)
        if (seen_right[v] != 1)
            throw std::invalid_argument("BicliquePlan: right side must be partitioned");
}

void BicliquePlan::canonicalize() {
    for (auto& b : left_blocks) std::sort(b.begin(), b.end());
    for (auto& b : right_blocks) std::sort(b.begin(), b.end());
    std::vector<int> order(k());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return left_blocks[a].front() < left_blocks[b].front();
    });
    std::vector<VertexSet> lb, rb;
    for (int q : order) {
        lb.push_back(left_blocks[q]);
        rb.push_back(right_blocks[q]);
    }
    left_blocks = std::move(lb);
    right_blocks = std::move(rb);
    std::sort(left_noise.begin(), left_noise.end());
    std::sort(right_noise.begin(), right_noise.end());
}

CliquePlan make_clique_plan(const std::vector<int>& block_sizes, int noise_size) {
    CliquePlan plan;
    int v = 0;
    for (int r : block_sizes) {
        VertexSet c(r);
        std::iota(c.begin(), c.end(), v);
        v += r;
        plan.cliques.push_back(std::move(c));
    }
    plan.noise.resize(noise_size);
    std::iota(plan.noise.begin(), plan.noise.end(), v);
    plan.n = v + noise_size;
    plan.validate();
    return plan;
}

BicliquePlan make_biclique_plan(const std::vector<int>& left_sizes,
                                const std::vector<int>& right_sizes,
                                int left_noise_size, int right_noise_size) {
    if (left_sizes.size() != right_sizes.size())
        throw std::invalid_argument("make_biclique_plan: size lists must pair up");
    BicliquePlan plan;
    int u = 0, v = 0;
    for (std::size_t q = 0; q < left_sizes.size(); ++q) {
        VertexSet lb(left_sizes[q]), rb(right_sizes[q]);
        std::iota(lb.begin(), lb.end(), u);
        std::iota(rb.begin(), rb.end(), v);
        u += left_sizes[q];
        v += right_sizes[q];
        plan.left_blocks.push_back(std::move(lb));
        plan.right_blocks.push_back(std::move(rb));
    }
    plan.left_noise.resize(left_noise_size);
    plan.right_noise.resize(right_noise_size);
    std::iota(plan.left_noise.begin(), plan.left_noise.end(), u);
    std::iota(plan.right_noise.begin(), plan.right_noise.end(), v);
    plan.m = u + left_noise_size;
    plan.n = v + right_noise_size;
    plan.validate();
    return plan;
}

double clique_density(const SymmetricWeights& w, const VertexSet& c) {
    if (c.empty()) throw std::invalid_argument("clique_density: empty vertex set");
    check_vertex_range(c, w.n(), "clique_density");
    double quad = 0.0;
    for (int i : c)
        for (int j : c) quad += w.w()(i, j);
    return quad / static_cast<double>(c.size());
}

double clique_sum_density(const SymmetricWeights& w, const CliquePlan& plan) {
    if (plan.n != w.n())
        throw std::invalid_argument("clique_sum_density: plan/weight size mismatch");
    plan.validate();
    double total = 0.0;
    for (const auto& c : plan.cliques) total += clique_density(w, c);
    return total;
}

double biclique_density(const BipartiteWeights& w, const VertexSet& us,
                        const VertexSet& vs) {
    if (us.empty() || vs.empty())
        throw std::invalid_argument("biclique_density: empty side");
    check_vertex_range(us, w.m(), "biclique_density");
    check_vertex_range(vs, w.n(), "biclique_density");
    double sum = 0.0;
    for (int u : us)
        for (int v : vs) sum += w.w()(u, v);
    return sum / std::sqrt(static_cast<double>(us.size()) * static_cast<double>(vs.size()));
}

double biclique_sum_density(const BipartiteWeights& w, const BicliquePlan& plan) {
    if (plan.m != w.m() || plan.n != w.n())
        throw std::invalid_argument("biclique_sum_density: plan/weight size mismatch");
    plan.validate();
    double total = 0.0;
    for (int q = 0; q < plan.k(); ++q)
        total += biclique_density(w, plan.left_blocks[q], plan.right_blocks[q]);
    return total;
}

DenseSymMatrix lift_clique(const CliquePlan& plan) {
    plan.validate();
    Matrix x = Matrix::Zero(plan.n, plan.n);
    for (const auto& c : plan.cliques) {
        const double val = 1.0 / static_cast<double>(c.size());
        for (int i : c)
            for (int j : c) x(i, j) = val;
    }
    return DenseSymMatrix(std::move(x));
}

DenseSymMatrix lift_biclique(const BicliquePlan& plan) {
    plan.validate();
    const int dim = plan.m + plan.n;
    Matrix z = Matrix::Zero(dim, dim);
    for (int q = 0; q < plan.k(); ++q) {
        Vector col = Vector::Zero(dim);
        const double mu = 1.0 / std::sqrt(static_cast<double>(plan.m_q(q)));
        const double nu = 1.0 / std::sqrt(static_cast<double>(plan.n_q(q)));
        for (int u : plan.left_blocks[q]) col(u) = mu;
        for (int v : plan.right_blocks[q]) col(plan.m + v) = nu;
        z += col * col.transpose();
    }
    return DenseSymMatrix(std::move(z));
}

SymmetricWeights similarity_from_points(const PointCloud& pts, bool rescale) {
    pts.validate();
    const int n = pts.size();
    double max_sq = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            max_sq = std::max(max_sq, (pts.points[i] - pts.points[j]).squaredNorm());
    double scale_sq = 1.0;
    if (rescale) {
        if (max_sq > 0.0) scale_sq = max_sq; // coordinates scaled by 1/max distance
    } else if (max_sq > 1.0 + 1e-12) {
        throw std::invalid_argument(
            "similarity_from_points: max pairwise distance exceeds 1 (enable rescale)");
    }
    Matrix w = Matrix::Ones(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d2 = (pts.points[i] - pts.points[j]).squaredNorm() / scale_sq;
            w(i, j) = w(j, i) = 1.0 - d2;
        }
    return SymmetricWeights(std::move(w));
}

double kmeans_objective(const PointCloud& pts, const CliquePlan& plan) {
    pts.validate();
    if (plan.n != pts.size())
        throw std::invalid_argument("kmeans_objective: plan/cloud size mismatch");
    double f = 0.0;
    for (const auto& c : plan.cliques) {
        Vector center = Vector::Zero(pts.dim());
        for (int i : c) center += pts.points[i];
        center /= static_cast<double>(c.size());
        for (int i : c) f += (pts.points[i] - center).squaredNorm();
    }
    return f;
}

namespace {

// Lexicographic comparison of canonical plans, used only for tie-breaking.
bool canonical_less(const CliquePlan& a, const CliquePlan& b) {
    return a.cliques < b.cliques;
}

bool canonical_less(const BicliquePlan& a, const BicliquePlan& b) {
    if (a.left_blocks != b.left_blocks) return a.left_blocks < b.left_blocks;
    return a.right_blocks < b.right_blocks;
}

CliquePlan plan_from_labels(const std::vector<int>& label, int n, int k) {
    CliquePlan plan;
    plan.n = n;
    plan.cliques.assign(k, {});
    for (int v = 0; v < n; ++v) {
        if (label[v] < k)
            plan.cliques[label[v]].push_back(v);
        else
            plan.noise.push_back(v);
    }
    plan.canonicalize();
    return plan;
}

} // namespace

std::pair<CliquePlan, double> brute_force_densest_kdc(const SymmetricWeights& w,
                                                      int k, int cap) {
    const int n = w.n();
    if (n > cap)
        throw std::domain_error("brute_force_densest_kdc: instance above enumeration cap");
    if (k < 1 || k > n)
        throw std::invalid_argument("brute_force_densest_kdc: k out of range");

    std::vector<int> label(n, 0); // values 0..k-1 cliques, k noise
    std::optional<CliquePlan> best;
    double best_value = -1.0;
    while (true) {
        std::vector<int> count(k, 0);
        for (int v = 0; v < n; ++v)
            if (label[v] < k) ++count[label[v]];
        if (std::all_of(count.begin(), count.end(), [](int c) { return c > 0; })) {
            double value = 0.0;
            for (int q = 0; q < k; ++q) {
                double quad = 0.0;
                for (int i = 0; i < n; ++i) {
                    if (label[i] != q) continue;
                    for (int j = 0; j < n; ++j)
                        if (label[j] == q) quad += w.w()(i, j);
                }
                value += quad / count[q];
            }
            if (value > best_value) {
                best_value = value;
                best = plan_from_labels(label, n, k);
            } else if (value == best_value && best) {
                CliquePlan cand = plan_from_labels(label, n, k);
                if (canonical_less(cand, *best)) best = std::move(cand);
            }
        }
        int pos = n - 1;
        while (pos >= 0 && label[pos] == k) label[pos--] = 0;
        if (pos < 0) break;
        ++label[pos];
    }
    return {*best, best_value};
}

std::pair<BicliquePlan, double> brute_force_densest_kdb(const BipartiteWeights& w,
                                                        int k, int cap) {
    const int m = w.m(), n = w.n();
    if (m + n > cap)
        throw std::domain_error("brute_force_densest_kdb: instance above enumeration cap");
    if (k < 1 || k > std::min(m, n))
        throw std::invalid_argument("brute_force_densest_kdb: k out of range");

    std::vector<int> label(m + n, 0); // left then right side, value k = noise
    std::optional<BicliquePlan> best;
    double best_value = -1.0;
    while (true) {
        std::vector<int> cm(k, 0), cn(k, 0);
        for (int u = 0; u < m; ++u)
            if (label[u] < k) ++cm[label[u]];
        for (int v = 0; v < n; ++v)
            if (label[m + v] < k) ++cn[label[m + v]];
        bool ok = true;
        for (int q = 0; q < k; ++q) ok = ok && cm[q] > 0 && cn[q] > 0;
        if (ok) {
            double value = 0.0;
            for (int q = 0; q < k; ++q) {
                double sum = 0.0;
                for (int u = 0; u < m; ++u) {
                    if (label[u] != q) continue;
                    for (int v = 0; v < n; ++v)
                        if (label[m + v] == q) sum += w.w()(u, v);
                }
                value += sum / std::sqrt(static_cast<double>(cm[q]) * cn[q]);
            }
            if (value >= best_value) {
                BicliquePlan cand;
                cand.m = m;
                cand.n = n;
                cand.left_blocks.assign(k, {});
                cand.right_blocks.assign(k, {});
                for (int u = 0; u < m; ++u)
                    (label[u] < k ? cand.left_blocks[label[u]] : cand.left_noise).push_back(u);
                for (int v = 0; v < n; ++v)
                    (label[m + v] < k ? cand.right_blocks[label[m + v]] : cand.right_noise)
                        .push_back(v);
                cand.canonicalize();
                if (value > best_value || !best || canonical_less(cand, *best)) {
                    best_value = value;
                    best = std::move(cand);
                }
            }
        }
        int pos = m + n - 1;
        while (pos >= 0 && label[pos] == k) label[pos--] = 0;
        if (pos < 0) break;
        ++label[pos];
    }
    return {*best, best_value};
}

} // namespace kdc
