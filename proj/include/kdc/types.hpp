// Core data model: weight matrices, planted partitions, point clouds.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace kdc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using VertexSet = std::vector<int>;

// Symmetric carrier for SDP variables and dual slacks; the constructor
// symmetrizes so downstream code can assume w == w^T exactly.
class DenseSymMatrix {
public:
    DenseSymMatrix() = default;
    explicit DenseSymMatrix(Matrix m) {
        if (m.rows() != m.cols())
            throw std::invalid_argument("DenseSymMatrix: matrix must be square");
        mat_ = 0.5 * (m + m.transpose()).eval();
    }

    int n() const { return static_cast<int>(mat_.rows()); }
    const Matrix& mat() const { return mat_; }

private:
    Matrix mat_;
};

// Edge weights of a weighted complete graph, entries in [0,1], diagonal present.
class SymmetricWeights {
public:
    explicit SymmetricWeights(Matrix w) : w_(std::move(w)) {
        if (w_.rows() != w_.cols())
            throw std::invalid_argument("SymmetricWeights: matrix must be square");
        for (int i = 0; i < w_.rows(); ++i)
            for (int j = 0; j < w_.cols(); ++j) {
                if (std::abs(w_(i, j) - w_(j, i)) > 1e-12)
                    throw std::invalid_argument("SymmetricWeights: matrix not symmetric");
                if (w_(i, j) < 0.0 || w_(i, j) > 1.0)
                    throw std::invalid_argument("SymmetricWeights: entries must lie in [0,1]");
            }
    }

    int n() const { return static_cast<int>(w_.rows()); }
    const Matrix& w() const { return w_; }

private:
    Matrix w_;
};

// Edge weights of a weighted complete bipartite graph, entries in [0,1].
class BipartiteWeights {
public:
    explicit BipartiteWeights(Matrix w) : w_(std::move(w)) {
        if (w_.minCoeff() < 0.0 || w_.maxCoeff() > 1.0)
            throw std::invalid_argument("BipartiteWeights: entries must lie in [0,1]");
    }

    int m() const { return static_cast<int>(w_.rows()); }
    int n() const { return static_cast<int>(w_.cols()); }
    const Matrix& w() const { return w_; }

    // Symmetrization [[0, W], [W^T, 0]] of dimension m+n.
    Matrix symmetrized() const {
        Matrix s = Matrix::Zero(m() + n(), m() + n());
        s.topRightCorner(m(), n()) = w_;
        s.bottomLeftCorner(n(), m()) = w_.transpose();
        return s;
    }

private:
    Matrix w_;
};

// Planted vertex partition: k disjoint nonempty cliques plus a noise set
// covering the rest of {0..n-1}.
struct CliquePlan {
    int n = 0;
    std::vector<VertexSet> cliques;
    VertexSet noise;

    int k() const { return static_cast<int>(cliques.size()); }
    int r(int q) const { return static_cast<int>(cliques[q].size()); }
    int r_noise() const { return static_cast<int>(noise.size()); }
    int r_hat() const {
        int m = n;
        for (const auto& c : cliques) m = std::min<int>(m, static_cast<int>(c.size()));
        return m;
    }

    // label_of[v] in {0..k-1} for clique members, -1 for noise.
    std::vector<int> labels() const {
        std::vector<int> lab(n, -1);
        for (int q = 0; q < k(); ++q)
            for (int v : cliques[q]) lab[v] = q;
        return lab;
    }

    void validate() const;
    void canonicalize();
};

// Planted biclique partition: paired blocks (U_q, V_q) plus per-side noise.
struct BicliquePlan {
    int m = 0;
    int n = 0;
    std::vector<VertexSet> left_blocks;
    std::vector<VertexSet> right_blocks;
    VertexSet left_noise;
    VertexSet right_noise;

    int k() const { return static_cast<int>(left_blocks.size()); }
    int m_q(int q) const { return static_cast<int>(left_blocks[q].size()); }
    int n_q(int q) const { return static_cast<int>(right_blocks[q].size()); }
    int m_noise() const { return static_cast<int>(left_noise.size()); }
    int n_noise() const { return static_cast<int>(right_noise.size()); }
    double tau(int q) const {
        return std::sqrt(static_cast<double>(m_q(q)) / static_cast<double>(n_q(q)));
    }
    // sqrt(m_{k+1}/n_{k+1}); defined only when n_noise > 0.
    bool tau_noise_defined() const { return n_noise() > 0; }
    double tau_noise() const {
        return std::sqrt(static_cast<double>(m_noise()) / static_cast<double>(n_noise()));
    }
    int m_hat() const {
        int v = m;
        for (const auto& b : left_blocks) v = std::min<int>(v, static_cast<int>(b.size()));
        return v;
    }
    int n_hat() const {
        int v = n;
        for (const auto& b : right_blocks) v = std::min<int>(v, static_cast<int>(b.size()));
        return v;
    }

    std::vector<int> left_labels() const {
        std::vector<int> lab(m, -1);
        for (int q = 0; q < k(); ++q)
            for (int v : left_blocks[q]) lab[v] = q;
        return lab;
    }
    std::vector<int> right_labels() const {
        std::vector<int> lab(n, -1);
        for (int q = 0; q < k(); ++q)
            for (int v : right_blocks[q]) lab[v] = q;
        return lab;
    }

    void validate() const;
    void canonicalize();
};

struct PointCloud {
    std::vector<Vector> points;

    int size() const { return static_cast<int>(points.size()); }
    int dim() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
    void validate() const {
        if (points.empty())
            throw std::invalid_argument("PointCloud: must be nonempty");
        for (const auto& p : points)
            if (p.size() != points[0].size())
                throw std::invalid_argument("PointCloud: points must share one dimension");
    }
};

// Contiguous-block plan builders used throughout tests and the CLI:
// blocks of the given sizes in vertex order, remainder is noise.
CliquePlan make_clique_plan(const std::vector<int>& block_sizes, int noise_size);
BicliquePlan make_biclique_plan(const std::vector<int>& left_sizes,
                                const std::vector<int>& right_sizes,
                                int left_noise_size, int right_noise_size);

} // namespace kdc
