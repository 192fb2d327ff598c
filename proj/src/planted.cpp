#include "kdc/planted.hpp"

#include <cmath>
#include <stdexcept>

namespace kdc {

void DistributionSpec::validate() const {
    if (mean < 0.0 || mean > 1.0)
        throw std::invalid_argument("DistributionSpec: mean must lie in [0,1]");
    if (kind == Kind::UniformInterval) {
        if (half_width < 0.0 || half_width > std::min(mean, 1.0 - mean) + 1e-15)
            throw std::invalid_argument(
                "DistributionSpec: half_width must satisfy 0 <= hw <= min(mean, 1-mean)");
    }
}

double DistributionSpec::variance() const {
    switch (kind) {
    case Kind::Bernoulli: return mean * (1.0 - mean);
    case Kind::UniformInterval: return half_width * half_width / 3.0;
    }
    return 0.0;
}

double DistributionSpec::sample(CounterRng& rng) const {
    const double u = rng.next_double();
    switch (kind) {
    case Kind::Bernoulli: return u < mean ? 1.0 : 0.0;
    case Kind::UniformInterval: return mean + (2.0 * u - 1.0) * half_width;
    }
    return 0.0;
}

void GuaranteeParams::validate() const {
    if (c1 <= 0 || c2 <= 0 || c3 <= 0 || b1 <= 0 || b2 <= 0)
        throw std::invalid_argument("GuaranteeParams: bound constants must be positive");
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw std::invalid_argument("GuaranteeParams: epsilon must lie in (0,1)");
    if (kappa <= 0.0 || kappa >= 1.0)
        throw std::invalid_argument("GuaranteeParams: kappa must lie in (0,1)");
}

SymmetricWeights sample_planted_cluster(const PlantedCliqueSpec& spec,
                                        std::uint64_t seed) {
    spec.plan.validate();
    spec.omega_in.validate();
    spec.omega_out.validate();
    const int n = spec.plan.n;
    const auto label = spec.plan.labels();
    CounterRng rng(seed);
    Matrix w(n, n);
    // One draw per unordered pair, upper-triangular row-major order.
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const bool in_block = label[i] >= 0 && label[i] == label[j];
            const double v = (in_block ? spec.omega_in : spec.omega_out).sample(rng);
            w(i, j) = w(j, i) = v;
        }
    return SymmetricWeights(std::move(w));
}

BipartiteWeights sample_planted_bicluster(const PlantedBicliqueSpec& spec,
                                          std::uint64_t seed) {
    spec.plan.validate();
    spec.omega_in.validate();
    spec.omega_out.validate();
    const auto lu = spec.plan.left_labels();
    const auto lv = spec.plan.right_labels();
    CounterRng rng(seed);
    Matrix w(spec.plan.m, spec.plan.n);
    for (int u = 0; u < spec.plan.m; ++u)
        for (int v = 0; v < spec.plan.n; ++v) {
            const bool in_block = lu[u] >= 0 && lu[u] == lv[v];
            w(u, v) = (in_block ? spec.omega_in : spec.omega_out).sample(rng);
        }
    return BipartiteWeights(std::move(w));
}

double gamma_clique(double alpha, double beta, int r_noise) {
    return alpha * (r_noise == 0 ? 2.0 : 1.0) - 2.0 * beta;
}

double gamma_biclique(double alpha, double beta, int m_noise, int n_noise) {
    return alpha * ((m_noise == 0 && n_noise == 0) ? 2.0 : 1.0) - 2.0 * beta;
}

GuaranteeReport check_clique_guarantee(const PlantedCliqueSpec& spec,
                                       const GuaranteeParams& params) {
    spec.plan.validate();
    params.validate();
    const double alpha = spec.omega_in.mean, beta = spec.omega_out.mean;
    const int r_noise = spec.plan.r_noise();
    GuaranteeReport rep;
    rep.gamma = gamma_clique(alpha, beta, r_noise);
    rep.lhs = params.c1 * std::sqrt(static_cast<double>(spec.plan.n)) +
              params.c2 * std::sqrt(static_cast<double>(spec.plan.k()) * r_noise) +
              params.c3 * r_noise;
    rep.rhs = rep.gamma * spec.plan.r_hat();
    rep.tau_condition_holds = true;
    rep.holds = rep.gamma > 0.0 && rep.lhs <= rep.rhs;
    return rep;
}

GuaranteeReport check_biclique_guarantee(const PlantedBicliqueSpec& spec,
                                         const GuaranteeParams& params) {
    spec.plan.validate();
    params.validate();
    const auto& plan = spec.plan;
    const double alpha = spec.omega_in.mean, beta = spec.omega_out.mean;
    GuaranteeReport rep;
    rep.gamma = gamma_biclique(alpha, beta, plan.m_noise(), plan.n_noise());

    // tau_noise n_noise = sqrt(m_noise n_noise): vanishes whenever either
    // noise side is empty, which also covers the undefined-tau case.
    const double tau_noise_term =
        beta * std::sqrt(static_cast<double>(plan.m_noise()) * plan.n_noise());
    rep.lhs = params.b1 *
                  (std::sqrt(static_cast<double>(plan.k())) +
                   std::sqrt(static_cast<double>(plan.n_noise())) + 1.0) *
                  std::sqrt(static_cast<double>(plan.n)) +
              tau_noise_term;
    rep.rhs = params.b2 * rep.gamma * plan.n_hat();

    std::vector<double> taus;
    for (int q = 0; q < plan.k(); ++q) taus.push_back(plan.tau(q));
    if (plan.m_noise() > 0 && plan.n_noise() > 0) taus.push_back(plan.tau_noise());
    rep.tau_condition_holds = true;
    for (double ti : taus)
        for (double tj : taus)
            if (!(alpha * ti > beta * tj)) rep.tau_condition_holds = false;

    rep.holds = rep.gamma > 0.0 && rep.lhs <= rep.rhs && rep.tau_condition_holds;
    return rep;
}

} // namespace kdc
