// Planted cluster / bicluster instance generation and the recovery-guarantee
// conditions of the two main theorems.
#pragma once

#include "kdc/rng.hpp"
#include "kdc/types.hpp"

#include <cstdint>

namespace kdc {

// A distribution on [0,1] described by its mean (and half width for the
// uniform family). Exactly one uniform variate is consumed per sample, so
// stream positions do not depend on the distribution kind.
struct DistributionSpec {
    enum class Kind { Bernoulli, UniformInterval };

    Kind kind = Kind::Bernoulli;
    double mean = 0.5;
    double half_width = 0.0; // UniformInterval only

    void validate() const;
    double variance() const;
    double sample(CounterRng& rng) const;

    static DistributionSpec bernoulli(double mean) {
        return DistributionSpec{Kind::Bernoulli, mean, 0.0};
    }
    static DistributionSpec uniform(double mean, double half_width) {
        return DistributionSpec{Kind::UniformInterval, mean, half_width};
    }
};

struct PlantedCliqueSpec {
    CliquePlan plan;
    DistributionSpec omega_in;  // mean alpha, within planted cliques
    DistributionSpec omega_out; // mean beta, everywhere else
};

struct PlantedBicliqueSpec {
    BicliquePlan plan;
    DistributionSpec omega_in;
    DistributionSpec omega_out;
};

// Constants of the theorem bounds plus the free certificate parameters.
// The paper leaves all of them unspecified ("there exist scalars c_i > 0");
// defaults are calibration choices, never asserted as paper values.
struct GuaranteeParams {
    double c1 = 1.0, c2 = 1.0, c3 = 1.0; // clique bound
    double b1 = 1.0, b2 = 1.0;           // biclique bound
    double epsilon = 0.1;                // mu = eps * gamma * r_hat
    double kappa = 0.9;                  // pi_4 = kappa * (phibar - beta * max tau)

    void validate() const;
};

struct GuaranteeReport {
    double gamma = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool tau_condition_holds = true; // biclique only; true for cliques
    bool holds = false;
};

// Entries within the same planted clique (including the diagonal) are drawn
// from omega_in, all remaining entries (noise diagonal block included) from
// omega_out; one draw per unordered pair, upper-triangular row-major order.
SymmetricWeights sample_planted_cluster(const PlantedCliqueSpec& spec,
                                        std::uint64_t seed);

// In-block entries from omega_in, all others from omega_out; row-major order.
BipartiteWeights sample_planted_bicluster(const PlantedBicliqueSpec& spec,
                                          std::uint64_t seed);

// gamma = alpha (1 + delta_{0, r_noise}) - 2 beta.
double gamma_clique(double alpha, double beta, int r_noise);

// gamma = alpha (1 + delta_{0, m_noise} delta_{0, n_noise}) - 2 beta.
double gamma_biclique(double alpha, double beta, int m_noise, int n_noise);

// lhs = c1 sqrt(N) + c2 sqrt(k r_noise) + c3 r_noise, rhs = gamma r_hat.
GuaranteeReport check_clique_guarantee(const PlantedCliqueSpec& spec,
                                       const GuaranteeParams& params);

// lhs = b1 (sqrt(k) + sqrt(n_noise) + 1) sqrt(N) + beta tau_noise n_noise,
// rhs = b2 gamma n_hat; the tau condition alpha tau_i > beta tau_j is
// checked over q <= k, plus the noise ratio when it is defined. When
// n_noise = 0 the tau_noise term is absent (m_noise > 0 or not).
GuaranteeReport check_biclique_guarantee(const PlantedBicliqueSpec& spec,
                                         const GuaranteeParams& params);

} // namespace kdc
