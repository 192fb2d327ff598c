// Instance / plan / sweep-spec JSON serialization and CSV point clouds.
#pragma once

#include "kdc/bench.hpp"
#include "kdc/planted.hpp"
#include "kdc/sdp.hpp"
#include "kdc/types.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace kdc {

struct GenSpec {
    DistributionSpec dist_in;
    DistributionSpec dist_out;
    std::uint64_t seed = 0;
};

// A single problem instance: weights, trace budget, and optionally the
// planted ground truth plus the generator provenance.
struct Instance {
    SdpVariant kind = SdpVariant::Clique;
    int k = 1;
    std::optional<SymmetricWeights> sym;
    std::optional<BipartiteWeights> bip;
    std::optional<CliquePlan> truth_clique;
    std::optional<BicliquePlan> truth_biclique;
    std::optional<GenSpec> gen;
};

nlohmann::json to_json(const DistributionSpec& d);
DistributionSpec distribution_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CliquePlan& p);
CliquePlan clique_plan_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BicliquePlan& p);
BicliquePlan biclique_plan_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

SweepSpec sweep_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SweepSpec& spec);
SweepSpec load_sweep_spec(const std::string& path);

// CSV point cloud, one point per row.
PointCloud load_point_cloud_csv(const std::string& path);

nlohmann::json to_json(const KktReport& r);
nlohmann::json to_json(const ResidualReport& r);

} // namespace kdc
