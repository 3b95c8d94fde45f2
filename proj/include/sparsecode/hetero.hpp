#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sparsecode/decoder.hpp"
#include "sparsecode/encoder.hpp"

namespace sparsecode {

/// Heterogeneous devices, each worth `capacities[d]` of the weakest device.
/// Capacities are nonincreasing and end in 1; the first `split` devices form
/// the k_a side of the virtual system and the rest the s side.
struct DeviceProfile {
    std::vector<int> capacities;
    int split = 0;

    void validate() const;
};

DeviceProfile profile_from_json(const nlohmann::json& j);
nlohmann::json profile_to_json(const DeviceProfile& profile);

/// Homogeneous system of n = sum(capacities) virtual workers.
struct VirtualMap {
    int n = 0;
    int k_a = 0;
    int s = 0;
    /// Device d owns virtual ids [ranges[d].first, ranges[d].second).
    std::vector<std::pair<int, int>> ranges;

    int device_of(int virtual_id) const;
    int virtual_id(int device, int task) const;
};

VirtualMap expand_profile(const DeviceProfile& profile);

struct HeteroAssignment {
    EncodingPlan plan;  // proposed matrix-vector plan over the virtual workers
    VirtualMap map;
};

HeteroAssignment assign_hetero(const DeviceProfile& profile, std::uint64_t seed);

/// One finished coded task: the `task`-th virtual task of `device`.
struct CompletedTask {
    int device = 0;
    int task = 0;
};

struct PartialRecovery {
    bool decodable = false;
    std::vector<int> subset;  // sorted virtual worker ids used for decoding
};

/// Chooses the first decodable k_a-subset (colex order) among the completed
/// virtual tasks; not decodable when fewer than k_a distinct tasks finished.
PartialRecovery recover_from_partial(const std::vector<CompletedTask>& completed,
                                     const EncodingPlan& plan, const VirtualMap& map,
                                     double tol = kDecodeTolerance);

/// Tasks of devices that each finished only their first `done[d]` tasks in range order.
std::vector<CompletedTask> completed_prefixes(const VirtualMap& map, const std::vector<int>& done);

}  // namespace sparsecode
