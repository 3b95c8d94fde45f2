#include "sparsecode/hetero.hpp"

#include <algorithm>

#include "sparsecode/combinatorics.hpp"
#include "sparsecode/errors.hpp"

namespace sparsecode {

void DeviceProfile::validate() const {
    if (capacities.empty()) {
        throw ProfileError("profile needs at least one device");
    }
    for (std::size_t d = 0; d < capacities.size(); ++d) {
        if (capacities[d] < 1) {
            throw ProfileError("capacity of device " + std::to_string(d) + " must be positive");
        }
        if (d > 0 && capacities[d] > capacities[d - 1]) {
            throw ProfileError("capacities must be sorted nonincreasing");
        }
    }
    if (capacities.back() != 1) {
        throw ProfileError("the weakest device must have capacity 1");
    }
    if (split < 0 || split > static_cast<int>(capacities.size()) - 1) {
        throw ProfileError("split index must lie in [0, devices - 1]");
    }
}

DeviceProfile profile_from_json(const nlohmann::json& j) {
    DeviceProfile p;
    try {
        p.capacities = j.at("capacities").get<std::vector<int>>();
        p.split = j.at("split").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw ProfileError(std::string("malformed profile JSON: ") + e.what());
    }
    p.validate();
    return p;
}

nlohmann::json profile_to_json(const DeviceProfile& profile) {
    return {{"capacities", profile.capacities}, {"split", profile.split}};
}

int VirtualMap::device_of(int virtual_id) const {
    for (std::size_t d = 0; d < ranges.size(); ++d) {
        if (virtual_id >= ranges[d].first && virtual_id < ranges[d].second) {
            return static_cast<int>(d);
        }
    }
    throw ProfileError("virtual id " + std::to_string(virtual_id) + " out of range");
}

int VirtualMap::virtual_id(int device, int task) const {
    if (device < 0 || device >= static_cast<int>(ranges.size())) {
        throw ProfileError("device " + std::to_string(device) + " out of range");
    }
    const auto [first, last] = ranges[device];
    if (task < 0 || first + task >= last) {
        throw ProfileError("device " + std::to_string(device) + " has no task " +
                           std::to_string(task));
    }
    return first + task;
}

VirtualMap expand_profile(const DeviceProfile& profile) {
    profile.validate();
    VirtualMap map;
    int offset = 0;
    for (std::size_t d = 0; d < profile.capacities.size(); ++d) {
        map.ranges.emplace_back(offset, offset + profile.capacities[d]);
        if (static_cast<int>(d) < profile.split) {
            map.k_a += profile.capacities[d];
        } else {
            map.s += profile.capacities[d];
        }
        offset += profile.capacities[d];
    }
    map.n = offset;
    return map;
}

HeteroAssignment assign_hetero(const DeviceProfile& profile, std::uint64_t seed) {
    auto map = expand_profile(profile);
    if (map.k_a < 1) {
        throw ProfileError("split index leaves no unknown blocks (k_a = 0)");
    }
    return {make_proposed_mv_plan(map.n, map.k_a, map.s, seed), std::move(map)};
}

PartialRecovery recover_from_partial(const std::vector<CompletedTask>& completed,
                                     const EncodingPlan& plan, const VirtualMap& map,
                                     double tol) {
    std::vector<int> ids;
    ids.reserve(completed.size());
    for (const auto& c : completed) {
        ids.push_back(map.virtual_id(c.device, c.task));
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    PartialRecovery out;
    const int k = plan.unknowns();
    if (static_cast<int>(ids.size()) < k) {
        return out;
    }
    std::vector<int> chosen(static_cast<std::size_t>(k));
    for_each_combination(static_cast<int>(ids.size()), k, [&](const std::vector<int>& pick) {
        for (int t = 0; t < k; ++t) {
            chosen[t] = ids[pick[t]];
        }
        if (is_decodable(plan, chosen, tol)) {
            out.decodable = true;
            out.subset = chosen;
            return false;
        }
        return true;
    });
    return out;
}

std::vector<CompletedTask> completed_prefixes(const VirtualMap& map, const std::vector<int>& done) {
    if (done.size() != map.ranges.size()) {
        throw ProfileError("expected one completion count per device");
    }
    std::vector<CompletedTask> out;
    for (std::size_t d = 0; d < done.size(); ++d) {
        const int cap = map.ranges[d].second - map.ranges[d].first;
        if (done[d] < 0 || done[d] > cap) {
            throw ProfileError("device " + std::to_string(d) + " completion count out of range");
        }
        for (int t = 0; t < done[d]; ++t) {
            out.push_back({static_cast<int>(d), t});
        }
    }
    return out;
}

}  // namespace sparsecode
