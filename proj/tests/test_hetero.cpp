#include <gtest/gtest.h>

#include <numeric>

#include "sparsecode/combinatorics.hpp"
#include "sparsecode/errors.hpp"
#include "sparsecode/hetero.hpp"

using namespace sparsecode;

namespace {

const DeviceProfile kExample{{3, 2, 2, 1, 1, 1, 1, 1}, 5};

}  // namespace

TEST(Profile, ExampleExpansion) {
    const auto map = expand_profile(kExample);
    EXPECT_EQ(map.n, 12);
    EXPECT_EQ(map.k_a, 9);
    EXPECT_EQ(map.s, 3);
    EXPECT_EQ(map.ranges[0], (std::pair<int, int>{0, 3}));
    EXPECT_EQ(map.device_of(2), 0);
    EXPECT_EQ(map.device_of(3), 1);
    EXPECT_EQ(map.virtual_id(2, 1), 6);
}

TEST(Profile, UnitCapacities) {
    const DeviceProfile unit{{1, 1, 1, 1, 1}, 4};
    const auto map = expand_profile(unit);
    EXPECT_EQ(map.s, 1);
    for (int d = 0; d < 5; ++d) {
        EXPECT_EQ(map.ranges[d], (std::pair<int, int>{d, d + 1}));
    }
}

TEST(Profile, Validation) {
    EXPECT_THROW(expand_profile({{1, 2, 1}, 1}), ProfileError);
    EXPECT_THROW(expand_profile({{2, 2}, 1}), ProfileError);
    EXPECT_THROW(expand_profile({{2, 1}, 2}), ProfileError);
    EXPECT_THROW(expand_profile({{}, 0}), ProfileError);
}

TEST(Profile, RandomProfilesTile) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 300; ++t) {
        const int devices = 1 + static_cast<int>(rng() % 12);
        std::vector<int> caps(static_cast<std::size_t>(devices));
        for (auto& c : caps) {
            c = 1 + static_cast<int>(rng() % 4);
        }
        std::sort(caps.rbegin(), caps.rend());
        caps.back() = 1;
        const int split = static_cast<int>(rng() % static_cast<std::uint64_t>(devices));
        const auto map = expand_profile({caps, split});
        EXPECT_EQ(map.n, std::accumulate(caps.begin(), caps.end(), 0));
        EXPECT_EQ(map.k_a + map.s, map.n);
        int next = 0;
        for (int d = 0; d < devices; ++d) {
            EXPECT_EQ(map.ranges[d].first, next);
            EXPECT_EQ(map.ranges[d].second - map.ranges[d].first, caps[d]);
            next = map.ranges[d].second;
        }
        EXPECT_EQ(next, map.n);
    }
}

TEST(Profile, JsonRoundTrip) {
    const auto j = profile_to_json(kExample);
    const auto back = profile_from_json(j);
    EXPECT_EQ(back.capacities, kExample.capacities);
    EXPECT_EQ(back.split, kExample.split);
    EXPECT_THROW(profile_from_json(nlohmann::json{{"capacities", {1, 2}}, {"split", 0}}), ProfileError);
}

TEST(Assign, ExampleTasksOfFirstDevice) {
    const auto h = assign_hetero(kExample, 3);
    EXPECT_EQ(h.plan.supports_a[0], (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(h.plan.supports_a[1], (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(h.plan.supports_a[2], (std::vector<int>{2, 3, 4}));
}

TEST(Assign, UnitCapacitiesMatchHomogeneousPlan) {
    const DeviceProfile unit{{1, 1, 1, 1, 1, 1}, 4};
    EXPECT_EQ(assign_hetero(unit, 11).plan, make_proposed_mv_plan(6, 4, 2, 11));
}

TEST(Partial, ExampleScenario) {
    const auto h = assign_hetero(kExample, 3);
    const auto done = completed_prefixes(h.map, {2, 1, 1, 1, 1, 1, 1, 1});
    EXPECT_EQ(done.size(), 9u);
    const auto r = recover_from_partial(done, h.plan, h.map);
    EXPECT_TRUE(r.decodable);
    EXPECT_EQ(r.subset.size(), 9u);
}

TEST(Partial, AllAndTooFew) {
    const auto h = assign_hetero(kExample, 3);
    const auto all = completed_prefixes(h.map, {3, 2, 2, 1, 1, 1, 1, 1});
    EXPECT_TRUE(recover_from_partial(all, h.plan, h.map).decodable);
    const auto few = completed_prefixes(h.map, {2, 1, 1, 1, 1, 1, 1, 0});
    EXPECT_EQ(few.size(), 8u);
    EXPECT_FALSE(recover_from_partial(few, h.plan, h.map).decodable);
}

TEST(Partial, LossOfFirstDeviceTolerated) {
    const auto h = assign_hetero(kExample, 3);
    const auto done = completed_prefixes(h.map, {0, 2, 2, 1, 1, 1, 1, 1});
    EXPECT_TRUE(recover_from_partial(done, h.plan, h.map).decodable);
}

TEST(Partial, EveryDeviceFailureWithinBudget) {
    const auto h = assign_hetero(kExample, 7);
    const int devices = static_cast<int>(kExample.capacities.size());
    int patterns = 0;
    for (unsigned mask = 0; mask < (1u << devices); ++mask) {
        int lost = 0;
        std::vector<int> done(kExample.capacities);
        for (int d = 0; d < devices; ++d) {
            if (mask & (1u << d)) {
                lost += kExample.capacities[d];
                done[d] = 0;
            }
        }
        if (lost > h.map.s) {
            continue;
        }
        ++patterns;
        EXPECT_TRUE(recover_from_partial(completed_prefixes(h.map, done), h.plan, h.map).decodable)
            << "mask " << mask;
    }
    EXPECT_GT(patterns, 8);
}
