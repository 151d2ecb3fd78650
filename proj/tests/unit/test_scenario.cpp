#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "rmgen/binary_io.hpp"
#include "rmgen/dataset.hpp"
#include "rmgen/errors.hpp"
#include "rmgen/scenario.hpp"

using namespace rmgen::scenario;

namespace {

Scenario open_scenario(int n, double cell, double freq, TxLocation tx, Regime regime = Regime::indoor) {
    Scenario s;
    s.grid_n = n;
    s.cell_size_m = cell;
    s.freq_ghz = freq;
    s.tx_list = {tx};
    s.tx_power_dbm = regime == Regime::indoor ? 20.0f : 40.0f;
    s.regime = regime;
    return s;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("rmgen_scenario_" + name)).string();
}

}  // namespace

TEST(Regime, ParseRoundTrip) {
    EXPECT_EQ(parse_regime("indoor"), Regime::indoor);
    EXPECT_EQ(parse_regime("outdoor"), Regime::outdoor);
    EXPECT_EQ(to_string(Regime::outdoor), "outdoor");
    EXPECT_THROW(parse_regime("space"), rmgen::ConfigError);
}

TEST(Fspl, HandEvaluated) {
    // 32.45 + 20 log10(0.001) + 20 log10(60000)
    EXPECT_NEAR(fspl_db(1.0, 60.0), 32.45 - 60.0 + 20.0 * std::log10(60000.0), 1e-12);
    EXPECT_NEAR(fspl_db(1.0, 60.0), 68.0, 0.05);
}

TEST(RandomScenario, SameSeedIsIdentical) {
    EXPECT_EQ(random_scenario(Regime::indoor, 99), random_scenario(Regime::indoor, 99));
    EXPECT_EQ(random_scenario(Regime::outdoor, 5), random_scenario(Regime::outdoor, 5));
    EXPECT_NE(random_scenario(Regime::indoor, 1), random_scenario(Regime::indoor, 2));
}

TEST(RandomScenario, ZeroObstaclesAllowed) {
    auto p = ScenarioParams::defaults(Regime::indoor);
    p.min_obstacles = p.max_obstacles = 0;
    const Scenario s = random_scenario(Regime::indoor, 3, p);
    EXPECT_TRUE(s.obstacles.empty());
    EXPECT_FALSE(s.tx_list.empty());
}

TEST(RandomScenario, InvalidParamsRejected) {
    auto p = ScenarioParams::defaults(Regime::indoor);
    p.max_obstacles = 40;
    EXPECT_THROW(random_scenario(Regime::indoor, 1, p), rmgen::ConfigError);
    p = ScenarioParams::defaults(Regime::outdoor);
    p.grid_n = 30;
    EXPECT_THROW(random_scenario(Regime::outdoor, 1, p), rmgen::ConfigError);
    p = ScenarioParams::defaults(Regime::indoor);
    p.min_tx = 0;
    EXPECT_THROW(random_scenario(Regime::indoor, 1, p), rmgen::ConfigError);
    p = ScenarioParams::defaults(Regime::indoor);
    p.min_loss_db = -1.0f;
    EXPECT_THROW(random_scenario(Regime::indoor, 1, p), rmgen::ConfigError);
}

TEST(RandomScenario, ThousandSeedsSatisfyInvariants) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const Regime r = seed % 2 ? Regime::outdoor : Regime::indoor;
        const Scenario s = random_scenario(r, seed);
        ASSERT_NO_THROW(s.validate()) << "seed " << seed;
        const auto p = ScenarioParams::defaults(r);
        EXPECT_GE(static_cast<int>(s.obstacles.size()), p.min_obstacles);
        EXPECT_LE(static_cast<int>(s.obstacles.size()), p.max_obstacles);
        EXPECT_GE(static_cast<int>(s.tx_list.size()), 1);
        EXPECT_LE(static_cast<int>(s.tx_list.size()), 2);
        for (const auto& o : s.obstacles) {
            EXPECT_LE(o.x0, o.x1);
            EXPECT_LE(o.y0, o.y1);
            EXPECT_GE(o.x0, 0);
            EXPECT_LT(o.x1, s.grid_n);
            EXPECT_GE(o.penetration_loss_db, p.min_loss_db);
            EXPECT_LE(o.penetration_loss_db, p.max_loss_db);
        }
    }
}

TEST(Scenario, ValidateRejectsBrokenGeometry) {
    Scenario s = open_scenario(32, 0.5, 60.0, {3, 3});
    s.obstacles.push_back({5, 5, 4, 6, 10.0f});
    EXPECT_THROW(s.validate(), rmgen::ConfigError);
    s.obstacles = {{30, 30, 32, 31, 10.0f}};
    EXPECT_THROW(s.validate(), rmgen::ConfigError);
    s.obstacles = {{1, 1, 2, 2, -5.0f}};
    EXPECT_THROW(s.validate(), rmgen::ConfigError);
    s.obstacles.clear();
    s.tx_list.clear();
    EXPECT_THROW(s.validate(), rmgen::ConfigError);
    s.tx_list = {{32, 0}};
    EXPECT_THROW(s.validate(), rmgen::ConfigError);
}

TEST(Crossings, SameCellIsEmpty) {
    Scenario s = open_scenario(8, 0.5, 60.0, {2, 2});
    s.obstacles.push_back({2, 2, 2, 2, 20.0f});
    EXPECT_TRUE(crossings(s, {2, 2}, 2, 2).empty());
}

TEST(Crossings, MiddleColumnWall) {
    Scenario s = open_scenario(5, 1.0, 3.7, {0, 2});
    s.obstacles.push_back({2, 0, 2, 4, 20.0f});
    const auto hits = crossings(s, {0, 2}, 2, 4);
    ASSERT_EQ(hits.size(), 1u);
    EXPECT_EQ(hits[0].obstacle_index, 0u);
    EXPECT_EQ(hits[0].count, 1);
}

TEST(Crossings, AdjacentCellWithFarObstacle) {
    Scenario s = open_scenario(8, 0.5, 60.0, {1, 1});
    s.obstacles.push_back({5, 5, 6, 6, 20.0f});
    EXPECT_TRUE(crossings(s, {1, 1}, 1, 2).empty());
    EXPECT_TRUE(crossings(s, {1, 1}, 2, 2).empty());
}

TEST(Crossings, ObstacleCountedOncePerObstacle) {
    Scenario s = open_scenario(16, 0.5, 60.0, {0, 0});
    s.obstacles.push_back({4, 0, 8, 0, 10.0f});   // long along the path
    s.obstacles.push_back({10, 0, 10, 0, 10.0f});
    const auto hits = crossings(s, {0, 0}, 0, 15);
    ASSERT_EQ(hits.size(), 2u);
    for (const auto& h : hits) EXPECT_EQ(h.count, 1);
}

TEST(Crossings, CornerTouchDoesNotCount) {
    // The diagonal from (0.5,0.5) to (2.5,2.5) meets the box [1,2]x[0,1]
    // only at its corner (1,1).
    Scenario s = open_scenario(4, 1.0, 3.7, {0, 0});
    s.obstacles.push_back({1, 0, 1, 0, 10.0f});
    EXPECT_TRUE(crossings(s, {0, 0}, 2, 2).empty());
}

TEST(ComputeRss, TxCellUsesHalfCellDistance) {
    const Scenario s = open_scenario(32, 0.5, 60.0, {10, 12});
    EXPECT_NEAR(compute_rss(s, 12, 10), 20.0 - fspl_db(0.25, 60.0), 1e-9);
    const Scenario o = open_scenario(32, 10.0, 3.7, {4, 4}, Regime::outdoor);
    EXPECT_NEAR(compute_rss(o, 4, 4), 40.0 - fspl_db(5.0, 3.7), 1e-9);
}

TEST(ComputeRss, ExcessPathLossBeyondReferenceDistance) {
    const Scenario s = open_scenario(32, 10.0, 3.7, {0, 0}, Regime::outdoor);
    // 20 cells away = 200 m; outdoor excess exponent 1.0 with d0 = 10 m.
    const double expected = 40.0 - fspl_db(200.0, 3.7) - 1.0 * 10.0 * std::log10(200.0 / 10.0);
    EXPECT_NEAR(compute_rss(s, 0, 20), expected, 1e-9);
    const Scenario in = open_scenario(32, 0.5, 60.0, {0, 0});
    const double expected_in = 20.0 - fspl_db(5.0, 60.0) - 0.6 * 10.0 * std::log10(5.0 / 0.5);
    EXPECT_NEAR(compute_rss(in, 10, 0), expected_in, 1e-9);
}

TEST(ComputeRss, ObstacleLossIsAdditive) {
    Scenario s = open_scenario(32, 0.5, 60.0, {2, 10});
    const double clear = compute_rss(s, 10, 20);
    s.obstacles.push_back({10, 8, 11, 12, 20.0f});
    EXPECT_NEAR(compute_rss(s, 10, 20), clear - 20.0, 1e-9);
}

TEST(ComputeRss, BestServerAcrossTransmitters) {
    Scenario s = open_scenario(32, 0.5, 60.0, {0, 0});
    s.tx_list.push_back({31, 31});
    Scenario a = s, b = s;
    a.tx_list = {{0, 0}};
    b.tx_list = {{31, 31}};
    for (int r = 0; r < 32; r += 7) {
        for (int c = 0; c < 32; c += 5) {
            EXPECT_DOUBLE_EQ(compute_rss(s, r, c), std::max(compute_rss(a, r, c), compute_rss(b, r, c)));
        }
    }
}

TEST(GenerateMap, RotationSymmetryAboutTx) {
    const Scenario s = open_scenario(32, 0.5, 60.0, {16, 16});
    const RadioMap m = generate_map(s);
    for (int dr = -15; dr <= 15; ++dr) {
        for (int dc = -15; dc <= 15; ++dc) {
            // 90 degree rotation (dr, dc) -> (dc, -dr) about the Tx cell.
            EXPECT_EQ(m.at(16 + dr, 16 + dc), m.at(16 + dc, 16 - dr));
            EXPECT_EQ(m.at(16 + dr, 16 + dc), m.at(16 - dr, 16 - dc));
        }
    }
}

TEST(GenerateMap, NeverExceedsTransmitPower) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Scenario s = random_scenario(seed % 2 ? Regime::outdoor : Regime::indoor, seed);
        const RadioMap m = generate_map(s);
        ASSERT_EQ(m.values_dbm.size(), 32u * 32u);
        EXPECT_NO_THROW(validate_map(m, s));
        for (float v : m.values_dbm) {
            EXPECT_TRUE(std::isfinite(v));
            EXPECT_LE(v, s.tx_power_dbm);
        }
    }
}

TEST(GenerateMap, MonotoneAlongClearRay) {
    const Scenario s = open_scenario(32, 0.5, 60.0, {3, 9});
    const RadioMap m = generate_map(s);
    for (int c = 4; c < 32; ++c) EXPECT_LE(m.at(9, c), m.at(9, c - 1));
    for (int r = 10; r < 32; ++r) EXPECT_LE(m.at(r, 3), m.at(r - 1, 3));
}

TEST(GenerateMap, RemovingObstacleNeverLowersRss) {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        const Scenario s = random_scenario(Regime::indoor, seed);
        if (s.obstacles.empty()) continue;
        Scenario fewer = s;
        fewer.obstacles.erase(fewer.obstacles.begin());
        const RadioMap a = generate_map(s), b = generate_map(fewer);
        for (std::size_t i = 0; i < a.values_dbm.size(); ++i) EXPECT_GE(b.values_dbm[i], a.values_dbm[i]);
    }
}

TEST(GenerateMap, DeterministicAndTagged) {
    const Scenario s = random_scenario(Regime::outdoor, 77);
    const RadioMap a = generate_map(s);
    EXPECT_EQ(a, generate_map(s));
    EXPECT_EQ(a.scenario_id, s.id);
    EXPECT_EQ(a.tx_list, s.tx_list);
}

TEST(Dataset, BoundsContainEveryValue) {
    const Dataset ds = build_dataset(Regime::indoor, 12, 4);
    ASSERT_EQ(ds.records.size(), 12u);
    for (const auto& r : ds.records) {
        for (float v : r.map.values_dbm) {
            EXPECT_LE(ds.min_dbm, v);
            EXPECT_GE(ds.max_dbm, v);
        }
    }
    EXPECT_THROW(build_dataset(Regime::indoor, 0, 4), rmgen::ConfigError);
}

TEST(Dataset, SameSeedIsByteIdentical) {
    EXPECT_EQ(encode_dataset(build_dataset(Regime::outdoor, 6, 11)), encode_dataset(build_dataset(Regime::outdoor, 6, 11)));
    EXPECT_NE(encode_dataset(build_dataset(Regime::outdoor, 6, 11)), encode_dataset(build_dataset(Regime::outdoor, 6, 12)));
}

TEST(Dataset, RoundTripsThroughFile) {
    const Dataset one = build_dataset(Regime::indoor, 1, 8);
    const auto path = temp_path("one.rmg");
    save_dataset(one, path);
    EXPECT_EQ(load_dataset(path), one);
    std::filesystem::remove(path);

    const Dataset many = build_dataset(Regime::outdoor, 5, 9);
    EXPECT_EQ(decode_dataset(encode_dataset(many)), many);
}

TEST(Dataset, HeaderLayout) {
    const auto bytes = encode_dataset(build_dataset(Regime::outdoor, 2, 1));
    ASSERT_GT(bytes.size(), 40u);
    EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "RMG1");
    rmgen::ByteReader r(bytes, "test");
    r.bytes(4);
    EXPECT_EQ(r.i32(), 1);   // regime
    EXPECT_EQ(r.i32(), 32);  // grid_n
    EXPECT_DOUBLE_EQ(r.f64(), 10.0);
    EXPECT_DOUBLE_EQ(r.f64(), 3.7);
    EXPECT_EQ(r.i32(), 2);
}

TEST(Dataset, CorruptInputRejected) {
    auto bytes = encode_dataset(build_dataset(Regime::indoor, 2, 1));
    auto truncated = bytes;
    truncated.resize(bytes.size() - 3);
    EXPECT_THROW(decode_dataset(truncated), rmgen::StorageError);
    auto bad_magic = bytes;
    bad_magic[0] = 'X';
    EXPECT_THROW(decode_dataset(bad_magic), rmgen::StorageError);
    auto trailing = bytes;
    trailing.push_back(0);
    EXPECT_THROW(decode_dataset(trailing), rmgen::StorageError);
    EXPECT_THROW(load_dataset(temp_path("missing.rmg")), rmgen::StorageError);
    EXPECT_THROW(save_dataset(build_dataset(Regime::indoor, 1, 1), "/nonexistent_dir/x.rmg"), rmgen::StorageError);
}

TEST(Dataset, SplitHoldsOutLastFifth) {
    EXPECT_EQ(train_split_point(300), 240u);
    EXPECT_EQ(train_split_point(10), 8u);
    EXPECT_EQ(train_split_point(2), 1u);
    EXPECT_EQ(train_split_point(1), 1u);
    const Dataset ds = build_dataset(Regime::indoor, 10, 2);
    const Dataset tail = slice(ds, 8, 10);
    ASSERT_EQ(tail.records.size(), 2u);
    EXPECT_EQ(tail.records[0], ds.records[8]);
    EXPECT_EQ(tail.min_dbm, ds.min_dbm);
}
