#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rmgen/scenario.hpp"

namespace rmgen::scenario {

struct DatasetRecord {
    Scenario scenario;
    RadioMap map;
    bool operator==(const DatasetRecord&) const = default;
};

// In-memory form of an "RMG1" dataset file.
struct Dataset {
    Regime regime = Regime::indoor;
    int grid_n = 32;
    double cell_size_m = 0.5;
    double freq_ghz = 60.0;
    double min_dbm = 0.0;  // over every stored value
    double max_dbm = 0.0;
    std::vector<DatasetRecord> records;

    bool operator==(const Dataset&) const = default;
};

// `count` scenarios drawn from the "scenario" sub-stream of `seed`, each
// with its ground-truth map, plus global min/max bounds.
Dataset build_dataset(Regime regime, int count, std::uint64_t seed, const ScenarioParams& params);
Dataset build_dataset(Regime regime, int count, std::uint64_t seed);

// Recomputes min_dbm/max_dbm from the records.
void refresh_bounds(Dataset& ds);

std::vector<char> encode_dataset(const Dataset& ds);
Dataset decode_dataset(const std::vector<char>& bytes);

void save_dataset(const Dataset& ds, const std::string& path);
Dataset load_dataset(const std::string& path);

// Records [begin, end) as a new dataset sharing the header (bounds kept).
Dataset slice(const Dataset& ds, std::size_t begin, std::size_t end);

// First 80% / last 20% of records by index (at least one held out when
// there are two or more records).
std::size_t train_split_point(std::size_t count);

}  // namespace rmgen::scenario
