#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rmgen::scenario {

enum class Regime : std::int32_t { indoor = 0, outdoor = 1 };

std::string to_string(Regime r);
Regime parse_regime(const std::string& s);

// Axis-aligned block of cells [x0..x1] x [y0..y1] (inclusive, x = column,
// y = row) with one scalar penetration loss.
struct Obstacle {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    float penetration_loss_db = 0.0f;

    bool covers(int x, int y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
    bool operator==(const Obstacle&) const = default;
};

struct TxLocation {
    int x = 0;  // column
    int y = 0;  // row
    bool operator==(const TxLocation&) const = default;
};

struct Scenario {
    std::uint64_t id = 0;
    int grid_n = 32;
    double cell_size_m = 0.5;
    double freq_ghz = 60.0;
    std::vector<Obstacle> obstacles;
    std::vector<TxLocation> tx_list;
    float tx_power_dbm = 20.0f;
    Regime regime = Regime::indoor;

    // Throws ConfigError when a Scenario invariant is violated.
    void validate() const;
    bool operator==(const Scenario&) const = default;
};

// N x N received signal strengths, row-major: values_dbm[row * N + col].
struct RadioMap {
    int grid_n = 0;
    std::vector<float> values_dbm;
    std::uint64_t scenario_id = 0;
    std::vector<TxLocation> tx_list;

    float at(int row, int col) const { return values_dbm[static_cast<std::size_t>(row) * grid_n + col]; }
    float& at(int row, int col) { return values_dbm[static_cast<std::size_t>(row) * grid_n + col]; }
    bool operator==(const RadioMap&) const = default;
};

// Physical constants of a propagation regime.
struct RegimeProfile {
    double cell_size_m;
    double freq_ghz;
    float tx_power_dbm;
    double excess_exponent;  // added on top of free-space exponent 2
    int max_obstacles;
};

RegimeProfile regime_profile(Regime r);

struct ScenarioParams {
    int grid_n = 32;
    int min_obstacles = 3;
    int max_obstacles = 12;
    int min_tx = 1;
    int max_tx = 2;
    int min_obstacle_side = 1;  // cells
    int max_obstacle_side = 4;
    float min_loss_db = 15.0f;
    float max_loss_db = 40.0f;
    std::optional<float> tx_power_dbm;  // regime default when unset

    static ScenarioParams defaults(Regime r);
    // Throws ConfigError when outside the documented ranges for the regime.
    void validate(Regime r) const;
};

// Reproducible scenario for (regime, seed, params). Transmitters avoid
// obstacle cells whenever a free cell exists.
Scenario random_scenario(Regime regime, std::uint64_t seed, const ScenarioParams& params);
Scenario random_scenario(Regime regime, std::uint64_t seed);

struct ObstacleCrossing {
    std::size_t obstacle_index;
    int count;
};

// Obstacles whose bounding box the straight segment between the Tx and Rx
// cell centers passes through with positive length. Touching a corner or an
// edge does not count. Each obstacle appears at most once, count = 1.
std::vector<ObstacleCrossing> crossings(const Scenario& scenario, const TxLocation& tx, int rx_row, int rx_col);

// Free-space path loss in dB for distance in meters and frequency in GHz.
double fspl_db(double distance_m, double freq_ghz);

// Best-server RSS in dBm at cell (row, col).
double compute_rss(const Scenario& scenario, int rx_row, int rx_col);

RadioMap generate_map(const Scenario& scenario);

// Throws ConfigError if the map breaks a RadioMap invariant for `scenario`.
void validate_map(const RadioMap& map, const Scenario& scenario);

}  // namespace rmgen::scenario
