#include "rmgen/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rmgen/errors.hpp"
#include "rmgen/rng.hpp"

namespace rmgen::scenario {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int uniform_int(Rng& rng, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng);
}

}  // namespace

std::string to_string(Regime r) { return r == Regime::indoor ? "indoor" : "outdoor"; }

Regime parse_regime(const std::string& s) {
    if (s == "indoor") return Regime::indoor;
    if (s == "outdoor") return Regime::outdoor;
    throw ConfigError("unknown regime '" + s + "' (expected indoor or outdoor)");
}

RegimeProfile regime_profile(Regime r) {
    if (r == Regime::indoor) return {0.5, 60.0, 20.0f, 0.6, 12};
    return {10.0, 3.7, 40.0f, 1.0, 10};
}

ScenarioParams ScenarioParams::defaults(Regime r) {
    ScenarioParams p;
    if (r == Regime::indoor) {
        p.min_obstacles = 3;
        p.max_obstacles = 12;
        p.min_obstacle_side = 1;
        p.max_obstacle_side = 4;
        p.min_loss_db = 15.0f;
        p.max_loss_db = 40.0f;
    } else {
        p.min_obstacles = 4;
        p.max_obstacles = 10;
        p.min_obstacle_side = 3;
        p.max_obstacle_side = 8;
        p.min_loss_db = 10.0f;
        p.max_loss_db = 25.0f;
    }
    return p;
}

void ScenarioParams::validate(Regime r) const {
    const auto prof = regime_profile(r);
    if (!is_power_of_two(grid_n) || grid_n < 4) {
        throw ConfigError("grid_n must be a power of two >= 4, got " + std::to_string(grid_n));
    }
    if (min_obstacles < 0 || max_obstacles < min_obstacles || max_obstacles > prof.max_obstacles) {
        throw ConfigError("obstacle count range [" + std::to_string(min_obstacles) + "," +
                          std::to_string(max_obstacles) + "] outside [0," + std::to_string(prof.max_obstacles) +
                          "] for " + to_string(r));
    }
    if (min_tx < 1 || max_tx > 2 || max_tx < min_tx) throw ConfigError("transmitter count must lie in [1,2]");
    if (min_obstacle_side < 1 || max_obstacle_side < min_obstacle_side || max_obstacle_side > grid_n) {
        throw ConfigError("obstacle side range invalid");
    }
    if (!(min_loss_db >= 0.0f) || !(max_loss_db >= min_loss_db) || !std::isfinite(max_loss_db)) {
        throw ConfigError("penetration loss range invalid");
    }
    if (tx_power_dbm && !std::isfinite(*tx_power_dbm)) throw ConfigError("transmit power must be finite");
}

void Scenario::validate() const {
    if (!is_power_of_two(grid_n)) throw ConfigError("grid_n must be a power of two");
    if (!(cell_size_m > 0.0) || !(freq_ghz > 0.0)) throw ConfigError("cell size and frequency must be positive");
    for (const auto& o : obstacles) {
        if (o.x0 < 0 || o.y0 < 0 || o.x1 >= grid_n || o.y1 >= grid_n || o.x0 > o.x1 || o.y0 > o.y1) {
            throw ConfigError("obstacle outside grid or degenerate");
        }
        if (!(o.penetration_loss_db >= 0.0f) || !std::isfinite(o.penetration_loss_db)) {
            throw ConfigError("penetration loss must be finite and non-negative");
        }
    }
    if (tx_list.empty()) throw ConfigError("scenario has no transmitter");
    for (const auto& tx : tx_list) {
        if (tx.x < 0 || tx.y < 0 || tx.x >= grid_n || tx.y >= grid_n) throw ConfigError("transmitter outside grid");
    }
}

Scenario random_scenario(Regime regime, std::uint64_t seed, const ScenarioParams& params) {
    params.validate(regime);
    const auto prof = regime_profile(regime);
    Rng rng(seed);

    Scenario s;
    s.id = seed;
    s.grid_n = params.grid_n;
    s.cell_size_m = prof.cell_size_m;
    s.freq_ghz = prof.freq_ghz;
    s.tx_power_dbm = params.tx_power_dbm.value_or(prof.tx_power_dbm);
    s.regime = regime;

    const int n = params.grid_n;
    const int n_obs = uniform_int(rng, params.min_obstacles, params.max_obstacles);
    const int max_side = std::min(params.max_obstacle_side, n);
    std::uniform_real_distribution<float> loss(params.min_loss_db, params.max_loss_db);
    for (int i = 0; i < n_obs; ++i) {
        Obstacle o;
        const int w = uniform_int(rng, params.min_obstacle_side, max_side);
        const int h = uniform_int(rng, params.min_obstacle_side, max_side);
        o.x0 = uniform_int(rng, 0, n - w);
        o.y0 = uniform_int(rng, 0, n - h);
        o.x1 = o.x0 + w - 1;
        o.y1 = o.y0 + h - 1;
        o.penetration_loss_db = loss(rng);
        s.obstacles.push_back(o);
    }

    const int n_tx = uniform_int(rng, params.min_tx, params.max_tx);
    for (int i = 0; i < n_tx; ++i) {
        TxLocation tx{uniform_int(rng, 0, n - 1), uniform_int(rng, 0, n - 1)};
        for (int attempt = 0; attempt < 64; ++attempt) {
            const bool blocked = std::any_of(s.obstacles.begin(), s.obstacles.end(),
                                             [&](const Obstacle& o) { return o.covers(tx.x, tx.y); });
            if (!blocked) break;
            tx = {uniform_int(rng, 0, n - 1), uniform_int(rng, 0, n - 1)};
        }
        s.tx_list.push_back(tx);
    }
    s.validate();
    return s;
}

Scenario random_scenario(Regime regime, std::uint64_t seed) {
    return random_scenario(regime, seed, ScenarioParams::defaults(regime));
}

std::vector<ObstacleCrossing> crossings(const Scenario& scenario, const TxLocation& tx, int rx_row, int rx_col) {
    std::vector<ObstacleCrossing> out;
    const double px = tx.x + 0.5, py = tx.y + 0.5;
    const double dx = rx_col - tx.x, dy = rx_row - tx.y;
    if (dx == 0.0 && dy == 0.0) return out;

    for (std::size_t i = 0; i < scenario.obstacles.size(); ++i) {
        const auto& o = scenario.obstacles[i];
        // Liang-Barsky clip of p + t*d, t in [0,1], against the closed box.
        double t0 = 0.0, t1 = 1.0;
        const double p[4] = {-dx, dx, -dy, dy};
        const double q[4] = {px - o.x0, (o.x1 + 1.0) - px, py - o.y0, (o.y1 + 1.0) - py};
        bool inside = true;
        for (int k = 0; k < 4 && inside; ++k) {
            if (p[k] == 0.0) {
                // Parallel to this edge: reject unless strictly inside the slab.
                if (q[k] <= 0.0) inside = false;
                continue;
            }
            const double r = q[k] / p[k];
            if (p[k] < 0.0) {
                t0 = std::max(t0, r);
            } else {
                t1 = std::min(t1, r);
            }
        }
        if (inside && t1 - t0 > 1e-12) out.push_back({i, 1});
    }
    return out;
}

double fspl_db(double distance_m, double freq_ghz) {
    return 32.45 + 20.0 * std::log10(distance_m / 1000.0) + 20.0 * std::log10(freq_ghz * 1000.0);
}

double compute_rss(const Scenario& scenario, int rx_row, int rx_col) {
    const auto prof = regime_profile(scenario.regime);
    const double d0 = scenario.cell_size_m;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& tx : scenario.tx_list) {
        const double di = rx_row - tx.y, dj = rx_col - tx.x;
        const double d = std::max(scenario.cell_size_m * std::sqrt(di * di + dj * dj), 0.5 * scenario.cell_size_m);
        double loss = fspl_db(d, scenario.freq_ghz);
        for (const auto& c : crossings(scenario, tx, rx_row, rx_col)) {
            loss += c.count * static_cast<double>(scenario.obstacles[c.obstacle_index].penetration_loss_db);
        }
        // Excess exponent only beyond the reference distance d0.
        loss += prof.excess_exponent * 10.0 * std::log10(std::max(d, d0) / d0);
        best = std::max(best, static_cast<double>(scenario.tx_power_dbm) - loss);
    }
    return best;
}

RadioMap generate_map(const Scenario& scenario) {
    scenario.validate();
    RadioMap m;
    m.grid_n = scenario.grid_n;
    m.scenario_id = scenario.id;
    m.tx_list = scenario.tx_list;
    m.values_dbm.resize(static_cast<std::size_t>(scenario.grid_n) * scenario.grid_n);
    for (int r = 0; r < scenario.grid_n; ++r) {
        for (int c = 0; c < scenario.grid_n; ++c) {
            m.at(r, c) = static_cast<float>(compute_rss(scenario, r, c));
        }
    }
    return m;
}

void validate_map(const RadioMap& map, const Scenario& scenario) {
    if (map.grid_n != scenario.grid_n ||
        map.values_dbm.size() != static_cast<std::size_t>(map.grid_n) * map.grid_n) {
        throw DimensionError("radio map shape does not match scenario grid");
    }
    for (float v : map.values_dbm) {
        if (!std::isfinite(v) || v > scenario.tx_power_dbm) {
            throw ConfigError("radio map value " + std::to_string(v) + " not finite or above transmit power");
        }
    }
}

}  // namespace rmgen::scenario
