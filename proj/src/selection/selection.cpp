#include "rmgen/selection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rmgen/errors.hpp"
#include "rmgen/rng.hpp"

namespace rmgen::selection {

using scenario::RadioMap;
using scenario::Scenario;

double obstacle_density(const Scenario& scenario, const Bounds& bounds) {
    int touching = 0;
    for (const auto& o : scenario.obstacles) {
        if (o.x0 <= bounds.col1 && o.x1 >= bounds.col0 && o.y0 <= bounds.row1 && o.y1 >= bounds.row0) ++touching;
    }
    int covered = 0;
    for (int r = bounds.row0; r <= bounds.row1; ++r) {
        for (int c = bounds.col0; c <= bounds.col1; ++c) {
            const bool hit = std::any_of(scenario.obstacles.begin(), scenario.obstacles.end(),
                                         [&](const scenario::Obstacle& o) { return o.covers(c, r); });
            covered += hit ? 1 : 0;
        }
    }
    return touching + static_cast<double>(covered) / bounds.cell_count();
}

std::vector<Bounds> subareas(int grid_n, int n_subareas) {
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n_subareas))));
    if (n_subareas < 1 || side * side != n_subareas || grid_n % side != 0) {
        throw ConfigError("n_subareas must be a perfect square whose root divides grid_n (got " +
                          std::to_string(n_subareas) + " for grid " + std::to_string(grid_n) + ")");
    }
    const int len = grid_n / side;
    std::vector<Bounds> out;
    out.reserve(static_cast<std::size_t>(n_subareas));
    for (int i = 0; i < side; ++i) {
        for (int j = 0; j < side; ++j) {
            out.push_back({i * len, j * len, (i + 1) * len - 1, (j + 1) * len - 1});
        }
    }
    return out;
}

std::vector<SubareaRanking> rank_subareas(const Scenario& scenario, int n_subareas) {
    const auto tiles = subareas(scenario.grid_n, n_subareas);
    std::vector<SubareaRanking> ranking;
    ranking.reserve(tiles.size());
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        ranking.push_back({static_cast<int>(i), obstacle_density(scenario, tiles[i]), tiles[i]});
    }
    // Stable sort keeps equal densities in ascending index order.
    std::stable_sort(ranking.begin(), ranking.end(),
                     [](const SubareaRanking& a, const SubareaRanking& b) { return a.density > b.density; });
    return ranking;
}

Fragment extract_fragment(const RadioMap& map, int row, int col, int k) {
    if (k < 1 || row < 0 || col < 0 || row + k > map.grid_n || col + k > map.grid_n) {
        throw SelectionError("fragment window does not fit the map");
    }
    Fragment f{row, col, k, {}};
    f.values_dbm.reserve(static_cast<std::size_t>(k) * k);
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) f.values_dbm.push_back(map.at(row + r, col + c));
    }
    return f;
}

std::pair<int, int> centered_origin(const Bounds& b, int k, int grid_n) {
    auto place = [&](int lo, int hi) {
        const int len = hi - lo + 1;
        const int origin = lo + static_cast<int>(std::floor((len - k) / 2.0));
        return std::clamp(origin, 0, grid_n - k);
    };
    return {place(b.row0, b.row1), place(b.col0, b.col1)};
}

std::vector<Fragment> environment_aware_select(const Scenario& scenario, const RadioMap& map, int n_subareas, int m,
                                               int k) {
    if (map.grid_n != scenario.grid_n) throw DimensionError("map and scenario grids differ");
    if (k < 1 || k > scenario.grid_n) throw ConfigError("fragment size out of range");
    if (m < 0) throw SelectionError("fragment count must be non-negative");
    const auto ranking = rank_subareas(scenario, n_subareas);
    if (m > static_cast<int>(ranking.size())) {
        throw SelectionError("requested " + std::to_string(m) + " fragments from " +
                             std::to_string(ranking.size()) + " subareas");
    }
    std::vector<Fragment> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        const auto [row, col] = centered_origin(ranking[static_cast<std::size_t>(j)].bounds, k, scenario.grid_n);
        out.push_back(extract_fragment(map, row, col, k));
    }
    return out;
}

std::vector<Fragment> random_select(const RadioMap& map, int m, int k, std::uint64_t seed) {
    if (k < 1 || k > map.grid_n) throw ConfigError("fragment size out of range");
    if (m < 0 || static_cast<long>(m) * k * k > static_cast<long>(map.grid_n) * map.grid_n) {
        throw SelectionError("cannot fit " + std::to_string(m) + " fragments of size " + std::to_string(k));
    }
    Rng rng(seed);
    std::uniform_int_distribution<int> pos(0, map.grid_n - k);
    std::vector<std::pair<int, int>> chosen;
    const long max_attempts = 10L * m * 100;
    long attempts = 0;
    while (static_cast<int>(chosen.size()) < m) {
        if (attempts++ >= max_attempts) {
            throw SelectionError("could not place " + std::to_string(m) + " non-overlapping fragments after " +
                                 std::to_string(max_attempts) + " attempts");
        }
        const int r = pos(rng), c = pos(rng);
        const bool overlaps = std::any_of(chosen.begin(), chosen.end(), [&](const auto& o) {
            return r < o.first + k && o.first < r + k && c < o.second + k && o.second < c + k;
        });
        if (!overlaps) chosen.emplace_back(r, c);
    }
    std::vector<Fragment> out;
    out.reserve(chosen.size());
    for (const auto& [r, c] : chosen) out.push_back(extract_fragment(map, r, c, k));
    return out;
}

int fragment_budget(double percent, int grid_n, int k) {
    if (!(percent > 0.0) || percent > 100.0) throw ConfigError("fragment percentage must lie in (0, 100]");
    if (k < 1 || grid_n < 1) throw ConfigError("grid and fragment size must be positive");
    const double cells = static_cast<double>(grid_n) * grid_n;
    const double m = percent * cells / (100.0 * static_cast<double>(k) * k);
    return static_cast<int>(std::ceil(m - 1e-9));
}

}  // namespace rmgen::selection
