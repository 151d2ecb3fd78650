#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rmgen/scenario.hpp"

namespace rmgen::selection {

// Inclusive cell bounds [row0..row1] x [col0..col1].
struct Bounds {
    int row0 = 0, col0 = 0, row1 = 0, col1 = 0;
    int cell_count() const { return (row1 - row0 + 1) * (col1 - col0 + 1); }
    bool operator==(const Bounds&) const = default;
};

// k x k window of a radio map; values copied verbatim, row-major.
struct Fragment {
    int row = 0;  // origin (top-left cell)
    int col = 0;
    int size_k = 0;
    std::vector<float> values_dbm;
    bool operator==(const Fragment&) const = default;
};

struct SubareaRanking {
    int subarea_index = 0;
    double density = 0.0;
    Bounds bounds;
    bool operator==(const SubareaRanking&) const = default;
};

enum class Method { environment_aware, random };

// Number of obstacles touching `bounds` plus the fraction of its cells
// covered by at least one obstacle.
double obstacle_density(const scenario::Scenario& scenario, const Bounds& bounds);

// Row-major tiling of the grid into sqrt(n) x sqrt(n) equal subareas.
std::vector<Bounds> subareas(int grid_n, int n_subareas);

// Subareas sorted by descending density, ties by ascending index.
std::vector<SubareaRanking> rank_subareas(const scenario::Scenario& scenario, int n_subareas);

// k x k window of `map` with origin (row, col); throws SelectionError when
// it does not fit.
Fragment extract_fragment(const scenario::RadioMap& map, int row, int col, int k);

// Origin of the k x k window centered on `b`, shifted inward to fit the grid.
std::pair<int, int> centered_origin(const Bounds& b, int k, int grid_n);

// Fragments centered on the m densest subareas.
std::vector<Fragment> environment_aware_select(const scenario::Scenario& scenario, const scenario::RadioMap& map,
                                               int n_subareas, int m, int k);

// m pairwise non-overlapping k x k windows by seeded rejection sampling.
std::vector<Fragment> random_select(const scenario::RadioMap& map, int m, int k, std::uint64_t seed);

// ceil(percent/100 * grid_n^2 / k^2)
int fragment_budget(double percent, int grid_n, int k);

}  // namespace rmgen::selection
