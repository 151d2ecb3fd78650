#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rmgen/dataset.hpp"
#include "rmgen/scenario.hpp"

namespace rmgen::eval {

using scenario::RadioMap;

// Fraction of cells with |gen - gt| / |gt| <= etr on dBm values; cells with
// |gt| < 1 dBm use the absolute threshold etr * 1 dBm.
double etr_accuracy(const RadioMap& gt, const RadioMap& gen, double etr);

// Cellwise mean of every map in the dataset.
RadioMap baseline_mean_map(const scenario::Dataset& data);

// Constant-value map of the given size.
RadioMap constant_map(int grid_n, float value_dbm);

struct Histogram {
    double min_dbm = 0.0;  // left edge of bin 0
    double bin_width_db = 1.0;
    std::vector<std::uint64_t> counts;

    std::uint64_t total() const;
    std::size_t modal_bin() const;
    double modal_fraction() const;
};

// Fixed-width bins anchored at the global minimum; the global maximum falls
// in the last bin.
Histogram rss_histogram(std::span<const RadioMap> maps, double bin_width_db);

// Per-cell |gen - gt| / max(|gt|, 1), row-major.
std::vector<float> error_map(const RadioMap& gt, const RadioMap& gen);

struct EvalReport {
    double etr = 0.1;
    double accuracy = 0.0;
    std::vector<double> per_map_accuracies;  // at `etr`
    std::vector<std::vector<double>> per_map_sweep;  // [map][threshold]
    Histogram histogram_gen;
    Histogram histogram_gt;
    double mean_abs_error_dbm = 0.0;
    double baseline_accuracy = 0.0;  // mean-map predictor at `etr`
    std::vector<std::pair<double, double>> etr_sweep;  // (etr, accuracy)
};

// Builds a report for paired ground-truth / generated maps. The primary
// threshold is `etrs.front()`; the whole list becomes the sweep.
EvalReport make_report(std::span<const RadioMap> gt, std::span<const RadioMap> gen, std::span<const double> etrs,
                       double bin_width_db, const RadioMap* baseline = nullptr);

// Plain-text "key: value" report.
std::string format_report(const EvalReport& report);
// CSV with one row per map and one accuracy column per threshold.
std::string format_csv(const EvalReport& report);

}  // namespace rmgen::eval
