#include "rmgen/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "rmgen/errors.hpp"

namespace rmgen::eval {

namespace {

void require_same_shape(const RadioMap& a, const RadioMap& b) {
    if (a.grid_n != b.grid_n || a.values_dbm.size() != b.values_dbm.size()) {
        throw DimensionError("radio maps have different shapes (" + std::to_string(a.grid_n) + " vs " +
                             std::to_string(b.grid_n) + ")");
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

double etr_accuracy(const RadioMap& gt, const RadioMap& gen, double etr) {
    require_same_shape(gt, gen);
    if (!(etr > 0.0)) throw ConfigError("etr must be positive");
    if (gt.values_dbm.empty()) return 1.0;
    std::size_t pass = 0;
    for (std::size_t i = 0; i < gt.values_dbm.size(); ++i) {
        const double ref = gt.values_dbm[i];
        const double diff = std::abs(static_cast<double>(gen.values_dbm[i]) - ref);
        const bool ok = std::abs(ref) < 1.0 ? diff <= etr : diff / std::abs(ref) <= etr;
        pass += ok ? 1 : 0;
    }
    return static_cast<double>(pass) / static_cast<double>(gt.values_dbm.size());
}

RadioMap baseline_mean_map(const scenario::Dataset& data) {
    if (data.records.empty()) throw ConfigError("mean map of an empty dataset");
    const std::size_t cells = static_cast<std::size_t>(data.grid_n) * data.grid_n;
    std::vector<double> acc(cells, 0.0);
    for (const auto& r : data.records) {
        if (r.map.values_dbm.size() != cells) throw DimensionError("dataset map does not match header grid");
        for (std::size_t i = 0; i < cells; ++i) acc[i] += r.map.values_dbm[i];
    }
    RadioMap m;
    m.grid_n = data.grid_n;
    m.values_dbm.resize(cells);
    const auto n = static_cast<double>(data.records.size());
    for (std::size_t i = 0; i < cells; ++i) m.values_dbm[i] = static_cast<float>(acc[i] / n);
    return m;
}

RadioMap constant_map(int grid_n, float value_dbm) {
    RadioMap m;
    m.grid_n = grid_n;
    m.values_dbm.assign(static_cast<std::size_t>(grid_n) * grid_n, value_dbm);
    return m;
}

std::uint64_t Histogram::total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
}

std::size_t Histogram::modal_bin() const {
    return static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

double Histogram::modal_fraction() const {
    const auto t = total();
    return t == 0 ? 0.0 : static_cast<double>(counts[modal_bin()]) / static_cast<double>(t);
}

Histogram rss_histogram(std::span<const RadioMap> maps, double bin_width_db) {
    if (!(bin_width_db > 0.0)) throw ConfigError("histogram bin width must be positive");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& m : maps) {
        for (float v : m.values_dbm) {
            lo = std::min(lo, static_cast<double>(v));
            hi = std::max(hi, static_cast<double>(v));
        }
    }
    Histogram h;
    h.bin_width_db = bin_width_db;
    if (!std::isfinite(lo)) {
        h.min_dbm = 0.0;
        h.counts.assign(1, 0);
        return h;
    }
    h.min_dbm = lo;
    const auto bins = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / bin_width_db)));
    h.counts.assign(bins, 0);
    for (const auto& m : maps) {
        for (float v : m.values_dbm) {
            auto idx = static_cast<std::size_t>(std::floor((static_cast<double>(v) - lo) / bin_width_db));
            h.counts[std::min(idx, bins - 1)] += 1;
        }
    }
    return h;
}

std::vector<float> error_map(const RadioMap& gt, const RadioMap& gen) {
    require_same_shape(gt, gen);
    std::vector<float> e(gt.values_dbm.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double ref = gt.values_dbm[i];
        e[i] = static_cast<float>(std::abs(static_cast<double>(gen.values_dbm[i]) - ref) / std::max(std::abs(ref), 1.0));
    }
    return e;
}

EvalReport make_report(std::span<const RadioMap> gt, std::span<const RadioMap> gen, std::span<const double> etrs,
                       double bin_width_db, const RadioMap* baseline) {
    if (gt.size() != gen.size()) throw DimensionError("ground-truth and generated map counts differ");
    if (etrs.empty()) throw ConfigError("at least one etr threshold required");
    EvalReport r;
    r.etr = etrs.front();
    double abs_err = 0.0;
    std::size_t cells = 0;
    for (std::size_t i = 0; i < gt.size(); ++i) {
        r.per_map_accuracies.push_back(etr_accuracy(gt[i], gen[i], r.etr));
        for (std::size_t j = 0; j < gt[i].values_dbm.size(); ++j) {
            abs_err += std::abs(static_cast<double>(gen[i].values_dbm[j]) - gt[i].values_dbm[j]);
        }
        cells += gt[i].values_dbm.size();
    }
    double acc = 0.0;
    for (double a : r.per_map_accuracies) acc += a;
    r.accuracy = gt.empty() ? 0.0 : acc / static_cast<double>(gt.size());
    r.mean_abs_error_dbm = cells == 0 ? 0.0 : abs_err / static_cast<double>(cells);
    r.histogram_gt = rss_histogram(gt, bin_width_db);
    r.histogram_gen = rss_histogram(gen, bin_width_db);
    r.per_map_sweep.assign(gt.size(), {});
    for (double etr : etrs) {
        double s = 0.0;
        for (std::size_t i = 0; i < gt.size(); ++i) {
            const double a = etr_accuracy(gt[i], gen[i], etr);
            r.per_map_sweep[i].push_back(a);
            s += a;
        }
        r.etr_sweep.emplace_back(etr, gt.empty() ? 0.0 : s / static_cast<double>(gt.size()));
    }
    if (baseline) {
        double s = 0.0;
        for (const auto& m : gt) s += etr_accuracy(m, *baseline, r.etr);
        r.baseline_accuracy = gt.empty() ? 0.0 : s / static_cast<double>(gt.size());
    }
    return r;
}

std::string format_report(const EvalReport& r) {
    std::ostringstream os;
    os << "maps: " << r.per_map_accuracies.size() << '\n';
    os << "etr: " << fmt(r.etr) << '\n';
    os << "accuracy: " << fmt(r.accuracy) << '\n';
    os << "baseline_mean_map_accuracy: " << fmt(r.baseline_accuracy) << '\n';
    os << "mean_abs_error_dbm: " << fmt(r.mean_abs_error_dbm) << '\n';
    for (const auto& [etr, acc] : r.etr_sweep) os << "accuracy@" << fmt(etr) << ": " << fmt(acc) << '\n';
    auto hist = [&os](const char* name, const Histogram& h) {
        os << name << "_min_dbm: " << fmt(h.min_dbm) << '\n';
        os << name << "_bin_width_db: " << fmt(h.bin_width_db) << '\n';
        os << name << "_counts:";
        for (auto c : h.counts) os << ' ' << c;
        os << '\n';
    };
    hist("histogram_gt", r.histogram_gt);
    hist("histogram_gen", r.histogram_gen);
    return os.str();
}

std::string format_csv(const EvalReport& r) {
    std::ostringstream os;
    os << "map";
    for (const auto& [etr, acc] : r.etr_sweep) os << ",etr_" << fmt(etr);
    os << '\n';
    for (std::size_t i = 0; i < r.per_map_sweep.size(); ++i) {
        os << i;
        for (double a : r.per_map_sweep[i]) os << ',' << fmt(a);
        os << '\n';
    }
    return os.str();
}

}  // namespace rmgen::eval
