#include "rmgen/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rmgen/binary_io.hpp"
#include "rmgen/errors.hpp"
#include "rmgen/rng.hpp"

namespace rmgen::scenario {

namespace {
constexpr char kMagic[] = "RMG1";
}

Dataset build_dataset(Regime regime, int count, std::uint64_t seed, const ScenarioParams& params) {
    if (count < 1) throw ConfigError("dataset count must be >= 1");
    params.validate(regime);
    const auto prof = regime_profile(regime);
    Dataset ds;
    ds.regime = regime;
    ds.grid_n = params.grid_n;
    ds.cell_size_m = prof.cell_size_m;
    ds.freq_ghz = prof.freq_ghz;
    ds.records.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Scenario s = random_scenario(regime, derive_seed(seed, "scenario", static_cast<std::uint64_t>(i)), params);
        RadioMap m = generate_map(s);
        ds.records.push_back({std::move(s), std::move(m)});
    }
    refresh_bounds(ds);
    return ds;
}

Dataset build_dataset(Regime regime, int count, std::uint64_t seed) {
    return build_dataset(regime, count, seed, ScenarioParams::defaults(regime));
}

void refresh_bounds(Dataset& ds) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& r : ds.records) {
        for (float v : r.map.values_dbm) {
            lo = std::min(lo, static_cast<double>(v));
            hi = std::max(hi, static_cast<double>(v));
        }
    }
    ds.min_dbm = lo;
    ds.max_dbm = hi;
}

std::vector<char> encode_dataset(const Dataset& ds) {
    ByteWriter w;
    w.bytes(std::string_view(kMagic, 4));
    w.i32(static_cast<std::int32_t>(ds.regime));
    w.i32(ds.grid_n);
    w.f64(ds.cell_size_m);
    w.f64(ds.freq_ghz);
    w.i32(static_cast<std::int32_t>(ds.records.size()));
    w.f64(ds.min_dbm);
    w.f64(ds.max_dbm);
    const std::size_t cells = static_cast<std::size_t>(ds.grid_n) * ds.grid_n;
    for (const auto& rec : ds.records) {
        const auto& s = rec.scenario;
        if (s.grid_n != ds.grid_n || rec.map.values_dbm.size() != cells) {
            throw DimensionError("dataset record grid does not match header");
        }
        w.u64(s.id);
        w.f32(s.tx_power_dbm);
        w.i32(static_cast<std::int32_t>(s.obstacles.size()));
        for (const auto& o : s.obstacles) {
            w.i32(o.x0);
            w.i32(o.y0);
            w.i32(o.x1);
            w.i32(o.y1);
            w.f32(o.penetration_loss_db);
        }
        w.i32(static_cast<std::int32_t>(s.tx_list.size()));
        for (const auto& tx : s.tx_list) {
            w.i32(tx.x);
            w.i32(tx.y);
        }
        for (float v : rec.map.values_dbm) w.f32(v);
    }
    return w.take();
}

Dataset decode_dataset(const std::vector<char>& bytes) {
    ByteReader r(bytes, "dataset");
    if (r.bytes(4) != std::string(kMagic, 4)) throw StorageError("dataset: bad magic (expected RMG1)");
    Dataset ds;
    const auto regime = r.i32();
    if (regime != 0 && regime != 1) throw StorageError("dataset: unknown regime code");
    ds.regime = static_cast<Regime>(regime);
    ds.grid_n = r.i32();
    ds.cell_size_m = r.f64();
    ds.freq_ghz = r.f64();
    const auto count = r.i32();
    ds.min_dbm = r.f64();
    ds.max_dbm = r.f64();
    if (ds.grid_n <= 0 || ds.grid_n > 4096 || count < 0) throw StorageError("dataset: corrupt header");
    const std::size_t cells = static_cast<std::size_t>(ds.grid_n) * ds.grid_n;
    ds.records.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        DatasetRecord rec;
        auto& s = rec.scenario;
        s.id = r.u64();
        s.grid_n = ds.grid_n;
        s.cell_size_m = ds.cell_size_m;
        s.freq_ghz = ds.freq_ghz;
        s.regime = ds.regime;
        s.tx_power_dbm = r.f32();
        const auto n_obs = r.i32();
        if (n_obs < 0 || static_cast<std::size_t>(n_obs) * 20 > r.remaining()) {
            throw StorageError("dataset: corrupt obstacle table");
        }
        for (int k = 0; k < n_obs; ++k) {
            Obstacle o;
            o.x0 = r.i32();
            o.y0 = r.i32();
            o.x1 = r.i32();
            o.y1 = r.i32();
            o.penetration_loss_db = r.f32();
            s.obstacles.push_back(o);
        }
        const auto n_tx = r.i32();
        if (n_tx < 0 || static_cast<std::size_t>(n_tx) * 8 > r.remaining()) {
            throw StorageError("dataset: corrupt transmitter table");
        }
        for (int k = 0; k < n_tx; ++k) {
            TxLocation tx;
            tx.x = r.i32();
            tx.y = r.i32();
            s.tx_list.push_back(tx);
        }
        rec.map.grid_n = ds.grid_n;
        rec.map.scenario_id = s.id;
        rec.map.tx_list = s.tx_list;
        rec.map.values_dbm.resize(cells);
        for (auto& v : rec.map.values_dbm) v = r.f32();
        ds.records.push_back(std::move(rec));
    }
    if (!r.at_end()) throw StorageError("dataset: trailing bytes after last record");
    return ds;
}

void save_dataset(const Dataset& ds, const std::string& path) { write_file(path, encode_dataset(ds)); }

Dataset load_dataset(const std::string& path) { return decode_dataset(read_file(path)); }

Dataset slice(const Dataset& ds, std::size_t begin, std::size_t end) {
    if (begin > end || end > ds.records.size()) throw ConfigError("dataset slice out of range");
    Dataset out = ds;
    out.records.assign(ds.records.begin() + static_cast<std::ptrdiff_t>(begin),
                       ds.records.begin() + static_cast<std::ptrdiff_t>(end));
    return out;
}

std::size_t train_split_point(std::size_t count) {
    if (count < 2) return count;
    const auto held = std::max<std::size_t>(1, (count + 2) / 5);  // round(count / 5)
    return count - held;
}

}  // namespace rmgen::scenario
