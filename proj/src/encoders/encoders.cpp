#include "rmgen/encoders.hpp"

#include "rmgen/compute/ops.hpp"
#include "rmgen/errors.hpp"

namespace rmgen::encoders {

namespace c = rmgen::compute;

std::string to_string(ConditionKind k) { return k == ConditionKind::fragments ? "fragments" : "tx"; }

ConditionKind parse_condition_kind(const std::string& s) {
    if (s == "fragments") return ConditionKind::fragments;
    if (s == "tx" || s == "tx_locations") return ConditionKind::tx_locations;
    throw ConfigError("unknown condition kind '" + s + "' (expected fragments or tx)");
}

void ConditionSet::validate() const {
    if (capacity < 0) throw ConditionError("negative condition capacity");
    if (kind == ConditionKind::fragments) {
        if (!tx_list.empty()) throw ConditionError("fragment condition set carries transmitter locations");
        if (static_cast<int>(fragments.size()) > capacity) {
            throw ConditionError(std::to_string(fragments.size()) + " fragments exceed capacity " +
                                 std::to_string(capacity));
        }
    } else {
        if (!fragments.empty()) throw ConditionError("transmitter condition set carries fragments");
        if (static_cast<int>(tx_list.size()) > capacity) {
            throw ConditionError(std::to_string(tx_list.size()) + " transmitters exceed capacity " +
                                 std::to_string(capacity));
        }
    }
}

float Normalization::normalize(double dbm) const {
    const double span = max_dbm - min_dbm;
    if (span <= 0.0) return 0.0f;
    return static_cast<float>(2.0 * (dbm - min_dbm) / span - 1.0);
}

double Normalization::denormalize(float x) const {
    return min_dbm + (static_cast<double>(x) + 1.0) * 0.5 * (max_dbm - min_dbm);
}

std::vector<float> flatten_fragment(const selection::Fragment& f, const Normalization& norm, int grid_n) {
    if (f.values_dbm.size() != static_cast<std::size_t>(f.size_k) * f.size_k) {
        throw DimensionError("fragment values do not form a k x k grid");
    }
    if (f.row < 0 || f.col < 0 || f.row + f.size_k > grid_n || f.col + f.size_k > grid_n) {
        throw ConditionError("fragment lies outside the grid");
    }
    std::vector<float> v;
    v.reserve(f.values_dbm.size() + 2);
    for (float x : f.values_dbm) v.push_back(norm.normalize(x));
    v.push_back(static_cast<float>(f.row) / static_cast<float>(grid_n));
    v.push_back(static_cast<float>(f.col) / static_cast<float>(grid_n));
    return v;
}

ConditionEmbedding ConditionEncoder::encode_one(const ConditionSet& cs) const {
    c::NoGradGuard guard;
    const Tensor out = encode(std::span<const ConditionSet>(&cs, 1));
    return {std::vector<float>(out.data().begin(), out.data().end())};
}

FragmentEncoder::FragmentEncoder(ParameterStore& store, const EncoderConfig& cfg, const Normalization& norm,
                                 Rng& rng)
    : cfg_(cfg), norm_(norm) {
    const int in = cfg.fragment_capacity * cfg.fragment_width();
    w1_ = store.add("enc.frag.w1", c::init_uniform({in, cfg.hidden}, in, rng));
    b1_ = store.add("enc.frag.b1", Tensor::zeros({cfg.hidden}));
    w2_ = store.add("enc.frag.w2", c::init_uniform({cfg.hidden, cfg.hidden}, cfg.hidden, rng));
    b2_ = store.add("enc.frag.b2", Tensor::zeros({cfg.hidden}));
    w3_ = store.add("enc.frag.w3", c::init_uniform({cfg.hidden, cfg.d_cond}, cfg.hidden, rng, 0.5f));
    b3_ = store.add("enc.frag.b3", Tensor::zeros({cfg.d_cond}));
}

std::vector<float> FragmentEncoder::input_vector(const ConditionSet& cs) const {
    if (cs.kind != ConditionKind::fragments) throw ConditionError("fragment encoder given a transmitter condition");
    cs.validate();
    if (static_cast<int>(cs.fragments.size()) > cfg_.fragment_capacity) {
        throw ConditionError("condition holds more fragments than the encoder capacity");
    }
    const std::size_t width = static_cast<std::size_t>(cfg_.fragment_width());
    std::vector<float> v(static_cast<std::size_t>(cfg_.fragment_capacity) * width, 0.0f);
    for (std::size_t i = 0; i < cs.fragments.size(); ++i) {
        if (cs.fragments[i].size_k != cfg_.fragment_k) {
            throw ConditionError("fragment size " + std::to_string(cs.fragments[i].size_k) + " but encoder expects " +
                                 std::to_string(cfg_.fragment_k));
        }
        const auto flat = flatten_fragment(cs.fragments[i], norm_, cfg_.grid_n);
        std::copy(flat.begin(), flat.end(), v.begin() + static_cast<std::ptrdiff_t>(i * width));
    }
    return v;
}

Tensor FragmentEncoder::encode(std::span<const ConditionSet> batch) const {
    const int in = cfg_.fragment_capacity * cfg_.fragment_width();
    std::vector<float> x;
    x.reserve(batch.size() * static_cast<std::size_t>(in));
    for (const auto& cs : batch) {
        const auto v = input_vector(cs);
        x.insert(x.end(), v.begin(), v.end());
    }
    Tensor input({static_cast<int>(batch.size()), in}, std::move(x));
    Tensor h = c::silu(c::linear(input, w1_, b1_));
    h = c::silu(c::linear(h, w2_, b2_));
    return c::linear(h, w3_, b3_);
}

TxEncoder::TxEncoder(ParameterStore& store, const EncoderConfig& cfg, Rng& rng) : cfg_(cfg) {
    const int e = cfg.tx_embed;
    const int cat = cfg.tx_capacity * e;
    wa_ = store.add("enc.tx.wa", c::init_uniform({2, e}, 2, rng));
    ba_ = store.add("enc.tx.ba", Tensor::zeros({e}));
    wb_ = store.add("enc.tx.wb", c::init_uniform({e, e}, e, rng));
    bb_ = store.add("enc.tx.bb", Tensor::zeros({e}));
    wo_ = store.add("enc.tx.wo", c::init_uniform({cat, cfg.d_cond}, cat, rng, 0.5f));
    bo_ = store.add("enc.tx.bo", Tensor::zeros({cfg.d_cond}));
}

std::pair<float, float> TxEncoder::normalized_input(const scenario::TxLocation& tx) const {
    if (tx.x < 0 || tx.y < 0 || tx.x >= cfg_.grid_n || tx.y >= cfg_.grid_n) {
        throw ConditionError("transmitter outside the grid");
    }
    const auto n = static_cast<float>(cfg_.grid_n);
    return {static_cast<float>(tx.x) / n, static_cast<float>(tx.y) / n};
}

Tensor TxEncoder::slot_embeddings(std::span<const ConditionSet> batch) const {
    const int b = static_cast<int>(batch.size());
    const int cap = cfg_.tx_capacity;
    const int e = cfg_.tx_embed;
    std::vector<float> coords(static_cast<std::size_t>(b) * cap * 2, 0.0f);
    std::vector<float> mask(static_cast<std::size_t>(b) * cap * e, 0.0f);
    for (int i = 0; i < b; ++i) {
        const auto& cs = batch[static_cast<std::size_t>(i)];
        if (cs.kind != ConditionKind::tx_locations) throw ConditionError("Tx encoder given a fragment condition");
        cs.validate();
        if (static_cast<int>(cs.tx_list.size()) > cap) {
            throw ConditionError("condition holds more transmitters than the encoder capacity");
        }
        for (std::size_t j = 0; j < cs.tx_list.size(); ++j) {
            const auto [x, y] = normalized_input(cs.tx_list[j]);
            const std::size_t slot = static_cast<std::size_t>(i) * cap + j;
            coords[slot * 2] = x;
            coords[slot * 2 + 1] = y;
            std::fill_n(mask.begin() + static_cast<std::ptrdiff_t>(slot * e), e, 1.0f);
        }
    }
    Tensor in({b * cap, 2}, std::move(coords));
    Tensor h = c::silu(c::linear(in, wa_, ba_));
    h = c::linear(h, wb_, bb_);
    h = c::mul(h, Tensor({b * cap, e}, std::move(mask)));
    return c::reshape(h, {b, cap * e});
}

Tensor TxEncoder::encode(std::span<const ConditionSet> batch) const {
    return c::linear(slot_embeddings(batch), wo_, bo_);
}

std::unique_ptr<ConditionEncoder> make_encoder(ConditionKind kind, ParameterStore& store, const EncoderConfig& cfg,
                                               const Normalization& norm, Rng& rng) {
    if (kind == ConditionKind::fragments) return std::make_unique<FragmentEncoder>(store, cfg, norm, rng);
    return std::make_unique<TxEncoder>(store, cfg, rng);
}

ConditionEmbedding encode_fragments(const ConditionSet& cs, const FragmentEncoder& enc) {
    if (cs.kind != ConditionKind::fragments) throw ConditionError("encode_fragments needs a fragment condition");
    return enc.encode_one(cs);
}

ConditionEmbedding encode_tx(const ConditionSet& cs, const TxEncoder& enc) {
    if (cs.kind != ConditionKind::tx_locations) throw ConditionError("encode_tx needs a transmitter condition");
    return enc.encode_one(cs);
}

}  // namespace rmgen::encoders
