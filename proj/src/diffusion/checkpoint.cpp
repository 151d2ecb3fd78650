#include "rmgen/binary_io.hpp"
#include "rmgen/diffusion.hpp"
#include "rmgen/errors.hpp"

namespace rmgen::diffusion {

namespace {

constexpr char kMagic[] = "RMGC";

}  // namespace

// Layout (little-endian):
//   "RMGC"
//   i32 kind, i32 grid_n, i32 T, f64 beta1, f64 betaT, f64 min_dbm, f64 max_dbm,
//   i32 d_cond, i32 capacity, i32 k
//   i32 base_channels, i32 levels, i32 blocks_per_level, i32 groups, i32 time_dim,
//   i32 hidden, i32 tx_embed, i32 sigma_mode, i32 selection_method, f64 percent,
//   i32 n_subareas
//   i32 parameter count, then per parameter:
//     i32 name length, name bytes, i32 rank, i32 dims[rank], f32 payload
//   i32 epochs, f32 mean loss per epoch
std::vector<char> encode_checkpoint(const ModelCheckpoint& ckpt) {
    if (!ckpt.model) throw ConfigError("checkpoint holds no model");
    const ModelConfig& mc = ckpt.model->config();
    ByteWriter w;
    w.bytes(std::string_view(kMagic, 4));
    w.i32(static_cast<std::int32_t>(mc.kind));
    w.i32(mc.unet.grid_n);
    w.i32(mc.schedule.T);
    w.f64(mc.schedule.beta1);
    w.f64(mc.schedule.betaT);
    w.f64(mc.norm.min_dbm);
    w.f64(mc.norm.max_dbm);
    w.i32(mc.encoder.d_cond);
    w.i32(mc.encoder.capacity(mc.kind));
    w.i32(mc.encoder.fragment_k);
    w.i32(mc.unet.base_channels);
    w.i32(mc.unet.levels);
    w.i32(mc.unet.blocks_per_level);
    w.i32(mc.unet.groups);
    w.i32(mc.unet.time_dim);
    w.i32(mc.encoder.hidden);
    w.i32(mc.encoder.tx_embed);
    w.i32(static_cast<std::int32_t>(mc.sigma_mode));
    w.i32(mc.condition.method == selection::Method::environment_aware ? 0 : 1);
    w.f64(mc.condition.percent);
    w.i32(mc.condition.n_subareas);

    const auto& store = ckpt.model->parameters();
    w.i32(static_cast<std::int32_t>(store.size()));
    for (const auto& name : store.names()) {
        const auto& t = store.get(name);
        w.i32(static_cast<std::int32_t>(name.size()));
        w.bytes(name);
        w.i32(t.rank());
        for (int d : t.shape()) w.i32(d);
        for (float v : t.data()) w.f32(v);
    }
    w.i32(static_cast<std::int32_t>(ckpt.loss_trace.size()));
    for (float v : ckpt.loss_trace) w.f32(v);
    return w.take();
}

ModelCheckpoint decode_checkpoint(const std::vector<char>& bytes) {
    ByteReader r(bytes, "checkpoint");
    if (r.bytes(4) != std::string(kMagic, 4)) throw StorageError("checkpoint: bad magic (expected RMGC)");
    ModelConfig mc;
    const auto kind = r.i32();
    if (kind != 0 && kind != 1) throw StorageError("checkpoint: unknown condition kind");
    mc.kind = static_cast<ConditionKind>(kind);
    mc.unet.grid_n = mc.encoder.grid_n = r.i32();
    mc.schedule.T = mc.unet.max_step = r.i32();
    mc.schedule.beta1 = r.f64();
    mc.schedule.betaT = r.f64();
    mc.norm.min_dbm = r.f64();
    mc.norm.max_dbm = r.f64();
    mc.encoder.d_cond = mc.unet.cond_dim = r.i32();
    const auto capacity = r.i32();
    if (mc.kind == ConditionKind::fragments) {
        mc.encoder.fragment_capacity = capacity;
    } else {
        mc.encoder.tx_capacity = capacity;
    }
    mc.encoder.fragment_k = r.i32();
    mc.unet.base_channels = r.i32();
    mc.unet.levels = r.i32();
    mc.unet.blocks_per_level = r.i32();
    mc.unet.groups = r.i32();
    mc.unet.time_dim = r.i32();
    mc.encoder.hidden = r.i32();
    mc.encoder.tx_embed = r.i32();
    const auto sigma_mode = r.i32();
    if (sigma_mode != 0 && sigma_mode != 1) throw StorageError("checkpoint: unknown sigma mode");
    mc.sigma_mode = static_cast<SigmaMode>(sigma_mode);
    mc.condition.method = r.i32() == 0 ? selection::Method::environment_aware : selection::Method::random;
    mc.condition.percent = r.f64();
    mc.condition.n_subareas = r.i32();

    ModelCheckpoint ckpt;
    try {
        ckpt.model = std::make_unique<ConditionalModel>(mc, 0);
    } catch (const ConfigError& e) {
        throw StorageError(std::string("checkpoint: inconsistent header: ") + e.what());
    }
    auto& store = ckpt.model->parameters();
    const auto count = r.i32();
    if (count != static_cast<std::int32_t>(store.size())) {
        throw StorageError("checkpoint: expected " + std::to_string(store.size()) + " parameter blocks, found " +
                           std::to_string(count));
    }
    for (int i = 0; i < count; ++i) {
        const auto len = r.i32();
        if (len < 0 || static_cast<std::size_t>(len) > r.remaining()) throw StorageError("checkpoint: bad name length");
        const std::string name = r.bytes(static_cast<std::size_t>(len));
        if (!store.contains(name)) throw StorageError("checkpoint: unexpected parameter " + name);
        auto& t = store.get(name);
        const auto rank = r.i32();
        if (rank != t.rank()) throw StorageError("checkpoint: rank mismatch for " + name);
        for (int d = 0; d < rank; ++d) {
            if (r.i32() != t.dim(d)) throw StorageError("checkpoint: shape mismatch for " + name);
        }
        for (auto& v : t.mutable_data()) v = r.f32();
    }
    const auto epochs = r.i32();
    if (epochs < 0 || static_cast<std::size_t>(epochs) * 4 != r.remaining()) {
        throw StorageError("checkpoint: corrupt loss trace");
    }
    ckpt.loss_trace.resize(static_cast<std::size_t>(epochs));
    for (auto& v : ckpt.loss_trace) v = r.f32();
    return ckpt;
}

void save_checkpoint(const ModelCheckpoint& ckpt, const std::string& path) {
    write_file(path, encode_checkpoint(ckpt));
}

ModelCheckpoint load_checkpoint(const std::string& path) { return decode_checkpoint(read_file(path)); }

}  // namespace rmgen::diffusion
