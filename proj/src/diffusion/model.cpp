#include <algorithm>
#include <cmath>
#include <numeric>

#include "rmgen/compute/ops.hpp"
#include "rmgen/diffusion.hpp"
#include "rmgen/errors.hpp"
#include "rmgen/rng.hpp"

namespace rmgen::diffusion {

namespace c = rmgen::compute;
using scenario::Dataset;
using scenario::RadioMap;

void ModelConfig::validate() const {
    unet.validate();
    if (unet.cond_dim != encoder.d_cond) throw ConfigError("U-Net cond_dim differs from encoder d_cond");
    if (unet.grid_n != encoder.grid_n) throw ConfigError("U-Net and encoder grids differ");
    if (unet.max_step != schedule.T) throw ConfigError("U-Net max_step differs from schedule T");
    if (encoder.fragment_k < 1 || encoder.fragment_k > encoder.grid_n) throw ConfigError("fragment size out of range");
    if (encoder.fragment_capacity < 0 || encoder.tx_capacity < 0) throw ConfigError("negative encoder capacity");
    if (!(norm.max_dbm > norm.min_dbm)) throw ConfigError("normalization bounds must satisfy min < max");
}

ConditionalModel::ConditionalModel(const ModelConfig& cfg, std::uint64_t init_seed)
    : cfg_(cfg), schedule_(linear_schedule(cfg.schedule.T, cfg.schedule.beta1, cfg.schedule.betaT)) {
    cfg_.validate();
    Rng rng = make_rng(init_seed, "init");
    encoder_ = encoders::make_encoder(cfg_.kind, store_, cfg_.encoder, cfg_.norm, rng);
    unet_ = std::make_unique<denoiser::UNet>(store_, cfg_.unet, rng);
}

Tensor ConditionalModel::predict(const Tensor& x_t, std::span<const int> steps,
                                 std::span<const ConditionSet> conds) const {
    for (const auto& cs : conds) {
        if (cs.kind != cfg_.kind) {
            throw ConditionError("model expects " + encoders::to_string(cfg_.kind) + " conditions, got " +
                                 encoders::to_string(cs.kind));
        }
    }
    return unet_->forward(x_t, steps, encoder_->encode(conds));
}

ModelConfig default_model_config(const Dataset& data, ConditionKind kind, const ScheduleConfig& sched,
                                 const ConditionOptions& cond) {
    ModelConfig m;
    m.kind = kind;
    m.encoder.grid_n = data.grid_n;
    m.unet.grid_n = data.grid_n;
    m.unet.cond_dim = m.encoder.d_cond;
    m.unet.max_step = sched.T;
    m.schedule = sched;
    m.norm = {data.min_dbm, data.max_dbm};
    if (!(m.norm.max_dbm > m.norm.min_dbm)) m.norm.max_dbm = m.norm.min_dbm + 1.0;
    m.condition = cond;
    return m;
}

ConditionSet build_condition(const scenario::DatasetRecord& record, ConditionKind kind, const ConditionOptions& opts,
                             const encoders::EncoderConfig& enc, std::uint64_t selection_seed) {
    ConditionSet cs;
    cs.kind = kind;
    cs.capacity = enc.capacity(kind);
    if (kind == ConditionKind::tx_locations) {
        cs.tx_list = record.scenario.tx_list;
        if (static_cast<int>(cs.tx_list.size()) > cs.capacity) {
            throw ConditionError("scenario has more transmitters than the encoder capacity");
        }
        return cs;
    }
    const int m = selection::fragment_budget(opts.percent, record.scenario.grid_n, enc.fragment_k);
    if (m > cs.capacity) {
        throw ConfigError("fragment budget " + std::to_string(m) + " exceeds encoder capacity " +
                          std::to_string(cs.capacity));
    }
    if (opts.method == selection::Method::environment_aware) {
        cs.fragments =
            selection::environment_aware_select(record.scenario, record.map, opts.n_subareas, m, enc.fragment_k);
    } else {
        cs.fragments = selection::random_select(record.map, m, enc.fragment_k, selection_seed);
    }
    return cs;
}

void TrainConfig::validate() const {
    if (!(lr >= 0.0f) || !std::isfinite(lr)) throw ConfigError("learning rate must be finite and non-negative");
    if (epochs < 1) throw ConfigError("epochs must be >= 1");
    if (batch_size < 1) throw ConfigError("batch size must be >= 1");
}

ModelCheckpoint train(const Dataset& data, const TrainConfig& cfg, const ModelConfig& model_cfg,
                      const EpochCallback& on_epoch) {
    cfg.validate();
    if (cfg.condition_kind != model_cfg.kind) throw ConfigError("training condition kind differs from model kind");
    ModelCheckpoint ckpt;
    ckpt.model = std::make_unique<ConditionalModel>(model_cfg, cfg.seed);
    train_model(ckpt, data, cfg, on_epoch);
    return ckpt;
}

void train_model(ModelCheckpoint& ckpt, const Dataset& data, const TrainConfig& cfg, const EpochCallback& on_epoch) {
    cfg.validate();
    if (data.records.empty()) throw ConfigError("training dataset is empty");
    ConditionalModel& model = *ckpt.model;
    const ModelConfig& mc = model.config();
    if (cfg.condition_kind != mc.kind) throw ConfigError("training condition kind differs from model kind");
    if (data.grid_n != mc.unet.grid_n) throw ConfigError("dataset grid differs from model grid");

    const int n = data.grid_n;
    const std::size_t cells = static_cast<std::size_t>(n) * n;
    const std::size_t count = data.records.size();

    std::vector<ConditionSet> conds;
    std::vector<float> x0_all(count * cells);
    conds.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto& rec = data.records[i];
        conds.push_back(build_condition(rec, mc.kind, mc.condition, mc.encoder, derive_seed(cfg.seed, "selection", i)));
        for (std::size_t j = 0; j < cells; ++j) x0_all[i * cells + j] = mc.norm.normalize(rec.map.values_dbm[j]);
    }

    Rng shuffle_rng = make_rng(cfg.seed, "shuffle");
    Rng noise_rng = make_rng(cfg.seed, "noise");
    std::uniform_int_distribution<int> step_dist(1, mc.schedule.T);
    std::normal_distribution<float> normal(0.0f, 1.0f);
    const c::AdamOptions adam{cfg.lr, cfg.beta1, cfg.beta2, cfg.eps};
    auto params = model.parameters().all();

    std::vector<std::size_t> order(count);
    const int start_epoch = static_cast<int>(ckpt.loss_trace.size());
    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), shuffle_rng);
        double loss_sum = 0.0;
        for (std::size_t start = 0; start < count; start += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t b = std::min<std::size_t>(static_cast<std::size_t>(cfg.batch_size), count - start);
            std::vector<float> x0(b * cells), eps(b * cells);
            std::vector<int> steps(b);
            std::vector<ConditionSet> batch_conds;
            batch_conds.reserve(b);
            for (std::size_t i = 0; i < b; ++i) {
                const std::size_t rec = order[start + i];
                std::copy_n(x0_all.begin() + static_cast<std::ptrdiff_t>(rec * cells), cells,
                            x0.begin() + static_cast<std::ptrdiff_t>(i * cells));
                batch_conds.push_back(conds[rec]);
                steps[i] = step_dist(noise_rng);
            }
            for (auto& e : eps) e = normal(noise_rng);

            const c::Shape shape{static_cast<int>(b), 1, n, n};
            const Tensor eps_t(shape, std::move(eps));
            const Tensor x_t = forward_sample_batch(Tensor(shape, std::move(x0)), steps, eps_t, model.schedule());

            model.parameters().zero_grad();
            const Tensor loss = diffusion_loss(model.predict(x_t, steps, batch_conds), eps_t);
            const float value = loss.item();
            if (!std::isfinite(value)) {
                throw TrainingError("non-finite loss " + std::to_string(value) + " at epoch " +
                                    std::to_string(start_epoch + epoch) + ", batch starting at record " +
                                    std::to_string(start) + " (lr " + std::to_string(cfg.lr) + ")");
            }
            loss.backward();
            c::adam_step(params, adam);
            loss_sum += static_cast<double>(value) * static_cast<double>(b);
        }
        const double mean_loss = loss_sum / static_cast<double>(count);
        ckpt.loss_trace.push_back(static_cast<float>(mean_loss));
        if (on_epoch) on_epoch({start_epoch + epoch, mean_loss});
    }
    model.parameters().zero_grad();
}

std::vector<float> reverse_chain(const NoiseSchedule& sched, SigmaMode mode, const c::Shape& shape,
                                 std::vector<float> x, const NoisePredictor& predict, std::span<NoiseStream> streams) {
    if (shape.empty() || c::shape_numel(shape) != x.size()) throw DimensionError("reverse_chain: x_T does not match shape");
    const std::size_t b = static_cast<std::size_t>(shape[0]);
    if (streams.size() != b) throw ConfigError("reverse_chain: one noise stream per batch element required");
    const std::size_t per = x.size() / b;
    const auto sigma2 = sigma_variant(sched, mode);
    for (int t = sched.T; t >= 1; --t) {
        const Tensor eps = predict(Tensor(shape, x), t);
        if (eps.numel() != x.size()) throw DimensionError("reverse_chain: predictor changed the shape");
        const double inv_sqrt_alpha = 1.0 / std::sqrt(sched.alpha_at(t));
        const double eps_coef = sched.beta_at(t) / std::sqrt(1.0 - sched.alpha_bar_at(t));
        const double sigma = std::sqrt(sigma2[static_cast<std::size_t>(t - 1)]);
        for (std::size_t i = 0; i < b; ++i) {
            for (std::size_t j = i * per; j < (i + 1) * per; ++j) {
                const double z = t > 1 ? static_cast<double>(streams[i].next()) : 0.0;
                x[j] = static_cast<float>(inv_sqrt_alpha * (x[j] - eps_coef * eps.data()[j]) + sigma * z);
            }
        }
    }
    return x;
}

std::vector<RadioMap> sample_batch(const ConditionalModel& model, std::span<const ConditionSet> conds,
                                   std::span<const std::uint64_t> seeds) {
    if (conds.size() != seeds.size()) throw ConfigError("sample_batch: one seed per condition required");
    const ModelConfig& mc = model.config();
    for (const auto& cs : conds) {
        if (cs.kind != mc.kind) {
            throw ConditionError("checkpoint expects " + encoders::to_string(mc.kind) + " conditions, got " +
                                 encoders::to_string(cs.kind));
        }
    }
    std::vector<RadioMap> maps;
    if (conds.empty()) return maps;

    c::NoGradGuard no_grad;
    const int n = mc.unet.grid_n;
    const std::size_t cells = static_cast<std::size_t>(n) * n;
    const std::size_t b = conds.size();

    std::vector<NoiseStream> streams;
    streams.reserve(b);
    for (auto s : seeds) streams.emplace_back(s);
    std::vector<float> x(b * cells);
    for (std::size_t i = 0; i < b; ++i) {
        for (std::size_t j = 0; j < cells; ++j) x[i * cells + j] = streams[i].next();
    }

    const Tensor cond_emb = model.encoder().encode(conds);
    const c::Shape shape{static_cast<int>(b), 1, n, n};
    const auto predict = [&](const Tensor& x_t, int t) {
        const std::vector<int> steps(b, t);
        return model.unet().forward(x_t, steps, cond_emb);
    };
    x = reverse_chain(model.schedule(), mc.sigma_mode, shape, std::move(x), predict, streams);

    maps.reserve(b);
    for (std::size_t i = 0; i < b; ++i) {
        RadioMap m;
        m.grid_n = n;
        m.tx_list = conds[i].tx_list;
        m.values_dbm.resize(cells);
        for (std::size_t j = 0; j < cells; ++j) {
            const float v = std::clamp(x[i * cells + j], -1.0f, 1.0f);
            m.values_dbm[j] = static_cast<float>(std::clamp(mc.norm.denormalize(v), mc.norm.min_dbm, mc.norm.max_dbm));
        }
        maps.push_back(std::move(m));
    }
    return maps;
}

RadioMap sample(const ConditionSet& cond, const ModelCheckpoint& ckpt, std::uint64_t seed) {
    const std::uint64_t seeds[1] = {seed};
    return sample_batch(*ckpt.model, std::span<const ConditionSet>(&cond, 1), seeds).front();
}

}  // namespace rmgen::diffusion
