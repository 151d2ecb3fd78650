#include <cmath>

#include "rmgen/compute/ops.hpp"
#include "rmgen/denoiser.hpp"
#include "rmgen/errors.hpp"

namespace rmgen::denoiser {

namespace c = rmgen::compute;

namespace {

// PyTorch-style default bound 1/sqrt(fan_in).
constexpr float kInitGain = 0.40824829f;  // 1/sqrt(6)

Tensor conv_weight(int out, int in, int k, Rng& rng) {
    return c::init_uniform({out, in, k, k}, in * k * k, rng, kInitGain);
}

Tensor linear_weight(int in, int out, Rng& rng) { return c::init_uniform({in, out}, in, rng, kInitGain); }

}  // namespace

void UNetConfig::validate() const {
    if (levels < 1 || base_channels < 1 || blocks_per_level < 1 || groups < 1) {
        throw ConfigError("U-Net levels, channels, blocks and groups must be positive");
    }
    if (grid_n % (1 << levels) != 0) {
        throw ConfigError("grid_n " + std::to_string(grid_n) + " not divisible by 2^levels");
    }
    if (time_dim < 2 || time_dim % 2 != 0) throw ConfigError("time_dim must be even and >= 2");
    if (cond_dim < 1) throw ConfigError("cond_dim must be positive");
    if (max_step < 1) throw ConfigError("max_step must be positive");
}

TimeEmbedding time_embed(int t, int time_dim, int max_step) {
    if (t < 1 || t > max_step) {
        throw StepError("diffusion step " + std::to_string(t) + " outside [1," + std::to_string(max_step) + "]");
    }
    if (time_dim < 2 || time_dim % 2 != 0) throw ConfigError("time_dim must be even and >= 2");
    TimeEmbedding e;
    e.vector.resize(static_cast<std::size_t>(time_dim));
    for (int j = 0; j < time_dim / 2; ++j) {
        const double w = std::pow(10000.0, -2.0 * j / time_dim);
        e.vector[2 * j] = static_cast<float>(std::sin(t * w));
        e.vector[2 * j + 1] = static_cast<float>(std::cos(t * w));
    }
    return e;
}

int UNet::groups_for(int channels) const {
    int g = std::min(cfg_.groups, channels);
    while (channels % g != 0) --g;
    return g;
}

UNet::ResBlock UNet::make_block(ParameterStore& store, const std::string& name, int in, int out, Rng& rng) {
    ResBlock b;
    b.in = in;
    b.out = out;
    b.norm1 = {store.add(name + ".norm1.gamma", Tensor::full({in}, 1.0f)),
               store.add(name + ".norm1.beta", Tensor::zeros({in}))};
    b.conv1_w = store.add(name + ".conv1.w", conv_weight(out, in, 3, rng));
    b.conv1_b = store.add(name + ".conv1.b", Tensor::zeros({out}));
    b.emb_w = store.add(name + ".emb.w", linear_weight(cfg_.time_dim, out, rng));
    b.emb_b = store.add(name + ".emb.b", Tensor::zeros({out}));
    b.norm2 = {store.add(name + ".norm2.gamma", Tensor::full({out}, 1.0f)),
               store.add(name + ".norm2.beta", Tensor::zeros({out}))};
    b.conv2_w = store.add(name + ".conv2.w", conv_weight(out, out, 3, rng));
    b.conv2_b = store.add(name + ".conv2.b", Tensor::zeros({out}));
    if (in != out) {
        b.skip_w = store.add(name + ".skip.w", conv_weight(out, in, 1, rng));
        b.skip_b = store.add(name + ".skip.b", Tensor::zeros({out}));
    }
    return b;
}

UNet::UNet(ParameterStore& store, const UNetConfig& cfg, Rng& rng) : cfg_(cfg) {
    cfg_.validate();
    const int base = cfg_.base_channels;
    in_w_ = store.add("unet.in.w", conv_weight(base, 1, 3, rng));
    in_b_ = store.add("unet.in.b", Tensor::zeros({base}));
    time_w_ = store.add("unet.time.w", linear_weight(cfg_.time_dim, cfg_.time_dim, rng));
    time_b_ = store.add("unet.time.b", Tensor::zeros({cfg_.time_dim}));
    cond_w_ = store.add("unet.cond.w", linear_weight(cfg_.cond_dim, cfg_.time_dim, rng));
    cond_b_ = store.add("unet.cond.b", Tensor::zeros({cfg_.time_dim}));

    int ch = base;
    for (int l = 0; l < cfg_.levels; ++l) {
        std::vector<ResBlock> blocks;
        for (int i = 0; i < cfg_.blocks_per_level; ++i) {
            blocks.push_back(make_block(store, "unet.down" + std::to_string(l) + "." + std::to_string(i), ch,
                                        cfg_.channels(l), rng));
            ch = cfg_.channels(l);
        }
        down_.push_back(std::move(blocks));
    }
    for (int i = 0; i < cfg_.blocks_per_level; ++i) {
        mid_.push_back(make_block(store, "unet.mid." + std::to_string(i), ch, ch, rng));
    }
    up_.resize(static_cast<std::size_t>(cfg_.levels));
    for (int l = cfg_.levels - 1; l >= 0; --l) {
        std::vector<ResBlock> blocks;
        int in = ch + cfg_.channels(l);
        for (int i = 0; i < cfg_.blocks_per_level; ++i) {
            blocks.push_back(make_block(store, "unet.up" + std::to_string(l) + "." + std::to_string(i), in,
                                        cfg_.channels(l), rng));
            in = cfg_.channels(l);
        }
        ch = cfg_.channels(l);
        up_[static_cast<std::size_t>(l)] = std::move(blocks);
    }
    out_norm_ = {store.add("unet.out.norm.gamma", Tensor::full({base}, 1.0f)),
                 store.add("unet.out.norm.beta", Tensor::zeros({base}))};
    out_w_ = store.add("unet.out.w", conv_weight(1, base, 3, rng));
    out_b_ = store.add("unet.out.b", Tensor::zeros({1}));
}

Tensor UNet::run_block(const ResBlock& b, const Tensor& x, const Tensor& emb) const {
    Tensor h = c::group_norm(x, groups_for(b.in), b.norm1.gamma, b.norm1.beta);
    h = c::conv2d(c::silu(h), b.conv1_w, b.conv1_b, 1, 1);
    h = c::add_channel_bias(h, c::linear(emb, b.emb_w, b.emb_b));
    h = c::group_norm(h, groups_for(b.out), b.norm2.gamma, b.norm2.beta);
    h = c::conv2d(c::silu(h), b.conv2_w, b.conv2_b, 1, 1);
    const Tensor skip = b.in == b.out ? x : c::conv2d(x, b.skip_w, b.skip_b, 1, 0);
    return c::add(h, skip);
}

Tensor UNet::time_features(std::span<const int> steps) const {
    std::vector<float> raw;
    raw.reserve(steps.size() * static_cast<std::size_t>(cfg_.time_dim));
    for (int t : steps) {
        const auto e = time_embed(t, cfg_.time_dim, cfg_.max_step);
        raw.insert(raw.end(), e.vector.begin(), e.vector.end());
    }
    Tensor sinusoid({static_cast<int>(steps.size()), cfg_.time_dim}, std::move(raw));
    return c::silu(c::linear(sinusoid, time_w_, time_b_));
}

Tensor UNet::forward(const Tensor& x, std::span<const int> steps, const Tensor& cond) const {
    const int n = cfg_.grid_n;
    if (x.rank() != 4 || x.dim(1) != 1 || x.dim(2) != n || x.dim(3) != n) {
        throw DimensionError("denoiser input must be [b,1," + std::to_string(n) + "," + std::to_string(n) +
                             "], got " + compute::shape_str(x.shape()));
    }
    const int b = x.dim(0);
    if (static_cast<int>(steps.size()) != b) throw DimensionError("one diffusion step per batch element required");
    if (cond.rank() != 2 || cond.dim(0) != b || cond.dim(1) != cfg_.cond_dim) {
        throw DimensionError("condition embedding must be [b," + std::to_string(cfg_.cond_dim) + "], got " +
                             compute::shape_str(cond.shape()));
    }

    const Tensor emb = c::silu(c::add(time_features(steps), c::linear(cond, cond_w_, cond_b_)));

    Tensor h = c::conv2d(x, in_w_, in_b_, 1, 1);
    std::vector<Tensor> skips;
    for (const auto& level : down_) {
        for (const auto& blk : level) h = run_block(blk, h, emb);
        skips.push_back(h);
        h = c::avgpool2x(h);
    }
    for (const auto& blk : mid_) h = run_block(blk, h, emb);
    for (int l = cfg_.levels - 1; l >= 0; --l) {
        h = c::concat_channels(c::upsample2x(h), skips[static_cast<std::size_t>(l)]);
        for (const auto& blk : up_[static_cast<std::size_t>(l)]) h = run_block(blk, h, emb);
    }
    h = c::silu(c::group_norm(h, groups_for(cfg_.base_channels), out_norm_.gamma, out_norm_.beta));
    return c::conv2d(h, out_w_, out_b_, 1, 1);
}

Tensor predict_noise(const UNet& net, const Tensor& x_t, int t, const encoders::ConditionEmbedding& cond) {
    const int n = net.config().grid_n;
    if (x_t.rank() != 3 || x_t.dim(0) != 1 || x_t.dim(1) != n || x_t.dim(2) != n) {
        throw DimensionError("predict_noise expects [1," + std::to_string(n) + "," + std::to_string(n) + "], got " +
                             compute::shape_str(x_t.shape()));
    }
    if (static_cast<int>(cond.vector.size()) != net.config().cond_dim) {
        throw DimensionError("condition embedding length differs from cond_dim");
    }
    const Tensor x4 = c::reshape(x_t, {1, 1, n, n});
    const Tensor cv({1, net.config().cond_dim}, cond.vector);
    const int steps[1] = {t};
    return c::reshape(net.forward(x4, steps, cv), {1, n, n});
}

}  // namespace rmgen::denoiser
