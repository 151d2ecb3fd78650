#pragma once

#include <span>
#include <string>
#include <vector>

#include "rmgen/compute/adam.hpp"
#include "rmgen/compute/tensor.hpp"
#include "rmgen/encoders.hpp"

namespace rmgen::denoiser {

using compute::ParameterStore;
using compute::Tensor;

struct UNetConfig {
    int base_channels = 32;
    int levels = 2;
    int blocks_per_level = 2;
    int groups = 8;
    int time_dim = 64;
    int cond_dim = 64;
    int grid_n = 32;
    int max_step = 400;  // T; valid steps are 1..max_step

    // Throws ConfigError on inconsistent sizes.
    void validate() const;
    int channels(int level) const { return base_channels << level; }
};

struct TimeEmbedding {
    std::vector<float> vector;
};

// Raw sinusoidal features, interleaved as [sin(t w_0), cos(t w_0), sin(t w_1),
// ...] with w_j = 10000^(-2j/time_dim). Throws StepError unless 1 <= t <= max_step.
TimeEmbedding time_embed(int t, int time_dim, int max_step);

// Conditional noise predictor eps(x_t, t | cond): a two-path U-Net whose
// residual blocks each receive a per-channel bias projected from
// silu(time_features(t) + cond_projection(cond)).
class UNet {
public:
    UNet(ParameterStore& store, const UNetConfig& cfg, Rng& rng);

    const UNetConfig& config() const { return cfg_; }

    // x [b,1,N,N], one step per batch element, cond [b,cond_dim] -> [b,1,N,N]
    Tensor forward(const Tensor& x, std::span<const int> steps, const Tensor& cond) const;

    // Learned time block applied to the sinusoidal features: [b,time_dim].
    Tensor time_features(std::span<const int> steps) const;

private:
    struct Norm {
        Tensor gamma, beta;
    };
    struct ResBlock {
        int in = 0, out = 0;
        Norm norm1, norm2;
        Tensor conv1_w, conv1_b, conv2_w, conv2_b;
        Tensor emb_w, emb_b;
        Tensor skip_w, skip_b;  // 1x1, only when in != out
    };

    ResBlock make_block(ParameterStore& store, const std::string& name, int in, int out, Rng& rng);
    Tensor run_block(const ResBlock& b, const Tensor& x, const Tensor& emb) const;
    int groups_for(int channels) const;

    UNetConfig cfg_;
    Tensor in_w_, in_b_;
    Tensor time_w_, time_b_, cond_w_, cond_b_;
    std::vector<std::vector<ResBlock>> down_;
    std::vector<ResBlock> mid_;
    std::vector<std::vector<ResBlock>> up_;
    Norm out_norm_;
    Tensor out_w_, out_b_;
};

// Single-map convenience wrapper: x_t [1,N,N] -> [1,N,N].
Tensor predict_noise(const UNet& net, const Tensor& x_t, int t, const encoders::ConditionEmbedding& cond);

}  // namespace rmgen::denoiser
