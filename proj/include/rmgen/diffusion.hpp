#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rmgen/compute/adam.hpp"
#include "rmgen/compute/tensor.hpp"
#include "rmgen/dataset.hpp"
#include "rmgen/denoiser.hpp"
#include "rmgen/encoders.hpp"
#include "rmgen/rng.hpp"
#include "rmgen/selection.hpp"

namespace rmgen::diffusion {

using compute::Tensor;
using encoders::ConditionKind;
using encoders::ConditionSet;

// Variance schedule tables, stored for t = 1..T at index t-1. Computed in
// double precision; alpha_bar(0) is defined as 1.
struct NoiseSchedule {
    int T = 0;
    std::vector<double> beta;
    std::vector<double> alpha;
    std::vector<double> alpha_bar;
    std::vector<double> sigma2;  // posterior variance

    double beta_at(int t) const { return beta[index(t)]; }
    double alpha_at(int t) const { return alpha[index(t)]; }
    double alpha_bar_at(int t) const { return t == 0 ? 1.0 : alpha_bar[index(t)]; }
    double sigma2_at(int t) const { return sigma2[index(t)]; }

private:
    std::size_t index(int t) const;
};

// beta_t = beta1 + (t-1)/(T-1) * (betaT - beta1). Throws ConfigError unless
// 0 < beta1 < betaT < 1 and T >= 2.
NoiseSchedule linear_schedule(int T, double beta1, double betaT);

enum class SigmaMode : std::int32_t { posterior = 0, beta = 1 };

// Per-step reverse variances sigma_t^2 for t = 1..T.
std::vector<double> sigma_variant(const NoiseSchedule& sched, SigmaMode mode);

// x_t = sqrt(alpha_bar_t) x0 + sqrt(1 - alpha_bar_t) eps (closed-form marginal).
Tensor forward_sample(const Tensor& x0, int t, const Tensor& eps, const NoiseSchedule& sched);

// Same for a batch [b,...] with one step per leading-axis element.
Tensor forward_sample_batch(const Tensor& x0, std::span<const int> steps, const Tensor& eps,
                            const NoiseSchedule& sched);

// Single Markov step x_t = sqrt(1 - beta_t) x_{t-1} + sqrt(beta_t) z.
Tensor forward_step(const Tensor& x_prev, int t, const Tensor& z, const NoiseSchedule& sched);

// Mean over elements (and batch) of (predicted - true noise)^2.
Tensor diffusion_loss(const Tensor& predicted_noise, const Tensor& true_noise);

struct ScheduleConfig {
    int T = 400;
    double beta1 = 1e-4;
    double betaT = 0.02;
    bool operator==(const ScheduleConfig&) const = default;
};

// How training/evaluation derive a ConditionSet from a dataset record.
struct ConditionOptions {
    selection::Method method = selection::Method::environment_aware;
    double percent = 10.0;
    int n_subareas = 16;
};

struct ModelConfig {
    ConditionKind kind = ConditionKind::fragments;
    encoders::EncoderConfig encoder;
    denoiser::UNetConfig unet;
    encoders::Normalization norm;
    ScheduleConfig schedule;
    SigmaMode sigma_mode = SigmaMode::posterior;
    ConditionOptions condition;

    // Throws ConfigError when encoder, U-Net and schedule disagree.
    void validate() const;
};

// Encoder + U-Net sharing one parameter store.
class ConditionalModel {
public:
    ConditionalModel(const ModelConfig& cfg, std::uint64_t init_seed);

    const ModelConfig& config() const { return cfg_; }
    compute::ParameterStore& parameters() { return store_; }
    const compute::ParameterStore& parameters() const { return store_; }
    const encoders::ConditionEncoder& encoder() const { return *encoder_; }
    const denoiser::UNet& unet() const { return *unet_; }
    const NoiseSchedule& schedule() const { return schedule_; }

    // eps_theta(x_t, t | e(c)) for x_t [b,1,N,N].
    Tensor predict(const Tensor& x_t, std::span<const int> steps, std::span<const ConditionSet> conds) const;

private:
    ModelConfig cfg_;
    compute::ParameterStore store_;
    std::unique_ptr<encoders::ConditionEncoder> encoder_;
    std::unique_ptr<denoiser::UNet> unet_;
    NoiseSchedule schedule_;
};

struct ModelCheckpoint {
    std::unique_ptr<ConditionalModel> model;
    std::vector<float> loss_trace;  // mean loss per epoch
};

std::vector<char> encode_checkpoint(const ModelCheckpoint& ckpt);
ModelCheckpoint decode_checkpoint(const std::vector<char>& bytes);
void save_checkpoint(const ModelCheckpoint& ckpt, const std::string& path);
ModelCheckpoint load_checkpoint(const std::string& path);

// Condition of `kind` for one record: selected fragments or the scenario's
// transmitters. `selection_seed` drives the random method only.
ConditionSet build_condition(const scenario::DatasetRecord& record, ConditionKind kind,
                             const ConditionOptions& opts, const encoders::EncoderConfig& enc,
                             std::uint64_t selection_seed);

struct TrainConfig {
    float lr = 1e-4f;
    int epochs = 100;
    int batch_size = 16;
    std::uint64_t seed = 0;
    ConditionKind condition_kind = ConditionKind::fragments;
    float beta1 = 0.9f;  // Adam moments
    float beta2 = 0.999f;
    float eps = 1e-8f;

    void validate() const;
};

struct EpochReport {
    int epoch;  // 1-based
    double mean_loss;
};

using EpochCallback = std::function<void(const EpochReport&)>;

// Default architecture/encoder settings for `kind` on a dataset.
ModelConfig default_model_config(const scenario::Dataset& data, ConditionKind kind, const ScheduleConfig& sched,
                                 const ConditionOptions& cond);

// Trains a fresh model on every record of `data` and returns its checkpoint.
ModelCheckpoint train(const scenario::Dataset& data, const TrainConfig& cfg, const ModelConfig& model_cfg,
                      const EpochCallback& on_epoch = {});

// Continues training an existing model in place (appends to its loss trace).
void train_model(ModelCheckpoint& ckpt, const scenario::Dataset& data, const TrainConfig& cfg,
                 const EpochCallback& on_epoch = {});

// Standard-normal draws from one seeded stream.
class NoiseStream {
public:
    explicit NoiseStream(std::uint64_t seed) : rng_(make_rng(seed, "noise")) {}
    float next() { return normal_(rng_); }

private:
    Rng rng_;
    std::normal_distribution<float> normal_{0.0f, 1.0f};
};

// eps_theta(x_t, t) for a batch x_t [b,1,N,N] sharing step t.
using NoisePredictor = std::function<Tensor(const Tensor& x_t, int t)>;

// Reverse chain t = T..1 starting from x_T (row-major [b,1,N,N] values):
// x_{t-1} = (x_t - beta_t / sqrt(1 - alpha_bar_t) eps) / sqrt(alpha_t) + sigma_t z,
// z = 0 at t = 1. Element i draws z from streams[i]. Returns unclamped x_0.
std::vector<float> reverse_chain(const NoiseSchedule& sched, SigmaMode mode, const compute::Shape& shape,
                                 std::vector<float> x_T, const NoisePredictor& predict,
                                 std::span<NoiseStream> streams);

// Ancestral sampling from x_T ~ N(0, I) down to x_0, clamped to [-1, 1] and
// mapped back to dBm. Each condition i uses its own stream seeded by seeds[i].
std::vector<scenario::RadioMap> sample_batch(const ConditionalModel& model, std::span<const ConditionSet> conds,
                                             std::span<const std::uint64_t> seeds);

scenario::RadioMap sample(const ConditionSet& cond, const ModelCheckpoint& ckpt, std::uint64_t seed);

}  // namespace rmgen::diffusion
