#include <cmath>

#include "rmgen/compute/ops.hpp"
#include "rmgen/diffusion.hpp"
#include "rmgen/errors.hpp"

namespace rmgen::diffusion {

std::size_t NoiseSchedule::index(int t) const {
    if (t < 1 || t > T) throw StepError("diffusion step " + std::to_string(t) + " outside [1," + std::to_string(T) + "]");
    return static_cast<std::size_t>(t - 1);
}

NoiseSchedule linear_schedule(int T, double beta1, double betaT) {
    if (T < 2) throw ConfigError("schedule needs T >= 2");
    if (!(beta1 > 0.0) || !(betaT > beta1) || !(betaT < 1.0)) {
        throw ConfigError("schedule bounds must satisfy 0 < beta1 < betaT < 1");
    }
    NoiseSchedule s;
    s.T = T;
    const auto n = static_cast<std::size_t>(T);
    s.beta.resize(n);
    s.alpha.resize(n);
    s.alpha_bar.resize(n);
    s.sigma2.resize(n);
    for (int t = 1; t <= T; ++t) {
        s.beta[static_cast<std::size_t>(t - 1)] =
            beta1 + static_cast<double>(t - 1) / static_cast<double>(T - 1) * (betaT - beta1);
    }
    // The interpolation can round at t = T; pin the endpoint to the requested value.
    s.beta[n - 1] = betaT;
    double running = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        s.alpha[i] = 1.0 - s.beta[i];
        const double prev = running;
        running *= s.alpha[i];
        s.alpha_bar[i] = running;
        s.sigma2[i] = (1.0 - prev) / (1.0 - running) * s.beta[i];
    }
    return s;
}

std::vector<double> sigma_variant(const NoiseSchedule& sched, SigmaMode mode) {
    return mode == SigmaMode::posterior ? sched.sigma2 : sched.beta;
}

namespace {

Tensor affine_mix(const Tensor& a, double ca, const Tensor& b, double cb) {
    std::vector<float> out(a.numel());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<float>(ca * a.data()[i] + cb * b.data()[i]);
    }
    return Tensor(a.shape(), std::move(out));
}

}  // namespace

Tensor forward_sample(const Tensor& x0, int t, const Tensor& eps, const NoiseSchedule& sched) {
    if (x0.shape() != eps.shape()) throw DimensionError("forward_sample: noise shape differs from x0");
    const double ab = sched.alpha_bar_at(t);
    return affine_mix(x0, std::sqrt(ab), eps, std::sqrt(1.0 - ab));
}

Tensor forward_sample_batch(const Tensor& x0, std::span<const int> steps, const Tensor& eps,
                            const NoiseSchedule& sched) {
    if (x0.shape() != eps.shape()) throw DimensionError("forward_sample_batch: noise shape differs from x0");
    const int b = x0.dim(0);
    if (static_cast<int>(steps.size()) != b) throw DimensionError("forward_sample_batch: one step per element");
    const std::size_t per = x0.numel() / static_cast<std::size_t>(b);
    std::vector<float> out(x0.numel());
    for (int i = 0; i < b; ++i) {
        const double ab = sched.alpha_bar_at(steps[static_cast<std::size_t>(i)]);
        const double cx = std::sqrt(ab), ce = std::sqrt(1.0 - ab);
        for (std::size_t j = i * per; j < (i + 1) * per; ++j) {
            out[j] = static_cast<float>(cx * x0.data()[j] + ce * eps.data()[j]);
        }
    }
    return Tensor(x0.shape(), std::move(out));
}

Tensor forward_step(const Tensor& x_prev, int t, const Tensor& z, const NoiseSchedule& sched) {
    if (x_prev.shape() != z.shape()) throw DimensionError("forward_step: noise shape differs from input");
    const double b = sched.beta_at(t);
    return affine_mix(x_prev, std::sqrt(1.0 - b), z, std::sqrt(b));
}

Tensor diffusion_loss(const Tensor& predicted_noise, const Tensor& true_noise) {
    return compute::mse_loss(predicted_noise, true_noise);
}

}  // namespace rmgen::diffusion
