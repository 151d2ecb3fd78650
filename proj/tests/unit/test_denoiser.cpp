#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gradcheck.hpp"
#include "rmgen/compute/ops.hpp"
#include "rmgen/denoiser.hpp"
#include "rmgen/errors.hpp"

using namespace rmgen::denoiser;
using rmgen::compute::ParameterStore;
using rmgen::compute::Tensor;
using rmgen::testing::random_tensor;

namespace {

UNetConfig small_config() {
    UNetConfig cfg;
    cfg.base_channels = 4;
    cfg.levels = 2;
    cfg.blocks_per_level = 1;
    cfg.groups = 2;
    cfg.time_dim = 8;
    cfg.cond_dim = 6;
    cfg.grid_n = 8;
    cfg.max_step = 50;
    return cfg;
}

double l2_diff(const Tensor& a, const Tensor& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.numel(); ++i) s += (a.data()[i] - b.data()[i]) * (a.data()[i] - b.data()[i]);
    return std::sqrt(s);
}

}  // namespace

TEST(TimeEmbed, SinusoidLayout) {
    const auto e = time_embed(7, 64, 400);
    ASSERT_EQ(e.vector.size(), 64u);
    EXPECT_FLOAT_EQ(e.vector[0], static_cast<float>(std::sin(7.0)));
    EXPECT_FLOAT_EQ(e.vector[1], static_cast<float>(std::cos(7.0)));
    const double w1 = std::pow(10000.0, -2.0 / 64.0);
    EXPECT_FLOAT_EQ(e.vector[2], static_cast<float>(std::sin(7.0 * w1)));
    EXPECT_EQ(time_embed(7, 64, 400).vector, e.vector);
}

TEST(TimeEmbed, DistinctStepsAndRange) {
    const auto a = time_embed(1, 64, 400), b = time_embed(400, 64, 400);
    double d = 0.0;
    for (std::size_t i = 0; i < a.vector.size(); ++i) d += std::pow(a.vector[i] - b.vector[i], 2);
    EXPECT_GT(d, 0.0);
    EXPECT_THROW(time_embed(0, 64, 400), rmgen::StepError);
    EXPECT_THROW(time_embed(401, 64, 400), rmgen::StepError);
}

TEST(UNetConfig, Validation) {
    UNetConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.grid_n = 30;
    EXPECT_THROW(cfg.validate(), rmgen::ConfigError);
    cfg = UNetConfig{};
    cfg.levels = 6;
    EXPECT_THROW(cfg.validate(), rmgen::ConfigError);
}

TEST(UNet, ShapePreservedAtFullSize) {
    ParameterStore store;
    rmgen::Rng rng(1);
    UNetConfig cfg;
    UNet net(store, cfg, rng);
    std::mt19937_64 gen(2);
    const Tensor x = random_tensor({1, 32, 32}, gen, -1, 1, false);
    rmgen::encoders::ConditionEmbedding cond{std::vector<float>(64, 0.1f)};
    for (int t : {1, 200, 400}) {
        const Tensor out = predict_noise(net, x, t, cond);
        EXPECT_EQ(out.shape(), (rmgen::compute::Shape{1, 32, 32}));
        for (float v : out.data()) EXPECT_TRUE(std::isfinite(v));
    }
    EXPECT_THROW(predict_noise(net, random_tensor({1, 16, 16}, gen, -1, 1, false), 1, cond), rmgen::DimensionError);
    EXPECT_THROW(predict_noise(net, x, 401, cond), rmgen::StepError);
}

TEST(UNet, ConditionChangesOutput) {
    ParameterStore store;
    rmgen::Rng rng(3);
    UNet net(store, small_config(), rng);
    std::mt19937_64 gen(4);
    const Tensor x = random_tensor({1, 8, 8}, gen, -1, 1, false);
    std::uniform_real_distribution<float> u(-1, 1);
    rmgen::encoders::ConditionEmbedding a{std::vector<float>(6)}, b{std::vector<float>(6)};
    for (auto& v : a.vector) v = u(gen);
    for (auto& v : b.vector) v = u(gen);
    EXPECT_GT(l2_diff(predict_noise(net, x, 10, a), predict_noise(net, x, 10, b)), 0.0);
    EXPECT_EQ(l2_diff(predict_noise(net, x, 10, a), predict_noise(net, x, 10, a)), 0.0);
}

TEST(UNet, ConditionGradientNonZero) {
    ParameterStore store;
    rmgen::Rng rng(5);
    UNet net(store, small_config(), rng);
    std::mt19937_64 gen(6);
    const Tensor x = random_tensor({2, 1, 8, 8}, gen, -1, 1, false);
    Tensor cond = random_tensor({2, 6}, gen);
    const int steps[] = {3, 40};
    rmgen::compute::sum(net.forward(x, steps, cond)).backward();
    double s = 0.0;
    for (float g : cond.grad()) s += std::abs(g);
    EXPECT_GT(s, 0.0);
}

TEST(UNet, EveryParameterGetsFiniteGradient) {
    ParameterStore store;
    rmgen::Rng rng(7);
    UNet net(store, small_config(), rng);
    std::mt19937_64 gen(8);
    const Tensor x = random_tensor({2, 1, 8, 8}, gen, -1, 1, false);
    const Tensor target = random_tensor({2, 1, 8, 8}, gen, -1, 1, false);
    const Tensor cond = random_tensor({2, 6}, gen, -1, 1, false);
    const int steps[] = {1, 50};
    rmgen::compute::mse_loss(net.forward(x, steps, cond), target).backward();
    for (const auto& name : store.names()) {
        const Tensor& p = store.get(name);
        ASSERT_TRUE(p.has_grad()) << name;
        for (float g : p.grad()) ASSERT_TRUE(std::isfinite(g)) << name;
    }
}

TEST(UNet, ReducedConfigGradCheck) {
    ParameterStore store;
    rmgen::Rng rng(9);
    UNet net(store, small_config(), rng);
    std::mt19937_64 gen(10);
    Tensor x = random_tensor({1, 1, 8, 8}, gen);
    Tensor cond = random_tensor({1, 6}, gen);
    const int steps[] = {17};

    std::vector<rmgen::testing::Probe> probes;
    std::uniform_int_distribution<std::size_t> pick_name(0, store.size() - 1);
    while (probes.size() < 20) {
        Tensor& p = store.get(store.names()[pick_name(gen)]);
        std::uniform_int_distribution<std::size_t> pick(0, p.numel() - 1);
        probes.push_back({&p, pick(gen)});
    }
    const double err = rmgen::testing::grad_check_probes([&] { return net.forward(x, steps, cond); }, probes, gen);
    EXPECT_LT(err, 1e-2);
}

TEST(UNet, ForwardDeterministic) {
    ParameterStore s1, s2;
    rmgen::Rng r1(11), r2(11);
    UNet a(s1, small_config(), r1), b(s2, small_config(), r2);
    std::mt19937_64 gen(12);
    const Tensor x = random_tensor({1, 1, 8, 8}, gen, -1, 1, false);
    const Tensor cond = random_tensor({1, 6}, gen, -1, 1, false);
    const int steps[] = {5};
    EXPECT_EQ(l2_diff(a.forward(x, steps, cond), b.forward(x, steps, cond)), 0.0);
}
