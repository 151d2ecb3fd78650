#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rmgen/compute/tensor.hpp"
#include "rmgen/rng.hpp"

namespace rmgen::compute {

// A trainable tensor together with its Adam state.
struct Parameter {
    Tensor tensor;
    Tensor first_moment;
    Tensor second_moment;
    std::int64_t step_count = 0;

    explicit Parameter(Tensor t);
};

struct AdamOptions {
    float lr = 1e-4f;
    float beta1 = 0.9f;
    float beta2 = 0.999f;
    float eps = 1e-8f;
};

// One bias-corrected Adam update of every parameter using grads[i] for
// params[i]. Throws DimensionError when the lists or shapes disagree.
void adam_step(std::span<Parameter* const> params, std::span<const Tensor> grads, const AdamOptions& opt);

// Same, using each parameter's accumulated gradient.
void adam_step(std::span<Parameter* const> params, const AdamOptions& opt);

// Ordered, named collection of parameters shared by a model's modules.
class ParameterStore {
public:
    // Registers a new leaf; throws ConfigError on duplicate names.
    Tensor& add(const std::string& name, Tensor value);

    const Tensor& get(const std::string& name) const;
    Tensor& get(const std::string& name);
    bool contains(const std::string& name) const { return index_.count(name) != 0; }

    std::size_t size() const { return params_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    std::vector<Parameter*> all();
    std::size_t total_elements() const;

    void zero_grad();

private:
    std::vector<std::string> names_;
    std::vector<std::unique_ptr<Parameter>> params_;
    std::map<std::string, std::size_t> index_;
};

// He-style uniform init in [-sqrt(6/fan_in)*gain, +...] for weights.
Tensor init_uniform(Shape shape, int fan_in, Rng& rng, float gain = 1.0f);

}  // namespace rmgen::compute
