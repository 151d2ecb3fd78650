#include "rmgen/compute/adam.hpp"

#include <cmath>
#include <memory>

#include "rmgen/errors.hpp"

namespace rmgen::compute {

Parameter::Parameter(Tensor t)
    : tensor(Tensor(t.shape(), std::vector<float>(t.data().begin(), t.data().end()), true)),
      first_moment(Tensor::zeros(t.shape())),
      second_moment(Tensor::zeros(t.shape())) {}

void adam_step(std::span<Parameter* const> params, std::span<const Tensor> grads, const AdamOptions& opt) {
    if (params.size() != grads.size()) {
        throw DimensionError("adam_step: " + std::to_string(params.size()) + " parameters but " +
                             std::to_string(grads.size()) + " gradients");
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (params[i]->tensor.shape() != grads[i].shape()) {
            throw DimensionError("adam_step: gradient " + std::to_string(i) + " has shape " +
                                 shape_str(grads[i].shape()) + ", parameter has " +
                                 shape_str(params[i]->tensor.shape()));
        }
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
        Parameter& p = *params[i];
        ++p.step_count;
        const double bc1 = 1.0 - std::pow(static_cast<double>(opt.beta1), static_cast<double>(p.step_count));
        const double bc2 = 1.0 - std::pow(static_cast<double>(opt.beta2), static_cast<double>(p.step_count));
        auto w = p.tensor.mutable_data();
        auto m = p.first_moment.mutable_data();
        auto v = p.second_moment.mutable_data();
        auto g = grads[i].data();
        for (std::size_t j = 0; j < w.size(); ++j) {
            m[j] = opt.beta1 * m[j] + (1.0f - opt.beta1) * g[j];
            v[j] = opt.beta2 * v[j] + (1.0f - opt.beta2) * g[j] * g[j];
            const double mhat = m[j] / bc1;
            const double vhat = v[j] / bc2;
            w[j] -= static_cast<float>(opt.lr * mhat / (std::sqrt(vhat) + opt.eps));
        }
    }
}

void adam_step(std::span<Parameter* const> params, const AdamOptions& opt) {
    std::vector<Tensor> grads;
    grads.reserve(params.size());
    for (auto* p : params) grads.push_back(p->tensor.grad_tensor());
    adam_step(params, grads, opt);
}

Tensor& ParameterStore::add(const std::string& name, Tensor value) {
    if (index_.count(name)) throw ConfigError("duplicate parameter name: " + name);
    index_[name] = params_.size();
    names_.push_back(name);
    params_.push_back(std::make_unique<Parameter>(std::move(value)));
    return params_.back()->tensor;
}

const Tensor& ParameterStore::get(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ConfigError("unknown parameter: " + name);
    return params_[it->second]->tensor;
}

Tensor& ParameterStore::get(const std::string& name) {
    auto it = index_.find(name);
    if (it == index_.end()) throw ConfigError("unknown parameter: " + name);
    return params_[it->second]->tensor;
}

std::vector<Parameter*> ParameterStore::all() {
    std::vector<Parameter*> out;
    out.reserve(params_.size());
    for (auto& p : params_) out.push_back(p.get());
    return out;
}

std::size_t ParameterStore::total_elements() const {
    std::size_t n = 0;
    for (const auto& p : params_) n += p->tensor.numel();
    return n;
}

void ParameterStore::zero_grad() {
    for (auto& p : params_) p->tensor.zero_grad();
}

Tensor init_uniform(Shape shape, int fan_in, Rng& rng, float gain) {
    const float bound = gain * std::sqrt(6.0f / static_cast<float>(std::max(fan_in, 1)));
    std::uniform_real_distribution<float> dist(-bound, bound);
    std::vector<float> v(shape_numel(shape));
    for (auto& x : v) x = dist(rng);
    return Tensor(std::move(shape), std::move(v));
}

}  // namespace rmgen::compute
