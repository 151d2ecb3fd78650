#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace rmgen::compute {

using Shape = std::vector<int>;

std::size_t shape_numel(const Shape& shape);
std::string shape_str(const Shape& shape);

namespace detail {

struct Node {
    Shape shape;
    std::vector<float> data;
    std::vector<float> grad;  // empty until a gradient is accumulated
    bool requires_grad = false;
    std::vector<std::shared_ptr<Node>> parents;
    // Propagates this node's grad into its parents' grads.
    std::function<void(Node&)> backward_fn;

    std::vector<float>& grad_buffer() {
        if (grad.empty()) grad.assign(data.size(), 0.0f);
        return grad;
    }
};

}  // namespace detail

// Dense row-major float32 array with an optional gradient.
//
// Tensor is a shared handle: copies alias the same storage. Operations that
// receive at least one input with requires_grad record themselves on the
// output, so calling backward() on a scalar result walks the recorded graph
// in reverse topological order and accumulates into every leaf's grad.
class Tensor {
public:
    Tensor();
    Tensor(Shape shape, std::vector<float> data, bool requires_grad = false);

    static Tensor zeros(Shape shape, bool requires_grad = false);
    static Tensor full(Shape shape, float value, bool requires_grad = false);
    static Tensor scalar(float value);

    const Shape& shape() const { return node_->shape; }
    int rank() const { return static_cast<int>(node_->shape.size()); }
    int dim(int axis) const;
    std::size_t numel() const { return node_->data.size(); }

    std::span<const float> data() const { return node_->data; }
    // Raw write access; reserved for optimizers and in-place initialization
    // of leaves. Never call on a tensor that is part of a live graph.
    std::span<float> mutable_data() { return node_->data; }
    float item() const;

    bool requires_grad() const { return node_->requires_grad; }
    bool has_grad() const { return !node_->grad.empty(); }
    // Zero-filled view when no gradient has been accumulated yet.
    std::span<const float> grad() const;
    Tensor grad_tensor() const;
    void zero_grad();

    // Seeds d(this)/d(this) = 1; this must hold exactly one element.
    void backward() const;

    // Same values, no history, no gradient.
    Tensor detach() const;

    // Builds an op output; records the backward closure only when grad mode
    // is enabled and some parent requires grad.
    static Tensor make_result(Shape shape, std::vector<float> data,
                              std::vector<Tensor> parents,
                              std::function<void(detail::Node&)> backward_fn);

    detail::Node& node() const { return *node_; }
    bool same_storage(const Tensor& other) const { return node_ == other.node_; }

private:
    explicit Tensor(std::shared_ptr<detail::Node> node) : node_(std::move(node)) {}
    std::shared_ptr<detail::Node> node_;
};

// Disables graph recording for its lifetime (inference).
class NoGradGuard {
public:
    NoGradGuard();
    ~NoGradGuard();
    NoGradGuard(const NoGradGuard&) = delete;
    NoGradGuard& operator=(const NoGradGuard&) = delete;

private:
    bool previous_;
};

bool grad_enabled();

}  // namespace rmgen::compute
