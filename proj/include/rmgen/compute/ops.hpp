#pragma once

#include "rmgen/compute/tensor.hpp"

namespace rmgen::compute {

enum class Activation { relu, silu };

// [m,k] x [k,n] -> [m,n]
Tensor matmul(const Tensor& a, const Tensor& b);

// x[b,in] * w[in,out] + bias[out]
Tensor linear(const Tensor& x, const Tensor& weight, const Tensor& bias);

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, float factor);

// Adds bias[b,c] to every spatial position of x[b,c,h,w].
Tensor add_channel_bias(const Tensor& x, const Tensor& bias);

// Cross-correlation with zero padding. Accepts input [c_in,h,w] (result
// [c_out,h',w']) or batched [b,c_in,h,w]. Kernel is [c_out,c_in,k,k] with k
// odd; bias, when given, is [c_out].
Tensor conv2d(const Tensor& input, const Tensor& kernel, int stride, int padding);
Tensor conv2d(const Tensor& input, const Tensor& kernel, const Tensor& bias, int stride, int padding);

// Nearest-neighbour 2x upsampling of [c,h,w] or [b,c,h,w].
Tensor upsample2x(const Tensor& input);

// 2x2 mean pooling of [c,h,w] or [b,c,h,w]; h and w must be even.
Tensor avgpool2x(const Tensor& input);

Tensor activation(const Tensor& input, Activation kind);
inline Tensor relu(const Tensor& x) { return activation(x, Activation::relu); }
inline Tensor silu(const Tensor& x) { return activation(x, Activation::silu); }

// Group normalization over [b,c,h,w] with per-channel affine gamma/beta [c].
Tensor group_norm(const Tensor& x, int groups, const Tensor& gamma, const Tensor& beta, float eps = 1e-5f);

// Concatenation along axis 1 of two [b,c_i,h,w] tensors.
Tensor concat_channels(const Tensor& a, const Tensor& b);

Tensor reshape(const Tensor& x, Shape shape);

Tensor sum(const Tensor& x);
Tensor mean(const Tensor& x);

// Mean over all elements of (pred - target)^2.
Tensor mse_loss(const Tensor& pred, const Tensor& target);

}  // namespace rmgen::compute
