#include "rmgen/compute/ops.hpp"

#include <Eigen/Core>
#include <cmath>

#include "rmgen/errors.hpp"

namespace rmgen::compute {

namespace {

using RowMat = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMat = Eigen::Map<const RowMat>;
using MutMat = Eigen::Map<RowMat>;

// Gradient buffer of parent i, or nullptr when that parent is a constant.
float* parent_grad(detail::Node& n, std::size_t i) {
    auto& p = *n.parents[i];
    return p.requires_grad ? p.grad_buffer().data() : nullptr;
}

const float* parent_data(detail::Node& n, std::size_t i) { return n.parents[i]->data.data(); }

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
    if (a.shape() != b.shape()) {
        throw DimensionError(std::string(op) + ": shape mismatch " + shape_str(a.shape()) + " vs " +
                             shape_str(b.shape()));
    }
}

// View of a [c,h,w] or [b,c,h,w] tensor as batched NCHW.
struct Nchw {
    int b, c, h, w;
    bool batched;
};

Nchw as_nchw(const Tensor& x, const char* op) {
    if (x.rank() == 3) return {1, x.dim(0), x.dim(1), x.dim(2), false};
    if (x.rank() == 4) return {x.dim(0), x.dim(1), x.dim(2), x.dim(3), true};
    throw DimensionError(std::string(op) + ": expected [c,h,w] or [b,c,h,w], got " + shape_str(x.shape()));
}

Shape nchw_shape(const Nchw& v, int c, int h, int w) {
    if (v.batched) return {v.b, c, h, w};
    return {c, h, w};
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
    if (a.rank() != 2 || b.rank() != 2) throw DimensionError("matmul: operands must be 2-D");
    const int m = a.dim(0), k = a.dim(1), n = b.dim(1);
    if (b.dim(0) != k) {
        throw DimensionError("matmul: inner dimensions differ " + shape_str(a.shape()) + " x " + shape_str(b.shape()));
    }
    std::vector<float> out(static_cast<std::size_t>(m) * n);
    MutMat(out.data(), m, n).noalias() = ConstMat(a.data().data(), m, k) * ConstMat(b.data().data(), k, n);
    return Tensor::make_result({m, n}, std::move(out), {a, b}, [m, k, n](detail::Node& self) {
        ConstMat dc(self.grad.data(), m, n);
        if (float* ga = parent_grad(self, 0)) {
            MutMat(ga, m, k).noalias() += dc * ConstMat(parent_data(self, 1), k, n).transpose();
        }
        if (float* gb = parent_grad(self, 1)) {
            MutMat(gb, k, n).noalias() += ConstMat(parent_data(self, 0), m, k).transpose() * dc;
        }
    });
}

Tensor linear(const Tensor& x, const Tensor& weight, const Tensor& bias) {
    if (x.rank() != 2 || weight.rank() != 2) throw DimensionError("linear: x and weight must be 2-D");
    const int m = x.dim(0), k = x.dim(1), n = weight.dim(1);
    if (weight.dim(0) != k) {
        throw DimensionError("linear: input width " + std::to_string(k) + " vs weight " + shape_str(weight.shape()));
    }
    if (bias.numel() != static_cast<std::size_t>(n)) throw DimensionError("linear: bias length mismatch");
    std::vector<float> out(static_cast<std::size_t>(m) * n);
    MutMat o(out.data(), m, n);
    o.noalias() = ConstMat(x.data().data(), m, k) * ConstMat(weight.data().data(), k, n);
    o.rowwise() += Eigen::Map<const Eigen::RowVectorXf>(bias.data().data(), n);
    return Tensor::make_result({m, n}, std::move(out), {x, weight, bias}, [m, k, n](detail::Node& self) {
        ConstMat dc(self.grad.data(), m, n);
        if (float* gx = parent_grad(self, 0)) {
            MutMat(gx, m, k).noalias() += dc * ConstMat(parent_data(self, 1), k, n).transpose();
        }
        if (float* gw = parent_grad(self, 1)) {
            MutMat(gw, k, n).noalias() += ConstMat(parent_data(self, 0), m, k).transpose() * dc;
        }
        if (float* gb = parent_grad(self, 2)) {
            // Plain loop: Eigen's vectorized reductions peel by address, which
            // makes the summation order depend on heap alignment.
            for (int r = 0; r < m; ++r) {
                for (int j = 0; j < n; ++j) gb[j] += dc(r, j);
            }
        }
    });
}

Tensor add(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "add");
    std::vector<float> out(a.numel());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.data()[i] + b.data()[i];
    return Tensor::make_result(a.shape(), std::move(out), {a, b}, [](detail::Node& self) {
        for (std::size_t p = 0; p < 2; ++p) {
            if (float* g = parent_grad(self, p)) {
                for (std::size_t i = 0; i < self.grad.size(); ++i) g[i] += self.grad[i];
            }
        }
    });
}

Tensor sub(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "sub");
    std::vector<float> out(a.numel());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.data()[i] - b.data()[i];
    return Tensor::make_result(a.shape(), std::move(out), {a, b}, [](detail::Node& self) {
        if (float* g = parent_grad(self, 0)) {
            for (std::size_t i = 0; i < self.grad.size(); ++i) g[i] += self.grad[i];
        }
        if (float* g = parent_grad(self, 1)) {
            for (std::size_t i = 0; i < self.grad.size(); ++i) g[i] -= self.grad[i];
        }
    });
}

Tensor mul(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "mul");
    std::vector<float> out(a.numel());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.data()[i] * b.data()[i];
    return Tensor::make_result(a.shape(), std::move(out), {a, b}, [](detail::Node& self) {
        const float* av = parent_data(self, 0);
        const float* bv = parent_data(self, 1);
        if (float* g = parent_grad(self, 0)) {
            for (std::size_t i = 0; i < self.grad.size(); ++i) g[i] += self.grad[i] * bv[i];
        }
        if (float* g = parent_grad(self, 1)) {
            for (std::size_t i = 0; i < self.grad.size(); ++i) g[i] += self.grad[i] * av[i];
        }
    });
}

Tensor scale(const Tensor& a, float factor) {
    std::vector<float> out(a.numel());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.data()[i] * factor;
    return Tensor::make_result(a.shape(), std::move(out), {a}, [factor](detail::Node& self) {
        if (float* g = parent_grad(self, 0)) {
            for (std::size_t i = 0; i < self.grad.size(); ++i) g[i] += self.grad[i] * factor;
        }
    });
}

Tensor add_channel_bias(const Tensor& x, const Tensor& bias) {
    if (x.rank() != 4 || bias.rank() != 2 || bias.dim(0) != x.dim(0) || bias.dim(1) != x.dim(1)) {
        throw DimensionError("add_channel_bias: expected x[b,c,h,w] and bias[b,c], got " + shape_str(x.shape()) +
                             " and " + shape_str(bias.shape()));
    }
    const std::size_t bc = static_cast<std::size_t>(x.dim(0)) * x.dim(1);
    const std::size_t hw = static_cast<std::size_t>(x.dim(2)) * x.dim(3);
    std::vector<float> out(x.data().begin(), x.data().end());
    for (std::size_t i = 0; i < bc; ++i) {
        const float v = bias.data()[i];
        for (std::size_t j = 0; j < hw; ++j) out[i * hw + j] += v;
    }
    return Tensor::make_result(x.shape(), std::move(out), {x, bias}, [bc, hw](detail::Node& self) {
        if (float* g = parent_grad(self, 0)) {
            for (std::size_t i = 0; i < self.grad.size(); ++i) g[i] += self.grad[i];
        }
        if (float* g = parent_grad(self, 1)) {
            for (std::size_t i = 0; i < bc; ++i) {
                float s = 0.0f;
                for (std::size_t j = 0; j < hw; ++j) s += self.grad[i * hw + j];
                g[i] += s;
            }
        }
    });
}

namespace {

struct ConvGeometry {
    int b, ci, h, w, co, k, stride, pad, ho, wo;
    std::size_t cols() const { return static_cast<std::size_t>(b) * ho * wo; }
    std::size_t rows() const { return static_cast<std::size_t>(ci) * k * k; }
};

void im2col(const ConvGeometry& g, const float* x, float* col) {
    const std::size_t n = g.cols();
    const std::size_t plane = static_cast<std::size_t>(g.ho) * g.wo;
    for (int c = 0; c < g.ci; ++c) {
        for (int ki = 0; ki < g.k; ++ki) {
            for (int kj = 0; kj < g.k; ++kj) {
                float* row = col + ((static_cast<std::size_t>(c) * g.k + ki) * g.k + kj) * n;
                for (int b = 0; b < g.b; ++b) {
                    const float* src = x + (static_cast<std::size_t>(b) * g.ci + c) * g.h * g.w;
                    float* dst = row + b * plane;
                    for (int oh = 0; oh < g.ho; ++oh) {
                        const int ih = oh * g.stride - g.pad + ki;
                        float* drow = dst + static_cast<std::size_t>(oh) * g.wo;
                        if (ih < 0 || ih >= g.h) {
                            std::fill(drow, drow + g.wo, 0.0f);
                            continue;
                        }
                        const float* srow = src + static_cast<std::size_t>(ih) * g.w;
                        for (int ow = 0; ow < g.wo; ++ow) {
                            const int iw = ow * g.stride - g.pad + kj;
                            drow[ow] = (iw >= 0 && iw < g.w) ? srow[iw] : 0.0f;
                        }
                    }
                }
            }
        }
    }
}

void col2im_add(const ConvGeometry& g, const float* col, float* dx) {
    const std::size_t n = g.cols();
    const std::size_t plane = static_cast<std::size_t>(g.ho) * g.wo;
    for (int c = 0; c < g.ci; ++c) {
        for (int ki = 0; ki < g.k; ++ki) {
            for (int kj = 0; kj < g.k; ++kj) {
                const float* row = col + ((static_cast<std::size_t>(c) * g.k + ki) * g.k + kj) * n;
                for (int b = 0; b < g.b; ++b) {
                    float* dst = dx + (static_cast<std::size_t>(b) * g.ci + c) * g.h * g.w;
                    const float* src = row + b * plane;
                    for (int oh = 0; oh < g.ho; ++oh) {
                        const int ih = oh * g.stride - g.pad + ki;
                        if (ih < 0 || ih >= g.h) continue;
                        const float* srow = src + static_cast<std::size_t>(oh) * g.wo;
                        float* drow = dst + static_cast<std::size_t>(ih) * g.w;
                        for (int ow = 0; ow < g.wo; ++ow) {
                            const int iw = ow * g.stride - g.pad + kj;
                            if (iw >= 0 && iw < g.w) drow[iw] += srow[ow];
                        }
                    }
                }
            }
        }
    }
}

Tensor conv2d_impl(const Tensor& input, const Tensor& kernel, const Tensor* bias, int stride, int padding) {
    const Nchw in = as_nchw(input, "conv2d");
    if (kernel.rank() != 4) throw DimensionError("conv2d: kernel must be [c_out,c_in,k,k]");
    const int co = kernel.dim(0), k = kernel.dim(2);
    if (kernel.dim(1) != in.c) {
        throw DimensionError("conv2d: kernel expects " + std::to_string(kernel.dim(1)) + " input channels, got " +
                             std::to_string(in.c));
    }
    if (kernel.dim(3) != k || k % 2 == 0) throw DimensionError("conv2d: kernel must be square with odd size");
    if (stride < 1 || padding < 0) throw DimensionError("conv2d: stride must be >= 1 and padding >= 0");
    const int span_h = in.h + 2 * padding - k, span_w = in.w + 2 * padding - k;
    if (span_h < 0 || span_w < 0 || span_h % stride != 0 || span_w % stride != 0) {
        throw DimensionError("conv2d: output size is not integral for input " + shape_str(input.shape()));
    }
    if (bias && bias->numel() != static_cast<std::size_t>(co)) throw DimensionError("conv2d: bias length mismatch");

    const ConvGeometry g{in.b, in.c, in.h, in.w, co, k, stride, padding, span_h / stride + 1, span_w / stride + 1};
    const auto K = static_cast<Eigen::Index>(g.rows());
    const auto N = static_cast<Eigen::Index>(g.cols());
    const std::size_t plane = static_cast<std::size_t>(g.ho) * g.wo;

    auto col = std::make_shared<std::vector<float>>(g.rows() * g.cols());
    im2col(g, input.data().data(), col->data());
    RowMat prod = ConstMat(kernel.data().data(), co, K) * ConstMat(col->data(), K, N);

    std::vector<float> out(static_cast<std::size_t>(g.b) * co * plane);
    for (int b = 0; b < g.b; ++b) {
        for (int c = 0; c < co; ++c) {
            const float bv = bias ? bias->data()[c] : 0.0f;
            const float* src = prod.data() + static_cast<std::size_t>(c) * N + b * plane;
            float* dst = out.data() + (static_cast<std::size_t>(b) * co + c) * plane;
            for (std::size_t i = 0; i < plane; ++i) dst[i] = src[i] + bv;
        }
    }

    std::vector<Tensor> parents{input, kernel};
    if (bias) parents.push_back(*bias);
    const bool has_bias = bias != nullptr;
    return Tensor::make_result(nchw_shape(in, co, g.ho, g.wo), std::move(out), std::move(parents),
                               [g, col, has_bias, K, N, plane](detail::Node& self) {
        RowMat dy(g.co, N);
        for (int b = 0; b < g.b; ++b) {
            for (int c = 0; c < g.co; ++c) {
                const float* src = self.grad.data() + (static_cast<std::size_t>(b) * g.co + c) * plane;
                std::copy(src, src + plane, dy.data() + static_cast<std::size_t>(c) * N + b * plane);
            }
        }
        if (float* gk = parent_grad(self, 1)) {
            MutMat(gk, g.co, K).noalias() += dy * ConstMat(col->data(), K, N).transpose();
        }
        if (has_bias) {
            if (float* gb = parent_grad(self, 2)) {
                for (int c = 0; c < g.co; ++c) {
                    float acc = 0.0f;
                    for (Eigen::Index j = 0; j < dy.cols(); ++j) acc += dy(c, j);
                    gb[c] += acc;
                }
            }
        }
        if (float* gx = parent_grad(self, 0)) {
            RowMat dcol = ConstMat(parent_data(self, 1), g.co, K).transpose() * dy;
            col2im_add(g, dcol.data(), gx);
        }
    });
}

}  // namespace

Tensor conv2d(const Tensor& input, const Tensor& kernel, int stride, int padding) {
    return conv2d_impl(input, kernel, nullptr, stride, padding);
}

Tensor conv2d(const Tensor& input, const Tensor& kernel, const Tensor& bias, int stride, int padding) {
    return conv2d_impl(input, kernel, &bias, stride, padding);
}

Tensor upsample2x(const Tensor& input) {
    const Nchw v = as_nchw(input, "upsample2x");
    const int ho = 2 * v.h, wo = 2 * v.w;
    const std::size_t planes = static_cast<std::size_t>(v.b) * v.c;
    std::vector<float> out(planes * ho * wo);
    const float* x = input.data().data();
    for (std::size_t p = 0; p < planes; ++p) {
        for (int i = 0; i < ho; ++i) {
            for (int j = 0; j < wo; ++j) {
                out[(p * ho + i) * wo + j] = x[(p * v.h + i / 2) * v.w + j / 2];
            }
        }
    }
    return Tensor::make_result(nchw_shape(v, v.c, ho, wo), std::move(out), {input},
                               [v, planes, ho, wo](detail::Node& self) {
        float* g = parent_grad(self, 0);
        if (!g) return;
        for (std::size_t p = 0; p < planes; ++p) {
            for (int i = 0; i < ho; ++i) {
                for (int j = 0; j < wo; ++j) {
                    g[(p * v.h + i / 2) * v.w + j / 2] += self.grad[(p * ho + i) * wo + j];
                }
            }
        }
    });
}

Tensor avgpool2x(const Tensor& input) {
    const Nchw v = as_nchw(input, "avgpool2x");
    if (v.h % 2 != 0 || v.w % 2 != 0) {
        throw DimensionError("avgpool2x: spatial dimensions must be even, got " + shape_str(input.shape()));
    }
    const int ho = v.h / 2, wo = v.w / 2;
    const std::size_t planes = static_cast<std::size_t>(v.b) * v.c;
    std::vector<float> out(planes * ho * wo);
    const float* x = input.data().data();
    for (std::size_t p = 0; p < planes; ++p) {
        for (int i = 0; i < ho; ++i) {
            for (int j = 0; j < wo; ++j) {
                const float* r0 = x + (p * v.h + 2 * i) * v.w + 2 * j;
                const float* r1 = r0 + v.w;
                out[(p * ho + i) * wo + j] = 0.25f * (r0[0] + r0[1] + r1[0] + r1[1]);
            }
        }
    }
    return Tensor::make_result(nchw_shape(v, v.c, ho, wo), std::move(out), {input},
                               [v, planes, ho, wo](detail::Node& self) {
        float* g = parent_grad(self, 0);
        if (!g) return;
        for (std::size_t p = 0; p < planes; ++p) {
            for (int i = 0; i < ho; ++i) {
                for (int j = 0; j < wo; ++j) {
                    const float d = 0.25f * self.grad[(p * ho + i) * wo + j];
                    float* r0 = g + (p * v.h + 2 * i) * v.w + 2 * j;
                    float* r1 = r0 + v.w;
                    r0[0] += d;
                    r0[1] += d;
                    r1[0] += d;
                    r1[1] += d;
                }
            }
        }
    });
}

Tensor activation(const Tensor& input, Activation kind) {
    std::vector<float> out(input.numel());
    const float* x = input.data().data();
    if (kind == Activation::relu) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] > 0.0f ? x[i] : 0.0f;
    } else {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] / (1.0f + std::exp(-x[i]));
    }
    return Tensor::make_result(input.shape(), std::move(out), {input}, [kind](detail::Node& self) {
        float* g = parent_grad(self, 0);
        if (!g) return;
        const float* x = parent_data(self, 0);
        if (kind == Activation::relu) {
            for (std::size_t i = 0; i < self.grad.size(); ++i) {
                if (x[i] > 0.0f) g[i] += self.grad[i];
            }
        } else {
            for (std::size_t i = 0; i < self.grad.size(); ++i) {
                const float s = 1.0f / (1.0f + std::exp(-x[i]));
                g[i] += self.grad[i] * s * (1.0f + x[i] * (1.0f - s));
            }
        }
    });
}

Tensor group_norm(const Tensor& x, int groups, const Tensor& gamma, const Tensor& beta, float eps) {
    if (x.rank() != 4) throw DimensionError("group_norm: expected [b,c,h,w], got " + shape_str(x.shape()));
    const int b = x.dim(0), c = x.dim(1);
    if (groups < 1 || c % groups != 0) {
        throw DimensionError("group_norm: " + std::to_string(c) + " channels not divisible into " +
                             std::to_string(groups) + " groups");
    }
    if (gamma.numel() != static_cast<std::size_t>(c) || beta.numel() != static_cast<std::size_t>(c)) {
        throw DimensionError("group_norm: affine parameters must have one entry per channel");
    }
    const std::size_t hw = static_cast<std::size_t>(x.dim(2)) * x.dim(3);
    const int cpg = c / groups;
    const std::size_t group_size = cpg * hw;

    auto xhat = std::make_shared<std::vector<float>>(x.numel());
    auto rstd = std::make_shared<std::vector<float>>(static_cast<std::size_t>(b) * groups);
    std::vector<float> out(x.numel());
    const float* xv = x.data().data();
    for (int n = 0; n < b; ++n) {
        for (int gi = 0; gi < groups; ++gi) {
            const std::size_t base = (static_cast<std::size_t>(n) * c + gi * cpg) * hw;
            double s = 0.0, s2 = 0.0;
            for (std::size_t i = 0; i < group_size; ++i) s += xv[base + i];
            const double mu = s / group_size;
            for (std::size_t i = 0; i < group_size; ++i) {
                const double d = xv[base + i] - mu;
                s2 += d * d;
            }
            const double r = 1.0 / std::sqrt(s2 / group_size + eps);
            (*rstd)[static_cast<std::size_t>(n) * groups + gi] = static_cast<float>(r);
            for (int cc = 0; cc < cpg; ++cc) {
                const int ch = gi * cpg + cc;
                const float ga = gamma.data()[ch], be = beta.data()[ch];
                for (std::size_t i = 0; i < hw; ++i) {
                    const std::size_t idx = base + cc * hw + i;
                    const auto xh = static_cast<float>((xv[idx] - mu) * r);
                    (*xhat)[idx] = xh;
                    out[idx] = ga * xh + be;
                }
            }
        }
    }
    return Tensor::make_result(x.shape(), std::move(out), {x, gamma, beta},
                               [b, c, groups, cpg, hw, group_size, xhat, rstd](detail::Node& self) {
        const float* dy = self.grad.data();
        const float* ga = parent_data(self, 1);
        float* gg = parent_grad(self, 1);
        float* gb = parent_grad(self, 2);
        if (gg || gb) {
            for (int n = 0; n < b; ++n) {
                for (int ch = 0; ch < c; ++ch) {
                    const std::size_t base = (static_cast<std::size_t>(n) * c + ch) * hw;
                    double sg = 0.0, sb = 0.0;
                    for (std::size_t i = 0; i < hw; ++i) {
                        sg += static_cast<double>(dy[base + i]) * (*xhat)[base + i];
                        sb += dy[base + i];
                    }
                    if (gg) gg[ch] += static_cast<float>(sg);
                    if (gb) gb[ch] += static_cast<float>(sb);
                }
            }
        }
        float* gx = parent_grad(self, 0);
        if (!gx) return;
        for (int n = 0; n < b; ++n) {
            for (int gi = 0; gi < groups; ++gi) {
                const std::size_t base = (static_cast<std::size_t>(n) * c + gi * cpg) * hw;
                double sum_d = 0.0, sum_dx = 0.0;
                for (int cc = 0; cc < cpg; ++cc) {
                    const float gam = ga[gi * cpg + cc];
                    for (std::size_t i = 0; i < hw; ++i) {
                        const std::size_t idx = base + cc * hw + i;
                        const double d = static_cast<double>(dy[idx]) * gam;
                        sum_d += d;
                        sum_dx += d * (*xhat)[idx];
                    }
                }
                const double r = (*rstd)[static_cast<std::size_t>(n) * groups + gi];
                const double inv_n = 1.0 / static_cast<double>(group_size);
                for (int cc = 0; cc < cpg; ++cc) {
                    const float gam = ga[gi * cpg + cc];
                    for (std::size_t i = 0; i < hw; ++i) {
                        const std::size_t idx = base + cc * hw + i;
                        const double d = static_cast<double>(dy[idx]) * gam;
                        gx[idx] += static_cast<float>(r * (d - inv_n * sum_d - (*xhat)[idx] * inv_n * sum_dx));
                    }
                }
            }
        }
    });
}

Tensor concat_channels(const Tensor& a, const Tensor& b) {
    if (a.rank() != 4 || b.rank() != 4 || a.dim(0) != b.dim(0) || a.dim(2) != b.dim(2) || a.dim(3) != b.dim(3)) {
        throw DimensionError("concat_channels: incompatible shapes " + shape_str(a.shape()) + " and " +
                             shape_str(b.shape()));
    }
    const int n = a.dim(0), ca = a.dim(1), cb = b.dim(1);
    const std::size_t hw = static_cast<std::size_t>(a.dim(2)) * a.dim(3);
    const std::size_t sa = ca * hw, sb = cb * hw;
    std::vector<float> out(static_cast<std::size_t>(n) * (sa + sb));
    for (int i = 0; i < n; ++i) {
        std::copy_n(a.data().data() + i * sa, sa, out.data() + i * (sa + sb));
        std::copy_n(b.data().data() + i * sb, sb, out.data() + i * (sa + sb) + sa);
    }
    return Tensor::make_result({n, ca + cb, a.dim(2), a.dim(3)}, std::move(out), {a, b},
                               [n, sa, sb](detail::Node& self) {
        float* ga = parent_grad(self, 0);
        float* gb = parent_grad(self, 1);
        for (int i = 0; i < n; ++i) {
            const float* src = self.grad.data() + i * (sa + sb);
            if (ga) {
                for (std::size_t j = 0; j < sa; ++j) ga[i * sa + j] += src[j];
            }
            if (gb) {
                for (std::size_t j = 0; j < sb; ++j) gb[i * sb + j] += src[sa + j];
            }
        }
    });
}

Tensor reshape(const Tensor& x, Shape shape) {
    if (shape_numel(shape) != x.numel()) {
        throw DimensionError("reshape: cannot view " + shape_str(x.shape()) + " as " + shape_str(shape));
    }
    std::vector<float> out(x.data().begin(), x.data().end());
    return Tensor::make_result(std::move(shape), std::move(out), {x}, [](detail::Node& self) {
        if (float* g = parent_grad(self, 0)) {
            for (std::size_t i = 0; i < self.grad.size(); ++i) g[i] += self.grad[i];
        }
    });
}

Tensor sum(const Tensor& x) {
    double s = 0.0;
    for (float v : x.data()) s += v;
    return Tensor::make_result({1}, {static_cast<float>(s)}, {x}, [](detail::Node& self) {
        if (float* g = parent_grad(self, 0)) {
            const float d = self.grad[0];
            const std::size_t n = self.parents[0]->data.size();
            for (std::size_t i = 0; i < n; ++i) g[i] += d;
        }
    });
}

Tensor mean(const Tensor& x) { return scale(sum(x), 1.0f / static_cast<float>(x.numel())); }

Tensor mse_loss(const Tensor& pred, const Tensor& target) {
    require_same_shape(pred, target, "mse_loss");
    const std::size_t n = pred.numel();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = static_cast<double>(pred.data()[i]) - target.data()[i];
        s += d * d;
    }
    return Tensor::make_result({1}, {static_cast<float>(s / n)}, {pred, target}, [n](detail::Node& self) {
        const float* p = parent_data(self, 0);
        const float* t = parent_data(self, 1);
        const float f = 2.0f * self.grad[0] / static_cast<float>(n);
        float* gp = parent_grad(self, 0);
        float* gt = parent_grad(self, 1);
        for (std::size_t i = 0; i < n; ++i) {
            const float d = f * (p[i] - t[i]);
            if (gp) gp[i] += d;
            if (gt) gt[i] -= d;
        }
    });
}

}  // namespace rmgen::compute
