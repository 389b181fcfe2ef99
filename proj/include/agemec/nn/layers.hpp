#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "agemec/rng.hpp"
#include "agemec/tensor.hpp"

namespace agemec::nn {

struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MissingCache : std::logic_error {
    using std::logic_error::logic_error;
};

class Layer {
public:
    virtual ~Layer() = default;
    virtual Tensor forward(const Tensor& x) = 0;
    /// Accumulates parameter gradients and returns the input gradient.
    virtual Tensor backward(const Tensor& dy) = 0;
    virtual std::span<double> params() { return {}; }
    virtual std::span<const double> params() const { return {}; }
    virtual std::span<double> grads() { return {}; }
    virtual std::string describe() const = 0;
    virtual std::unique_ptr<Layer> clone() const = 0;

protected:
    void require_cache(bool have) const {
        if (!have) throw MissingCache("backward called without a forward pass");
    }
};

inline double init_range(int fan_in) { return 1.0 / std::sqrt(static_cast<double>(fan_in)); }

class Dense : public Layer {
public:
    Dense(int in_dim, int out_dim, Rng& rng) : in_(in_dim), out_(out_dim) {
        param_.resize(static_cast<std::size_t>(in_) * out_ + out_);
        grad_.assign(param_.size(), 0.0);
        std::uniform_real_distribution<double> d(-init_range(in_), init_range(in_));
        for (auto& p : param_) p = d(rng);
    }

    Tensor forward(const Tensor& x) override {
        if (static_cast<int>(x.size()) != in_)
            throw ShapeError("dense: input size " + std::to_string(x.size()) + " != " +
                             std::to_string(in_));
        cache_in_ = x;
        have_cache_ = true;
        Tensor y({out_});
        for (int o = 0; o < out_; ++o) {
            double s = bias(o);
            const double* w = weight_row(o);
            for (int i = 0; i < in_; ++i) s += w[i] * x.data[i];
            y.data[o] = s;
        }
        return y;
    }

    Tensor backward(const Tensor& dy) override {
        require_cache(have_cache_);
        if (static_cast<int>(dy.size()) != out_) throw ShapeError("dense: bad grad size");
        Tensor dx(cache_in_.shape);
        for (int o = 0; o < out_; ++o) {
            const double g = dy.data[o];
            grad_bias(o) += g;
            double* gw = grad_row(o);
            const double* w = weight_row(o);
            for (int i = 0; i < in_; ++i) {
                gw[i] += g * cache_in_.data[i];
                dx.data[i] += g * w[i];
            }
        }
        return dx;
    }

    std::span<double> params() override { return param_; }
    std::span<const double> params() const override { return param_; }
    std::span<double> grads() override { return grad_; }
    std::string describe() const override {
        return "dense(" + std::to_string(in_) + "," + std::to_string(out_) + ")";
    }
    std::unique_ptr<Layer> clone() const override { return std::make_unique<Dense>(*this); }

private:
    double* weight_row(int o) { return param_.data() + static_cast<std::size_t>(o) * in_; }
    const double* weight_row(int o) const {
        return param_.data() + static_cast<std::size_t>(o) * in_;
    }
    double* grad_row(int o) { return grad_.data() + static_cast<std::size_t>(o) * in_; }
    double& bias(int o) { return param_[static_cast<std::size_t>(in_) * out_ + o]; }
    double bias(int o) const { return param_[static_cast<std::size_t>(in_) * out_ + o]; }
    double& grad_bias(int o) { return grad_[static_cast<std::size_t>(in_) * out_ + o]; }

    int in_, out_;
    std::vector<double> param_, grad_;
    Tensor cache_in_;
    bool have_cache_ = false;
};

/// 3-D convolution over (C,H,W) input, stride 1, zero padding that
/// preserves H and W. Kernel size must be odd.
class Conv2d : public Layer {
public:
    Conv2d(int in_ch, int out_ch, int kernel, Rng& rng)
        : in_ch_(in_ch), out_ch_(out_ch), k_(kernel) {
        if (k_ % 2 == 0) throw std::invalid_argument("conv2d: kernel must be odd");
        const std::size_t wn = static_cast<std::size_t>(out_ch_) * in_ch_ * k_ * k_;
        param_.resize(wn + out_ch_);
        grad_.assign(param_.size(), 0.0);
        std::uniform_real_distribution<double> d(-init_range(in_ch_ * k_ * k_),
                                                 init_range(in_ch_ * k_ * k_));
        for (auto& p : param_) p = d(rng);
    }

    Tensor forward(const Tensor& x) override {
        if (x.shape.size() != 3 || x.shape[0] != in_ch_)
            throw ShapeError("conv2d: expected (" + std::to_string(in_ch_) + ",H,W) input");
        cache_in_ = x;
        have_cache_ = true;
        const int h = x.shape[1], w = x.shape[2], p = k_ / 2;
        Tensor y({out_ch_, h, w});
        for (int oc = 0; oc < out_ch_; ++oc) {
            const double b = param_[weight_count() + oc];
            for (int i = 0; i < h; ++i)
                for (int j = 0; j < w; ++j) {
                    double s = b;
                    for (int c = 0; c < in_ch_; ++c)
                        for (int u = 0; u < k_; ++u) {
                            const int ii = i + u - p;
                            if (ii < 0 || ii >= h) continue;
                            for (int v = 0; v < k_; ++v) {
                                const int jj = j + v - p;
                                if (jj < 0 || jj >= w) continue;
                                s += wt(oc, c, u, v) * x.data[(c * h + ii) * w + jj];
                            }
                        }
                    y.data[(oc * h + i) * w + j] = s;
                }
        }
        return y;
    }

    Tensor backward(const Tensor& dy) override {
        require_cache(have_cache_);
        const int h = cache_in_.shape[1], w = cache_in_.shape[2], p = k_ / 2;
        if (dy.shape != std::vector<int>{out_ch_, h, w}) throw ShapeError("conv2d: bad grad shape");
        Tensor dx(cache_in_.shape);
        for (int oc = 0; oc < out_ch_; ++oc)
            for (int i = 0; i < h; ++i)
                for (int j = 0; j < w; ++j) {
                    const double g = dy.data[(oc * h + i) * w + j];
                    if (g == 0.0) continue;
                    grad_[weight_count() + oc] += g;
                    for (int c = 0; c < in_ch_; ++c)
                        for (int u = 0; u < k_; ++u) {
                            const int ii = i + u - p;
                            if (ii < 0 || ii >= h) continue;
                            for (int v = 0; v < k_; ++v) {
                                const int jj = j + v - p;
                                if (jj < 0 || jj >= w) continue;
                                gwt(oc, c, u, v) += g * cache_in_.data[(c * h + ii) * w + jj];
                                dx.data[(c * h + ii) * w + jj] += g * wt(oc, c, u, v);
                            }
                        }
                }
        return dx;
    }

    std::span<double> params() override { return param_; }
    std::span<const double> params() const override { return param_; }
    std::span<double> grads() override { return grad_; }
    std::string describe() const override {
        return "conv2d(" + std::to_string(in_ch_) + "," + std::to_string(out_ch_) + ",k" +
               std::to_string(k_) + ")";
    }
    std::unique_ptr<Layer> clone() const override { return std::make_unique<Conv2d>(*this); }

private:
    std::size_t weight_count() const {
        return static_cast<std::size_t>(out_ch_) * in_ch_ * k_ * k_;
    }
    double& wt(int oc, int c, int u, int v) {
        return param_[((static_cast<std::size_t>(oc) * in_ch_ + c) * k_ + u) * k_ + v];
    }
    double wt(int oc, int c, int u, int v) const {
        return param_[((static_cast<std::size_t>(oc) * in_ch_ + c) * k_ + u) * k_ + v];
    }
    double& gwt(int oc, int c, int u, int v) {
        return grad_[((static_cast<std::size_t>(oc) * in_ch_ + c) * k_ + u) * k_ + v];
    }

    int in_ch_, out_ch_, k_;
    std::vector<double> param_, grad_;
    Tensor cache_in_;
    bool have_cache_ = false;
};

/// Adaptive average pooling of (C,H,W) to a fixed output grid; optionally
/// averages across channels as well, producing (1,out_h,out_w).
class AvgPool : public Layer {
public:
    AvgPool(int out_h, int out_w, bool collapse_channels = false)
        : out_h_(out_h), out_w_(out_w), collapse_(collapse_channels) {}

    Tensor forward(const Tensor& x) override {
        if (x.shape.size() != 3) throw ShapeError("avgpool: expected (C,H,W) input");
        const int c = x.shape[0], h = x.shape[1], w = x.shape[2];
        if (out_h_ > h || out_w_ > w) throw ShapeError("avgpool: output larger than input");
        cache_shape_ = x.shape;
        have_cache_ = true;
        const int oc = collapse_ ? 1 : c;
        Tensor y({oc, out_h_, out_w_});
        for (int i = 0; i < out_h_; ++i) {
            const auto [r0, r1] = region(i, h, out_h_);
            for (int j = 0; j < out_w_; ++j) {
                const auto [c0, c1] = region(j, w, out_w_);
                if (collapse_) {
                    double s = 0.0;
                    for (int ch = 0; ch < c; ++ch)
                        for (int ii = r0; ii < r1; ++ii)
                            for (int jj = c0; jj < c1; ++jj) s += x.data[(ch * h + ii) * w + jj];
                    y.data[i * out_w_ + j] = s / ((r1 - r0) * (c1 - c0) * c);
                } else {
                    for (int ch = 0; ch < c; ++ch) {
                        double s = 0.0;
                        for (int ii = r0; ii < r1; ++ii)
                            for (int jj = c0; jj < c1; ++jj) s += x.data[(ch * h + ii) * w + jj];
                        y.data[(ch * out_h_ + i) * out_w_ + j] = s / ((r1 - r0) * (c1 - c0));
                    }
                }
            }
        }
        return y;
    }

    Tensor backward(const Tensor& dy) override {
        require_cache(have_cache_);
        const int c = cache_shape_[0], h = cache_shape_[1], w = cache_shape_[2];
        Tensor dx(cache_shape_);
        for (int i = 0; i < out_h_; ++i) {
            const auto [r0, r1] = region(i, h, out_h_);
            for (int j = 0; j < out_w_; ++j) {
                const auto [c0, c1] = region(j, w, out_w_);
                const double denom = static_cast<double>(r1 - r0) * (c1 - c0);
                for (int ch = 0; ch < c; ++ch) {
                    const double g = collapse_ ? dy.data[i * out_w_ + j] / (denom * c)
                                               : dy.data[(ch * out_h_ + i) * out_w_ + j] / denom;
                    for (int ii = r0; ii < r1; ++ii)
                        for (int jj = c0; jj < c1; ++jj) dx.data[(ch * h + ii) * w + jj] += g;
                }
            }
        }
        return dx;
    }

    std::string describe() const override {
        return "avgpool(" + std::to_string(out_h_) + "," + std::to_string(out_w_) +
               (collapse_ ? ",collapse)" : ")");
    }
    std::unique_ptr<Layer> clone() const override { return std::make_unique<AvgPool>(*this); }

private:
    static std::pair<int, int> region(int i, int n, int out) {
        return {(i * n) / out, ((i + 1) * n + out - 1) / out};
    }

    int out_h_, out_w_;
    bool collapse_;
    std::vector<int> cache_shape_;
    bool have_cache_ = false;
};

class ReLU : public Layer {
public:
    Tensor forward(const Tensor& x) override {
        cache_in_ = x;
        have_cache_ = true;
        Tensor y = x;
        for (auto& v : y.data) v = std::max(0.0, v);
        return y;
    }
    Tensor backward(const Tensor& dy) override {
        require_cache(have_cache_);
        Tensor dx = dy;
        for (std::size_t i = 0; i < dx.size(); ++i)
            if (cache_in_.data[i] <= 0.0) dx.data[i] = 0.0;
        return dx;
    }
    std::string describe() const override { return "relu"; }
    std::unique_ptr<Layer> clone() const override { return std::make_unique<ReLU>(*this); }

private:
    Tensor cache_in_;
    bool have_cache_ = false;
};

/// Softmax over the whole tensor, computed with max subtraction.
class Softmax : public Layer {
public:
    Tensor forward(const Tensor& x) override {
        Tensor y = x;
        const double mx = *std::max_element(x.data.begin(), x.data.end());
        double sum = 0.0;
        for (auto& v : y.data) {
            v = std::exp(v - mx);
            sum += v;
        }
        for (auto& v : y.data) v /= sum;
        cache_out_ = y;
        have_cache_ = true;
        return y;
    }
    Tensor backward(const Tensor& dy) override {
        require_cache(have_cache_);
        double inner = 0.0;
        for (std::size_t i = 0; i < dy.size(); ++i) inner += dy.data[i] * cache_out_.data[i];
        Tensor dx = dy;
        for (std::size_t i = 0; i < dx.size(); ++i)
            dx.data[i] = cache_out_.data[i] * (dy.data[i] - inner);
        return dx;
    }
    std::string describe() const override { return "softmax"; }
    std::unique_ptr<Layer> clone() const override { return std::make_unique<Softmax>(*this); }

private:
    Tensor cache_out_;
    bool have_cache_ = false;
};

}  // namespace agemec::nn
