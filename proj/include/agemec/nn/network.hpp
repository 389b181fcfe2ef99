#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "agemec/nn/layers.hpp"
#include "agemec/tensor.hpp"

namespace agemec::nn {

/// Flat, ordered view of all parameters of a network; the unit of
/// federated averaging, target mixing and checkpointing.
using ParamVector = std::vector<double>;

class Network {
public:
    Network() = default;
    Network(Network&&) = default;
    Network& operator=(Network&&) = default;
    Network(const Network& o) {
        layers_.reserve(o.layers_.size());
        for (const auto& l : o.layers_) layers_.push_back(l->clone());
    }
    Network& operator=(const Network& o) {
        if (this != &o) {
            Network tmp(o);
            layers_ = std::move(tmp.layers_);
        }
        return *this;
    }

    Network& add(std::unique_ptr<Layer> layer) {
        layers_.push_back(std::move(layer));
        return *this;
    }

    Tensor forward(const Tensor& x) {
        Tensor t = x;
        for (auto& l : layers_) t = l->forward(t);
        return t;
    }

    Tensor backward(const Tensor& dy) {
        Tensor g = dy;
        for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) g = (*it)->backward(g);
        return g;
    }

    void sgd_step(double lr) {
        for (auto& l : layers_) {
            auto p = l->params();
            auto g = l->grads();
            for (std::size_t i = 0; i < p.size(); ++i) {
                p[i] -= lr * g[i];
                g[i] = 0.0;
            }
        }
    }

    void zero_grads() {
        for (auto& l : layers_)
            for (auto& g : l->grads()) g = 0.0;
    }

    std::size_t param_count() const {
        std::size_t n = 0;
        for (const auto& l : layers_) n += l->params().size();
        return n;
    }

    void export_params(ParamVector& out) const {
        for (const auto& l : layers_) {
            auto p = l->params();
            out.insert(out.end(), p.begin(), p.end());
        }
    }

    /// Consumes values from `v` starting at `offset`; returns the new offset.
    std::size_t import_params(const ParamVector& v, std::size_t offset) {
        for (auto& l : layers_) {
            auto p = l->params();
            if (offset + p.size() > v.size())
                throw std::invalid_argument("import_params: vector too short");
            for (std::size_t i = 0; i < p.size(); ++i) p[i] = v[offset + i];
            offset += p.size();
        }
        return offset;
    }

    void export_grads(ParamVector& out) {
        for (auto& l : layers_) {
            auto g = l->grads();
            out.insert(out.end(), g.begin(), g.end());
        }
    }

    double grad_norm_sq() {
        double s = 0.0;
        for (auto& l : layers_)
            for (double g : l->grads()) s += g * g;
        return s;
    }

    std::string describe() const {
        std::string s;
        for (const auto& l : layers_) {
            if (!s.empty()) s += "|";
            s += l->describe();
        }
        return s;
    }

    bool empty() const { return layers_.empty(); }

private:
    std::vector<std::unique_ptr<Layer>> layers_;
};

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace agemec::nn
