#pragma once

#include <deque>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "agemec/agents/nets.hpp"
#include "agemec/rng.hpp"

namespace agemec {

struct InsufficientData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Experience {
    AgentState state;
    std::vector<Tensor> soft_action;
    std::vector<Tensor> hard_action;  // one-hots / bandwidth as tensors
    double penalty = 0.0;             // raw average age
    AgentState next_state;
};

/// Finite FIFO buffer with half-fresh sampling: every batch contains the
/// newest ceil(B/2) records plus a uniform draw from the rest.
class ExperienceBuffer {
public:
    explicit ExperienceBuffer(int capacity) : capacity_(capacity) {
        if (capacity < 1) throw std::invalid_argument("replay capacity must be >= 1");
    }

    void push(Experience e) {
        ring_.push_back(std::move(e));
        if (static_cast<int>(ring_.size()) > capacity_) ring_.pop_front();
    }

    int size() const { return static_cast<int>(ring_.size()); }
    int capacity() const { return capacity_; }
    const Experience& at(int i) const { return ring_[i]; }

    std::vector<const Experience*> sample(int batch, Rng& rng) const {
        const int n = size();
        if (n < batch)
            throw InsufficientData("replay: have " + std::to_string(n) + " < batch " +
                                   std::to_string(batch));
        int fresh = (batch + 1) / 2;
        int pool = n - fresh;
        if (pool < batch - fresh) {  // top up from the newest region
            fresh = batch - pool;
            pool = n - fresh;
        }
        std::vector<const Experience*> out;
        out.reserve(batch);
        for (int i = n - fresh; i < n; ++i) out.push_back(&ring_[i]);

        const int want = batch - fresh;
        std::vector<int> idx(pool);
        std::iota(idx.begin(), idx.end(), 0);
        for (int i = 0; i < want; ++i) {  // partial Fisher-Yates, no replacement
            const int j = std::uniform_int_distribution<int>(i, pool - 1)(rng);
            std::swap(idx[i], idx[j]);
            out.push_back(&ring_[idx[i]]);
        }
        return out;
    }

private:
    int capacity_;
    std::deque<Experience> ring_;
};

}  // namespace agemec
