#pragma once

#include <memory>
#include <string>
#include <vector>

#include "agemec/nn/network.hpp"
#include "agemec/sim/types.hpp"
#include "agemec/train/config.hpp"

namespace agemec {

/// Agent-local input: an ordered list of tensors (observation map,
/// feature vectors) produced by the Encoder.
using AgentState = std::vector<Tensor>;

/// Policy network: maps a state to simplex-valued action blocks.
class ActorNet {
public:
    virtual ~ActorNet() = default;
    virtual std::vector<Tensor> forward(const AgentState& s) = 0;
    virtual void backward(const std::vector<Tensor>& dblocks) = 0;
    virtual void sgd_step(double lr) = 0;
    virtual void zero_grads() = 0;
    virtual double grad_norm_sq() = 0;
    virtual nn::ParamVector export_params() const = 0;
    virtual void import_params(const nn::ParamVector& v) = 0;
    virtual std::size_t param_count() const = 0;
    virtual std::string describe() const = 0;
    virtual std::unique_ptr<ActorNet> clone() const = 0;
};

/// Value network: scores a (state, soft action) pair. backward() returns
/// the gradient with respect to the action blocks so actor updates can
/// flow through the critic.
class CriticNet {
public:
    virtual ~CriticNet() = default;
    virtual double forward(const AgentState& s, const std::vector<Tensor>& action) = 0;
    virtual std::vector<Tensor> backward(double dq) = 0;
    virtual void sgd_step(double lr) = 0;
    virtual void zero_grads() = 0;
    virtual nn::ParamVector export_params() const = 0;
    virtual void import_params(const nn::ParamVector& v) = 0;
    virtual std::size_t param_count() const = 0;
    virtual std::string describe() const = 0;
    virtual std::unique_ptr<CriticNet> clone() const = 0;
};

namespace detail {

inline nn::ParamVector export_group(const std::vector<const nn::Network*>& nets) {
    nn::ParamVector v;
    for (const auto* n : nets) n->export_params(v);
    return v;
}

inline void import_group(const std::vector<nn::Network*>& nets, const nn::ParamVector& v) {
    std::size_t off = 0;
    for (auto* n : nets) off = n->import_params(v, off);
    if (off != v.size()) throw std::invalid_argument("import: parameter vector too long");
}

inline void step_group(const std::vector<nn::Network*>& nets, double lr) {
    for (auto* n : nets) n->sgd_step(lr);
}

inline void zero_group(const std::vector<nn::Network*>& nets) {
    for (auto* n : nets) n->zero_grads();
}

inline double gns_group(const std::vector<nn::Network*>& nets) {
    double s = 0.0;
    for (auto* n : nets) s += n->grad_norm_sq();
    return s;
}

inline std::size_t count_group(const std::vector<const nn::Network*>& nets) {
    std::size_t s = 0;
    for (const auto* n : nets) s += n->param_count();
    return s;
}

inline std::string describe_group(const std::vector<const nn::Network*>& nets) {
    std::string s;
    for (const auto* n : nets) {
        if (!s.empty()) s += "+";
        s += n->describe();
    }
    return s;
}

inline Tensor concat(const std::vector<const Tensor*>& parts) {
    std::size_t total = 0;
    for (const auto* p : parts) total += p->size();
    Tensor out({static_cast<int>(total)});
    std::size_t off = 0;
    for (const auto* p : parts) {
        std::copy(p->data.begin(), p->data.end(), out.data.begin() + off);
        off += p->size();
    }
    return out;
}

inline Tensor slice(const Tensor& t, std::size_t off, std::vector<int> shape) {
    Tensor out(std::move(shape));
    std::copy(t.data.begin() + off, t.data.begin() + off + out.size(), out.data.begin());
    return out;
}

}  // namespace detail

/// Scales raw observations into O(1) network inputs and fixes the state
/// layout for every agent role.
struct Encoder {
    SimConfig sim;
    double bits_scale = 1000.0;
    double age_scale = 100.0;

    Encoder() = default;
    Encoder(const SimConfig& s, double penalty_scale)
        : sim(s), bits_scale(s.lambda_bits), age_scale(penalty_scale) {}

    int edge_feat_dim() const { return 3 * (sim.buf_col_cap + sim.buf_exe_cap) + 1; }
    int center_dim() const {
        return sim.num_edges * (5 + sim.buf_col_cap + sim.buf_exe_cap);
    }
    int global_feat_dim() const { return sim.num_edges * (edge_feat_dim() + 2); }

    AgentState edge_state(const EdgeObservation& o) const {
        Tensor map = o.obs_map;
        const int cells = sim.r_obs * sim.r_obs;
        for (int i = 0; i < cells; ++i) map.data[i] /= bits_scale;
        for (int i = cells; i < 2 * cells; ++i) map.data[i] /= age_scale;

        Tensor feat({edge_feat_dim()});
        std::size_t k = 0;
        auto emit_pieces = [&](const std::vector<PieceFeature>& pieces) {
            for (const auto& p : pieces) {
                feat.data[k++] = p.remaining_bits / bits_scale;
                feat.data[k++] = p.age / age_scale;
                feat.data[k++] = p.source_idx / static_cast<double>(sim.num_sources);
            }
        };
        emit_pieces(o.col_state);
        emit_pieces(o.exe_state);
        feat.data[k++] = o.alloc_bandwidth;
        return {std::move(map), std::move(feat)};
    }

    AgentState center_state(const CenterObservation& o) const {
        Tensor v({center_dim()});
        std::size_t k = 0;
        for (const auto& e : o.edges) {
            v.data[k++] = static_cast<double>(e.position.x) / sim.map_width;
            v.data[k++] = static_cast<double>(e.position.y) / sim.map_height;
            v.data[k++] = static_cast<double>(e.col_count) / sim.buf_col_cap;
            v.data[k++] = static_cast<double>(e.exe_count) / sim.buf_exe_cap;
            for (double a : e.col_ages) v.data[k++] = a / age_scale;
            for (double a : e.exe_ages) v.data[k++] = a / age_scale;
            v.data[k++] = e.last_bandwidth;
        }
        return {std::move(v)};
    }

    /// Concatenated global state for the centralized baseline: every edge
    /// observation map plus one flat feature vector.
    AgentState global_state(const ObservationBundle& b) const {
        AgentState s;
        Tensor gfeat({global_feat_dim()});
        std::size_t k = 0;
        for (const auto& eo : b.edges) {
            AgentState es = edge_state(eo);
            s.push_back(std::move(es[0]));
            for (double v : es[1].data) gfeat.data[k++] = v;
            gfeat.data[k++] = static_cast<double>(eo.position.x) / sim.map_width;
            gfeat.data[k++] = static_cast<double>(eo.position.y) / sim.map_height;
        }
        s.push_back(std::move(gfeat));
        return s;
    }
};

namespace detail {

inline nn::Network make_conv_trunk(const SimConfig& sim, const ArchConfig& arch, Rng& rng,
                                   bool with_softmax) {
    nn::Network n;
    n.add(std::make_unique<nn::Conv2d>(2, arch.conv_channels, arch.conv_kernel, rng))
        .add(std::make_unique<nn::ReLU>())
        .add(std::make_unique<nn::AvgPool>(sim.r_move, sim.r_move, true));
    if (with_softmax) n.add(std::make_unique<nn::Softmax>());
    return n;
}

}  // namespace detail

/// Edge policy: a CNN branch pools the observation map down to the
/// movement score map; an MLP branch drives the execution and offload
/// heads. Output blocks: [move, exe, off].
class EdgeActorNet final : public ActorNet {
public:
    EdgeActorNet(const SimConfig& sim, const ArchConfig& arch, const Encoder& enc, Rng& rng)
        : b_col_(sim.buf_col_cap), b_exe_(sim.buf_exe_cap) {
        cnn_ = detail::make_conv_trunk(sim, arch, rng, true);
        trunk_.add(std::make_unique<nn::Dense>(enc.edge_feat_dim(), arch.hidden, rng))
            .add(std::make_unique<nn::ReLU>());
        exe_head_.add(std::make_unique<nn::Dense>(arch.hidden, b_col_, rng))
            .add(std::make_unique<nn::Softmax>());
        off_head_.add(std::make_unique<nn::Dense>(arch.hidden, b_exe_, rng))
            .add(std::make_unique<nn::Softmax>());
    }

    std::vector<Tensor> forward(const AgentState& s) override {
        if (s.size() != 2) throw nn::ShapeError("edge actor: expected [map, features]");
        Tensor move = cnn_.forward(s[0]);
        Tensor h = trunk_.forward(s[1]);
        return {std::move(move), exe_head_.forward(h), off_head_.forward(h)};
    }

    void backward(const std::vector<Tensor>& d) override {
        if (d.size() != 3) throw nn::ShapeError("edge actor: expected 3 block grads");
        cnn_.backward(d[0]);
        Tensor dh = exe_head_.backward(d[1]);
        Tensor dh2 = off_head_.backward(d[2]);
        for (std::size_t i = 0; i < dh.size(); ++i) dh.data[i] += dh2.data[i];
        trunk_.backward(dh);
    }

    void sgd_step(double lr) override { detail::step_group(nets(), lr); }
    void zero_grads() override { detail::zero_group(nets()); }
    double grad_norm_sq() override { return detail::gns_group(nets()); }
    nn::ParamVector export_params() const override { return detail::export_group(cnets()); }
    void import_params(const nn::ParamVector& v) override { detail::import_group(nets(), v); }
    std::size_t param_count() const override { return detail::count_group(cnets()); }
    std::string describe() const override { return "edge-actor{" + detail::describe_group(cnets()) + "}"; }
    std::unique_ptr<ActorNet> clone() const override {
        return std::make_unique<EdgeActorNet>(*this);
    }

private:
    std::vector<nn::Network*> nets() { return {&cnn_, &trunk_, &exe_head_, &off_head_}; }
    std::vector<const nn::Network*> cnets() const {
        return {&cnn_, &trunk_, &exe_head_, &off_head_};
    }

    int b_col_, b_exe_;
    nn::Network cnn_, trunk_, exe_head_, off_head_;
};

/// Edge critic: the actor's feature trunks with the soft action blocks
/// appended, ending in one linear Q output.
class EdgeCriticNet final : public CriticNet {
public:
    EdgeCriticNet(const SimConfig& sim, const ArchConfig& arch, const Encoder& enc, Rng& rng)
        : move_dim_(sim.r_move * sim.r_move),
          hidden_(arch.hidden),
          b_col_(sim.buf_col_cap),
          b_exe_(sim.buf_exe_cap) {
        cnn_ = detail::make_conv_trunk(sim, arch, rng, false);
        trunk_.add(std::make_unique<nn::Dense>(enc.edge_feat_dim(), arch.hidden, rng))
            .add(std::make_unique<nn::ReLU>());
        const int comb_in = move_dim_ + hidden_ + move_dim_ + b_col_ + b_exe_;
        combiner_.add(std::make_unique<nn::Dense>(comb_in, arch.hidden, rng))
            .add(std::make_unique<nn::ReLU>())
            .add(std::make_unique<nn::Dense>(arch.hidden, 1, rng));
    }

    double forward(const AgentState& s, const std::vector<Tensor>& action) override {
        if (s.size() != 2 || action.size() != 3)
            throw nn::ShapeError("edge critic: expected [map, features] and 3 action blocks");
        Tensor pooled = cnn_.forward(s[0]);
        Tensor h = trunk_.forward(s[1]);
        Tensor in = detail::concat({&pooled, &h, &action[0], &action[1], &action[2]});
        return combiner_.forward(in).data[0];
    }

    std::vector<Tensor> backward(double dq) override {
        Tensor din = combiner_.backward(Tensor({1}, {dq}));
        std::size_t off = 0;
        Tensor dpool = detail::slice(din, off, {1, static_cast<int>(std::sqrt(move_dim_)),
                                                static_cast<int>(std::sqrt(move_dim_))});
        off += move_dim_;
        Tensor dh = detail::slice(din, off, {hidden_});
        off += hidden_;
        Tensor dmove = detail::slice(din, off, {move_dim_});
        off += move_dim_;
        Tensor dexe = detail::slice(din, off, {b_col_});
        off += b_col_;
        Tensor doff = detail::slice(din, off, {b_exe_});
        cnn_.backward(dpool);
        trunk_.backward(dh);
        return {std::move(dmove), std::move(dexe), std::move(doff)};
    }

    void sgd_step(double lr) override { detail::step_group(nets(), lr); }
    void zero_grads() override { detail::zero_group(nets()); }
    nn::ParamVector export_params() const override { return detail::export_group(cnets()); }
    void import_params(const nn::ParamVector& v) override { detail::import_group(nets(), v); }
    std::size_t param_count() const override { return detail::count_group(cnets()); }
    std::string describe() const override {
        return "edge-critic{" + detail::describe_group(cnets()) + "}";
    }
    std::unique_ptr<CriticNet> clone() const override {
        return std::make_unique<EdgeCriticNet>(*this);
    }

private:
    std::vector<nn::Network*> nets() { return {&cnn_, &trunk_, &combiner_}; }
    std::vector<const nn::Network*> cnets() const { return {&cnn_, &trunk_, &combiner_}; }

    int move_dim_, hidden_, b_col_, b_exe_;
    nn::Network cnn_, trunk_, combiner_;
};

/// Center policy: MLP over the concatenated edge summaries, softmax head
/// producing the one-sum bandwidth vector. Output blocks: [bandwidth].
class CenterActorNet final : public ActorNet {
public:
    CenterActorNet(const SimConfig& sim, const ArchConfig& arch, const Encoder& enc, Rng& rng) {
        net_.add(std::make_unique<nn::Dense>(enc.center_dim(), arch.hidden, rng))
            .add(std::make_unique<nn::ReLU>())
            .add(std::make_unique<nn::Dense>(arch.hidden, sim.num_edges, rng))
            .add(std::make_unique<nn::Softmax>());
    }

    std::vector<Tensor> forward(const AgentState& s) override {
        if (s.size() != 1) throw nn::ShapeError("center actor: expected one state tensor");
        return {net_.forward(s[0])};
    }
    void backward(const std::vector<Tensor>& d) override {
        if (d.size() != 1) throw nn::ShapeError("center actor: expected 1 block grad");
        net_.backward(d[0]);
    }
    void sgd_step(double lr) override { net_.sgd_step(lr); }
    void zero_grads() override { net_.zero_grads(); }
    double grad_norm_sq() override { return net_.grad_norm_sq(); }
    nn::ParamVector export_params() const override {
        nn::ParamVector v;
        net_.export_params(v);
        return v;
    }
    void import_params(const nn::ParamVector& v) override {
        if (net_.import_params(v, 0) != v.size())
            throw std::invalid_argument("import: parameter vector too long");
    }
    std::size_t param_count() const override { return net_.param_count(); }
    std::string describe() const override { return "center-actor{" + net_.describe() + "}"; }
    std::unique_ptr<ActorNet> clone() const override {
        return std::make_unique<CenterActorNet>(*this);
    }

private:
    nn::Network net_;
};

class CenterCriticNet final : public CriticNet {
public:
    CenterCriticNet(const SimConfig& sim, const ArchConfig& arch, const Encoder& enc, Rng& rng)
        : n_e_(sim.num_edges) {
        net_.add(std::make_unique<nn::Dense>(enc.center_dim() + n_e_, arch.hidden, rng))
            .add(std::make_unique<nn::ReLU>())
            .add(std::make_unique<nn::Dense>(arch.hidden, 1, rng));
    }

    double forward(const AgentState& s, const std::vector<Tensor>& action) override {
        if (s.size() != 1 || action.size() != 1)
            throw nn::ShapeError("center critic: expected one state and one action block");
        Tensor in = detail::concat({&s[0], &action[0]});
        state_dim_ = static_cast<int>(s[0].size());
        return net_.forward(in).data[0];
    }
    std::vector<Tensor> backward(double dq) override {
        Tensor din = net_.backward(Tensor({1}, {dq}));
        return {detail::slice(din, state_dim_, {n_e_})};
    }
    void sgd_step(double lr) override { net_.sgd_step(lr); }
    void zero_grads() override { net_.zero_grads(); }
    nn::ParamVector export_params() const override {
        nn::ParamVector v;
        net_.export_params(v);
        return v;
    }
    void import_params(const nn::ParamVector& v) override {
        if (net_.import_params(v, 0) != v.size())
            throw std::invalid_argument("import: parameter vector too long");
    }
    std::size_t param_count() const override { return net_.param_count(); }
    std::string describe() const override { return "center-critic{" + net_.describe() + "}"; }
    std::unique_ptr<CriticNet> clone() const override {
        return std::make_unique<CenterCriticNet>(*this);
    }

private:
    int n_e_;
    int state_dim_ = 0;
    nn::Network net_;
};

/// Centralized baseline policy: per-edge CNN branches into one shared
/// trunk that emits every agent's action blocks jointly.
/// Output blocks: [move_0, exe_0, off_0, ..., move_{Ne-1}, exe_{Ne-1},
/// off_{Ne-1}, bandwidth].
class CentralizedActorNet final : public ActorNet {
public:
    CentralizedActorNet(const SimConfig& sim, const ArchConfig& arch, const Encoder& enc,
                        Rng& rng)
        : n_e_(sim.num_edges), move_dim_(sim.r_move * sim.r_move) {
        for (int k = 0; k < n_e_; ++k)
            branches_.push_back(detail::make_conv_trunk(sim, arch, rng, false));
        const int trunk_in = n_e_ * move_dim_ + enc.global_feat_dim();
        trunk_.add(std::make_unique<nn::Dense>(trunk_in, arch.centralized_hidden, rng))
            .add(std::make_unique<nn::ReLU>());
        for (int k = 0; k < n_e_; ++k) {
            heads_.emplace_back();
            heads_.back()
                .add(std::make_unique<nn::Dense>(arch.centralized_hidden, move_dim_, rng))
                .add(std::make_unique<nn::Softmax>());
            heads_.emplace_back();
            heads_.back()
                .add(std::make_unique<nn::Dense>(arch.centralized_hidden, sim.buf_col_cap, rng))
                .add(std::make_unique<nn::Softmax>());
            heads_.emplace_back();
            heads_.back()
                .add(std::make_unique<nn::Dense>(arch.centralized_hidden, sim.buf_exe_cap, rng))
                .add(std::make_unique<nn::Softmax>());
        }
        heads_.emplace_back();
        heads_.back()
            .add(std::make_unique<nn::Dense>(arch.centralized_hidden, n_e_, rng))
            .add(std::make_unique<nn::Softmax>());
    }

    std::vector<Tensor> forward(const AgentState& s) override {
        if (static_cast<int>(s.size()) != n_e_ + 1)
            throw nn::ShapeError("centralized actor: expected Ne maps + features");
        std::vector<Tensor> pooled;
        pooled.reserve(n_e_);
        for (int k = 0; k < n_e_; ++k) pooled.push_back(branches_[k].forward(s[k]));
        std::vector<const Tensor*> parts;
        for (const auto& p : pooled) parts.push_back(&p);
        parts.push_back(&s[n_e_]);
        Tensor h = trunk_.forward(detail::concat(parts));
        std::vector<Tensor> blocks;
        blocks.reserve(heads_.size());
        for (auto& head : heads_) blocks.push_back(head.forward(h));
        return blocks;
    }

    void backward(const std::vector<Tensor>& d) override {
        if (d.size() != heads_.size())
            throw nn::ShapeError("centralized actor: wrong block-grad count");
        Tensor dh;
        for (std::size_t i = 0; i < heads_.size(); ++i) {
            Tensor g = heads_[i].backward(d[i]);
            if (dh.size() == 0) {
                dh = std::move(g);
            } else {
                for (std::size_t j = 0; j < dh.size(); ++j) dh.data[j] += g.data[j];
            }
        }
        Tensor dcat = trunk_.backward(dh);
        const int m = static_cast<int>(std::sqrt(move_dim_));
        for (int k = 0; k < n_e_; ++k)
            branches_[k].backward(detail::slice(dcat, static_cast<std::size_t>(k) * move_dim_,
                                                {1, m, m}));
    }

    void sgd_step(double lr) override { detail::step_group(nets(), lr); }
    void zero_grads() override { detail::zero_group(nets()); }
    double grad_norm_sq() override { return detail::gns_group(nets()); }
    nn::ParamVector export_params() const override { return detail::export_group(cnets()); }
    void import_params(const nn::ParamVector& v) override { detail::import_group(nets(), v); }
    std::size_t param_count() const override { return detail::count_group(cnets()); }
    std::string describe() const override {
        return "centralized-actor{" + detail::describe_group(cnets()) + "}";
    }
    std::unique_ptr<ActorNet> clone() const override {
        return std::make_unique<CentralizedActorNet>(*this);
    }

private:
    std::vector<nn::Network*> nets() {
        std::vector<nn::Network*> v;
        for (auto& b : branches_) v.push_back(&b);
        v.push_back(&trunk_);
        for (auto& h : heads_) v.push_back(&h);
        return v;
    }
    std::vector<const nn::Network*> cnets() const {
        std::vector<const nn::Network*> v;
        for (const auto& b : branches_) v.push_back(&b);
        v.push_back(&trunk_);
        for (const auto& h : heads_) v.push_back(&h);
        return v;
    }

    int n_e_, move_dim_;
    std::vector<nn::Network> branches_;
    nn::Network trunk_;
    std::vector<nn::Network> heads_;
};

class CentralizedCriticNet final : public CriticNet {
public:
    CentralizedCriticNet(const SimConfig& sim, const ArchConfig& arch, const Encoder& enc,
                         Rng& rng)
        : n_e_(sim.num_edges), move_dim_(sim.r_move * sim.r_move) {
        for (int k = 0; k < n_e_; ++k)
            branches_.push_back(detail::make_conv_trunk(sim, arch, rng, false));
        action_dim_ = n_e_ * (move_dim_ + sim.buf_col_cap + sim.buf_exe_cap) + n_e_;
        block_dims_.clear();
        for (int k = 0; k < n_e_; ++k) {
            block_dims_.push_back(move_dim_);
            block_dims_.push_back(sim.buf_col_cap);
            block_dims_.push_back(sim.buf_exe_cap);
        }
        block_dims_.push_back(n_e_);
        const int in = n_e_ * move_dim_ + enc.global_feat_dim() + action_dim_;
        net_.add(std::make_unique<nn::Dense>(in, arch.centralized_hidden, rng))
            .add(std::make_unique<nn::ReLU>())
            .add(std::make_unique<nn::Dense>(arch.centralized_hidden, 1, rng));
    }

    double forward(const AgentState& s, const std::vector<Tensor>& action) override {
        if (static_cast<int>(s.size()) != n_e_ + 1 || action.size() != block_dims_.size())
            throw nn::ShapeError("centralized critic: bad state/action arity");
        std::vector<Tensor> pooled;
        pooled.reserve(n_e_);
        for (int k = 0; k < n_e_; ++k) pooled.push_back(branches_[k].forward(s[k]));
        std::vector<const Tensor*> parts;
        for (const auto& p : pooled) parts.push_back(&p);
        parts.push_back(&s[n_e_]);
        for (const auto& a : action) parts.push_back(&a);
        gfeat_dim_ = static_cast<int>(s[n_e_].size());
        return net_.forward(detail::concat(parts)).data[0];
    }

    std::vector<Tensor> backward(double dq) override {
        Tensor din = net_.backward(Tensor({1}, {dq}));
        const int m = static_cast<int>(std::sqrt(move_dim_));
        std::size_t off = 0;
        for (int k = 0; k < n_e_; ++k) {
            branches_[k].backward(detail::slice(din, off, {1, m, m}));
            off += move_dim_;
        }
        off += gfeat_dim_;
        std::vector<Tensor> daction;
        daction.reserve(block_dims_.size());
        for (int dim : block_dims_) {
            daction.push_back(detail::slice(din, off, {dim}));
            off += dim;
        }
        return daction;
    }

    void sgd_step(double lr) override { detail::step_group(nets(), lr); }
    void zero_grads() override { detail::zero_group(nets()); }
    nn::ParamVector export_params() const override { return detail::export_group(cnets()); }
    void import_params(const nn::ParamVector& v) override { detail::import_group(nets(), v); }
    std::size_t param_count() const override { return detail::count_group(cnets()); }
    std::string describe() const override {
        return "centralized-critic{" + detail::describe_group(cnets()) + "}";
    }
    std::unique_ptr<CriticNet> clone() const override {
        return std::make_unique<CentralizedCriticNet>(*this);
    }

private:
    std::vector<nn::Network*> nets() {
        std::vector<nn::Network*> v;
        for (auto& b : branches_) v.push_back(&b);
        v.push_back(&net_);
        return v;
    }
    std::vector<const nn::Network*> cnets() const {
        std::vector<const nn::Network*> v;
        for (const auto& b : branches_) v.push_back(&b);
        v.push_back(&net_);
        return v;
    }

    int n_e_, move_dim_, action_dim_;
    int gfeat_dim_ = 0;
    std::vector<int> block_dims_;
    std::vector<nn::Network> branches_;
    nn::Network net_;
};

}  // namespace agemec
