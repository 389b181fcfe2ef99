#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "agemec/agents/nets.hpp"
#include "agemec/rng.hpp"
#include "agemec/sim/types.hpp"

namespace agemec {

/// Simplex-valued relaxation of the discrete action blocks: what the
/// critics consume during training. Blocks not produced by a role stay
/// empty.
struct SoftActionSet {
    Tensor move_probs;
    Tensor exe_probs;
    Tensor off_probs;
    Tensor bandwidth_probs;
};

inline int argmax_lowest(const Tensor& t) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(t.size()); ++i)
        if (t.data[i] > t.data[best]) best = i;  // strict: ties keep the lowest index
    return best;
}

inline std::vector<int> onehot_vec(int len, int idx) {
    std::vector<int> v(len, 0);
    v[idx] = 1;
    return v;
}

inline EdgeActionSet decode_edge_blocks(const std::vector<Tensor>& blocks, const SimConfig& cfg) {
    EdgeActionSet a;
    a.move_cell = argmax_lowest(blocks[0]);
    a.exe_onehot = onehot_vec(cfg.buf_col_cap, argmax_lowest(blocks[1]));
    a.off_onehot = onehot_vec(cfg.buf_exe_cap, argmax_lowest(blocks[2]));
    return a;
}

/// Forward the edge actor and decode hard one-hot actions by per-block
/// argmax. Returns both views: soft for training, hard for the env.
inline std::pair<SoftActionSet, EdgeActionSet> edge_act(ActorNet& actor, const AgentState& s,
                                                        const SimConfig& cfg) {
    std::vector<Tensor> blocks = actor.forward(s);
    EdgeActionSet hard = decode_edge_blocks(blocks, cfg);
    SoftActionSet soft;
    soft.move_probs = std::move(blocks[0]);
    soft.exe_probs = std::move(blocks[1]);
    soft.off_probs = std::move(blocks[2]);
    return {std::move(soft), std::move(hard)};
}

/// The center action is continuous: the softmax output is used directly
/// as the bandwidth proportion vector.
inline std::pair<SoftActionSet, CenterAction> center_act(ActorNet& actor, const AgentState& s) {
    std::vector<Tensor> blocks = actor.forward(s);
    CenterAction act;
    act.bandwidth_props = blocks[0].data;
    SoftActionSet soft;
    soft.bandwidth_probs = std::move(blocks[0]);
    return {std::move(soft), std::move(act)};
}

inline EdgeActionSet random_edge_action(Rng& rng, const SimConfig& cfg) {
    EdgeActionSet a;
    a.move_cell = std::uniform_int_distribution<int>(0, cfg.r_move * cfg.r_move - 1)(rng);
    a.exe_onehot = onehot_vec(cfg.buf_col_cap,
                              std::uniform_int_distribution<int>(0, cfg.buf_col_cap - 1)(rng));
    a.off_onehot = onehot_vec(cfg.buf_exe_cap,
                              std::uniform_int_distribution<int>(0, cfg.buf_exe_cap - 1)(rng));
    return a;
}

/// Uniform point on the simplex (normalized exponential draws).
inline CenterAction random_center_action(Rng& rng, int n_e) {
    CenterAction a;
    a.bandwidth_props.resize(n_e);
    double sum = 0.0;
    for (double& v : a.bandwidth_props) {
        v = -std::log(1.0 - uniform01(rng));
        sum += v;
    }
    for (double& v : a.bandwidth_props) v /= sum;
    return a;
}

inline EdgeActionSet epsilon_select(Rng& rng, double epsilon, const EdgeActionSet& greedy,
                                    const SimConfig& cfg) {
    if (uniform01(rng) < epsilon) return random_edge_action(rng, cfg);
    return greedy;
}

inline CenterAction epsilon_select(Rng& rng, double epsilon, const CenterAction& greedy) {
    if (uniform01(rng) < epsilon)
        return random_center_action(rng, static_cast<int>(greedy.bandwidth_props.size()));
    return greedy;
}

inline std::vector<Tensor> edge_soft_blocks(const SoftActionSet& s) {
    return {s.move_probs, s.exe_probs, s.off_probs};
}

/// One-hot actions as degenerate simplex points, for storing random
/// actions in replay.
inline std::vector<Tensor> to_soft_blocks(const EdgeActionSet& a, const SimConfig& cfg) {
    Tensor move({cfg.r_move * cfg.r_move});
    move.data[a.move_cell] = 1.0;
    Tensor exe({cfg.buf_col_cap});
    Tensor off({cfg.buf_exe_cap});
    for (int i = 0; i < cfg.buf_col_cap; ++i) exe.data[i] = a.exe_onehot[i];
    for (int i = 0; i < cfg.buf_exe_cap; ++i) off.data[i] = a.off_onehot[i];
    return {std::move(move), std::move(exe), std::move(off)};
}

inline std::vector<Tensor> to_soft_blocks(const CenterAction& a) {
    Tensor bw({static_cast<int>(a.bandwidth_props.size())});
    bw.data = a.bandwidth_props;
    return {std::move(bw)};
}

inline double critic_eval(CriticNet& critic, const AgentState& s,
                          const std::vector<Tensor>& soft_action) {
    return critic.forward(s, soft_action);
}

}  // namespace agemec
