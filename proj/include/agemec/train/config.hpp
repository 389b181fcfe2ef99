#pragma once

#include <cstdint>
#include <string>

#include "agemec/sim/config.hpp"

namespace agemec {

struct ArchConfig {
    int conv_channels = 4;
    int conv_kernel = 3;
    int hidden = 64;
    int centralized_hidden = 128;
};

struct TrainConfig {
    double gamma = 0.85;         // penalty decay
    double tau = 0.8;            // target mixing weight (1 keeps targets)
    double epsilon = 0.2;        // random exploration probability
    int target_period = 8;       // T_u
    int fed_period = 8;          // E_f
    double fed_weight = 0.5;     // omega, in [1/N_e, 1]
    double lr_actor = 1e-3;
    double lr_critic = 2e-3;
    int batch = 128;
    int max_epochs = 3000;
    double penalty_scale = 100.0;  // critics regress avg_age / penalty_scale
    std::uint64_t seed = 1;
    int replay_capacity = 4096;
    int checkpoint_period = 0;  // additionally checkpoint every N epochs; 0 = final only
    ArchConfig arch;
};

inline void validate(const TrainConfig& c, const SimConfig& sim) {
    auto fail = [](const std::string& field, const std::string& why) {
        throw ConfigError("train." + field + ": " + why);
    };
    if (c.gamma < 0 || c.gamma > 1) fail("gamma", "must be in [0,1]");
    if (c.tau < 0 || c.tau > 1) fail("tau", "must be in [0,1]");
    if (c.epsilon < 0 || c.epsilon > 1) fail("epsilon", "must be in [0,1]");
    if (c.target_period < 1) fail("target_period", "must be >= 1");
    if (c.fed_period < 1) fail("fed_period", "must be >= 1");
    const double floor = 1.0 / sim.num_edges;
    if (c.fed_weight < floor - 1e-12 || c.fed_weight > 1.0)
        fail("fed_weight", "must be in [1/num_edges, 1]");
    if (c.lr_actor <= 0) fail("lr_actor", "must be > 0");
    if (c.lr_critic <= 0) fail("lr_critic", "must be > 0");
    if (c.batch < 1) fail("batch", "must be >= 1");
    if (c.max_epochs < 1) fail("max_epochs", "must be >= 1");
    if (c.penalty_scale <= 0) fail("penalty_scale", "must be > 0");
    if (c.replay_capacity < c.batch) fail("replay_capacity", "must be >= batch");
    if (c.checkpoint_period < 0) fail("checkpoint_period", "must be >= 0");
    if (c.arch.conv_channels < 1) fail("arch.conv_channels", "must be >= 1");
    if (c.arch.conv_kernel < 1 || c.arch.conv_kernel % 2 == 0)
        fail("arch.conv_kernel", "must be odd and >= 1");
    if (c.arch.hidden < 1) fail("arch.hidden", "must be >= 1");
    if (c.arch.centralized_hidden < 1) fail("arch.centralized_hidden", "must be >= 1");
}

}  // namespace agemec
