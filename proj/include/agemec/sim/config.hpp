#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace agemec {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Simulation parameters. Distances for the channel equations are in
/// meters (grid cells scaled by cell_size_m); everything else lives in
/// abstract grid/slot/bit units.
struct SimConfig {
    // map / population
    int map_width = 100;
    int map_height = 100;
    int num_sources = 12;
    int num_edges = 4;
    double slot_duration = 1.0;
    std::uint64_t seed = 1;

    // sources
    double lambda_bits = 1000.0;  // mean bits per arrival
    double p_gen = 0.3;           // arrival probability per slot

    // edges
    int r_move = 5;
    int r_obs = 13;      // observation box side, in cells
    int r_collect = 9;   // collection radius, in cells
    double height_m = 100.0;
    int buf_col_cap = 5;
    int buf_exe_cap = 5;
    double compute_rate = 20000.0;  // bits/slot
    double collect_rate = 8000.0;   // bits/slot

    // A2G channel
    double total_bandwidth = 1e8;  // Hz
    double carrier_freq = 2.5e9;   // Hz
    double light_speed = 3e8;      // m/s
    double sigmoid_a = 9.61;
    double sigmoid_b = 0.16;
    double eta_los = 1.0;    // linear excess loss
    double eta_nlos = 20.0;  // linear excess loss
    double noise_psd = 1e-13;  // linear W/Hz
    double p_tr_max = 0.2;     // W
    double cell_size_m = 1.0;  // meters per grid cell
};

inline void validate(const SimConfig& c) {
    auto fail = [](const std::string& field, const std::string& why) {
        throw ConfigError("sim." + field + ": " + why);
    };
    if (c.map_width < 1) fail("map_width", "must be >= 1");
    if (c.map_height < 1) fail("map_height", "must be >= 1");
    if (c.num_sources < 1) fail("num_sources", "must be >= 1");
    if (c.num_edges < 1) fail("num_edges", "must be >= 1");
    if (c.slot_duration <= 0) fail("slot_duration", "must be > 0");
    if (c.lambda_bits <= 0) fail("lambda_bits", "must be > 0");
    if (c.p_gen < 0 || c.p_gen > 1) fail("p_gen", "must be in [0,1]");
    if (c.r_move <= 0) fail("r_move", "must be > 0");
    if (c.r_obs <= 0) fail("r_obs", "must be > 0");
    if (c.r_collect <= 0) fail("r_collect", "must be > 0");
    if (c.r_collect > c.r_obs) fail("r_collect", "must be <= r_obs");
    if (c.height_m <= 0) fail("height_m", "must be > 0");
    if (c.buf_col_cap < 1) fail("buf_col_cap", "must be >= 1");
    if (c.buf_exe_cap < 1) fail("buf_exe_cap", "must be >= 1");
    if (c.compute_rate <= 0) fail("compute_rate", "must be > 0");
    if (c.collect_rate <= 0) fail("collect_rate", "must be > 0");
    if (c.total_bandwidth <= 0) fail("total_bandwidth", "must be > 0");
    if (c.carrier_freq <= 0) fail("carrier_freq", "must be > 0");
    if (c.light_speed <= 0) fail("light_speed", "must be > 0");
    if (c.eta_los <= 0) fail("eta_los", "must be > 0");
    if (c.eta_nlos < c.eta_los) fail("eta_nlos", "must be >= eta_los");
    if (c.noise_psd <= 0) fail("noise_psd", "must be > 0");
    if (c.p_tr_max < 0) fail("p_tr_max", "must be >= 0");
    if (c.cell_size_m <= 0) fail("cell_size_m", "must be > 0");
}

}  // namespace agemec
