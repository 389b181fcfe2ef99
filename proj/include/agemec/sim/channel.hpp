#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "agemec/sim/config.hpp"
#include "agemec/sim/types.hpp"

namespace agemec {

struct DegenerateGeometry : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Sight { LoS, NLoS };

inline double horizontal_dist_m(GridPos edge, GridPos ground, const SimConfig& cfg) {
    const double dx = (edge.x - ground.x) * cfg.cell_size_m;
    const double dy = (edge.y - ground.y) * cfg.cell_size_m;
    return std::hypot(dx, dy);
}

inline double slant_dist_m(GridPos edge, GridPos ground, const SimConfig& cfg) {
    return std::hypot(horizontal_dist_m(edge, ground, cfg), cfg.height_m);
}

/// Free-space loss with excess factor: (4*pi*f/c)^2 * d^2 * eta.
inline double path_loss(GridPos edge, GridPos ground, Sight xi, const SimConfig& cfg) {
    const double d = slant_dist_m(edge, ground, cfg);
    if (d <= 0) throw DegenerateGeometry("path_loss: zero link distance");
    const double k = 4.0 * std::numbers::pi * cfg.carrier_freq / cfg.light_speed;
    const double eta = (xi == Sight::LoS) ? cfg.eta_los : cfg.eta_nlos;
    return k * k * d * d * eta;
}

/// Logistic LoS probability over the elevation angle in degrees.
inline double los_probability(GridPos edge, GridPos ground, const SimConfig& cfg) {
    const double h = horizontal_dist_m(edge, ground, cfg);
    const double psi_deg = (h == 0.0) ? 90.0
                                      : std::atan(cfg.height_m / h) * 180.0 / std::numbers::pi;
    return 1.0 / (1.0 + cfg.sigmoid_a * std::exp(-cfg.sigmoid_b * (psi_deg - cfg.sigmoid_a)));
}

inline double avg_path_loss(GridPos edge, GridPos ground, const SimConfig& cfg) {
    const double p0 = los_probability(edge, ground, cfg);
    return p0 * path_loss(edge, ground, Sight::LoS, cfg) +
           (1.0 - p0) * path_loss(edge, ground, Sight::NLoS, cfg);
}

/// Shannon rate on the allocated band, in bits per slot. The bandwidth
/// share multiplies the noise power as well, so the b -> 0 limit is
/// handled explicitly.
inline double tx_rate(double bandwidth_prop, GridPos edge, GridPos ground, const SimConfig& cfg) {
    if (bandwidth_prop <= 0.0) return 0.0;
    const double bw = bandwidth_prop * cfg.total_bandwidth;
    const double loss = avg_path_loss(edge, ground, cfg);
    const double snr = cfg.p_tr_max / (loss * cfg.noise_psd * bw);
    return bw * std::log2(1.0 + snr) * cfg.slot_duration;
}

}  // namespace agemec
