#pragma once

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "agemec/rng.hpp"
#include "agemec/sim/channel.hpp"
#include "agemec/sim/config.hpp"
#include "agemec/sim/types.hpp"

namespace agemec {

struct WorldTotals {
    double generated_bits = 0.0;
    double delivered_bits = 0.0;
    long long delivered_pieces = 0;
};

/// Full environment state. Value semantics: copying takes a snapshot that
/// can be stepped independently for deterministic replay.
struct WorldState {
    SimConfig cfg;
    std::vector<SourceNode> sources;
    std::vector<EdgeDevice> edges;
    AgeTracker age;
    GridPos cloud_pos;
    long long clock = 0;
    WorldTotals totals;
    std::vector<DeliveryEvent> delivery_log;
};

inline WorldState make_world(const SimConfig& cfg, Rng& rng) {
    validate(cfg);
    WorldState w;
    w.cfg = cfg;
    std::uniform_int_distribution<int> dx(0, cfg.map_width - 1);
    std::uniform_int_distribution<int> dy(0, cfg.map_height - 1);
    w.sources.resize(cfg.num_sources);
    for (int n = 0; n < cfg.num_sources; ++n) {
        auto& s = w.sources[n];
        s.pos = {dx(rng), dy(rng)};
        s.lambda_bits = cfg.lambda_bits;
        s.p_gen = cfg.p_gen;
    }
    w.edges.resize(cfg.num_edges);
    for (auto& e : w.edges) e.pos = {dx(rng), dy(rng)};
    w.age = AgeTracker(cfg.num_sources);
    w.cloud_pos = {cfg.map_width / 2, cfg.map_height / 2};
    return w;
}

/// Bernoulli arrival gate times a Poisson size, redrawn to stay >= 1 bit.
inline std::vector<Packet> generate_packets(WorldState& w, Rng& rng) {
    std::vector<Packet> out;
    for (int n = 0; n < static_cast<int>(w.sources.size()); ++n) {
        auto& src = w.sources[n];
        if (src.p_gen <= 0.0) continue;
        if (uniform01(rng) >= src.p_gen) continue;
        std::poisson_distribution<long long> size_dist(src.lambda_bits);
        long long m = 0;
        while (m == 0) m = size_dist(rng);
        Packet p{static_cast<double>(m), w.clock, n};
        src.buffer.push_back(p);
        w.totals.generated_bits += p.size_bits;
        out.push_back(p);
    }
    return out;
}

inline GridPos decode_move(int move_cell, int r_move) {
    if (move_cell < 0 || move_cell >= r_move * r_move)
        throw InvalidAction("move_cell out of range");
    const int half = r_move / 2;
    int dx = move_cell / r_move - half;
    int dy = move_cell % r_move - half;
    const double norm = std::hypot(static_cast<double>(dx), static_cast<double>(dy));
    if (norm > r_move) {
        const double scale = r_move / norm;
        dx = static_cast<int>(std::llround(dx * scale));
        dy = static_cast<int>(std::llround(dy * scale));
    }
    return {dx, dy};
}

inline GridPos apply_movement(EdgeDevice& edge, int move_cell, const SimConfig& cfg) {
    const GridPos d = decode_move(move_cell, cfg.r_move);
    edge.pos.x = std::clamp(edge.pos.x + d.x, 0, cfg.map_width - 1);
    edge.pos.y = std::clamp(edge.pos.y + d.y, 0, cfg.map_height - 1);
    return edge.pos;
}

inline double ground_dist_cells(GridPos a, GridPos b) {
    return std::hypot(static_cast<double>(a.x - b.x), static_cast<double>(a.y - b.y));
}

namespace detail {

inline void abort_session(EdgeDevice& edge, SourceNode& src) {
    auto& sess = *edge.session;
    for (auto it = sess.absorbed.rbegin(); it != sess.absorbed.rend(); ++it)
        src.buffer.push_front(*it);
    edge.session.reset();
}

}  // namespace detail

/// One slot of rate-limited collection. A session targets the nearest
/// in-range source with buffered data (ties to the lowest index) and
/// drains it front-first; the finalized piece lands in col_buffer.
inline double collect_step(EdgeDevice& edge, std::vector<SourceNode>& sources,
                           const SimConfig& cfg) {
    if (edge.session) {
        auto& src = sources[edge.session->source_idx];
        if (ground_dist_cells(edge.pos, src.pos) > cfg.r_collect) {
            detail::abort_session(edge, src);
        }
    }
    if (!edge.session) {
        if (static_cast<int>(edge.col_buffer.size()) >= cfg.buf_col_cap) return 0.0;
        int best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (int n = 0; n < static_cast<int>(sources.size()); ++n) {
            if (sources[n].buffer.empty()) continue;
            const double dist = ground_dist_cells(edge.pos, sources[n].pos);
            if (dist > cfg.r_collect) continue;
            if (dist < best_dist) {
                best_dist = dist;
                best = n;
            }
        }
        if (best < 0) return 0.0;
        edge.session = CollectSession{best, {}, 0.0};
    }

    auto& sess = *edge.session;
    auto& src = sources[sess.source_idx];
    double budget = cfg.collect_rate * cfg.slot_duration;
    double moved = 0.0;
    while (budget > 0.0 && !src.buffer.empty()) {
        const Packet& front = src.buffer.front();
        const double left = front.size_bits - sess.front_consumed_bits;
        const double take = std::min(budget, left);
        budget -= take;
        moved += take;
        if (take == left) {
            sess.absorbed.push_back(front);
            src.buffer.pop_front();
            sess.front_consumed_bits = 0.0;
        } else {
            sess.front_consumed_bits += take;
        }
    }
    if (src.buffer.empty() && !sess.absorbed.empty() &&
        static_cast<int>(edge.col_buffer.size()) < cfg.buf_col_cap) {
        BufferPiece piece;
        piece.source_idx = sess.source_idx;
        piece.earliest_gen = sess.absorbed.front().gen_time;
        piece.latest_gen = sess.absorbed.back().gen_time;
        for (const auto& p : sess.absorbed) piece.total_bits += p.size_bits;
        piece.remaining_bits = piece.total_bits;
        edge.col_buffer.push_back(piece);
        edge.session.reset();
    }
    return moved;
}

inline int onehot_index(const std::vector<int>& v, std::size_t expected_len,
                        const char* what) {
    if (v.size() != expected_len) throw InvalidAction(std::string(what) + ": wrong length");
    int sum = 0;
    int idx = -1;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
        if (v[i] != 0 && v[i] != 1) throw InvalidAction(std::string(what) + ": entries must be 0/1");
        sum += v[i];
        if (v[i] == 1) idx = i;
    }
    if (sum != 1) throw InvalidAction(std::string(what) + ": must sum to 1");
    return idx;
}

/// Spend one slot of compute on the selected collected piece; completed
/// pieces move to the execution-done buffer when it has room, otherwise
/// they stay in place and stay selectable.
inline bool execute_step(EdgeDevice& edge, const std::vector<int>& exe_onehot,
                         const SimConfig& cfg) {
    const int i = onehot_index(exe_onehot, cfg.buf_col_cap, "exe_onehot");
    if (i >= static_cast<int>(edge.col_buffer.size())) return false;
    auto& piece = edge.col_buffer[i];
    piece.remaining_bits -= std::min(cfg.compute_rate * cfg.slot_duration, piece.remaining_bits);
    if (piece.remaining_bits > 0.0) return false;
    if (static_cast<int>(edge.exe_buffer.size()) >= cfg.buf_exe_cap) return false;
    BufferPiece done = piece;
    done.remaining_bits = done.total_bits;
    edge.exe_buffer.push_back(done);
    edge.col_buffer.erase(edge.col_buffer.begin() + i);
    return true;
}

/// One slot of offloading. Non-preemptive: the in-flight piece finishes
/// before a new selection takes effect. Deliveries are stamped with the
/// post-step clock.
inline std::optional<DeliveryEvent> offload_step(EdgeDevice& edge,
                                                 const std::vector<int>& off_onehot,
                                                 double bandwidth_prop, AgeTracker& age,
                                                 GridPos cloud_pos, long long clock,
                                                 const SimConfig& cfg) {
    const int i = onehot_index(off_onehot, cfg.buf_exe_cap, "off_onehot");
    if (!edge.in_flight && i < static_cast<int>(edge.exe_buffer.size())) {
        edge.in_flight = edge.exe_buffer[i];
        edge.exe_buffer.erase(edge.exe_buffer.begin() + i);
    }
    if (!edge.in_flight) return std::nullopt;

    auto& piece = *edge.in_flight;
    const double rate = tx_rate(bandwidth_prop, edge.pos, cloud_pos, cfg);
    piece.remaining_bits -= std::min(rate, piece.remaining_bits);
    if (piece.remaining_bits > 0.0) return std::nullopt;

    DeliveryEvent ev;
    ev.epoch = clock + 1;
    ev.source_idx = piece.source_idx;
    ev.bits = piece.total_bits;
    ev.latest_gen = piece.latest_gen;
    ev.age_reset = piece.latest_gen > age.last_gen_received[piece.source_idx];
    age.last_gen_received[piece.source_idx] =
        std::max(age.last_gen_received[piece.source_idx], piece.latest_gen);
    edge.in_flight.reset();
    return ev;
}

inline double advance_age(AgeTracker& age, long long clock) {
    double sum = 0.0;
    for (std::size_t n = 0; n < age.ages.size(); ++n) {
        age.ages[n] = clock - age.last_gen_received[n];
        sum += static_cast<double>(age.ages[n]);
    }
    return sum / static_cast<double>(age.ages.size());
}

inline ObservationBundle build_observations(const WorldState& w) {
    const auto& cfg = w.cfg;
    ObservationBundle bundle;
    bundle.edges.reserve(w.edges.size());
    const int r = cfg.r_obs;
    const int half = r / 2;
    for (const auto& e : w.edges) {
        EdgeObservation obs;
        obs.obs_map = Tensor({2, r, r});
        for (const auto& s : w.sources) {
            const int i = s.pos.x - e.pos.x + half;
            const int j = s.pos.y - e.pos.y + half;
            if (i < 0 || i >= r || j < 0 || j >= r) continue;
            double bits = 0.0, delay = 0.0;
            for (const auto& p : s.buffer) {
                bits += p.size_bits;
                delay += static_cast<double>(w.clock - p.gen_time);
            }
            obs.obs_map.data[0 * r * r + i * r + j] += bits;
            obs.obs_map.data[1 * r * r + i * r + j] += delay;
        }
        obs.col_state.resize(cfg.buf_col_cap);
        for (std::size_t i = 0; i < e.col_buffer.size(); ++i) {
            const auto& p = e.col_buffer[i];
            obs.col_state[i] = {p.remaining_bits, static_cast<double>(w.clock - p.latest_gen),
                                static_cast<double>(p.source_idx)};
        }
        obs.exe_state.resize(cfg.buf_exe_cap);
        for (std::size_t i = 0; i < e.exe_buffer.size(); ++i) {
            const auto& p = e.exe_buffer[i];
            obs.exe_state[i] = {p.remaining_bits, static_cast<double>(w.clock - p.latest_gen),
                                static_cast<double>(p.source_idx)};
        }
        obs.alloc_bandwidth = e.alloc_bandwidth;
        obs.position = e.pos;
        bundle.edges.push_back(std::move(obs));
    }
    bundle.center.edges.reserve(w.edges.size());
    for (const auto& e : w.edges) {
        EdgeSummary s;
        s.position = e.pos;
        s.col_count = static_cast<int>(e.col_buffer.size());
        s.exe_count = static_cast<int>(e.exe_buffer.size());
        s.col_ages.resize(cfg.buf_col_cap, 0.0);
        for (std::size_t i = 0; i < e.col_buffer.size(); ++i)
            s.col_ages[i] = static_cast<double>(w.clock - e.col_buffer[i].latest_gen);
        s.exe_ages.resize(cfg.buf_exe_cap, 0.0);
        for (std::size_t i = 0; i < e.exe_buffer.size(); ++i)
            s.exe_ages[i] = static_cast<double>(w.clock - e.exe_buffer[i].latest_gen);
        s.last_bandwidth = e.alloc_bandwidth;
        bundle.center.edges.push_back(std::move(s));
    }
    return bundle;
}

inline void validate_actions(const WorldState& w, const std::vector<EdgeActionSet>& edge_actions,
                             const CenterAction& center_action) {
    const auto& cfg = w.cfg;
    if (static_cast<int>(edge_actions.size()) != cfg.num_edges)
        throw InvalidAction("expected one action set per edge");
    for (int k = 0; k < cfg.num_edges; ++k) {
        const auto& a = edge_actions[k];
        const std::string who = "edge agent " + std::to_string(k);
        if (a.move_cell < 0 || a.move_cell >= cfg.r_move * cfg.r_move)
            throw InvalidAction(who + ": move_cell out of range");
        try {
            onehot_index(a.exe_onehot, cfg.buf_col_cap, "exe_onehot");
            onehot_index(a.off_onehot, cfg.buf_exe_cap, "off_onehot");
        } catch (const InvalidAction& e) {
            throw InvalidAction(who + ": " + e.what());
        }
    }
    if (static_cast<int>(center_action.bandwidth_props.size()) != cfg.num_edges)
        throw InvalidAction("center agent: bandwidth vector wrong length");
    double sum = 0.0;
    for (double b : center_action.bandwidth_props) {
        if (b < 0.0) throw InvalidAction("center agent: negative bandwidth proportion");
        sum += b;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw InvalidAction("center agent: bandwidth proportions must sum to 1");
}

struct StepResult {
    ObservationBundle obs;
    double penalty = 0.0;  // average age, shared by all agents
    std::vector<DeliveryEvent> deliveries;
};

/// One slot of the whole system, in fixed phase order. Mutates the world;
/// copy it first if a snapshot is needed.
inline StepResult env_step(WorldState& w, const std::vector<EdgeActionSet>& edge_actions,
                           const CenterAction& center_action, Rng& rng) {
    validate_actions(w, edge_actions, center_action);
    generate_packets(w, rng);
    for (int k = 0; k < w.cfg.num_edges; ++k)
        apply_movement(w.edges[k], edge_actions[k].move_cell, w.cfg);
    for (auto& e : w.edges) collect_step(e, w.sources, w.cfg);
    for (int k = 0; k < w.cfg.num_edges; ++k)
        execute_step(w.edges[k], edge_actions[k].exe_onehot, w.cfg);
    StepResult result;
    for (int k = 0; k < w.cfg.num_edges; ++k) {
        auto& e = w.edges[k];
        e.alloc_bandwidth = center_action.bandwidth_props[k];
        auto ev = offload_step(e, edge_actions[k].off_onehot, e.alloc_bandwidth, w.age,
                               w.cloud_pos, w.clock, w.cfg);
        if (ev) {
            w.totals.delivered_bits += ev->bits;
            w.totals.delivered_pieces += 1;
            w.delivery_log.push_back(*ev);
            result.deliveries.push_back(*ev);
        }
    }
    w.clock += 1;
    result.penalty = advance_age(w.age, w.clock);
    result.obs = build_observations(w);
    return result;
}

/// Exhaustive hexfloat dump of the world, for bit-identical trajectory
/// comparisons in tests.
inline std::string world_digest(const WorldState& w) {
    std::ostringstream os;
    os << std::hexfloat;
    os << "clock " << w.clock << " cloud " << w.cloud_pos.x << "," << w.cloud_pos.y << "\n";
    os << "totals " << w.totals.generated_bits << " " << w.totals.delivered_bits << " "
       << w.totals.delivered_pieces << "\n";
    for (const auto& s : w.sources) {
        os << "S " << s.pos.x << "," << s.pos.y;
        for (const auto& p : s.buffer)
            os << " [" << p.size_bits << "," << p.gen_time << "," << p.source_idx << "]";
        os << "\n";
    }
    auto dump_piece = [&os](const BufferPiece& p) {
        os << " {" << p.total_bits << "," << p.earliest_gen << "," << p.latest_gen << ","
           << p.source_idx << "," << p.remaining_bits << "}";
    };
    for (const auto& e : w.edges) {
        os << "E " << e.pos.x << "," << e.pos.y << " bw " << e.alloc_bandwidth << " col";
        for (const auto& p : e.col_buffer) dump_piece(p);
        os << " exe";
        for (const auto& p : e.exe_buffer) dump_piece(p);
        os << " fly";
        if (e.in_flight) dump_piece(*e.in_flight);
        os << " sess";
        if (e.session) {
            os << " src=" << e.session->source_idx << " front=" << e.session->front_consumed_bits;
            for (const auto& p : e.session->absorbed)
                os << " [" << p.size_bits << "," << p.gen_time << "]";
        }
        os << "\n";
    }
    os << "age";
    for (std::size_t n = 0; n < w.age.ages.size(); ++n)
        os << " " << w.age.last_gen_received[n] << "/" << w.age.ages[n];
    os << "\n";
    return os.str();
}

}  // namespace agemec
