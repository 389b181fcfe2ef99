#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

#include "agemec/tensor.hpp"

namespace agemec {

struct InvalidAction : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridPos {
    int x = 0;
    int y = 0;
    friend bool operator==(GridPos a, GridPos b) { return a.x == b.x && a.y == b.y; }
};

struct Packet {
    double size_bits = 0.0;
    long long gen_time = 0;
    int source_idx = 0;
};

struct SourceNode {
    GridPos pos;
    std::deque<Packet> buffer;  // ordered by gen_time, nondecreasing
    double lambda_bits = 0.0;
    double p_gen = 0.0;

    double buffered_bits() const {
        double s = 0.0;
        for (const auto& p : buffer) s += p.size_bits;
        return s;
    }
};

/// One collected piece of data. remaining_bits is the work left for the
/// stage the piece currently sits in (execution, then offloading).
struct BufferPiece {
    double total_bits = 0.0;
    long long earliest_gen = 0;
    long long latest_gen = 0;
    int source_idx = 0;
    double remaining_bits = 0.0;
};

/// Rate-limited collection in progress: packets absorbed so far plus the
/// partially consumed front packet of the target source.
struct CollectSession {
    int source_idx = 0;
    std::vector<Packet> absorbed;
    double front_consumed_bits = 0.0;

    double absorbed_bits() const {
        double s = front_consumed_bits;
        for (const auto& p : absorbed) s += p.size_bits;
        return s;
    }
};

struct EdgeDevice {
    GridPos pos;
    std::vector<BufferPiece> col_buffer;  // size <= buf_col_cap
    std::vector<BufferPiece> exe_buffer;  // size <= buf_exe_cap
    std::optional<BufferPiece> in_flight;
    std::optional<CollectSession> session;
    double alloc_bandwidth = 0.0;
};

struct AgeTracker {
    std::vector<long long> last_gen_received;  // T_g per source
    std::vector<long long> ages;               // clock - T_g per source

    explicit AgeTracker(int num_sources = 0)
        : last_gen_received(num_sources, 0), ages(num_sources, 0) {}
};

struct EdgeActionSet {
    int move_cell = 0;                // index into the r_move x r_move grid
    std::vector<int> exe_onehot;      // length buf_col_cap, sums to 1
    std::vector<int> off_onehot;      // length buf_exe_cap, sums to 1
};

struct CenterAction {
    std::vector<double> bandwidth_props;  // length num_edges, one-sum
};

struct PieceFeature {
    double remaining_bits = 0.0;
    double age = 0.0;       // clock - latest_gen
    double source_idx = 0;  // raw index; 0 for an empty slot
};

struct EdgeObservation {
    Tensor obs_map;  // (2, r_obs, r_obs): ch0 bits, ch1 summed packet delay
    std::vector<PieceFeature> col_state;  // zero-padded to buf_col_cap
    std::vector<PieceFeature> exe_state;  // zero-padded to buf_exe_cap
    double alloc_bandwidth = 0.0;
    GridPos position;
};

struct EdgeSummary {
    GridPos position;
    int col_count = 0;
    int exe_count = 0;
    std::vector<double> col_ages;  // zero-padded to buf_col_cap
    std::vector<double> exe_ages;  // zero-padded to buf_exe_cap
    double last_bandwidth = 0.0;
};

struct CenterObservation {
    std::vector<EdgeSummary> edges;  // index order
};

struct ObservationBundle {
    std::vector<EdgeObservation> edges;
    CenterObservation center;
};

struct DeliveryEvent {
    long long epoch = 0;  // post-step clock at arrival
    int source_idx = 0;
    double bits = 0.0;
    long long latest_gen = 0;
    bool age_reset = false;  // true when the delivery advanced T_g
};

}  // namespace agemec
