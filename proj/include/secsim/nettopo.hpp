#ifndef SECSIM_NETTOPO_HPP
#define SECSIM_NETTOPO_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "secsim/types.hpp"

namespace secsim::nettopo {

// A flow references a path whose edges no longer exist on the snapshot it is
// advanced against; the caller must re-route before advancing.
class StalePathError : public std::runtime_error {
  public:
    StalePathError(int task, int from, int to)
        : std::runtime_error("stale path for task " + std::to_string(task) + ": edge " +
                             std::to_string(from) + "->" + std::to_string(to)) {}
};

// G_t = (V, E_t). Nodes 0..num_sats-1 are satellites, the rest ground
// stations. ISL edges are static, GSL edges follow visibility. Cap(i,i) is
// treated as infinite: local transfers never touch the graph.
struct TopologySnapshot {
    int slot = 0;
    int num_sats = 0;
    int num_stations = 0;
    double isl_cap_bps = 1e9;
    double gsl_cap_bps = 100e6;
    std::vector<std::vector<int>> adj;  // per node, sorted neighbor ids

    int num_nodes() const { return num_sats + num_stations; }
    bool is_sat(int node) const { return node < num_sats; }
    bool has_edge(int i, int j) const;
    double capacity_bps(int i, int j) const;  // by edge type
};

// Assembles the slot graph from the static ISL adjacency plus the stations
// visible to each satellite at that slot.
TopologySnapshot build_snapshot(int slot, const std::vector<std::vector<int>>& isl_adj,
                                int num_stations,
                                const std::vector<std::vector<uint8_t>>& gs_visible_row,
                                double isl_cap_bps, double gsl_cap_bps);

// l_{s,t}: whether any ground station is reachable from s on this snapshot.
bool gsl_indicator(const TopologySnapshot& topo, int sat);

// Minimum-hop path, ties broken by the lexicographically smallest node-id
// sequence. Ground stations never relay (they may only be endpoints).
// nullopt when unreachable; [i] when i == j.
std::optional<std::vector<int>> route(const TopologySnapshot& topo, int from, int to);

struct FlowState {
    int task_id = -1;
    int src = -1;
    int dst = -1;
    double size_bits = 0.0;
    double bits_sent = 0.0;
    std::vector<int> path;  // refreshed each slot before advancing
    int finished_slot = -1;

    bool finished() const { return finished_slot >= 0; }
};

// One slot of fair-share transfer: every flow gets
//   dt * min over its path links of Cap(i,j) / (# flows on that link),
// links are directed, and a flow that completes mid-slot still holds its
// share for the whole slot. Returns the bits moved per flow this slot.
std::vector<double> advance_flows(std::vector<FlowState*>& active, const TopologySnapshot& topo,
                                  double dt_s);

// Max-min refinement of the per-slot share (progressive filling): flows
// bottlenecked elsewhere relinquish capacity to the rest. Off by default
// everywhere; the plain per-link count rule above is the reference behavior.
std::vector<double> advance_flows_max_min(std::vector<FlowState*>& active,
                                          const TopologySnapshot& topo, double dt_s);

// In-situ transfer: offloading finishes in the arrival slot, no link usage.
inline int local_offload_shortcut(const Task& task) { return task.t_arrival; }

// Transfer length of a single-hop ground downlink, in (fractional) slots.
inline double transfer_slots(double size_bits, double cap_bps, double dt_s) {
    return size_bits / (cap_bps * dt_s);
}

// Slot in which a transfer finishing at continuous slot-time f completes:
// the smallest t with (t+1) >= f.
inline int finish_slot(double f) { return static_cast<int>(std::ceil(f)) - 1; }

// Per-station serial downlink queue in absolute (fractional) slot units.
// A station is available at max(queue tail, now); first use starts at now.
class GroundQueue {
  public:
    explicit GroundQueue(int num_stations) : tail_(num_stations, 0.0) {}

    double available(int station, double now_slot) const {
        return std::max(tail_[station], now_slot);
    }
    // Reserves the downlink and returns the continuous finish time.
    double commit(int station, double now_slot, double duration_slots) {
        double start = available(station, now_slot);
        tail_[station] = start + duration_slots;
        return tail_[station];
    }
    int size() const { return static_cast<int>(tail_.size()); }

  private:
    std::vector<double> tail_;
};

}  // namespace secsim::nettopo

#endif
