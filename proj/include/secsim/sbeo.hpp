#ifndef SECSIM_SBEO_HPP
#define SECSIM_SBEO_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "secsim/energy.hpp"
#include "secsim/nettopo.hpp"
#include "secsim/orbital.hpp"
#include "secsim/types.hpp"

namespace secsim::sbeo {

// A fully materialized problem instance: slotted horizon, node set, link
// capacities, sunlight indicators, visibility, power model and task set.
// Instances are either derived from constellation geometry or written out
// explicitly (toy topologies for tests and the oracle).
struct SbeoInstance {
    double dt_s = 1.0;
    int t_max = 0;
    int cycle_slots = 0;  // orbital cycle used by the scheduling layer

    int num_sats = 0;
    int num_stations = 0;
    int isl_count = 4;  // lambda in the battery recurrence
    int num_orbits = 0;
    std::vector<int> orbit_of;               // per satellite
    std::vector<std::vector<int>> isl_adj;   // static, sorted
    double isl_cap_bps = 1e9;
    double gsl_cap_bps = 100e6;

    energy::PowerParams power;
    bool gsl_power_transmit_only = false;  // default: connectivity-gated GSL power

    orbital::SunTable sun;    // should cover [0, t_max + cycle_slots)
    orbital::GsVisTable vis;  // covers [0, t_max)

    std::vector<Task> tasks;

    void validate() const;
    bool sunlit(int sat, int t) const { return sun.sunlit(sat, t); }
    bool gs_visible(int sat, int gs, int t) const { return vis.visible(sat, gs, t); }
    int station_node(int gs) const { return num_sats + gs; }
    bool node_is_sat(int node) const { return node < num_sats; }

    nettopo::TopologySnapshot snapshot(int t) const;

    std::string to_json_string() const;
    static SbeoInstance from_json_string(const std::string& text);
};

// Per-task decision: processing node, and the begin-processing slot for
// satellite destinations (ground destinations have no processing row).
struct TaskPlacement {
    int dst = -1;
    int t_begin = -1;
};

struct SbeoSolution {
    std::vector<TaskPlacement> placements;  // aligned with instance.tasks
};

struct Violation {
    enum Kind {
        MissingPlacement,
        Overlap,           // constraint (i): two tasks processing on one satellite
        BeforeOffload,     // constraint (ii): processing starts before T_of
        OffloadUnfinished, // constraint (ii): offload never completes in horizon
        DeadlineMissed,    // constraint (iii)
        GroundNotVisible   // ground destination not visible at arrival
    };
    Kind kind;
    int task = -1;
    int sat = -1;
    int slot = -1;
    std::string detail;
};

// Offload-finish times obtained by replaying all transfers jointly: fair-share
// flows for satellite destinations, the per-station serial downlink queue for
// ground destinations (single-hop accounting, admitted in (arrival, id) order).
struct OffloadReplay {
    std::vector<int> t_offload;         // slot; -1 = never completes in horizon
    std::vector<double> ground_finish;  // continuous slot time (ground tasks only)
    std::vector<uint8_t> ground_visible_at_arrival;
    // Per-satellite downlink transmit intervals in continuous slot time.
    std::vector<std::vector<std::pair<double, double>>> gs_tx;
};

OffloadReplay replay_offloads(const SbeoInstance& inst, const std::vector<TaskPlacement>& placements);

std::vector<Violation> check_feasible(const SbeoInstance& inst, const SbeoSolution& sol);

// Per-satellite processing occupancy derived from the placements (the rows of
// the processing matrix X, flattened to one bit per satellite-slot).
std::vector<std::vector<uint8_t>> occupancy(const SbeoInstance& inst, const SbeoSolution& sol);

// max_{s,t} 1 - B_{s,t} / B_vol with batteries replayed under the solution.
double objective(const SbeoInstance& inst, const SbeoSolution& sol,
                 ExecMode mode = ExecMode::Parallel);

// Battery replay used by the objective; exposed for metrics.
energy::BatteryTrace replay_battery(const SbeoInstance& inst, const SbeoSolution& sol,
                                    std::vector<Event>* brownouts = nullptr,
                                    ExecMode mode = ExecMode::Parallel);

struct OracleOutcome {
    enum Status { Ok, TooLarge, Infeasible } status = Infeasible;
    SbeoSolution solution;
    double objective = std::numeric_limits<double>::quiet_NaN();
    std::uint64_t candidates = 0;  // size of the searched space
};

// Exhaustive minimizer over destinations and begin-processing slots.
// Deterministic tie-break: lexicographically smallest (dst, t_begin) vector.
// Refuses instances whose candidate space exceeds the guard.
OracleOutcome brute_force_solve(const SbeoInstance& inst, ExecMode mode = ExecMode::Parallel,
                                std::uint64_t guard = 10'000'000);

// Straight-line reference: walks every candidate in tie-break order and
// replays offloads per candidate. Kept simple for cross-checking the
// grouped/parallel solver.
OracleOutcome brute_force_solve_reference(const SbeoInstance& inst,
                                          std::uint64_t guard = 1'000'000);

}  // namespace secsim::sbeo

#endif
