#ifndef SECSIM_STRATEGY_HPP
#define SECSIM_STRATEGY_HPP

#include <functional>
#include <utility>
#include <vector>

#include "secsim/nettopo.hpp"
#include "secsim/sbeo.hpp"
#include "secsim/types.hpp"

namespace secsim::sim {

// Read-mostly window the engine hands to a strategy. Battery values are
// B_{s,t-1}; pending lists hold task indices that are assigned and offloaded
// but not yet started.
struct SimView {
    const sbeo::SbeoInstance* inst = nullptr;
    int now = 0;
    const std::vector<double>* battery_j = nullptr;
    const std::vector<std::vector<int>>* pending = nullptr;
    const std::vector<int>* queued_cp_slots = nullptr;  // per sat, not-yet-started T_cp sum
    const std::vector<int>* running_end = nullptr;      // last busy slot, -1 when idle
    nettopo::GroundQueue* ground_queue = nullptr;
    std::function<double(int, int, int)> gs_distance;  // (sat, gs, slot) tie-break; may be empty

    bool sunlit(int sat, int t) const { return inst->sunlit(sat, t); }
    bool gs_visible_now(int sat, int gs) const { return inst->gs_visible(sat, gs, now); }
    double battery(int sat) const { return (*battery_j)[sat]; }
    // First slot the satellite's processor is free of its running task.
    int free_from(int sat) const {
        int e = (*running_end)[sat];
        return e >= now ? e + 1 : now;
    }
    double distance(int sat, int gs) const {
        return gs_distance ? gs_distance(sat, gs, now) : 0.0;
    }
};

// What a strategy decided for one task.
struct Decision {
    enum class Kind { Defer, Ground, Satellite } kind = Kind::Defer;
    int dst = -1;
    // Begin-processing plan updates (task index, slot) to apply at the local
    // satellite; used when a decision fixes processing times immediately.
    std::vector<std::pair<int, int>> starts;
    // Tasks the plan could not fit before their deadline (reported as events).
    std::vector<int> infeasible;
    bool no_feasible_destination = false;
};

class Strategy {
  public:
    virtual ~Strategy() = default;
    virtual const char* name() const = 0;

    // Called at orbital-cycle boundaries before any dispatch in that slot.
    virtual bool wants_epochs() const { return false; }
    virtual void on_epoch(const SimView&, int) {}

    // Called once per waiting task per slot, in task-id order, starting at
    // the arrival slot. Defer keeps the task waiting.
    virtual Decision on_arrival(const SimView& view, int task_index) = 0;

    // Called when a satellite-bound offload lands at dst_sat (the task is
    // already in the destination's pending list); returns begin-processing
    // updates for that queue.
    virtual Decision on_offload_complete(const SimView& view, int task_index, int dst_sat) = 0;
};

}  // namespace secsim::sim

#endif
