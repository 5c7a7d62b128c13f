#ifndef SECSIM_SCHEDULER_HPP
#define SECSIM_SCHEDULER_HPP

#include <cstdint>
#include <vector>

#include "secsim/orbital.hpp"
#include "secsim/sbeo.hpp"
#include "secsim/strategy.hpp"
#include "secsim/types.hpp"

namespace secsim::scheduler {

// Orbital cycle in slots; heterogeneous shells use the longest period so the
// window covers a full cycle of every satellite.
int orbital_cycle_slots(const orbital::ConstellationSpec& spec, double dt_s);

// 0/1 knapsack over orbit ids: maximize total weight without exceeding the
// capacity; ties prefer fewer items, then the lexicographically smallest id
// set. dp_ops counts DP cell updates (complexity instrumentation).
std::vector<int> knapsack_select(const std::vector<int>& items,
                                 const std::vector<std::int64_t>& weights,
                                 std::int64_t capacity, std::uint64_t* dp_ops = nullptr);

// Output of the sunlight-aware orbit assignment for one epoch.
struct OrbitAssignment {
    int epoch_slot = 0;
    bool no_tasks = false;
    std::vector<std::vector<int>> alt_set;   // per orbit, sorted, contains the orbit itself
    std::vector<std::int64_t> sunlit;        // predicted sunlight slots per orbit
    std::vector<std::int64_t> task_load;     // predicted processing slots per orbit
    std::vector<double> weight;              // task proportion w[i]
    std::vector<std::int64_t> target;        // capability target per orbit
    std::uint64_t dp_ops = 0;
};

OrbitAssignment assign_orbits(const sbeo::SbeoInstance& inst, int t);

// E[s]: solar intake over the coming cycle plus remaining battery minus the
// energy the queued tasks will burn. Joules.
double query_energy_j(const sbeo::SbeoInstance& inst, int sat, int t, double battery_j,
                      int queued_cp_slots);

// Deadline-first processing arrangement (per-satellite).
struct ArrangeItem {
    int task = -1;
    int t_cp = 1;
    int t_ddl = 0;
};

struct ArrangePlan {
    std::vector<std::pair<int, int>> starts;  // (task, begin slot)
    bool flag_sun = false;                    // every processing slot of every task sunlit
    std::vector<int> infeasible;              // tasks that cannot meet their deadline from t_free
};

ArrangePlan arrange(const sbeo::SbeoInstance& inst, int sat, int t_free,
                    std::vector<ArrangeItem> queue);

// The three-stage sunlight-aware heuristic wired to the engine: orbit
// assignment at cycle boundaries, orbit-based offload selection per task,
// deadline-first arrangement at the processing satellite.
class SunlightAwareStrategy : public sim::Strategy {
  public:
    const char* name() const override { return "SunlightAware"; }
    bool wants_epochs() const override { return true; }
    void on_epoch(const sim::SimView& view, int t) override;
    sim::Decision on_arrival(const sim::SimView& view, int task_index) override;
    sim::Decision on_offload_complete(const sim::SimView& view, int task_index,
                                      int dst_sat) override;

    const OrbitAssignment& assignment() const { return assignment_; }
    const std::vector<std::int64_t>& counters() const { return cnt_; }

  private:
    OrbitAssignment assignment_;
    std::vector<std::int64_t> cnt_;  // per orbit, in processing-slot units

    ArrangePlan trial_local(const sim::SimView& view, int task_index) const;
};

}  // namespace secsim::scheduler

#endif
