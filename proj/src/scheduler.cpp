#include "secsim/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace secsim::scheduler {

int orbital_cycle_slots(const orbital::ConstellationSpec& spec, double dt_s) {
    double period = 0.0;
    for (const orbital::Shell& sh : spec.shells)
        period = std::max(period, orbital::orbital_period_s(sh.altitude_km));
    return static_cast<int>(std::llround(period / dt_s));
}

std::vector<int> knapsack_select(const std::vector<int>& items,
                                 const std::vector<std::int64_t>& weights,
                                 std::int64_t capacity, std::uint64_t* dp_ops) {
    std::vector<int> sorted(items);
    std::sort(sorted.begin(), sorted.end());
    if (capacity <= 0 || sorted.empty()) return {};

    const int n = static_cast<int>(sorted.size());

    // The DP table is (items+1) x (capacity+1). Beyond the cell budget the
    // weights are scaled (rounded up) and the capacity down, which keeps every
    // selection within the true capacity at the cost of a slightly looser fill.
    constexpr std::int64_t kMaxDpCells = 16'000'000;
    std::int64_t scale = 1;
    while ((capacity / scale + 1) * (n + 1) > kMaxDpCells) scale *= 2;
    std::vector<std::int64_t> w_scaled(weights.size(), 0);
    for (int id : sorted) w_scaled[id] = (weights[id] + scale - 1) / scale;

    const auto& w_eff = scale == 1 ? weights : w_scaled;
    const int cap = static_cast<int>(capacity / scale);
    if (cap <= 0) return {};
    struct Cell {
        std::int64_t weight = 0;
        int count = 0;
    };
    // dp[i][c]: best (max weight, min count) over items i..n-1 with budget c.
    std::vector<std::vector<Cell>> dp(n + 1, std::vector<Cell>(cap + 1));
    auto include_beats = [](const Cell& inc, const Cell& exc) {
        if (inc.weight != exc.weight) return inc.weight > exc.weight;
        // equal weight: fewer items, then prefer including the smaller id
        return inc.count <= exc.count;
    };
    for (int i = n - 1; i >= 0; --i) {
        std::int64_t w = w_eff[sorted[i]];
        for (int c = 0; c <= cap; ++c) {
            Cell exc = dp[i + 1][c];
            if (w <= c) {
                Cell inc{dp[i + 1][c - w].weight + w, dp[i + 1][c - w].count + 1};
                dp[i][c] = include_beats(inc, exc) ? inc : exc;
            } else {
                dp[i][c] = exc;
            }
        }
        if (dp_ops) *dp_ops += static_cast<std::uint64_t>(cap) + 1;
    }

    std::vector<int> chosen;
    int c = cap;
    for (int i = 0; i < n; ++i) {
        std::int64_t w = w_eff[sorted[i]];
        if (w <= c) {
            Cell inc{dp[i + 1][c - w].weight + w, dp[i + 1][c - w].count + 1};
            if (include_beats(inc, dp[i + 1][c])) {
                chosen.push_back(sorted[i]);
                c -= static_cast<int>(w);
            }
        }
    }
    return chosen;
}

OrbitAssignment assign_orbits(const sbeo::SbeoInstance& inst, int t) {
    const int m = inst.num_orbits;
    const int cyc = inst.cycle_slots;
    OrbitAssignment a;
    a.epoch_slot = t;
    a.sunlit.assign(m, 0);
    a.task_load.assign(m, 0);
    a.weight.assign(m, 0.0);
    a.target.assign(m, 0);
    a.alt_set.assign(m, {});

    for (int s = 0; s < inst.num_sats; ++s) {
        std::int64_t lit = 0;
        for (int tau = t; tau < t + cyc; ++tau)
            if (inst.sunlit(s, tau)) ++lit;
        a.sunlit[inst.orbit_of[s]] += lit;
    }
    for (const Task& k : inst.tasks)
        if (k.t_arrival >= t && k.t_arrival <= t + cyc - 1)
            a.task_load[inst.orbit_of[k.src]] += k.t_compute;

    std::int64_t total_task = 0, total_sunlit = 0;
    for (int i = 0; i < m; ++i) {
        total_task += a.task_load[i];
        total_sunlit += a.sunlit[i];
    }
    if (total_task == 0) {
        a.no_tasks = true;
        for (int i = 0; i < m; ++i) a.alt_set[i] = {i};
        return a;
    }

    for (int i = 0; i < m; ++i) {
        a.weight[i] = static_cast<double>(a.task_load[i]) / total_task;
        a.target[i] =
            static_cast<std::int64_t>(a.weight[i] * total_sunlit) - a.sunlit[i];
    }

    std::vector<int> idle;
    for (int i = 0; i < m; ++i)
        if (a.task_load[i] == 0) idle.push_back(i);

    for (int i = 0; i < m; ++i) {
        if (a.target[i] < 0) {
            a.alt_set[i] = {i};
            continue;
        }
        std::vector<int> subset = knapsack_select(idle, a.sunlit, a.target[i], &a.dp_ops);
        a.alt_set[i] = subset;
        a.alt_set[i].push_back(i);
        std::sort(a.alt_set[i].begin(), a.alt_set[i].end());
        std::vector<int> rest;
        for (int o : idle)
            if (!std::binary_search(subset.begin(), subset.end(), o)) rest.push_back(o);
        idle = rest;
    }
    return a;
}

double query_energy_j(const sbeo::SbeoInstance& inst, int sat, int t, double battery_j,
                      int queued_cp_slots) {
    std::int64_t lit = 0;
    for (int tau = t; tau < t + inst.cycle_slots; ++tau)
        if (inst.sunlit(sat, tau)) ++lit;
    return inst.power.p_solar_w * lit * inst.dt_s + battery_j -
           inst.power.p_cp_w * queued_cp_slots * inst.dt_s;
}

ArrangePlan arrange(const sbeo::SbeoInstance& inst, int sat, int t_free,
                    std::vector<ArrangeItem> queue) {
    ArrangePlan plan;
    if (queue.empty()) {
        plan.flag_sun = true;
        return plan;
    }
    std::sort(queue.begin(), queue.end(), [](const ArrangeItem& a, const ArrangeItem& b) {
        if (a.t_ddl != b.t_ddl) return a.t_ddl < b.t_ddl;
        return a.task < b.task;
    });

    const int n = static_cast<int>(queue.size());
    std::vector<int> latest(n);
    latest[n - 1] = queue[n - 1].t_ddl - queue[n - 1].t_cp;
    for (int i = n - 2; i >= 0; --i)
        latest[i] = std::min(queue[i].t_ddl, latest[i + 1]) - queue[i].t_cp;

    const int sun_end = inst.sun.num_slots;
    int earliest = t_free;
    plan.flag_sun = true;
    for (int i = 0; i < n; ++i) {
        int sunlit_at = std::numeric_limits<int>::max();
        for (int tau = earliest; tau < sun_end; ++tau) {
            if (inst.sunlit(sat, tau)) {
                sunlit_at = tau;
                break;
            }
        }
        int begin = sunlit_at <= latest[i] ? sunlit_at : latest[i];
        if (begin < earliest) {
            // Deadline already unreachable; keep the queue legal and report it.
            begin = earliest;
            plan.infeasible.push_back(queue[i].task);
        }
        plan.starts.emplace_back(queue[i].task, begin);
        for (int tau = begin; tau < begin + queue[i].t_cp; ++tau)
            if (!inst.sunlit(sat, tau)) plan.flag_sun = false;
        earliest = begin + queue[i].t_cp;
    }
    return plan;
}

// ---------------------------------------------------------------------------
// SunlightAware strategy (orbit-based offloading)
// ---------------------------------------------------------------------------

void SunlightAwareStrategy::on_epoch(const sim::SimView& view, int t) {
    assignment_ = assign_orbits(*view.inst, t);
    cnt_.assign(view.inst->num_orbits, 0);
}

ArrangePlan SunlightAwareStrategy::trial_local(const sim::SimView& view, int task_index) const {
    const sbeo::SbeoInstance& inst = *view.inst;
    const Task& k = inst.tasks[task_index];
    std::vector<ArrangeItem> queue;
    for (int idx : (*view.pending)[k.src]) {
        const Task& q = inst.tasks[idx];
        queue.push_back({idx, q.t_compute, q.t_deadline});
    }
    queue.push_back({task_index, k.t_compute, k.t_deadline});
    return arrange(inst, k.src, view.free_from(k.src), std::move(queue));
}

sim::Decision SunlightAwareStrategy::on_arrival(const sim::SimView& view, int task_index) {
    const sbeo::SbeoInstance& inst = *view.inst;
    const Task& k = inst.tasks[task_index];
    const int src = k.src;
    const int t = view.now;

    // (a) ground fast path: nearest available station that still meets the
    // deadline; availability first, then distance, then id.
    int best_gs = -1;
    double best_avail = 0.0, best_dist = 0.0;
    for (int g = 0; g < inst.num_stations; ++g) {
        if (!view.gs_visible_now(src, g)) continue;
        double avail = view.ground_queue->available(g, t);
        double dist = view.distance(src, g);
        if (best_gs < 0 || avail < best_avail ||
            (avail == best_avail && (dist < best_dist || (dist == best_dist && g < best_gs)))) {
            best_gs = g;
            best_avail = avail;
            best_dist = dist;
        }
    }
    if (best_gs >= 0) {
        double dur = nettopo::transfer_slots(k.size_bits, inst.gsl_cap_bps, inst.dt_s);
        if (best_avail + dur <= static_cast<double>(k.t_deadline)) {
            sim::Decision d;
            d.kind = sim::Decision::Kind::Ground;
            d.dst = inst.station_node(best_gs);
            return d;
        }
    }

    // (b) local processing when the whole queue fits under sunlight.
    ArrangePlan trial = trial_local(view, task_index);
    if (trial.flag_sun && trial.infeasible.empty()) {
        sim::Decision d;
        d.kind = sim::Decision::Kind::Satellite;
        d.dst = src;
        d.starts = trial.starts;
        return d;
    }

    // (c) offload to the alternative orbit with the lowest load-to-sunlight
    // ratio; within it the satellite reporting the most энергy wins.
    const auto& alt = assignment_.alt_set[inst.orbit_of[src]];
    int best_orbit = -1;
    double best_ratio = 0.0;
    for (int j : alt) {
        if (assignment_.sunlit[j] <= 0) continue;  // ratio undefined for dark orbits
        double ratio = static_cast<double>(cnt_[j]) / assignment_.sunlit[j];
        if (best_orbit < 0 || ratio < best_ratio || (ratio == best_ratio && j < best_orbit)) {
            best_orbit = j;
            best_ratio = ratio;
        }
    }

    sim::Decision d;
    d.kind = sim::Decision::Kind::Satellite;
    if (best_orbit < 0) {
        // No usable orbit in the subset: keep the task at the source.
        d.dst = src;
        d.starts = trial.starts;
        d.infeasible = trial.infeasible;
        d.no_feasible_destination = !trial.infeasible.empty();
        return d;
    }
    cnt_[best_orbit] += k.t_compute;

    int best_sat = -1;
    double best_e = 0.0;
    for (int s = 0; s < inst.num_sats; ++s) {
        if (inst.orbit_of[s] != best_orbit) continue;
        double e = query_energy_j(inst, s, t, view.battery(s), (*view.queued_cp_slots)[s]);
        if (best_sat < 0 || e > best_e || (e == best_e && s < best_sat)) {
            best_sat = s;
            best_e = e;
        }
    }
    d.dst = best_sat;
    if (best_sat == src) {
        // Alg. 2 keeps the precomputed arrangement when the choice lands home.
        d.starts = trial.starts;
        d.infeasible = trial.infeasible;
        d.no_feasible_destination = !trial.infeasible.empty();
    }
    return d;
}

sim::Decision SunlightAwareStrategy::on_offload_complete(const sim::SimView& view, int task_index,
                                                         int dst_sat) {
    const sbeo::SbeoInstance& inst = *view.inst;
    // The destination re-arranges its whole pending queue (which already
    // includes the landed task) from the current slot.
    std::vector<ArrangeItem> queue;
    for (int idx : (*view.pending)[dst_sat]) {
        const Task& q = inst.tasks[idx];
        queue.push_back({idx, q.t_compute, q.t_deadline});
    }
    ArrangePlan plan = arrange(inst, dst_sat, view.free_from(dst_sat), std::move(queue));
    sim::Decision d;
    d.kind = sim::Decision::Kind::Satellite;
    d.dst = dst_sat;
    d.starts = plan.starts;
    d.infeasible = plan.infeasible;
    for (int idx : plan.infeasible)
        if (idx == task_index) d.no_feasible_destination = true;
    return d;
}

}  // namespace secsim::scheduler
