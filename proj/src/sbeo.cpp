#include "secsim/sbeo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"

namespace secsim::sbeo {

void SbeoInstance::validate() const {
    if (dt_s <= 0) throw ConfigError("dt_s", "must be > 0");
    if (t_max <= 0) throw ConfigError("t_max", "must be > 0");
    if (num_sats <= 0) throw ConfigError("num_sats", "must be > 0");
    if (static_cast<int>(orbit_of.size()) != num_sats)
        throw ConfigError("orbit_of", "must have one entry per satellite");
    if (static_cast<int>(isl_adj.size()) != num_sats)
        throw ConfigError("isl_adj", "must have one entry per satellite");
    for (int o : orbit_of)
        if (o < 0 || o >= num_orbits) throw ConfigError("orbit_of", "orbit index out of range");
    power.validate();
    for (const Task& k : tasks) {
        validate_task(k);
        if (k.src < 0 || k.src >= num_sats)
            throw ConfigError("tasks", "task " + std::to_string(k.id) + ": bad source satellite");
        if (k.t_deadline > t_max)
            throw ConfigError("tasks",
                              "task " + std::to_string(k.id) + ": deadline beyond horizon");
    }
}

nettopo::TopologySnapshot SbeoInstance::snapshot(int t) const {
    std::vector<std::vector<uint8_t>> vis_row(num_sats, std::vector<uint8_t>(num_stations, 0));
    for (int s = 0; s < num_sats; ++s)
        for (int g = 0; g < num_stations; ++g) vis_row[s][g] = gs_visible(s, g, t) ? 1 : 0;
    return nettopo::build_snapshot(t, isl_adj, num_stations, vis_row, isl_cap_bps, gsl_cap_bps);
}

OffloadReplay replay_offloads(const SbeoInstance& inst, const std::vector<TaskPlacement>& placements) {
    const int n = static_cast<int>(inst.tasks.size());
    OffloadReplay rep;
    rep.t_offload.assign(n, -1);
    rep.ground_finish.assign(n, std::numeric_limits<double>::quiet_NaN());
    rep.ground_visible_at_arrival.assign(n, 0);
    rep.gs_tx.assign(inst.num_sats, {});

    // Ground tasks: serial per-station queue, admitted in (arrival, id) order.
    nettopo::GroundQueue queue(inst.num_stations);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return inst.tasks[a].t_arrival < inst.tasks[b].t_arrival;
    });
    for (int idx : order) {
        const Task& k = inst.tasks[idx];
        int dst = placements[idx].dst;
        if (dst < inst.num_sats) continue;
        int g = dst - inst.num_sats;
        rep.ground_visible_at_arrival[idx] = inst.gs_visible(k.src, g, k.t_arrival) ? 1 : 0;
        double dur = nettopo::transfer_slots(k.size_bits, inst.gsl_cap_bps, inst.dt_s);
        double start = queue.available(g, k.t_arrival);
        double finish = queue.commit(g, k.t_arrival, dur);
        rep.ground_finish[idx] = finish;
        rep.t_offload[idx] = nettopo::finish_slot(finish);
        rep.gs_tx[k.src].emplace_back(start, finish);
    }

    // Satellite destinations: local is free and instant, the rest are flows.
    std::vector<nettopo::FlowState> flows;
    std::vector<int> flow_task;
    for (int idx = 0; idx < n; ++idx) {
        const Task& k = inst.tasks[idx];
        int dst = placements[idx].dst;
        if (dst >= inst.num_sats || dst < 0) continue;
        if (dst == k.src) {
            rep.t_offload[idx] = nettopo::local_offload_shortcut(k);
            continue;
        }
        nettopo::FlowState f;
        f.task_id = k.id;
        f.src = k.src;
        f.dst = dst;
        f.size_bits = k.size_bits;
        flows.push_back(f);
        flow_task.push_back(idx);
    }

    if (!flows.empty()) {
        int t_begin = inst.t_max;
        for (int i : flow_task) t_begin = std::min(t_begin, inst.tasks[i].t_arrival);
        for (int t = t_begin; t < inst.t_max; ++t) {
            std::vector<nettopo::FlowState*> active;
            std::vector<int> active_idx;
            for (size_t i = 0; i < flows.size(); ++i) {
                if (flows[i].finished() || inst.tasks[flow_task[i]].t_arrival > t) continue;
                active.push_back(&flows[i]);
                active_idx.push_back(static_cast<int>(i));
            }
            if (active.empty()) {
                bool any_pending = false;
                for (size_t i = 0; i < flows.size(); ++i)
                    any_pending |= !flows[i].finished();
                if (!any_pending) break;
                continue;
            }
            auto topo = inst.snapshot(t);
            for (nettopo::FlowState* f : active) {
                auto path = nettopo::route(topo, f->src, f->dst);
                f->path = path ? *path : std::vector<int>{};
            }
            nettopo::advance_flows(active, topo, inst.dt_s);
        }
        for (size_t i = 0; i < flows.size(); ++i)
            if (flows[i].finished()) rep.t_offload[flow_task[i]] = flows[i].finished_slot;
    }
    return rep;
}

std::vector<Violation> check_feasible(const SbeoInstance& inst, const SbeoSolution& sol) {
    std::vector<Violation> out;
    const int n = static_cast<int>(inst.tasks.size());
    if (static_cast<int>(sol.placements.size()) != n) {
        out.push_back({Violation::MissingPlacement, -1, -1, -1, "placement count mismatch"});
        return out;
    }
    for (int idx = 0; idx < n; ++idx) {
        const TaskPlacement& p = sol.placements[idx];
        if (p.dst < 0 || p.dst >= inst.num_sats + inst.num_stations)
            out.push_back({Violation::MissingPlacement, inst.tasks[idx].id, -1, -1,
                           "task has no destination"});
        else if (p.dst < inst.num_sats && p.t_begin < 0)
            out.push_back({Violation::MissingPlacement, inst.tasks[idx].id, p.dst, -1,
                           "satellite task has no begin slot"});
    }
    if (!out.empty()) return out;

    OffloadReplay rep = replay_offloads(inst, sol.placements);

    // (i) at most one task processing per satellite per slot
    std::vector<std::vector<int>> owner(inst.num_sats, std::vector<int>(inst.t_max, -1));
    for (int idx = 0; idx < n; ++idx) {
        const TaskPlacement& p = sol.placements[idx];
        if (p.dst >= inst.num_sats) continue;
        const Task& k = inst.tasks[idx];
        for (int t = p.t_begin; t < p.t_begin + k.t_compute && t < inst.t_max; ++t) {
            if (t < 0) continue;
            if (owner[p.dst][t] >= 0) {
                out.push_back({Violation::Overlap, k.id, p.dst, t,
                               "slot " + std::to_string(t) + " already used by task " +
                                   std::to_string(owner[p.dst][t])});
            } else {
                owner[p.dst][t] = k.id;
            }
        }
    }

    for (int idx = 0; idx < n; ++idx) {
        const Task& k = inst.tasks[idx];
        const TaskPlacement& p = sol.placements[idx];
        if (p.dst < inst.num_sats) {
            // (ii) offload before processing
            if (rep.t_offload[idx] < 0)
                out.push_back({Violation::OffloadUnfinished, k.id, p.dst, -1,
                               "offload does not complete within the horizon"});
            else if (rep.t_offload[idx] > p.t_begin)
                out.push_back({Violation::BeforeOffload, k.id, p.dst, p.t_begin,
                               "T_of=" + std::to_string(rep.t_offload[idx]) + " > T_bcp=" +
                                   std::to_string(p.t_begin)});
            // (iii) last processing slot at most T_ddl - 1
            if (p.t_begin + k.t_compute > k.t_deadline)
                out.push_back({Violation::DeadlineMissed, k.id, p.dst, p.t_begin + k.t_compute - 1,
                               "processing ends after deadline"});
        } else {
            int g = p.dst - inst.num_sats;
            if (!rep.ground_visible_at_arrival[idx])
                out.push_back({Violation::GroundNotVisible, k.id, k.src, k.t_arrival,
                               "station " + std::to_string(g) + " not visible at arrival"});
            if (rep.ground_finish[idx] > static_cast<double>(k.t_deadline))
                out.push_back({Violation::DeadlineMissed, k.id, -1, rep.t_offload[idx],
                               "downlink finishes after deadline"});
        }
    }
    return out;
}

std::vector<std::vector<uint8_t>> occupancy(const SbeoInstance& inst, const SbeoSolution& sol) {
    std::vector<std::vector<uint8_t>> occ(inst.num_sats, std::vector<uint8_t>(inst.t_max, 0));
    for (size_t idx = 0; idx < inst.tasks.size(); ++idx) {
        const TaskPlacement& p = sol.placements[idx];
        if (p.dst < 0 || p.dst >= inst.num_sats) continue;
        const Task& k = inst.tasks[idx];
        for (int t = std::max(0, p.t_begin); t < p.t_begin + k.t_compute && t < inst.t_max; ++t)
            occ[p.dst][t] = 1;
    }
    return occ;
}

namespace {

// gsl_on per satellite-slot under either power-gating mode.
std::vector<std::vector<uint8_t>> gsl_on_table(const SbeoInstance& inst, const OffloadReplay* rep) {
    std::vector<std::vector<uint8_t>> on(inst.num_sats, std::vector<uint8_t>(inst.t_max, 0));
    if (!inst.gsl_power_transmit_only) {
        for (int s = 0; s < inst.num_sats; ++s)
            for (int t = 0; t < inst.t_max; ++t)
                for (int g = 0; g < inst.num_stations; ++g)
                    if (inst.gs_visible(s, g, t)) {
                        on[s][t] = 1;
                        break;
                    }
        return on;
    }
    for (int s = 0; s < inst.num_sats && rep; ++s) {
        for (auto [start, finish] : rep->gs_tx[s]) {
            int t0 = std::max(0, static_cast<int>(std::floor(start)));
            int t1 = std::min(inst.t_max - 1, nettopo::finish_slot(finish));
            for (int t = t0; t <= t1; ++t) on[s][t] = 1;
        }
    }
    return on;
}

}  // namespace

energy::BatteryTrace replay_battery(const SbeoInstance& inst, const SbeoSolution& sol,
                                    std::vector<Event>* brownouts, ExecMode mode) {
    auto occ = occupancy(inst, sol);
    OffloadReplay rep;
    if (inst.gsl_power_transmit_only) rep = replay_offloads(inst, sol.placements);
    auto gsl_on = gsl_on_table(inst, inst.gsl_power_transmit_only ? &rep : nullptr);

    energy::BatteryTrace trace;
    trace.num_sats = inst.num_sats;
    trace.num_slots = inst.t_max;
    trace.b_vol_j = inst.power.battery_j();
    trace.energy_j.assign(static_cast<size_t>(inst.num_sats) * inst.t_max, 0.0);

    std::vector<std::vector<Event>> per_sat_events(brownouts ? inst.num_sats : 0);
    auto run_sat = [&](int s) {
        double b = inst.power.battery_j();
        for (int t = 0; t < inst.t_max; ++t) {
            auto r = energy::battery_step(inst.sunlit(s, t), occ[s][t], gsl_on[s][t] != 0,
                                          inst.power, inst.isl_count, inst.dt_s, b);
            b = r.energy_j;
            trace.energy_j[static_cast<size_t>(s) * inst.t_max + t] = b;
            if (r.brownout && brownouts)
                per_sat_events[s].push_back({EventKind::Brownout, t, -1, s});
        }
    };

    if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(static)
        for (int s = 0; s < inst.num_sats; ++s) run_sat(s);
    } else {
        for (int s = 0; s < inst.num_sats; ++s) run_sat(s);
    }
    if (brownouts)
        for (auto& evs : per_sat_events)
            brownouts->insert(brownouts->end(), evs.begin(), evs.end());
    return trace;
}

double objective(const SbeoInstance& inst, const SbeoSolution& sol, ExecMode mode) {
    energy::BatteryTrace trace = replay_battery(inst, sol, nullptr, mode);
    double worst = 0.0;
    for (int s = 0; s < inst.num_sats; ++s)
        for (int t = 0; t < inst.t_max; ++t) worst = std::max(worst, trace.dod(s, t));
    return worst;
}

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

namespace {

struct TaskChoices {
    // Satellite choices are (dst, every begin slot in [T_arv, T_ddl - T_cp]),
    // followed by ground choices (dst only). This is the (dst, t_begin)
    // tie-break order.
    int start_lo = 0;
    int start_hi = -1;  // inclusive
    int num_sats = 0;
    int num_stations = 0;

    std::uint64_t count() const {
        std::uint64_t starts = start_hi >= start_lo ? start_hi - start_lo + 1 : 0;
        return static_cast<std::uint64_t>(num_sats) * starts + num_stations;
    }
    TaskPlacement decode(std::uint64_t c, int sat_count) const {
        std::uint64_t starts = start_hi - start_lo + 1;
        if (c < static_cast<std::uint64_t>(num_sats) * starts) {
            return {static_cast<int>(c / starts), start_lo + static_cast<int>(c % starts)};
        }
        int g = static_cast<int>(c - static_cast<std::uint64_t>(num_sats) * starts);
        return {sat_count + g, -1};
    }
};

std::vector<TaskChoices> build_choices(const SbeoInstance& inst) {
    std::vector<TaskChoices> out;
    out.reserve(inst.tasks.size());
    for (const Task& k : inst.tasks) {
        TaskChoices c;
        c.start_lo = k.t_arrival;
        c.start_hi = k.t_deadline - k.t_compute;
        c.num_sats = inst.num_sats;
        c.num_stations = inst.num_stations;
        out.push_back(c);
    }
    return out;
}

std::uint64_t candidate_space(const std::vector<TaskChoices>& choices, std::uint64_t guard) {
    std::uint64_t total = 1;
    for (const TaskChoices& c : choices) {
        std::uint64_t n = c.count();
        if (n == 0) return 0;
        if (total > guard / n + 1) return guard + 1;
        total *= n;
        if (total > guard) return guard + 1;
    }
    return total;
}

// Lexicographic rank of a candidate: (dst, t_begin) per task, flattened.
std::vector<int> rank_of(const std::vector<TaskPlacement>& ps) {
    std::vector<int> r;
    r.reserve(ps.size() * 2);
    for (const TaskPlacement& p : ps) {
        r.push_back(p.dst);
        r.push_back(p.t_begin);
    }
    return r;
}

struct Best {
    bool found = false;
    double obj = 0.0;
    std::vector<int> rank;
    std::vector<TaskPlacement> placements;

    void offer(double o, std::vector<TaskPlacement> ps) {
        std::vector<int> r = rank_of(ps);
        if (!found || o < obj || (o == obj && r < rank)) {
            found = true;
            obj = o;
            rank = std::move(r);
            placements = std::move(ps);
        }
    }
    void merge(const Best& other) {
        if (!other.found) return;
        if (!found || other.obj < obj || (other.obj == obj && other.rank < rank)) *this = other;
    }
};

// All begin-slot combinations for the satellite tasks of one destination
// vector, with overlap and offload-ordering constraints pruned en route.
void enumerate_starts(const SbeoInstance& inst, const std::vector<TaskPlacement>& dsts,
                      const std::vector<int>& t_offload, Best& best) {
    const int n = static_cast<int>(inst.tasks.size());
    std::vector<int> sat_tasks;
    for (int i = 0; i < n; ++i)
        if (dsts[i].dst < inst.num_sats) sat_tasks.push_back(i);

    std::vector<TaskPlacement> current = dsts;
    std::vector<std::vector<uint8_t>> occ(inst.num_sats, std::vector<uint8_t>(inst.t_max, 0));

    auto occupy = [&](int task_idx, int begin, uint8_t v) {
        const Task& k = inst.tasks[task_idx];
        int dst = current[task_idx].dst;
        for (int t = begin; t < begin + k.t_compute; ++t) occ[dst][t] = v;
    };
    auto fits = [&](int task_idx, int begin) {
        const Task& k = inst.tasks[task_idx];
        int dst = current[task_idx].dst;
        if (begin + k.t_compute > inst.t_max) return false;
        for (int t = begin; t < begin + k.t_compute; ++t)
            if (occ[dst][t]) return false;
        return true;
    };

    auto recurse = [&](auto&& self, size_t pos) -> void {
        if (pos == sat_tasks.size()) {
            SbeoSolution sol{current};
            best.offer(objective(inst, sol, ExecMode::Serial), current);
            return;
        }
        int idx = sat_tasks[pos];
        const Task& k = inst.tasks[idx];
        int lo = std::max(k.t_arrival, t_offload[idx]);
        int hi = k.t_deadline - k.t_compute;
        for (int b = lo; b <= hi; ++b) {
            if (!fits(idx, b)) continue;
            current[idx].t_begin = b;
            occupy(idx, b, 1);
            self(self, pos + 1);
            occupy(idx, b, 0);
        }
        current[idx].t_begin = -1;
    };
    recurse(recurse, 0);
}

// Checks the ground/offload side of one destination vector and hands the
// start enumeration off; returns false when the vector is infeasible.
void search_dst_vector(const SbeoInstance& inst, std::vector<TaskPlacement> dsts, Best& best) {
    OffloadReplay rep = replay_offloads(inst, dsts);
    const int n = static_cast<int>(inst.tasks.size());
    for (int i = 0; i < n; ++i) {
        const Task& k = inst.tasks[i];
        if (dsts[i].dst >= inst.num_sats) {
            if (!rep.ground_visible_at_arrival[i]) return;
            if (rep.ground_finish[i] > static_cast<double>(k.t_deadline)) return;
        } else {
            if (rep.t_offload[i] < 0) return;
            if (rep.t_offload[i] > k.t_deadline - k.t_compute) return;
        }
    }
    enumerate_starts(inst, dsts, rep.t_offload, best);
}

}  // namespace

OracleOutcome brute_force_solve(const SbeoInstance& inst, ExecMode mode, std::uint64_t guard) {
    OracleOutcome out;
    auto choices = build_choices(inst);
    out.candidates = candidate_space(choices, guard);
    if (out.candidates > guard) {
        out.status = OracleOutcome::TooLarge;
        return out;
    }
    if (inst.tasks.empty()) {
        out.status = OracleOutcome::Ok;
        out.objective = objective(inst, SbeoSolution{}, ExecMode::Serial);
        return out;
    }

    const int n = static_cast<int>(inst.tasks.size());
    // Destination vectors enumerated odometer-style: sats ascending, then
    // ground stations ascending, per task.
    std::vector<int> dst_domain;
    for (int s = 0; s < inst.num_sats; ++s) dst_domain.push_back(s);
    for (int g = 0; g < inst.num_stations; ++g) dst_domain.push_back(inst.num_sats + g);
    const std::uint64_t domain = dst_domain.size();
    std::uint64_t groups = 1;
    for (int i = 0; i < n; ++i) groups *= domain;

    auto decode_group = [&](std::uint64_t r) {
        std::vector<TaskPlacement> dsts(n);
        for (int i = n - 1; i >= 0; --i) {
            dsts[i] = {dst_domain[r % domain], -1};
            r /= domain;
        }
        return dsts;
    };

    Best best;
    if (mode == ExecMode::Parallel) {
#pragma omp parallel
        {
            Best local;
#pragma omp for schedule(dynamic, 1) nowait
            for (std::int64_t r = 0; r < static_cast<std::int64_t>(groups); ++r)
                search_dst_vector(inst, decode_group(static_cast<std::uint64_t>(r)), local);
#pragma omp critical
            best.merge(local);
        }
    } else {
        for (std::uint64_t r = 0; r < groups; ++r) search_dst_vector(inst, decode_group(r), best);
    }

    if (!best.found) {
        out.status = OracleOutcome::Infeasible;
        return out;
    }
    out.status = OracleOutcome::Ok;
    out.solution.placements = best.placements;
    out.objective = best.obj;
    return out;
}

OracleOutcome brute_force_solve_reference(const SbeoInstance& inst, std::uint64_t guard) {
    OracleOutcome out;
    auto choices = build_choices(inst);
    out.candidates = candidate_space(choices, guard);
    if (out.candidates > guard) {
        out.status = OracleOutcome::TooLarge;
        return out;
    }
    if (inst.tasks.empty()) {
        out.status = OracleOutcome::Ok;
        out.objective = objective(inst, SbeoSolution{}, ExecMode::Serial);
        return out;
    }

    const int n = static_cast<int>(inst.tasks.size());
    std::vector<std::uint64_t> counter(n, 0);
    Best best;
    bool done = false;
    while (!done) {
        std::vector<TaskPlacement> ps(n);
        for (int i = 0; i < n; ++i) ps[i] = choices[i].decode(counter[i], inst.num_sats);
        SbeoSolution sol{ps};
        if (check_feasible(inst, sol).empty())
            best.offer(objective(inst, sol, ExecMode::Serial), ps);
        // odometer increment
        int pos = n - 1;
        while (pos >= 0) {
            if (++counter[pos] < choices[pos].count()) break;
            counter[pos] = 0;
            --pos;
        }
        done = pos < 0;
    }

    if (!best.found) {
        out.status = OracleOutcome::Infeasible;
        return out;
    }
    out.status = OracleOutcome::Ok;
    out.solution.placements = best.placements;
    out.objective = best.obj;
    return out;
}

// ---------------------------------------------------------------------------
// Serialization (field-for-field mirror, used by golden tests and the CLI)
// ---------------------------------------------------------------------------

std::string SbeoInstance::to_json_string() const {
    nlohmann::json j;
    j["dt_s"] = dt_s;
    j["t_max"] = t_max;
    j["cycle_slots"] = cycle_slots;
    j["num_sats"] = num_sats;
    j["num_stations"] = num_stations;
    j["isl_count"] = isl_count;
    j["num_orbits"] = num_orbits;
    j["orbit_of"] = orbit_of;
    j["isl_adj"] = isl_adj;
    j["isl_cap_bps"] = isl_cap_bps;
    j["gsl_cap_bps"] = gsl_cap_bps;
    j["power"] = {{"p_solar_w", power.p_solar_w}, {"p_basic_w", power.p_basic_w},
                  {"p_isl_w", power.p_isl_w},     {"p_gsl_w", power.p_gsl_w},
                  {"p_cp_w", power.p_cp_w},       {"battery_wh", power.battery_wh}};
    j["gsl_power_transmit_only"] = gsl_power_transmit_only;
    j["sun"] = {{"num_sats", sun.num_sats}, {"num_slots", sun.num_slots}, {"bits", sun.bits}};
    j["vis"] = {{"num_sats", vis.num_sats},
                {"num_stations", vis.num_stations},
                {"num_slots", vis.num_slots},
                {"bits", vis.bits}};
    nlohmann::json jt = nlohmann::json::array();
    for (const Task& k : tasks)
        jt.push_back({{"id", k.id},
                      {"src", k.src},
                      {"size_bits", k.size_bits},
                      {"t_arrival", k.t_arrival},
                      {"t_compute", k.t_compute},
                      {"t_deadline", k.t_deadline}});
    j["tasks"] = jt;
    return j.dump(2);
}

SbeoInstance SbeoInstance::from_json_string(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SbeoInstance inst;
    inst.dt_s = j.at("dt_s");
    inst.t_max = j.at("t_max");
    inst.cycle_slots = j.at("cycle_slots");
    inst.num_sats = j.at("num_sats");
    inst.num_stations = j.at("num_stations");
    inst.isl_count = j.at("isl_count");
    inst.num_orbits = j.at("num_orbits");
    inst.orbit_of = j.at("orbit_of").get<std::vector<int>>();
    inst.isl_adj = j.at("isl_adj").get<std::vector<std::vector<int>>>();
    inst.isl_cap_bps = j.at("isl_cap_bps");
    inst.gsl_cap_bps = j.at("gsl_cap_bps");
    const auto& p = j.at("power");
    inst.power = {p.at("p_solar_w"), p.at("p_basic_w"), p.at("p_isl_w"),
                  p.at("p_gsl_w"),   p.at("p_cp_w"),    p.at("battery_wh")};
    inst.gsl_power_transmit_only = j.at("gsl_power_transmit_only");
    inst.sun.num_sats = j.at("sun").at("num_sats");
    inst.sun.num_slots = j.at("sun").at("num_slots");
    inst.sun.bits = j.at("sun").at("bits").get<std::vector<uint8_t>>();
    inst.vis.num_sats = j.at("vis").at("num_sats");
    inst.vis.num_stations = j.at("vis").at("num_stations");
    inst.vis.num_slots = j.at("vis").at("num_slots");
    inst.vis.bits = j.at("vis").at("bits").get<std::vector<uint8_t>>();
    for (const auto& kt : j.at("tasks"))
        inst.tasks.push_back({kt.at("id"), kt.at("src"), kt.at("size_bits"), kt.at("t_arrival"),
                              kt.at("t_compute"), kt.at("t_deadline")});
    inst.validate();
    return inst;
}

}  // namespace secsim::sbeo
