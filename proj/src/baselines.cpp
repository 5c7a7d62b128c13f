#include "secsim/baselines.hpp"

#include <algorithm>
#include <stdexcept>

#include "secsim/scheduler.hpp"

namespace secsim::baselines {

StrategyKind strategy_from_name(const std::string& name) {
    if (name == "SunlightAware") return StrategyKind::SunlightAware;
    if (name == "LocalImmediate") return StrategyKind::LocalImmediate;
    if (name == "IntraOrbitPipeline") return StrategyKind::IntraOrbitPipeline;
    if (name == "GreedyPeer") return StrategyKind::GreedyPeer;
    if (name == "GroundOnly") return StrategyKind::GroundOnly;
    throw ConfigError("strategy", "unknown strategy '" + name + "'");
}

const char* strategy_name(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::SunlightAware: return "SunlightAware";
        case StrategyKind::LocalImmediate: return "LocalImmediate";
        case StrategyKind::IntraOrbitPipeline: return "IntraOrbitPipeline";
        case StrategyKind::GreedyPeer: return "GreedyPeer";
        case StrategyKind::GroundOnly: return "GroundOnly";
    }
    return "?";
}

std::unique_ptr<sim::Strategy> make_strategy(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::SunlightAware: return std::make_unique<scheduler::SunlightAwareStrategy>();
        case StrategyKind::LocalImmediate: return std::make_unique<LocalImmediateStrategy>();
        case StrategyKind::IntraOrbitPipeline:
            return std::make_unique<IntraOrbitPipelineStrategy>();
        case StrategyKind::GreedyPeer: return std::make_unique<GreedyPeerStrategy>();
        case StrategyKind::GroundOnly: return std::make_unique<GroundOnlyStrategy>();
    }
    throw std::logic_error("unreachable");
}

namespace {

// Earliest-free-slot FIFO reservation shared by the on-board baselines.
int fifo_reserve(std::vector<int>& tail, const sim::SimView& view, int sat, int ready_slot,
                 int t_cp) {
    if (tail.empty()) tail.assign(view.inst->num_sats, 0);
    int begin = std::max({ready_slot, tail[sat], view.free_from(sat)});
    tail[sat] = begin + t_cp;
    return begin;
}

}  // namespace

// ---- LocalImmediate -------------------------------------------------------

int LocalImmediateStrategy::reserve(const sim::SimView& view, int sat, int ready_slot, int t_cp) {
    return fifo_reserve(tail_, view, sat, ready_slot, t_cp);
}

sim::Decision LocalImmediateStrategy::on_arrival(const sim::SimView& view, int task_index) {
    const Task& k = view.inst->tasks[task_index];
    sim::Decision d;
    d.kind = sim::Decision::Kind::Satellite;
    d.dst = k.src;
    d.starts = {{task_index, reserve(view, k.src, view.now, k.t_compute)}};
    return d;
}

sim::Decision LocalImmediateStrategy::on_offload_complete(const sim::SimView&, int, int) {
    throw std::logic_error("LocalImmediate never offloads");
}

// ---- IntraOrbitPipeline ---------------------------------------------------

int IntraOrbitPipelineStrategy::reserve(const sim::SimView& view, int sat, int ready_slot,
                                        int t_cp) {
    return fifo_reserve(tail_, view, sat, ready_slot, t_cp);
}

sim::Decision IntraOrbitPipelineStrategy::on_arrival(const sim::SimView& view, int task_index) {
    const sbeo::SbeoInstance& inst = *view.inst;
    const Task& k = inst.tasks[task_index];
    if (next_.empty()) next_.assign(inst.num_orbits, 0);

    int orbit = inst.orbit_of[k.src];
    std::vector<int> members;
    for (int s = 0; s < inst.num_sats; ++s)
        if (inst.orbit_of[s] == orbit) members.push_back(s);
    int dst = members[next_[orbit] % members.size()];
    next_[orbit] = (next_[orbit] + 1) % static_cast<int>(members.size());

    sim::Decision d;
    d.kind = sim::Decision::Kind::Satellite;
    d.dst = dst;
    if (dst == k.src) d.starts = {{task_index, reserve(view, dst, view.now, k.t_compute)}};
    return d;
}

sim::Decision IntraOrbitPipelineStrategy::on_offload_complete(const sim::SimView& view,
                                                              int task_index, int dst_sat) {
    const Task& k = view.inst->tasks[task_index];
    sim::Decision d;
    d.kind = sim::Decision::Kind::Satellite;
    d.dst = dst_sat;
    d.starts = {{task_index, reserve(view, dst_sat, view.now, k.t_compute)}};
    return d;
}

// ---- GreedyPeer -----------------------------------------------------------

int GreedyPeerStrategy::reserve(const sim::SimView& view, int sat, int ready_slot, int t_cp) {
    return fifo_reserve(tail_, view, sat, ready_slot, t_cp);
}

sim::Decision GreedyPeerStrategy::on_arrival(const sim::SimView& view, int task_index) {
    const sbeo::SbeoInstance& inst = *view.inst;
    const Task& k = inst.tasks[task_index];

    // src wins ties, then the smallest id; the sunlight state never enters.
    int dst = k.src;
    double best = view.battery(k.src);
    for (int nbr : inst.isl_adj[k.src]) {
        double b = view.battery(nbr);
        if (b > best || (b == best && dst != k.src && nbr < dst)) {
            dst = nbr;
            best = b;
        }
    }

    sim::Decision d;
    d.kind = sim::Decision::Kind::Satellite;
    d.dst = dst;
    if (dst == k.src) d.starts = {{task_index, reserve(view, dst, view.now, k.t_compute)}};
    return d;
}

sim::Decision GreedyPeerStrategy::on_offload_complete(const sim::SimView& view, int task_index,
                                                      int dst_sat) {
    const Task& k = view.inst->tasks[task_index];
    sim::Decision d;
    d.kind = sim::Decision::Kind::Satellite;
    d.dst = dst_sat;
    d.starts = {{task_index, reserve(view, dst_sat, view.now, k.t_compute)}};
    return d;
}

// ---- GroundOnly -----------------------------------------------------------

sim::Decision GroundOnlyStrategy::on_arrival(const sim::SimView& view, int task_index) {
    const sbeo::SbeoInstance& inst = *view.inst;
    const Task& k = inst.tasks[task_index];

    int best_gs = -1;
    double best_avail = 0.0, best_dist = 0.0;
    for (int g = 0; g < inst.num_stations; ++g) {
        if (!view.gs_visible_now(k.src, g)) continue;
        double avail = view.ground_queue->available(g, view.now);
        double dist = view.distance(k.src, g);
        if (best_gs < 0 || avail < best_avail ||
            (avail == best_avail && (dist < best_dist || (dist == best_dist && g < best_gs)))) {
            best_gs = g;
            best_avail = avail;
            best_dist = dist;
        }
    }

    sim::Decision d;
    if (best_gs < 0) {
        d.kind = sim::Decision::Kind::Defer;  // wait for the next visible station
        return d;
    }
    d.kind = sim::Decision::Kind::Ground;
    d.dst = inst.station_node(best_gs);
    return d;
}

sim::Decision GroundOnlyStrategy::on_offload_complete(const sim::SimView&, int, int) {
    throw std::logic_error("GroundOnly never lands tasks on satellites");
}

}  // namespace secsim::baselines
