#include "secsim/nettopo.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

namespace secsim::nettopo {

bool TopologySnapshot::has_edge(int i, int j) const {
    return std::binary_search(adj[i].begin(), adj[i].end(), j);
}

double TopologySnapshot::capacity_bps(int i, int j) const {
    if (is_sat(i) && is_sat(j)) return isl_cap_bps;
    return gsl_cap_bps;
}

TopologySnapshot build_snapshot(int slot, const std::vector<std::vector<int>>& isl_adj,
                                int num_stations,
                                const std::vector<std::vector<uint8_t>>& gs_visible_row,
                                double isl_cap_bps, double gsl_cap_bps) {
    TopologySnapshot topo;
    topo.slot = slot;
    topo.num_sats = static_cast<int>(isl_adj.size());
    topo.num_stations = num_stations;
    topo.isl_cap_bps = isl_cap_bps;
    topo.gsl_cap_bps = gsl_cap_bps;
    topo.adj.resize(topo.num_nodes());
    for (int s = 0; s < topo.num_sats; ++s) topo.adj[s] = isl_adj[s];
    for (int s = 0; s < topo.num_sats; ++s) {
        for (int g = 0; g < num_stations; ++g) {
            if (gs_visible_row[s][g]) {
                topo.adj[s].push_back(topo.num_sats + g);
                topo.adj[topo.num_sats + g].push_back(s);
            }
        }
    }
    for (auto& nbrs : topo.adj) std::sort(nbrs.begin(), nbrs.end());
    return topo;
}

bool gsl_indicator(const TopologySnapshot& topo, int sat) {
    // 1 - prod_g (1 - Vis): true iff at least one station edge exists
    const auto& nbrs = topo.adj[sat];
    return !nbrs.empty() && nbrs.back() >= topo.num_sats;
}

std::optional<std::vector<int>> route(const TopologySnapshot& topo, int from, int to) {
    if (from == to) return std::vector<int>{from};
    int n = topo.num_nodes();
    // BFS from the destination, then walk forward always taking the
    // smallest-id neighbor that stays on a shortest path; that yields the
    // lexicographically smallest id sequence among minimum-hop paths.
    std::vector<int> dist(n, -1);
    std::deque<int> queue{to};
    dist[to] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (u != to && !topo.is_sat(u)) continue;  // stations do not relay
        for (int v : topo.adj[u]) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    if (dist[from] < 0) return std::nullopt;
    std::vector<int> path{from};
    int cur = from;
    while (cur != to) {
        int next = -1;
        for (int v : topo.adj[cur]) {
            if (dist[v] == dist[cur] - 1 && (v == to || topo.is_sat(v))) {
                next = v;
                break;  // adjacency is sorted, first hit is the smallest id
            }
        }
        path.push_back(next);
        cur = next;
    }
    return path;
}

std::vector<double> advance_flows(std::vector<FlowState*>& active, const TopologySnapshot& topo,
                                  double dt_s) {
    // Count flows per directed link: every flow on a link gets Cap / count,
    // full-duplex links counted per direction.
    std::map<std::pair<int, int>, int> load;
    for (const FlowState* f : active) {
        if (f->finished()) continue;
        for (size_t h = 0; h + 1 < f->path.size(); ++h) {
            int a = f->path[h], b = f->path[h + 1];
            if (!topo.has_edge(a, b)) throw StalePathError(f->task_id, a, b);
            ++load[{a, b}];
        }
    }

    std::vector<double> moved(active.size(), 0.0);
    for (size_t i = 0; i < active.size(); ++i) {
        FlowState* f = active[i];
        if (f->finished()) continue;
        if (f->path.size() < 2) continue;  // unreachable this slot: no progress
        double share = std::numeric_limits<double>::infinity();
        for (size_t h = 0; h + 1 < f->path.size(); ++h) {
            int a = f->path[h], b = f->path[h + 1];
            share = std::min(share, topo.capacity_bps(a, b) / load[{a, b}]);
        }
        double sz = share * dt_s;
        moved[i] = std::min(sz, f->size_bits - f->bits_sent);
        f->bits_sent = std::min(f->bits_sent + sz, f->size_bits);
        // Half-bit slack absorbs accumulated rounding in repeated fair shares.
        if (f->bits_sent >= f->size_bits - 0.5) {
            f->bits_sent = f->size_bits;
            f->finished_slot = topo.slot;
        }
    }
    return moved;
}

std::vector<double> advance_flows_max_min(std::vector<FlowState*>& active,
                                          const TopologySnapshot& topo, double dt_s) {
    struct Link {
        double remaining;
        std::vector<size_t> flows;
    };
    std::map<std::pair<int, int>, Link> links;
    std::vector<bool> frozen(active.size(), true);
    for (size_t i = 0; i < active.size(); ++i) {
        const FlowState* f = active[i];
        if (f->finished() || f->path.size() < 2) continue;
        frozen[i] = false;
        for (size_t h = 0; h + 1 < f->path.size(); ++h) {
            int a = f->path[h], b = f->path[h + 1];
            if (!topo.has_edge(a, b)) throw StalePathError(f->task_id, a, b);
            auto& link = links[{a, b}];
            link.remaining = topo.capacity_bps(a, b);
            link.flows.push_back(i);
        }
    }

    // progressive filling: raise all unfrozen rates together until a link
    // saturates, freeze its flows, repeat
    std::vector<double> rate(active.size(), 0.0);
    size_t unfrozen = 0;
    for (bool f : frozen)
        if (!f) ++unfrozen;
    while (unfrozen > 0) {
        double delta = std::numeric_limits<double>::infinity();
        for (auto& [key, link] : links) {
            int count = 0;
            for (size_t i : link.flows)
                if (!frozen[i]) ++count;
            if (count > 0) delta = std::min(delta, link.remaining / count);
        }
        if (!std::isfinite(delta)) break;
        for (size_t i = 0; i < active.size(); ++i)
            if (!frozen[i]) rate[i] += delta;
        for (auto& [key, link] : links) {
            int count = 0;
            for (size_t i : link.flows)
                if (!frozen[i]) ++count;
            link.remaining -= delta * count;
        }
        for (auto& [key, link] : links) {
            if (link.remaining > 1e-9) continue;
            for (size_t i : link.flows) {
                if (!frozen[i]) {
                    frozen[i] = true;
                    --unfrozen;
                }
            }
        }
    }

    std::vector<double> moved(active.size(), 0.0);
    for (size_t i = 0; i < active.size(); ++i) {
        FlowState* f = active[i];
        if (f->finished() || rate[i] <= 0.0) continue;
        double sz = rate[i] * dt_s;
        moved[i] = std::min(sz, f->size_bits - f->bits_sent);
        f->bits_sent = std::min(f->bits_sent + sz, f->size_bits);
        if (f->bits_sent >= f->size_bits - 0.5) {
            f->bits_sent = f->size_bits;
            f->finished_slot = topo.slot;
        }
    }
    return moved;
}

}  // namespace secsim::nettopo
