#ifndef SECSIM_TESTS_HELPERS_HPP
#define SECSIM_TESTS_HELPERS_HPP

#include <random>
#include <vector>

#include "secsim/sbeo.hpp"

namespace secsim::testing {

// Hand-built instance: ring ISL topology, one orbit per satellite unless
// remapped, all-dark sky and no station visibility until configured.
struct ToyBuilder {
    sbeo::SbeoInstance inst;

    ToyBuilder(int num_sats, int num_stations, int t_max, int cycle_slots = 0) {
        inst.dt_s = 1.0;
        inst.t_max = t_max;
        inst.cycle_slots = cycle_slots > 0 ? cycle_slots : t_max;
        inst.num_sats = num_sats;
        inst.num_stations = num_stations;
        inst.num_orbits = num_sats;
        inst.orbit_of.resize(num_sats);
        for (int s = 0; s < num_sats; ++s) inst.orbit_of[s] = s;
        inst.isl_adj.assign(num_sats, {});
        for (int s = 0; s < num_sats && num_sats > 1; ++s) {
            int prev = (s - 1 + num_sats) % num_sats;
            int next = (s + 1) % num_sats;
            inst.isl_adj[s].push_back(prev);
            if (next != prev) inst.isl_adj[s].push_back(next);
            std::sort(inst.isl_adj[s].begin(), inst.isl_adj[s].end());
            inst.isl_adj[s].erase(std::unique(inst.isl_adj[s].begin(), inst.isl_adj[s].end()),
                                  inst.isl_adj[s].end());
        }
        inst.sun.num_sats = num_sats;
        inst.sun.num_slots = inst.t_max + inst.cycle_slots;
        inst.sun.bits.assign(static_cast<size_t>(num_sats) * inst.sun.num_slots, 0);
        inst.vis.num_sats = num_sats;
        inst.vis.num_stations = num_stations;
        inst.vis.num_slots = inst.t_max;
        inst.vis.bits.assign(static_cast<size_t>(inst.t_max) * num_sats *
                                 std::max(1, num_stations),
                             0);
        if (num_stations == 0) inst.vis.bits.clear();
    }

    ToyBuilder& orbits(std::vector<int> orbit_of, int num_orbits) {
        inst.orbit_of = std::move(orbit_of);
        inst.num_orbits = num_orbits;
        return *this;
    }
    ToyBuilder& sun_always(int sat) {
        for (int t = 0; t < inst.sun.num_slots; ++t) sun_at(sat, t);
        return *this;
    }
    ToyBuilder& sun_from(int sat, int t0) {
        for (int t = t0; t < inst.sun.num_slots; ++t) sun_at(sat, t);
        return *this;
    }
    ToyBuilder& sun_range(int sat, int t0, int t1) {
        for (int t = t0; t < t1 && t < inst.sun.num_slots; ++t) sun_at(sat, t);
        return *this;
    }
    ToyBuilder& sun_at(int sat, int t) {
        inst.sun.bits[static_cast<size_t>(sat) * inst.sun.num_slots + t] = 1;
        return *this;
    }
    ToyBuilder& visible_always(int sat, int gs) {
        for (int t = 0; t < inst.t_max; ++t) visible_at(sat, gs, t);
        return *this;
    }
    ToyBuilder& visible_at(int sat, int gs, int t) {
        inst.vis.bits[(static_cast<size_t>(t) * inst.num_sats + sat) * inst.num_stations + gs] = 1;
        return *this;
    }
    ToyBuilder& task(int src, double bits, int arrival, int compute, int deadline) {
        Task k;
        k.id = static_cast<int>(inst.tasks.size());
        k.src = src;
        k.size_bits = bits;
        k.t_arrival = arrival;
        k.t_compute = compute;
        k.t_deadline = deadline;
        inst.tasks.push_back(k);
        return *this;
    }
    ToyBuilder& caps(double isl_bps, double gsl_bps) {
        inst.isl_cap_bps = isl_bps;
        inst.gsl_cap_bps = gsl_bps;
        return *this;
    }
    sbeo::SbeoInstance build() {
        inst.validate();
        return inst;
    }
};

// Small random instance for oracle-vs-heuristic runs: start windows are kept
// narrow so the candidate space stays inside the oracle guard.
inline sbeo::SbeoInstance random_tiny_instance(std::mt19937& rng) {
    std::uniform_int_distribution<int> sats_d(1, 3), tasks_d(1, 4), horizon_d(30, 60);
    std::uniform_int_distribution<int> cp_d(1, 4), slack_d(0, 10), station_d(0, 1);
    int num_sats = sats_d(rng);
    int num_stations = station_d(rng);
    int t_max = horizon_d(rng);
    ToyBuilder b(num_sats, num_stations, t_max, t_max / 2);

    std::uniform_int_distribution<int> sat_d(0, num_sats - 1);
    std::uniform_int_distribution<int> phase_d(0, t_max - 1), len_d(5, t_max);
    for (int s = 0; s < num_sats; ++s) {
        // one lit stretch somewhere in the window (possibly wrapping)
        int start = phase_d(rng), len = len_d(rng);
        for (int t = 0; t < b.inst.sun.num_slots; ++t)
            if ((t % t_max >= start && t % t_max < start + len) ||
                (start + len > t_max && t % t_max < (start + len) % t_max))
                b.sun_at(s, t);
    }
    for (int g = 0; g < num_stations; ++g) {
        int start = phase_d(rng), len = len_d(rng);
        for (int s = 0; s < num_sats; ++s)
            for (int t = 0; t < t_max; ++t)
                if (t >= start && t < start + len) b.visible_at(s, g, t);
    }
    int n_tasks = tasks_d(rng);
    std::uniform_real_distribution<double> bits_d(1e6, 2e8);
    for (int i = 0; i < n_tasks; ++i) {
        int cp = cp_d(rng);
        std::uniform_int_distribution<int> arr_d(0, t_max - cp - 12);
        int arrival = arr_d(rng);
        int deadline = arrival + cp + slack_d(rng);
        b.task(sat_d(rng), bits_d(rng), arrival, cp, std::min(deadline, t_max));
    }
    return b.build();
}

}  // namespace secsim::testing

#endif
