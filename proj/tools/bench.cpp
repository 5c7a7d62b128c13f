// Timing comparison of the serial reference kernels against their
// OpenMP-parallel counterparts: sun-table build, battery replay, oracle
// enumeration.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "secsim/scheduler.hpp"
#include "secsim/simkit.hpp"

using namespace secsim;

namespace {

template <typename F>
double time_ms(F&& fn, int repeats = 3) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void row(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s %10.2f %10.2f %9.2fx\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

sbeo::SbeoInstance toy_oracle_instance() {
    sbeo::SbeoInstance inst;
    inst.dt_s = 1.0;
    inst.t_max = 40;
    inst.cycle_slots = 20;
    inst.num_sats = 3;
    inst.num_stations = 0;
    inst.num_orbits = 3;
    inst.orbit_of = {0, 1, 2};
    inst.isl_adj = {{1, 2}, {0, 2}, {0, 1}};
    inst.sun.num_sats = 3;
    inst.sun.num_slots = 60;
    inst.sun.bits.assign(3 * 60, 0);
    for (int t = 20; t < 60; ++t) inst.sun.bits[0 * 60 + t] = 1;
    for (int t = 0; t < 30; ++t) inst.sun.bits[1 * 60 + t] = 1;
    for (int t = 10; t < 50; ++t) inst.sun.bits[2 * 60 + t] = 1;
    for (int i = 0; i < 3; ++i) {
        Task k;
        k.id = i;
        k.src = i;
        k.size_bits = 4e8;
        k.t_arrival = 2 * i;
        k.t_compute = 3;
        k.t_deadline = 25 + 4 * i;
        inst.tasks.push_back(k);
    }
    inst.validate();
    return inst;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; parallel paths run serially\n\n");
#endif
    std::printf("%-28s %10s %10s %10s\n", "kernel", "serial ms", "omp ms", "speedup");

    orbital::ConstellationSpec spec;
    spec.shells = {{550.0, 53.0, 6, 8, 1.0}};
    int slots = 17190;  // three orbital periods at 1 s

    double sun_serial =
        time_ms([&] { orbital::build_sun_table(spec, slots, 1.0, ExecMode::Serial); });
    double sun_parallel =
        time_ms([&] { orbital::build_sun_table(spec, slots, 1.0, ExecMode::Parallel); });
    row("sun table 48x17190", sun_serial, sun_parallel);

    orbital::GroundStationSet gs;
    for (int i = 0; i < 10; ++i)
        gs.stations.push_back({"g" + std::to_string(i), -50.0 + 10.0 * i, -120.0 + 24.0 * i});
    double vis_serial =
        time_ms([&] { orbital::build_gs_vis_table(spec, gs, slots, 1.0, ExecMode::Serial); });
    double vis_parallel =
        time_ms([&] { orbital::build_gs_vis_table(spec, gs, slots, 1.0, ExecMode::Parallel); });
    row("visibility 48x10x17190", vis_serial, vis_parallel);

    // battery replay over a full desk scenario
    simkit::ScenarioConfig cfg;
    cfg.constellation = spec;
    cfg.stations = gs;
    cfg.dt_s = 1.0;
    cfg.horizon_slots = 11460;
    cfg.workload.rois = {{0.0, 45.0, -50.0, -15.0}};
    auto inst = simkit::materialize_instance(cfg);
    sbeo::SbeoSolution sol;
    for (const Task& k : inst.tasks) sol.placements.push_back({k.src, k.t_arrival});
    double replay_serial = time_ms([&] { sbeo::objective(inst, sol, ExecMode::Serial); });
    double replay_parallel = time_ms([&] { sbeo::objective(inst, sol, ExecMode::Parallel); });
    row("battery replay 48x11460", replay_serial, replay_parallel);

    auto toy = toy_oracle_instance();
    double oracle_ref = time_ms([&] { sbeo::brute_force_solve_reference(toy, 5'000'000); }, 1);
    double oracle_serial = time_ms([&] { sbeo::brute_force_solve(toy, ExecMode::Serial); }, 1);
    double oracle_parallel = time_ms([&] { sbeo::brute_force_solve(toy, ExecMode::Parallel); }, 1);
    std::printf("%-28s %10.2f %10.2f %9s\n", "oracle naive reference", oracle_ref, oracle_ref,
                "1.00x");
    row("oracle grouped", oracle_serial, oracle_parallel);
    return 0;
}
