#ifndef SECSIM_SIMKIT_HPP
#define SECSIM_SIMKIT_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "secsim/baselines.hpp"
#include "secsim/energy.hpp"
#include "secsim/orbital.hpp"
#include "secsim/sbeo.hpp"
#include "secsim/strategy.hpp"

namespace secsim::simkit {

struct RoiBox {
    double lat_min = 0, lat_max = 0, lon_min = 0, lon_max = 0;
    bool contains(double lat, double lon) const {
        return lat >= lat_min && lat <= lat_max && lon >= lon_min && lon <= lon_max;
    }
};

// Workload presets: per-image processing time (seconds) by power level.
// ship_detection: 10/5/3 s at 30/50/60 W, imaging every second.
// wildfire_segmentation: 120/67/51 s at 30/50/60 W, imaging every 5 seconds.
double preset_processing_time_s(const std::string& type, int power_level_w);
double preset_imaging_interval_s(const std::string& type);

struct WorkloadSpec {
    std::string type = "ship_detection";
    std::vector<RoiBox> rois;
    double imaging_interval_s = 0;  // 0: preset default
    double image_bits = 0;          // 0: megapixels * bits_per_pixel / compression
    double megapixels = 100.0;      // 10K x 10K
    double bits_per_pixel = 8.0;
    double compression_ratio = 1.0;
    double deadline_s = 300.0;
};

struct LifetimeConfig {
    double cycles_at_full_dod = 1000.0;
    double exponent = 2.0;
    double max_cycles = 1e6;
};

struct ScenarioConfig {
    orbital::ConstellationSpec constellation;
    std::string ground_station_file;  // optional; stations may be inline
    orbital::GroundStationSet stations;
    double dt_s = 1.0;
    int horizon_slots = 0;
    int power_level_w = 60;
    energy::PowerParams power;  // p_cp_w is overwritten by power_level_w
    bool gsl_power_transmit_only = false;
    double isl_cap_bps = 1e9;
    double gsl_cap_bps = 100e6;
    WorkloadSpec workload;
    baselines::StrategyKind strategy = baselines::StrategyKind::SunlightAware;
    std::uint64_t seed = 0;
    LifetimeConfig lifetime;

    void validate() const;
    static ScenarioConfig from_json_string(const std::string& text,
                                           const std::string& base_dir = "");
    static ScenarioConfig load(const std::string& path);
    std::string to_json_string() const;
};

// How each task ended up.
struct TaskOutcome {
    int task = -1;
    int dst = -1;        // node id; -1 when never decided
    int t_offload = -1;  // slot
    int t_begin = -1;    // begin-processing slot (satellite tasks)
    int t_complete = -1; // last busy slot (sat) / downlink finish slot (ground)
    bool decided = false;
    bool completed = false;
    bool met = false;
    bool sat_all_sunlit = false;  // every processing slot sunlit
};

struct MetricsReport {
    int num_sats = 0;
    int num_tasks = 0;
    double global_max_dod = 0.0;
    std::vector<double> max_dod;  // per satellite
    std::vector<double> avg_dod;
    std::vector<double> lifetime_years;
    std::vector<int> brownouts;
    double mean_lifetime_years = 0.0;
    double min_lifetime_years = 0.0;
    int brownout_count = 0;
    // percentage of scheduling decisions
    double psd_ground_pct = 0.0;
    double psd_sunlit_pct = 0.0;
    double psd_shadowed_pct = 0.0;
    double sat_sunlit_fraction = 0.0;  // sunlit share among satellite-processed tasks
    double miss_rate = 0.0;
    int completed_tasks = 0;
    double completion_p50_s = 0.0;
    double completion_p90_s = 0.0;
    double completion_p99_s = 0.0;
    double completion_max_s = 0.0;

    std::string to_json_string() const;
};

struct SimResult {
    sbeo::SbeoSolution solution;
    std::vector<TaskOutcome> outcomes;
    energy::BatteryTrace trace;
    std::vector<Event> events;
    MetricsReport report;

    bool has_event(EventKind kind) const {
        for (const Event& e : events)
            if (e.kind == kind) return true;
        return false;
    }
};

// Subsatellite point of one satellite at one slot (degrees, lon in [-180,180)).
void subsatellite_point(const orbital::ConstellationSpec& spec, int sat, int t_slot, double dt_s,
                        double& lat_deg, double& lon_deg);

// A satellite over an RoI emits one task per imaging interval. Tasks whose
// deadline would fall past the horizon are not emitted.
std::vector<Task> generate_workload(const ScenarioConfig& cfg);

// Materializes constellation geometry (sun/visibility tables, ISL adjacency,
// orbit structure) into an instance with an empty task set.
sbeo::SbeoInstance materialize_geometry(const orbital::ConstellationSpec& constellation,
                                        const orbital::GroundStationSet& stations, double dt_s,
                                        int horizon_slots,
                                        const energy::PowerParams& power = {},
                                        double isl_cap_bps = 1e9, double gsl_cap_bps = 100e6,
                                        bool gsl_power_transmit_only = false);

// Materializes the scenario into a replayable instance (tasks included).
sbeo::SbeoInstance materialize_instance(const ScenarioConfig& cfg);

// Ground-distance tie-break callback for geometry-backed instances.
std::function<double(int, int, int)> make_distance_fn(const orbital::ConstellationSpec& spec,
                                                      const orbital::GroundStationSet& stations,
                                                      double dt_s);

// Runs the slot loop of one strategy over one instance. The distance function
// (sat, gs, slot) is a ground-station tie-break; geometry-backed runs supply
// it, synthetic instances may leave it empty.
SimResult run_instance(const sbeo::SbeoInstance& inst, sim::Strategy& strategy,
                       std::function<double(int, int, int)> gs_distance = {});

struct ScenarioRun {
    sbeo::SbeoInstance instance;
    SimResult result;
};

ScenarioRun run_simulation(const ScenarioConfig& cfg);

// metrics.csv, tasks.csv, dod_trace.csv and summary.json under out_dir.
void export_result(const SimResult& result, const sbeo::SbeoInstance& inst,
                   const std::string& out_dir);

// Fills result.report from the raw traces.
void summarize(SimResult& result, const sbeo::SbeoInstance& inst, const LifetimeConfig& lifetime,
               double cycle_period_s);

}  // namespace secsim::simkit

#endif
