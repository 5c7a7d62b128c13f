#include "secsim/simkit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "secsim/scheduler.hpp"

namespace secsim::simkit {

double preset_processing_time_s(const std::string& type, int power_level_w) {
    static const std::map<std::string, std::map<int, double>> presets = {
        {"ship_detection", {{30, 10.0}, {50, 5.0}, {60, 3.0}}},
        {"wildfire_segmentation", {{30, 120.0}, {50, 67.0}, {60, 51.0}}},
    };
    auto it = presets.find(type);
    if (it == presets.end()) throw ConfigError("workload.type", "unknown task type '" + type + "'");
    auto jt = it->second.find(power_level_w);
    if (jt == it->second.end())
        throw ConfigError("power_level_w",
                          "no preset for " + std::to_string(power_level_w) + " W");
    return jt->second;
}

double preset_imaging_interval_s(const std::string& type) {
    if (type == "ship_detection") return 1.0;
    if (type == "wildfire_segmentation") return 5.0;
    throw ConfigError("workload.type", "unknown task type '" + type + "'");
}

void ScenarioConfig::validate() const {
    constellation.validate();
    stations.validate();
    power.validate();
    if (dt_s <= 0) throw ConfigError("dt_s", "must be > 0");
    if (horizon_slots <= 0) throw ConfigError("horizon_slots", "must be > 0");
    if (isl_cap_bps <= 0 || gsl_cap_bps <= 0) throw ConfigError("links", "capacities must be > 0");
    if (workload.rois.empty()) throw ConfigError("workload.rois", "at least one RoI box required");
    for (size_t i = 0; i < workload.rois.size(); ++i) {
        const RoiBox& b = workload.rois[i];
        if (b.lat_min > b.lat_max || b.lon_min > b.lon_max)
            throw ConfigError("workload.rois[" + std::to_string(i) + "]", "empty box");
    }
    double t_cp = preset_processing_time_s(workload.type, power_level_w);
    if (workload.deadline_s < t_cp)
        throw ConfigError("workload.deadline_s", "deadline shorter than the processing time");
    int ddl_slots = static_cast<int>(std::llround(workload.deadline_s / dt_s));
    if (horizon_slots < ddl_slots)
        throw ConfigError("horizon_slots", "horizon shorter than the task deadline");
    if (lifetime.cycles_at_full_dod <= 0 || lifetime.exponent <= 0 || lifetime.max_cycles <= 0)
        throw ConfigError("lifetime", "curve parameters must be > 0");
}

namespace {

double json_num(const nlohmann::json& j, const std::string& key, double fallback,
                const std::string& path) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError(path + "." + key, "expected a number");
    return j.at(key).get<double>();
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json_string(const std::string& text,
                                                const std::string& base_dir) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config", std::string("not valid JSON: ") + e.what());
    }
    ScenarioConfig cfg;

    if (!j.contains("constellation")) throw ConfigError("constellation", "missing");
    const auto& jc = j.at("constellation");
    cfg.constellation.shells.clear();
    if (!jc.contains("shells") || !jc.at("shells").is_array() || jc.at("shells").empty())
        throw ConfigError("constellation.shells", "expected a non-empty array");
    for (const auto& js : jc.at("shells")) {
        orbital::Shell sh;
        sh.altitude_km = json_num(js, "altitude_km", sh.altitude_km, "constellation.shells[]");
        sh.inclination_deg =
            json_num(js, "inclination_deg", sh.inclination_deg, "constellation.shells[]");
        sh.num_planes = static_cast<int>(json_num(js, "planes", 1, "constellation.shells[]"));
        sh.sats_per_plane =
            static_cast<int>(json_num(js, "sats_per_plane", 1, "constellation.shells[]"));
        sh.phase_offset = json_num(js, "phase_offset", 0.0, "constellation.shells[]");
        cfg.constellation.shells.push_back(sh);
    }
    cfg.constellation.epoch_day_of_year =
        static_cast<int>(json_num(jc, "epoch_day_of_year", 80, "constellation"));

    if (j.contains("ground_stations")) {
        const auto& jg = j.at("ground_stations");
        cfg.stations.min_elevation_deg =
            json_num(jg, "min_elevation_deg", 25.0, "ground_stations");
        if (jg.contains("file")) {
            std::string f = jg.at("file").get<std::string>();
            if (!base_dir.empty() && !std::filesystem::path(f).is_absolute())
                f = (std::filesystem::path(base_dir) / f).string();
            cfg.ground_station_file = f;
            cfg.stations =
                orbital::GroundStationSet::from_csv(f, cfg.stations.min_elevation_deg);
        } else if (jg.contains("stations")) {
            for (const auto& js : jg.at("stations"))
                cfg.stations.stations.push_back({js.at("id").get<std::string>(),
                                                 js.at("lat").get<double>(),
                                                 js.at("lon").get<double>()});
        }
    }

    cfg.dt_s = json_num(j, "dt_s", 1.0, "config");
    cfg.horizon_slots = static_cast<int>(json_num(j, "horizon_slots", 0, "config"));
    cfg.power_level_w = static_cast<int>(json_num(j, "power_level_w", 60, "config"));
    if (j.contains("power")) {
        const auto& jp = j.at("power");
        cfg.power.p_solar_w = json_num(jp, "p_solar_w", cfg.power.p_solar_w, "power");
        cfg.power.p_basic_w = json_num(jp, "p_basic_w", cfg.power.p_basic_w, "power");
        cfg.power.p_isl_w = json_num(jp, "p_isl_w", cfg.power.p_isl_w, "power");
        cfg.power.p_gsl_w = json_num(jp, "p_gsl_w", cfg.power.p_gsl_w, "power");
        cfg.power.battery_wh = json_num(jp, "battery_wh", cfg.power.battery_wh, "power");
    }
    cfg.power.p_cp_w = cfg.power_level_w;
    if (j.contains("gsl_power_transmit_only"))
        cfg.gsl_power_transmit_only = j.at("gsl_power_transmit_only").get<bool>();
    if (j.contains("links")) {
        cfg.isl_cap_bps = json_num(j.at("links"), "isl_gbps", 1.0, "links") * 1e9;
        cfg.gsl_cap_bps = json_num(j.at("links"), "gsl_mbps", 100.0, "links") * 1e6;
    }

    if (j.contains("workload")) {
        const auto& jw = j.at("workload");
        if (jw.contains("type")) cfg.workload.type = jw.at("type").get<std::string>();
        if (jw.contains("rois")) {
            for (const auto& jr : jw.at("rois"))
                cfg.workload.rois.push_back({jr.at("lat_min").get<double>(),
                                             jr.at("lat_max").get<double>(),
                                             jr.at("lon_min").get<double>(),
                                             jr.at("lon_max").get<double>()});
        }
        cfg.workload.imaging_interval_s =
            json_num(jw, "imaging_interval_s", 0.0, "workload");
        cfg.workload.image_bits = json_num(jw, "image_bits", 0.0, "workload");
        cfg.workload.megapixels = json_num(jw, "megapixels", 100.0, "workload");
        cfg.workload.bits_per_pixel = json_num(jw, "bits_per_pixel", 8.0, "workload");
        cfg.workload.compression_ratio = json_num(jw, "compression_ratio", 1.0, "workload");
        cfg.workload.deadline_s = json_num(jw, "deadline_s", 300.0, "workload");
    }

    if (j.contains("strategy"))
        cfg.strategy = baselines::strategy_from_name(j.at("strategy").get<std::string>());
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("lifetime")) {
        const auto& jl = j.at("lifetime");
        cfg.lifetime.cycles_at_full_dod =
            json_num(jl, "cycles_at_full_dod", 1000.0, "lifetime");
        cfg.lifetime.exponent = json_num(jl, "exponent", 2.0, "lifetime");
        cfg.lifetime.max_cycles = json_num(jl, "max_cycles", 1e6, "lifetime");
    }

    cfg.validate();
    return cfg;
}

ScenarioConfig ScenarioConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_string(ss.str(), std::filesystem::path(path).parent_path().string());
}

std::string ScenarioConfig::to_json_string() const {
    nlohmann::json j;
    nlohmann::json shells = nlohmann::json::array();
    for (const auto& sh : constellation.shells)
        shells.push_back({{"altitude_km", sh.altitude_km},
                          {"inclination_deg", sh.inclination_deg},
                          {"planes", sh.num_planes},
                          {"sats_per_plane", sh.sats_per_plane},
                          {"phase_offset", sh.phase_offset}});
    j["constellation"] = {{"shells", shells},
                          {"epoch_day_of_year", constellation.epoch_day_of_year}};
    nlohmann::json st = nlohmann::json::array();
    for (const auto& g : stations.stations)
        st.push_back({{"id", g.id}, {"lat", g.lat_deg}, {"lon", g.lon_deg}});
    j["ground_stations"] = {{"stations", st}, {"min_elevation_deg", stations.min_elevation_deg}};
    j["dt_s"] = dt_s;
    j["horizon_slots"] = horizon_slots;
    j["power_level_w"] = power_level_w;
    j["power"] = {{"p_solar_w", power.p_solar_w},
                  {"p_basic_w", power.p_basic_w},
                  {"p_isl_w", power.p_isl_w},
                  {"p_gsl_w", power.p_gsl_w},
                  {"battery_wh", power.battery_wh}};
    j["gsl_power_transmit_only"] = gsl_power_transmit_only;
    j["links"] = {{"isl_gbps", isl_cap_bps / 1e9}, {"gsl_mbps", gsl_cap_bps / 1e6}};
    nlohmann::json rois = nlohmann::json::array();
    for (const auto& b : workload.rois)
        rois.push_back({{"lat_min", b.lat_min},
                        {"lat_max", b.lat_max},
                        {"lon_min", b.lon_min},
                        {"lon_max", b.lon_max}});
    j["workload"] = {{"type", workload.type},
                     {"rois", rois},
                     {"imaging_interval_s", workload.imaging_interval_s},
                     {"image_bits", workload.image_bits},
                     {"megapixels", workload.megapixels},
                     {"bits_per_pixel", workload.bits_per_pixel},
                     {"compression_ratio", workload.compression_ratio},
                     {"deadline_s", workload.deadline_s}};
    j["strategy"] = baselines::strategy_name(strategy);
    j["seed"] = seed;
    j["lifetime"] = {{"cycles_at_full_dod", lifetime.cycles_at_full_dod},
                     {"exponent", lifetime.exponent},
                     {"max_cycles", lifetime.max_cycles}};
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// Workload
// ---------------------------------------------------------------------------

void subsatellite_point(const orbital::ConstellationSpec& spec, int sat, int t_slot, double dt_s,
                        double& lat_deg, double& lon_deg) {
    Vec3 p = orbital::satellite_position(spec, sat, t_slot, dt_s);
    double r = norm(p);
    lat_deg = orbital::rad2deg(std::asin(p.z / r));
    double omega = 2.0 * orbital::kPi / orbital::kSecondsPerDay;
    double lon = std::atan2(p.y, p.x) - omega * t_slot * dt_s;
    lon = std::fmod(lon, 2.0 * orbital::kPi);
    if (lon < -orbital::kPi) lon += 2.0 * orbital::kPi;
    if (lon >= orbital::kPi) lon -= 2.0 * orbital::kPi;
    lon_deg = orbital::rad2deg(lon);
}

std::vector<Task> generate_workload(const ScenarioConfig& cfg) {
    const int num_sats = cfg.constellation.num_sats();
    double interval_s = cfg.workload.imaging_interval_s > 0
                            ? cfg.workload.imaging_interval_s
                            : preset_imaging_interval_s(cfg.workload.type);
    int interval_slots = std::max(1, static_cast<int>(std::llround(interval_s / cfg.dt_s)));
    double image_bits = cfg.workload.image_bits > 0
                            ? cfg.workload.image_bits
                            : cfg.workload.megapixels * 1e6 * cfg.workload.bits_per_pixel /
                                  cfg.workload.compression_ratio;
    int t_cp = std::max(1, static_cast<int>(std::ceil(
                               preset_processing_time_s(cfg.workload.type, cfg.power_level_w) /
                               cfg.dt_s)));
    int ddl_slots = static_cast<int>(std::llround(cfg.workload.deadline_s / cfg.dt_s));
    int last_arrival = cfg.horizon_slots - ddl_slots;  // keep deadlines inside the horizon

    std::vector<Task> tasks;
    std::vector<int> last_emit(num_sats, -interval_slots);
    for (int t = 0; t <= last_arrival; ++t) {
        for (int s = 0; s < num_sats; ++s) {
            if (t - last_emit[s] < interval_slots) continue;
            double lat, lon;
            subsatellite_point(cfg.constellation, s, t, cfg.dt_s, lat, lon);
            bool inside = false;
            for (const RoiBox& b : cfg.workload.rois) inside |= b.contains(lat, lon);
            if (!inside) continue;
            Task k;
            k.id = static_cast<int>(tasks.size());
            k.src = s;
            k.size_bits = image_bits;
            k.t_arrival = t;
            k.t_compute = t_cp;
            k.t_deadline = t + ddl_slots;
            tasks.push_back(k);
            last_emit[s] = t;
        }
    }
    return tasks;
}

sbeo::SbeoInstance materialize_geometry(const orbital::ConstellationSpec& constellation,
                                        const orbital::GroundStationSet& stations, double dt_s,
                                        int horizon_slots, const energy::PowerParams& power,
                                        double isl_cap_bps, double gsl_cap_bps,
                                        bool gsl_power_transmit_only) {
    sbeo::SbeoInstance inst;
    inst.dt_s = dt_s;
    inst.t_max = horizon_slots;
    inst.cycle_slots = scheduler::orbital_cycle_slots(constellation, dt_s);
    inst.num_sats = constellation.num_sats();
    inst.num_stations = static_cast<int>(stations.stations.size());
    inst.num_orbits = constellation.num_planes();
    inst.orbit_of.resize(inst.num_sats);
    for (int s = 0; s < inst.num_sats; ++s) inst.orbit_of[s] = constellation.plane_of(s);
    inst.isl_adj = orbital::isl_neighbors(constellation);
    inst.isl_cap_bps = isl_cap_bps;
    inst.gsl_cap_bps = gsl_cap_bps;
    inst.power = power;
    inst.gsl_power_transmit_only = gsl_power_transmit_only;
    inst.sun =
        orbital::build_sun_table(constellation, horizon_slots + inst.cycle_slots, dt_s);
    inst.vis = orbital::build_gs_vis_table(constellation, stations, horizon_slots, dt_s);
    return inst;
}

std::function<double(int, int, int)> make_distance_fn(const orbital::ConstellationSpec& spec,
                                                      const orbital::GroundStationSet& stations,
                                                      double dt_s) {
    return [spec, stations, dt_s](int sat, int gs, int t) {
        return orbital::ground_distance_km(
            orbital::satellite_position(spec, sat, t, dt_s),
            orbital::ground_station_position(stations.stations[gs], t, dt_s));
    };
}

sbeo::SbeoInstance materialize_instance(const ScenarioConfig& cfg) {
    cfg.validate();
    energy::PowerParams power = cfg.power;
    power.p_cp_w = cfg.power_level_w;
    sbeo::SbeoInstance inst =
        materialize_geometry(cfg.constellation, cfg.stations, cfg.dt_s, cfg.horizon_slots, power,
                             cfg.isl_cap_bps, cfg.gsl_cap_bps, cfg.gsl_power_transmit_only);
    inst.tasks = generate_workload(cfg);
    inst.validate();
    return inst;
}

// ---------------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------------

namespace {

class Engine {
  public:
    Engine(const sbeo::SbeoInstance& inst, sim::Strategy& strategy,
           std::function<double(int, int, int)> gs_distance)
        : inst_(inst),
          strategy_(strategy),
          dist_(std::move(gs_distance)),
          gq_(inst.num_stations),
          battery_(inst.num_sats, inst.power.battery_j()),
          pending_(inst.num_sats),
          queued_cp_(inst.num_sats, 0),
          running_task_(inst.num_sats, -1),
          running_end_(inst.num_sats, -1),
          planned_begin_(inst.tasks.size(), -1),
          gs_tx_(inst.num_sats, std::vector<uint8_t>(inst.t_max, 0)),
          outcomes_(inst.tasks.size()) {
        for (size_t i = 0; i < inst.tasks.size(); ++i) outcomes_[i].task = inst.tasks[i].id;
        trace_.num_sats = inst.num_sats;
        trace_.num_slots = inst.t_max;
        trace_.b_vol_j = inst.power.battery_j();
        trace_.energy_j.assign(static_cast<size_t>(inst.num_sats) * inst.t_max, 0.0);
    }

    SimResult run() {
        // arrival buckets; dispatch order within a slot is the task index
        // (ids are labels), matching the feasibility checker's replay order
        std::vector<std::vector<int>> arrivals(inst_.t_max);
        for (size_t i = 0; i < inst_.tasks.size(); ++i) {
            int t = inst_.tasks[i].t_arrival;
            if (t >= 0 && t < inst_.t_max) arrivals[t].push_back(static_cast<int>(i));
        }

        for (int t = 0; t < inst_.t_max; ++t) {
            if (strategy_.wants_epochs() && inst_.cycle_slots > 0 && t % inst_.cycle_slots == 0)
                strategy_.on_epoch(view(t), t);

            // offer waiting tasks in id order, applying each decision before
            // the next task sees the shared state
            waiting_.insert(waiting_.end(), arrivals[t].begin(), arrivals[t].end());
            std::sort(waiting_.begin(), waiting_.end());
            std::vector<int> still_waiting;
            for (int k : waiting_) {
                sim::Decision d = strategy_.on_arrival(view(t), k);
                switch (d.kind) {
                    case sim::Decision::Kind::Defer:
                        still_waiting.push_back(k);
                        break;
                    case sim::Decision::Kind::Ground:
                        apply_ground(k, d.dst, t);
                        break;
                    case sim::Decision::Kind::Satellite:
                        apply_satellite(k, d, t);
                        break;
                }
            }
            waiting_.swap(still_waiting);

            advance_network(t);
            start_processing(t);
            step_batteries(t);
            finish_processing(t);
        }

        return finalize();
    }

  private:
    sim::SimView view(int t) {
        sim::SimView v;
        v.inst = &inst_;
        v.now = t;
        v.battery_j = &battery_;
        v.pending = &pending_;
        v.queued_cp_slots = &queued_cp_;
        v.running_end = &running_end_;
        v.ground_queue = &gq_;
        v.gs_distance = dist_;
        return v;
    }

    void record_events(const sim::Decision& d, int k, int sat, int t) {
        for (int idx : d.infeasible)
            events_.push_back({EventKind::InfeasibleDeadline, t, inst_.tasks[idx].id, sat});
        if (d.no_feasible_destination)
            events_.push_back({EventKind::NoFeasibleDestination, t, inst_.tasks[k].id, sat});
    }

    void apply_ground(int k, int dst_node, int t) {
        const Task& task = inst_.tasks[k];
        int g = dst_node - inst_.num_sats;
        double dur = nettopo::transfer_slots(task.size_bits, inst_.gsl_cap_bps, inst_.dt_s);
        double start = gq_.available(g, t);
        double finish = gq_.commit(g, t, dur);
        TaskOutcome& o = outcomes_[k];
        o.dst = dst_node;
        o.decided = true;
        o.t_offload = nettopo::finish_slot(finish);
        o.t_complete = o.t_offload;
        o.completed = o.t_offload < inst_.t_max;
        o.met = finish <= static_cast<double>(task.t_deadline);
        if (!o.met)
            events_.push_back({EventKind::DeadlineMiss, std::min(o.t_offload, inst_.t_max - 1),
                               task.id, task.src});
        int tx0 = std::max(0, static_cast<int>(std::floor(start)));
        int tx1 = std::min(inst_.t_max - 1, o.t_offload);
        for (int tau = tx0; tau <= tx1; ++tau) gs_tx_[task.src][tau] = 1;
    }

    void apply_satellite(int k, const sim::Decision& d, int t) {
        const Task& task = inst_.tasks[k];
        TaskOutcome& o = outcomes_[k];
        o.dst = d.dst;
        o.decided = true;
        queued_cp_[d.dst] += task.t_compute;
        for (auto [idx, begin] : d.starts) planned_begin_[idx] = begin;
        record_events(d, k, d.dst, t);
        if (d.dst == task.src) {
            o.t_offload = nettopo::local_offload_shortcut(task);
            insert_pending(task.src, k);
        } else {
            nettopo::FlowState f;
            f.task_id = task.id;
            f.src = task.src;
            f.dst = d.dst;
            f.size_bits = task.size_bits;
            flows_.push_back(f);
            flow_task_.push_back(k);
        }
    }

    void insert_pending(int sat, int k) {
        auto& q = pending_[sat];
        q.insert(std::upper_bound(q.begin(), q.end(), k), k);
    }

    void advance_network(int t) {
        std::vector<nettopo::FlowState*> active;
        std::vector<int> active_task;
        for (size_t i = 0; i < flows_.size(); ++i) {
            if (flows_[i].finished()) continue;
            active.push_back(&flows_[i]);
            active_task.push_back(flow_task_[i]);
        }
        if (active.empty()) return;
        auto topo = inst_.snapshot(t);
        for (auto* f : active) {
            auto path = nettopo::route(topo, f->src, f->dst);
            f->path = path ? *path : std::vector<int>{};
        }
        nettopo::advance_flows(active, topo, inst_.dt_s);
        for (size_t i = 0; i < active.size(); ++i) {
            int k = active_task[i];
            if (!active[i]->finished()) {
                // still in transit when the deadline passes: the chosen
                // destination can no longer meet it
                if (inst_.tasks[k].t_deadline == t)
                    events_.push_back(
                        {EventKind::NoFeasibleDestination, t, inst_.tasks[k].id, active[i]->dst});
                continue;
            }
            outcomes_[k].t_offload = t;
            insert_pending(active[i]->dst, k);
            sim::Decision d = strategy_.on_offload_complete(view(t), k, active[i]->dst);
            for (auto [idx, begin] : d.starts) planned_begin_[idx] = begin;
            record_events(d, k, active[i]->dst, t);
        }
    }

    void start_processing(int t) {
        for (int s = 0; s < inst_.num_sats; ++s) {
            if (running_task_[s] >= 0) continue;
            int pick = -1;
            for (int k : pending_[s]) {
                int b = planned_begin_[k];
                if (b < 0 || b > t) continue;
                if (pick < 0 || b < planned_begin_[pick] ||
                    (b == planned_begin_[pick] && k < pick))
                    pick = k;
            }
            if (pick < 0) continue;
            auto& q = pending_[s];
            q.erase(std::find(q.begin(), q.end(), pick));
            const Task& task = inst_.tasks[pick];
            running_task_[s] = pick;
            running_end_[s] = t + task.t_compute - 1;
            queued_cp_[s] -= task.t_compute;
            outcomes_[pick].t_begin = t;
        }
    }

    void step_batteries(int t) {
        for (int s = 0; s < inst_.num_sats; ++s) {
            bool gsl_on;
            if (inst_.gsl_power_transmit_only) {
                gsl_on = gs_tx_[s][t] != 0;
            } else {
                gsl_on = false;
                for (int g = 0; g < inst_.num_stations && !gsl_on; ++g)
                    gsl_on = inst_.gs_visible(s, g, t);
            }
            auto r = energy::battery_step(inst_.sunlit(s, t), running_task_[s] >= 0 ? 1 : 0,
                                          gsl_on, inst_.power, inst_.isl_count, inst_.dt_s,
                                          battery_[s]);
            battery_[s] = r.energy_j;
            trace_.energy_j[static_cast<size_t>(s) * inst_.t_max + t] = r.energy_j;
            if (r.brownout) events_.push_back({EventKind::Brownout, t, -1, s});
        }
    }

    void finish_processing(int t) {
        for (int s = 0; s < inst_.num_sats; ++s) {
            if (running_task_[s] < 0 || running_end_[s] != t) continue;
            int k = running_task_[s];
            const Task& task = inst_.tasks[k];
            TaskOutcome& o = outcomes_[k];
            o.t_complete = t;
            o.completed = true;
            o.met = o.t_begin + task.t_compute <= task.t_deadline;
            if (!o.met) events_.push_back({EventKind::DeadlineMiss, t, task.id, s});
            o.sat_all_sunlit = true;
            for (int tau = o.t_begin; tau <= t; ++tau)
                if (!inst_.sunlit(s, tau)) o.sat_all_sunlit = false;
            running_task_[s] = -1;
            running_end_[s] = -1;
        }
    }

    SimResult finalize() {
        SimResult result;
        result.outcomes = std::move(outcomes_);
        result.trace = std::move(trace_);
        result.events = std::move(events_);
        result.solution.placements.resize(inst_.tasks.size());
        for (size_t i = 0; i < inst_.tasks.size(); ++i) {
            const TaskOutcome& o = result.outcomes[i];
            sbeo::TaskPlacement p;
            p.dst = o.dst;
            if (o.dst >= 0 && o.dst < inst_.num_sats)
                p.t_begin = o.t_begin >= 0 ? o.t_begin : planned_begin_[i];
            result.solution.placements[i] = p;
        }
        return result;
    }

    const sbeo::SbeoInstance& inst_;
    sim::Strategy& strategy_;
    std::function<double(int, int, int)> dist_;
    nettopo::GroundQueue gq_;
    std::vector<double> battery_;
    std::vector<std::vector<int>> pending_;
    std::vector<int> queued_cp_;
    std::vector<int> running_task_;
    std::vector<int> running_end_;
    std::vector<int> planned_begin_;
    std::vector<std::vector<uint8_t>> gs_tx_;
    std::vector<TaskOutcome> outcomes_;
    std::vector<nettopo::FlowState> flows_;
    std::vector<int> flow_task_;
    std::vector<int> waiting_;
    std::vector<Event> events_;
    energy::BatteryTrace trace_;
};

}  // namespace

SimResult run_instance(const sbeo::SbeoInstance& inst, sim::Strategy& strategy,
                       std::function<double(int, int, int)> gs_distance) {
    Engine engine(inst, strategy, std::move(gs_distance));
    return engine.run();
}

ScenarioRun run_simulation(const ScenarioConfig& cfg) {
    ScenarioRun run;
    run.instance = materialize_instance(cfg);
    auto strategy = baselines::make_strategy(cfg.strategy);
    run.result = run_instance(run.instance, *strategy,
                              make_distance_fn(cfg.constellation, cfg.stations, cfg.dt_s));
    double cycle_period_s = run.instance.cycle_slots * cfg.dt_s;
    summarize(run.result, run.instance, cfg.lifetime, cycle_period_s);
    return run;
}

// ---------------------------------------------------------------------------
// Metrics and export
// ---------------------------------------------------------------------------

namespace {

double quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    size_t idx = static_cast<size_t>(std::ceil(q * sorted.size()));
    if (idx > 0) --idx;
    return sorted[std::min(idx, sorted.size() - 1)];
}

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

void summarize(SimResult& result, const sbeo::SbeoInstance& inst, const LifetimeConfig& lifetime,
               double cycle_period_s) {
    MetricsReport& r = result.report;
    r = MetricsReport{};
    r.num_sats = inst.num_sats;
    r.num_tasks = static_cast<int>(inst.tasks.size());
    r.max_dod.assign(inst.num_sats, 0.0);
    r.avg_dod.assign(inst.num_sats, 0.0);
    r.lifetime_years.assign(inst.num_sats, 0.0);
    r.brownouts.assign(inst.num_sats, 0);

    energy::LifetimeModel model;
    model.cycles_at_full_dod = lifetime.cycles_at_full_dod;
    model.exponent = lifetime.exponent;
    model.max_cycles = lifetime.max_cycles;
    model.cycle_period_s = cycle_period_s;

    std::vector<double> dod(inst.t_max);
    for (int s = 0; s < inst.num_sats; ++s) {
        double sum = 0.0, peak = 0.0;
        for (int t = 0; t < inst.t_max; ++t) {
            dod[t] = result.trace.dod(s, t);
            sum += dod[t];
            peak = std::max(peak, dod[t]);
        }
        r.max_dod[s] = peak;
        r.avg_dod[s] = sum / inst.t_max;
        r.global_max_dod = std::max(r.global_max_dod, peak);
        r.lifetime_years[s] = energy::lifetime_estimate(dod, model, inst.dt_s).years;
    }
    r.mean_lifetime_years =
        std::accumulate(r.lifetime_years.begin(), r.lifetime_years.end(), 0.0) / inst.num_sats;
    r.min_lifetime_years = *std::min_element(r.lifetime_years.begin(), r.lifetime_years.end());

    for (const Event& e : result.events) {
        if (e.kind == EventKind::Brownout) {
            ++r.brownout_count;
            if (e.sat >= 0) ++r.brownouts[e.sat];
        }
    }

    int n_ground = 0, n_sunlit = 0, n_shadowed = 0, n_missed = 0;
    std::vector<double> completions;
    for (const TaskOutcome& o : result.outcomes) {
        if (!o.met) ++n_missed;
        if (o.dst >= inst.num_sats) {
            ++n_ground;
        } else if (o.completed) {
            if (o.sat_all_sunlit)
                ++n_sunlit;
            else
                ++n_shadowed;
        }
        if (o.completed && o.t_complete >= 0) {
            completions.push_back((o.t_complete - inst.tasks[o.task].t_arrival + 1) * inst.dt_s);
            ++r.completed_tasks;
        }
    }
    int classified = n_ground + n_sunlit + n_shadowed;
    if (classified > 0) {
        r.psd_ground_pct = 100.0 * n_ground / classified;
        r.psd_sunlit_pct = 100.0 * n_sunlit / classified;
        r.psd_shadowed_pct = 100.0 * n_shadowed / classified;
    }
    r.sat_sunlit_fraction =
        (n_sunlit + n_shadowed) > 0 ? static_cast<double>(n_sunlit) / (n_sunlit + n_shadowed) : 1.0;
    r.miss_rate = r.num_tasks > 0 ? static_cast<double>(n_missed) / r.num_tasks : 0.0;

    std::sort(completions.begin(), completions.end());
    r.completion_p50_s = quantile(completions, 0.50);
    r.completion_p90_s = quantile(completions, 0.90);
    r.completion_p99_s = quantile(completions, 0.99);
    r.completion_max_s = completions.empty() ? 0.0 : completions.back();
}

std::string MetricsReport::to_json_string() const {
    nlohmann::json j;
    j["num_sats"] = num_sats;
    j["num_tasks"] = num_tasks;
    j["global_max_dod"] = global_max_dod;
    j["max_dod"] = max_dod;
    j["avg_dod"] = avg_dod;
    j["lifetime_years"] = lifetime_years;
    j["brownouts"] = brownouts;
    j["mean_lifetime_years"] = mean_lifetime_years;
    j["min_lifetime_years"] = min_lifetime_years;
    j["brownout_count"] = brownout_count;
    j["psd_ground_pct"] = psd_ground_pct;
    j["psd_sunlit_pct"] = psd_sunlit_pct;
    j["psd_shadowed_pct"] = psd_shadowed_pct;
    j["sat_sunlit_fraction"] = sat_sunlit_fraction;
    j["miss_rate"] = miss_rate;
    j["completed_tasks"] = completed_tasks;
    j["completion_p50_s"] = completion_p50_s;
    j["completion_p90_s"] = completion_p90_s;
    j["completion_p99_s"] = completion_p99_s;
    j["completion_max_s"] = completion_max_s;
    return j.dump(2);
}

void export_result(const SimResult& result, const sbeo::SbeoInstance& inst,
                   const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create " + out_dir + ": " + ec.message());

    auto open = [&](const std::string& name) {
        std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + (fs::path(out_dir) / name).string());
        return out;
    };

    {
        std::ofstream out = open("metrics.csv");
        out << "sat,orbit,max_dod,avg_dod,brownouts,lifetime_years\n";
        for (int s = 0; s < inst.num_sats; ++s)
            out << s << ',' << inst.orbit_of[s] << ',' << fmt_g(result.report.max_dod[s]) << ','
                << fmt_g(result.report.avg_dod[s]) << ',' << result.report.brownouts[s] << ','
                << fmt_g(result.report.lifetime_years[s]) << '\n';
    }
    {
        std::ofstream out = open("tasks.csv");
        out << "task,src,dst,arrival,offload_finish,start,completion,deadline,met\n";
        for (size_t i = 0; i < inst.tasks.size(); ++i) {
            const Task& k = inst.tasks[i];
            const TaskOutcome& o = result.outcomes[i];
            out << k.id << ',' << k.src << ',' << o.dst << ',' << k.t_arrival << ','
                << o.t_offload << ',' << o.t_begin << ',' << o.t_complete << ',' << k.t_deadline
                << ',' << (o.met ? 1 : 0) << '\n';
        }
    }
    {
        std::ofstream out = open("dod_trace.csv");
        out << "slot";
        for (int s = 0; s < inst.num_sats; ++s) out << ",sat" << s;
        out << '\n';
        for (int t = 0; t < inst.t_max; ++t) {
            out << t;
            for (int s = 0; s < inst.num_sats; ++s) out << ',' << fmt_g(result.trace.dod(s, t));
            out << '\n';
        }
    }
    {
        std::ofstream out = open("summary.json");
        out << result.report.to_json_string() << '\n';
    }
}

}  // namespace secsim::simkit
