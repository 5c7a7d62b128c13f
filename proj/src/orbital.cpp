#include "secsim/orbital.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace secsim::orbital {

void ConstellationSpec::validate() const {
    if (shells.empty()) throw ConfigError("constellation.shells", "at least one shell required");
    for (size_t i = 0; i < shells.size(); ++i) {
        const Shell& sh = shells[i];
        const std::string f = "constellation.shells[" + std::to_string(i) + "]";
        if (sh.altitude_km <= 0.0) throw ConfigError(f + ".altitude_km", "must be > 0");
        if (sh.inclination_deg < 0.0 || sh.inclination_deg > 180.0)
            throw ConfigError(f + ".inclination_deg", "must be in [0, 180]");
        if (sh.num_planes < 1) throw ConfigError(f + ".num_planes", "must be >= 1");
        if (sh.sats_per_plane < 1) throw ConfigError(f + ".sats_per_plane", "must be >= 1");
    }
    if (epoch_day_of_year < 1 || epoch_day_of_year > 366)
        throw ConfigError("constellation.epoch_day_of_year", "must be in [1, 366]");
}

int ConstellationSpec::num_sats() const {
    int n = 0;
    for (const Shell& sh : shells) n += sh.num_planes * sh.sats_per_plane;
    return n;
}

int ConstellationSpec::num_planes() const {
    int n = 0;
    for (const Shell& sh : shells) n += sh.num_planes;
    return n;
}

void ConstellationSpec::locate(int sat, int& shell, int& plane, int& slot) const {
    int base = 0;
    for (size_t i = 0; i < shells.size(); ++i) {
        int count = shells[i].num_planes * shells[i].sats_per_plane;
        if (sat < base + count) {
            int local = sat - base;
            shell = static_cast<int>(i);
            plane = local / shells[i].sats_per_plane;
            slot = local % shells[i].sats_per_plane;
            return;
        }
        base += count;
    }
    throw std::out_of_range("satellite index " + std::to_string(sat));
}

int ConstellationSpec::plane_of(int sat) const {
    int shell, plane, slot;
    locate(sat, shell, plane, slot);
    int global = 0;
    for (int i = 0; i < shell; ++i) global += shells[i].num_planes;
    return global + plane;
}

const Shell& ConstellationSpec::shell_of(int sat) const {
    int shell, plane, slot;
    locate(sat, shell, plane, slot);
    return shells[shell];
}

void GroundStationSet::validate() const {
    if (min_elevation_deg <= 0.0 || min_elevation_deg >= 90.0)
        throw ConfigError("ground_stations.min_elevation_deg", "must be in (0, 90)");
    for (size_t i = 0; i < stations.size(); ++i) {
        const std::string f = "ground_stations[" + std::to_string(i) + "]";
        if (std::abs(stations[i].lat_deg) > 90.0) throw ConfigError(f + ".lat", "|lat| must be <= 90");
        if (stations[i].lon_deg < -180.0 || stations[i].lon_deg >= 180.0)
            throw ConfigError(f + ".lon", "lon must be in [-180, 180)");
    }
}

GroundStationSet GroundStationSet::from_csv(const std::string& path, double min_elevation_deg) {
    std::ifstream in(path);
    if (!in) throw ConfigError("ground_stations.file", "cannot open " + path);
    GroundStationSet set;
    set.min_elevation_deg = min_elevation_deg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (lineno == 1 && line.rfind("id,", 0) == 0) continue;  // header
        std::stringstream ss(line);
        std::string id, lat, lon;
        if (!std::getline(ss, id, ',') || !std::getline(ss, lat, ',') || !std::getline(ss, lon, ','))
            throw ConfigError("ground_stations.file",
                              path + ":" + std::to_string(lineno) + ": expected id,lat,lon");
        try {
            set.stations.push_back({id, std::stod(lat), std::stod(lon)});
        } catch (const std::exception&) {
            throw ConfigError("ground_stations.file",
                              path + ":" + std::to_string(lineno) + ": bad number");
        }
    }
    set.validate();
    return set;
}

double orbital_period_s(double altitude_km) {
    double a = kEarthRadiusKm + altitude_km;
    return 2.0 * kPi * std::sqrt(a * a * a / kMuKm3S2);
}

namespace {

// RAAN and initial phase of (shell, plane, slot); kept in one place so the
// plane normal and the position agree.
struct PlaneBasis {
    Vec3 node;    // ascending-node direction in the equatorial plane
    Vec3 in_sat;  // 90 deg ahead along the orbit
    Vec3 normal;
};

PlaneBasis plane_basis(const Shell& sh, int plane) {
    double raan = 2.0 * kPi * plane / sh.num_planes;
    double inc = deg2rad(sh.inclination_deg);
    double cr = std::cos(raan), sr = std::sin(raan);
    double ci = std::cos(inc), si = std::sin(inc);
    PlaneBasis b;
    b.node = {cr, sr, 0.0};
    b.in_sat = {-sr * ci, cr * ci, si};
    b.normal = {sr * si, -cr * si, ci};
    return b;
}

double initial_phase_rad(const Shell& sh, int plane, int slot) {
    double frac = static_cast<double>(slot) / sh.sats_per_plane +
                  sh.phase_offset * plane / (static_cast<double>(sh.num_planes) * sh.sats_per_plane);
    return 2.0 * kPi * frac;
}

}  // namespace

Vec3 satellite_position(const ConstellationSpec& spec, int sat, double t_slot, double dt_s) {
    int shell, plane, slot;
    spec.locate(sat, shell, plane, slot);
    const Shell& sh = spec.shells[shell];
    double a = kEarthRadiusKm + sh.altitude_km;
    double n = std::sqrt(kMuKm3S2 / (a * a * a));  // rad/s
    double u = std::fmod(initial_phase_rad(sh, plane, slot) + n * t_slot * dt_s, 2.0 * kPi);
    PlaneBasis b = plane_basis(sh, plane);
    double cu = std::cos(u), su = std::sin(u);
    return (b.node * cu + b.in_sat * su) * a;
}

std::vector<Vec3> propagate(const ConstellationSpec& spec, double t_slot, double dt_s) {
    int n = spec.num_sats();
    std::vector<Vec3> pos(n);
    for (int s = 0; s < n; ++s) pos[s] = satellite_position(spec, s, t_slot, dt_s);
    return pos;
}

Vec3 sun_direction(int epoch_day, double t_slot, double dt_s) {
    // Ecliptic longitude zero at the March equinox (~day 80 of the year).
    double day = epoch_day + t_slot * dt_s / kSecondsPerDay;
    double lam = 2.0 * kPi * (day - 80.0) / 365.25;
    double eps = deg2rad(kObliquityDeg);
    Vec3 v{std::cos(lam), std::sin(lam) * std::cos(eps), std::sin(lam) * std::sin(eps)};
    return normalized(v);
}

bool is_sunlit(const Vec3& sat_position_km, const Vec3& sun_dir) {
    double along = dot(sat_position_km, sun_dir);
    if (along >= 0.0) return true;
    Vec3 perp = sat_position_km - sun_dir * along;
    return norm(perp) > kEarthRadiusKm;
}

bool full_orbit_sunlit(double altitude_km, double theta_deg) {
    return (kEarthRadiusKm + altitude_km) * std::sin(deg2rad(theta_deg)) > kEarthRadiusKm;
}

double sun_plane_angle_deg(const ConstellationSpec& spec, int global_plane, const Vec3& sun_dir) {
    int remaining = global_plane;
    for (const Shell& sh : spec.shells) {
        if (remaining < sh.num_planes) {
            PlaneBasis b = plane_basis(sh, remaining);
            double s = std::abs(dot(normalized(sun_dir), b.normal));
            return rad2deg(std::asin(std::min(1.0, s)));
        }
        remaining -= sh.num_planes;
    }
    throw std::out_of_range("plane index " + std::to_string(global_plane));
}

SkyState sky_state(const ConstellationSpec& spec, int t_slot, double dt_s) {
    SkyState st;
    st.slot = t_slot;
    st.sat_positions_km = propagate(spec, t_slot, dt_s);
    st.sun_unit = sun_direction(spec.epoch_day_of_year, t_slot, dt_s);
    st.sunlit.resize(st.sat_positions_km.size());
    for (size_t s = 0; s < st.sat_positions_km.size(); ++s)
        st.sunlit[s] = is_sunlit(st.sat_positions_km[s], st.sun_unit) ? 1 : 0;
    return st;
}

SunTable build_sun_table(const ConstellationSpec& spec, int num_slots, double dt_s, ExecMode mode) {
    SunTable table;
    table.num_sats = spec.num_sats();
    table.num_slots = num_slots;
    table.bits.assign(static_cast<size_t>(table.num_sats) * num_slots, 0);

    auto fill_slot = [&](int t) {
        Vec3 sun = sun_direction(spec.epoch_day_of_year, t, dt_s);
        for (int s = 0; s < table.num_sats; ++s) {
            Vec3 p = satellite_position(spec, s, t, dt_s);
            table.bits[static_cast<size_t>(s) * num_slots + t] = is_sunlit(p, sun) ? 1 : 0;
        }
    };

    if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(static)
        for (int t = 0; t < num_slots; ++t) fill_slot(t);
    } else {
        for (int t = 0; t < num_slots; ++t) fill_slot(t);
    }
    return table;
}

double sunlit_ratio(const SunTable& table, int sat, int window_begin, int window_end) {
    if (window_end <= window_begin) throw std::invalid_argument("sunlit_ratio: empty window");
    int lit = 0;
    for (int t = window_begin; t < window_end; ++t)
        if (table.sunlit(sat, t)) ++lit;
    return static_cast<double>(lit) / (window_end - window_begin);
}

Vec3 ground_station_position(const GroundStation& gs, double t_slot, double dt_s) {
    double omega = 2.0 * kPi / kSecondsPerDay;  // solar rate stands in for sidereal
    double theta = deg2rad(gs.lon_deg) + omega * t_slot * dt_s;
    double lat = deg2rad(gs.lat_deg);
    return {kEarthRadiusKm * std::cos(lat) * std::cos(theta),
            kEarthRadiusKm * std::cos(lat) * std::sin(theta), kEarthRadiusKm * std::sin(lat)};
}

double elevation_deg(const Vec3& sat_pos_km, const Vec3& gs_pos_km) {
    Vec3 up = normalized(gs_pos_km);
    Vec3 d = sat_pos_km - gs_pos_km;
    double s = dot(normalized(d), up);
    return rad2deg(std::asin(std::max(-1.0, std::min(1.0, s))));
}

double ground_distance_km(const Vec3& sat_pos_km, const Vec3& gs_pos_km) {
    double c = dot(normalized(sat_pos_km), normalized(gs_pos_km));
    return kEarthRadiusKm * std::acos(std::max(-1.0, std::min(1.0, c)));
}

std::vector<std::vector<int>> isl_neighbors(const ConstellationSpec& spec) {
    int n = spec.num_sats();
    std::vector<std::set<int>> adj(n);
    int base = 0;
    for (const Shell& sh : spec.shells) {
        int P = sh.num_planes, Q = sh.sats_per_plane;
        auto id = [&](int p, int q) { return base + p * Q + q; };
        for (int p = 0; p < P; ++p) {
            for (int q = 0; q < Q; ++q) {
                int me = id(p, q);
                if (Q > 1) {
                    adj[me].insert(id(p, (q + 1) % Q));
                    adj[me].insert(id(p, (q - 1 + Q) % Q));
                }
                if (P > 1) {
                    adj[me].insert(id((p + 1) % P, q));
                    adj[me].insert(id((p - 1 + P) % P, q));
                }
            }
        }
        base += P * Q;
    }
    std::vector<std::vector<int>> out(n);
    for (int s = 0; s < n; ++s) out[s].assign(adj[s].begin(), adj[s].end());
    return out;
}

GsVisTable build_gs_vis_table(const ConstellationSpec& spec, const GroundStationSet& gs,
                              int num_slots, double dt_s, ExecMode mode) {
    GsVisTable table;
    table.num_sats = spec.num_sats();
    table.num_stations = static_cast<int>(gs.stations.size());
    table.num_slots = num_slots;
    table.bits.assign(static_cast<size_t>(num_slots) * table.num_sats * table.num_stations, 0);
    if (table.num_stations == 0) return table;

    auto fill_slot = [&](int t) {
        std::vector<Vec3> gpos(table.num_stations);
        for (int g = 0; g < table.num_stations; ++g)
            gpos[g] = ground_station_position(gs.stations[g], t, dt_s);
        for (int s = 0; s < table.num_sats; ++s) {
            Vec3 sp = satellite_position(spec, s, t, dt_s);
            for (int g = 0; g < table.num_stations; ++g) {
                bool vis = elevation_deg(sp, gpos[g]) >= gs.min_elevation_deg;
                table.bits[(static_cast<size_t>(t) * table.num_sats + s) * table.num_stations + g] =
                    vis ? 1 : 0;
            }
        }
    };

    if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(static)
        for (int t = 0; t < num_slots; ++t) fill_slot(t);
    } else {
        for (int t = 0; t < num_slots; ++t) fill_slot(t);
    }
    return table;
}

bool visibility(const ConstellationSpec& spec, const GroundStationSet& gs, int node_i, int node_j,
                int t_slot, double dt_s) {
    int ns = spec.num_sats();
    if (node_i == node_j) throw std::invalid_argument("visibility: i == j");
    bool i_sat = node_i < ns, j_sat = node_j < ns;
    if (i_sat && j_sat) {
        auto adj = isl_neighbors(spec);
        return std::binary_search(adj[node_i].begin(), adj[node_i].end(), node_j);
    }
    if (!i_sat && !j_sat) return false;
    int sat = i_sat ? node_i : node_j;
    int g = (i_sat ? node_j : node_i) - ns;
    Vec3 sp = satellite_position(spec, sat, t_slot, dt_s);
    Vec3 gp = ground_station_position(gs.stations[g], t_slot, dt_s);
    return elevation_deg(sp, gp) >= gs.min_elevation_deg;
}

}  // namespace secsim::orbital
