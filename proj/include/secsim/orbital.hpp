#ifndef SECSIM_ORBITAL_HPP
#define SECSIM_ORBITAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "secsim/types.hpp"

namespace secsim::orbital {

inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kMuKm3S2 = 398600.4418;
inline constexpr double kObliquityDeg = 23.44;
inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

// One Walker-style shell: circular orbits at a common altitude and
// inclination, planes with evenly spaced RAAN, satellites evenly spaced in
// phase. phase_offset is the inter-plane phasing factor (Walker F): plane p
// is shifted by phase_offset * p / (planes * sats_per_plane) revolutions.
struct Shell {
    double altitude_km = 550.0;
    double inclination_deg = 53.0;
    int num_planes = 1;
    int sats_per_plane = 1;
    double phase_offset = 0.0;
};

struct ConstellationSpec {
    std::vector<Shell> shells;
    int epoch_day_of_year = 80;  // day 80 ~ March equinox

    void validate() const;
    int num_sats() const;
    int num_planes() const;

    // Global plane index of a satellite ("orbit" in the scheduling sense).
    int plane_of(int sat) const;
    // (shell index, plane within shell, slot within plane)
    void locate(int sat, int& shell, int& plane, int& slot) const;
    const Shell& shell_of(int sat) const;
};

struct GroundStation {
    std::string id;
    double lat_deg = 0.0;
    double lon_deg = 0.0;
};

struct GroundStationSet {
    std::vector<GroundStation> stations;
    double min_elevation_deg = 25.0;

    void validate() const;
    // CSV with header id,lat,lon
    static GroundStationSet from_csv(const std::string& path, double min_elevation_deg = 25.0);
};

// Everything slot-local the rest of the stack needs from geometry.
struct SkyState {
    int slot = 0;
    std::vector<Vec3> sat_positions_km;
    Vec3 sun_unit;
    std::vector<uint8_t> sunlit;
};

double orbital_period_s(double altitude_km);

// Circular two-body propagation, slot index may be fractional.
Vec3 satellite_position(const ConstellationSpec& spec, int sat, double t_slot, double dt_s);
std::vector<Vec3> propagate(const ConstellationSpec& spec, double t_slot, double dt_s);

// Unit vector Earth->Sun under a circular-ecliptic model.
Vec3 sun_direction(int epoch_day, double t_slot, double dt_s);

// Cylindrical umbra test: lit iff on the day side or outside the shadow
// cylinder of radius R behind the Earth.
bool is_sunlit(const Vec3& sat_position_km, const Vec3& sun_dir);

// (R+h)*sin(theta) > R: the whole orbit stays outside the shadow cylinder.
bool full_orbit_sunlit(double altitude_km, double theta_deg);

// Angle between the sun direction and a given orbital plane.
double sun_plane_angle_deg(const ConstellationSpec& spec, int global_plane, const Vec3& sun_dir);

SkyState sky_state(const ConstellationSpec& spec, int t_slot, double dt_s);

// Per-satellite sunlight indicator bits over a slot range, produced once and
// shared read-only afterwards.
struct SunTable {
    int num_sats = 0;
    int num_slots = 0;
    std::vector<uint8_t> bits;  // [sat * num_slots + t]

    bool sunlit(int sat, int t) const {
        if (t < 0 || t >= num_slots) return false;
        return bits[static_cast<size_t>(sat) * num_slots + t] != 0;
    }
};

SunTable build_sun_table(const ConstellationSpec& spec, int num_slots, double dt_s,
                         ExecMode mode = ExecMode::Parallel);

double sunlit_ratio(const SunTable& table, int sat, int window_begin, int window_end);

// Earth-fixed stations rotated at the mean solar rate.
Vec3 ground_station_position(const GroundStation& gs, double t_slot, double dt_s);
double elevation_deg(const Vec3& sat_pos_km, const Vec3& gs_pos_km);

// Great-circle distance between the satellite's subsatellite point and the
// station (used only as a scheduling tie-break).
double ground_distance_km(const Vec3& sat_pos_km, const Vec3& gs_pos_km);

// Static +Grid adjacency: same-plane fore/aft plus same-slot satellites of
// the two adjacent planes, within each shell. Sorted, deduplicated (small
// grids collapse some of the four neighbors onto each other).
std::vector<std::vector<int>> isl_neighbors(const ConstellationSpec& spec);

// Per-slot satellite<->station visibility bits.
struct GsVisTable {
    int num_sats = 0;
    int num_stations = 0;
    int num_slots = 0;
    std::vector<uint8_t> bits;  // [(t * num_sats + sat) * num_stations + gs]

    bool visible(int sat, int gs, int t) const {
        if (t < 0 || t >= num_slots) return false;
        return bits[(static_cast<size_t>(t) * num_sats + sat) * num_stations + gs] != 0;
    }
};

GsVisTable build_gs_vis_table(const ConstellationSpec& spec, const GroundStationSet& gs,
                              int num_slots, double dt_s, ExecMode mode = ExecMode::Parallel);

// Vis_{i,j}^t for arbitrary node pairs; nodes 0..S-1 are satellites,
// S..S+N-1 ground stations. Sat-sat visibility is +Grid adjacency,
// ground-ground is always false.
bool visibility(const ConstellationSpec& spec, const GroundStationSet& gs, int node_i, int node_j,
                int t_slot, double dt_s);

}  // namespace secsim::orbital

#endif
