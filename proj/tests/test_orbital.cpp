#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "secsim/orbital.hpp"

using namespace secsim;
using namespace secsim::orbital;

namespace {

ConstellationSpec single_sat(double h = 550.0, double incl = 53.0) {
    ConstellationSpec spec;
    spec.shells = {{h, incl, 1, 1, 0.0}};
    return spec;
}

ConstellationSpec walker(int planes, int per_plane, double h = 550.0, double incl = 53.0,
                         double phase = 0.0) {
    ConstellationSpec spec;
    spec.shells = {{h, incl, planes, per_plane, phase}};
    return spec;
}

}  // namespace

TEST_CASE("orbital period follows Kepler's third law") {
    // 2*pi*sqrt((6371+550)^3 / 398600.4418) = 5730.127 s
    CHECK(orbital_period_s(550.0) == doctest::Approx(5730.127089).epsilon(1e-6));
    CHECK(orbital_period_s(1200.0) == doctest::Approx(6556.028756).epsilon(1e-6));
}

TEST_CASE("propagate: initial condition and orbit radius") {
    auto spec = single_sat();
    Vec3 p0 = satellite_position(spec, 0, 0.0, 1.0);
    CHECK(norm(p0) == doctest::Approx(6921.0).epsilon(1e-12));
    // zero phase: starts on the ascending node
    CHECK(p0.x == doctest::Approx(6921.0));
    CHECK(p0.z == doctest::Approx(0.0));
}

TEST_CASE("propagate: periodicity of the circular orbit") {
    auto spec = walker(3, 4, 550.0, 53.0, 1.0);
    double period_slots = orbital_period_s(550.0) / 1.0;
    for (int s = 0; s < spec.num_sats(); ++s) {
        Vec3 a = satellite_position(spec, s, 10.0, 1.0);
        Vec3 b = satellite_position(spec, s, 10.0 + period_slots, 1.0);
        CHECK(norm(a - b) < 1e-6);  // km
    }
}

TEST_CASE("propagate: satellites evenly spaced in plane") {
    auto spec = walker(2, 4);
    // same plane neighbors are 90 degrees apart: chord = 2*R*sin(45deg)
    Vec3 a = satellite_position(spec, 0, 0.0, 1.0);
    Vec3 b = satellite_position(spec, 1, 0.0, 1.0);
    double expected = 2.0 * 6921.0 * std::sin(kPi / 4.0);
    CHECK(norm(a - b) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("sun direction: unit norm, equinox and solstice declination") {
    for (double t : {0.0, 1234.5, 86400.0}) {
        Vec3 sun = sun_direction(80, t, 1.0);
        CHECK(norm(sun) == doctest::Approx(1.0).epsilon(1e-12));
    }
    // March equinox: declination ~ 0
    Vec3 equinox = sun_direction(80, 0.0, 1.0);
    double dec_eq = rad2deg(std::asin(equinox.z));
    CHECK(std::abs(dec_eq) < 1.0);
    // June solstice (~day 172): declination ~ +23.44
    Vec3 solstice = sun_direction(172, 0.0, 1.0);
    double dec_sol = rad2deg(std::asin(solstice.z));
    CHECK(dec_sol == doctest::Approx(23.44).epsilon(0.5 / 23.44));
}

TEST_CASE("is_sunlit: day side, shadow axis, outside cylinder") {
    Vec3 sun{1.0, 0.0, 0.0};
    CHECK(is_sunlit({6921.0, 0.0, 0.0}, sun));          // sun side
    CHECK_FALSE(is_sunlit({-6921.0, 0.0, 0.0}, sun));   // anti-sun on the axis
    CHECK(is_sunlit({-6921.0, 6400.0, 0.0}, sun));      // perpendicular distance > R
    CHECK_FALSE(is_sunlit({-6921.0, 6300.0, 0.0}, sun));
}

TEST_CASE("full_orbit_sunlit threshold") {
    CHECK(full_orbit_sunlit(550.0, 90.0));
    // 6921*sin(60) = 5993.8 < 6371; 6921*sin(70) = 6503.6 > 6371
    CHECK_FALSE(full_orbit_sunlit(550.0, 60.0));
    CHECK(full_orbit_sunlit(550.0, 70.0));
}

TEST_CASE("sunlit_ratio: extremes and eclipse fraction at theta=0") {
    // polar plane, equinox epoch, RAAN 0: the sun lies in the orbital plane
    auto spec = single_sat(550.0, 90.0);
    spec.epoch_day_of_year = 80;
    int period = static_cast<int>(std::lround(orbital_period_s(550.0)));
    auto table = build_sun_table(spec, period, 1.0, ExecMode::Serial);

    Vec3 sun = sun_direction(80, 0.0, 1.0);
    double theta = sun_plane_angle_deg(spec, 0, sun);
    REQUIRE(theta < 1.0);

    double ratio = sunlit_ratio(table, 0, 0, period);
    double eclipse_expected = std::asin(kEarthRadiusKm / 6921.0) / kPi;  // 0.37224
    // boundary discretization: one slot per shadow edge plus sun drift
    CHECK(std::abs((1.0 - ratio) - eclipse_expected) <= 3.0 / period);

    // all-lit and never-lit windows
    int first_lit = -1, first_dark = -1;
    for (int t = 0; t < period; ++t) {
        if (table.sunlit(0, t) && first_lit < 0) first_lit = t;
        if (!table.sunlit(0, t) && first_dark < 0) first_dark = t;
    }
    REQUIRE(first_lit >= 0);
    REQUIRE(first_dark >= 0);
    CHECK(sunlit_ratio(table, 0, first_lit, first_lit + 1) == 1.0);
    CHECK(sunlit_ratio(table, 0, first_dark, first_dark + 1) == 0.0);
    CHECK_THROWS_AS(sunlit_ratio(table, 0, 5, 5), std::invalid_argument);
}

TEST_CASE("full_orbit_sunlit agrees with the simulated ratio") {
    // sweep inclination against an equinox sun: theta varies with the plane
    for (double incl : {30.0, 53.0, 70.0, 85.0, 90.0}) {
        for (double h : {400.0, 550.0, 1200.0}) {
            ConstellationSpec spec = single_sat(h, incl);
            spec.epoch_day_of_year = 172;
            int period = static_cast<int>(std::lround(orbital_period_s(h)));
            auto table = build_sun_table(spec, period, 1.0, ExecMode::Serial);
            Vec3 sun = sun_direction(spec.epoch_day_of_year, period / 2.0, 1.0);
            double theta = sun_plane_angle_deg(spec, 0, sun);
            double ratio = sunlit_ratio(table, 0, 0, period);
            double one_slot = 1.0 / period;
            if (full_orbit_sunlit(h, theta))
                CHECK(ratio >= 1.0 - 2.0 * one_slot);
            else
                CHECK(ratio < 1.0);
        }
    }
}

TEST_CASE("sun table: parallel kernel matches the serial reference") {
    auto spec = walker(4, 6, 700.0, 65.0, 2.0);
    auto serial = build_sun_table(spec, 2000, 1.0, ExecMode::Serial);
    auto parallel = build_sun_table(spec, 2000, 1.0, ExecMode::Parallel);
    CHECK(serial.bits == parallel.bits);
}

TEST_CASE("+Grid adjacency: four neighbors, degenerate sizes collapse") {
    auto adj = isl_neighbors(walker(6, 8));
    for (const auto& nbrs : adj) CHECK(nbrs.size() == 4);

    // 2x2 grid: fore/aft collapse, left/right collapse
    auto small = isl_neighbors(walker(2, 2));
    for (const auto& nbrs : small) CHECK(nbrs.size() == 2);
}

TEST_CASE("visibility: same-plane successor always visible") {
    auto spec = walker(3, 4);
    GroundStationSet gs;
    for (int t : {0, 100, 5000}) CHECK(visibility(spec, gs, 0, 1, t, 1.0));
    CHECK_FALSE(visibility(spec, gs, 0, 2, 0, 1.0));  // same plane but not adjacent
}

TEST_CASE("visibility: nadir pass and far side") {
    auto spec = single_sat(550.0, 0.0);  // equatorial orbit
    GroundStationSet gs;
    gs.stations = {{"under", 0.0, 0.0}, {"far", 0.0, -180.0}};
    gs.min_elevation_deg = 25.0;
    // t=0: satellite starts over lon 0 (station rotated there at t=0)
    Vec3 sat = satellite_position(spec, 0, 0.0, 1.0);
    Vec3 under = ground_station_position(gs.stations[0], 0.0, 1.0);
    CHECK(elevation_deg(sat, under) == doctest::Approx(90.0).epsilon(1e-6));
    CHECK(visibility(spec, gs, 0, 1, 0, 1.0));       // directly above "under"
    CHECK_FALSE(visibility(spec, gs, 0, 2, 0, 1.0)); // opposite side of Earth
}

TEST_CASE("ground stations load from CSV") {
    const char* path = "test_stations.csv";
    {
        std::ofstream out(path);
        out << "id,lat,lon\n";
        out << "svalbard,78.2,15.4\n";
        out << "awarua,-46.5,168.4\n";
    }
    auto set = GroundStationSet::from_csv(path, 25.0);
    REQUIRE(set.stations.size() == 2);
    CHECK(set.stations[0].id == "svalbard");
    CHECK(set.stations[1].lat_deg == doctest::Approx(-46.5));
    std::remove(path);

    {
        std::ofstream out(path);
        out << "id,lat,lon\n";
        out << "bad,not_a_number,0\n";
    }
    CHECK_THROWS_AS(GroundStationSet::from_csv(path, 25.0), ConfigError);
    std::remove(path);
}

TEST_CASE("spec validation rejects bad shells") {
    ConstellationSpec spec;
    spec.shells = {{-1.0, 53.0, 1, 1, 0.0}};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.shells = {{550.0, 200.0, 1, 1, 0.0}};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.shells = {{550.0, 53.0, 0, 1, 0.0}};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
}
