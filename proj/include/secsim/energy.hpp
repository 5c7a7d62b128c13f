#ifndef SECSIM_ENERGY_HPP
#define SECSIM_ENERGY_HPP

#include <span>
#include <vector>

#include "secsim/types.hpp"

namespace secsim::energy {

struct PowerParams {
    double p_solar_w = 120.0;
    double p_basic_w = 4.0;
    double p_isl_w = 10.0;  // per ISL; multiplied by the ISL count
    double p_gsl_w = 16.0;
    double p_cp_w = 60.0;
    double battery_wh = 60.0;

    double battery_j() const { return battery_wh * 3600.0; }
    void validate() const;
};

struct BatteryStepResult {
    double energy_j = 0.0;
    bool brownout = false;
};

// One slot of the battery recurrence:
//   B <- min((sun*P_solar - P_basic - n*P_cp - isl_count*P_ISL - gsl*P_GSL)*dt + prev, B_vol)
// clamped below at zero; a clamp is reported as a brownout.
BatteryStepResult battery_step(bool sunlit, int n_processing, bool gsl_on, const PowerParams& p,
                               int isl_count, double dt_s, double prev_j);

// Remaining-energy series for a set of satellites, slot-major per satellite.
struct BatteryTrace {
    int num_sats = 0;
    int num_slots = 0;
    double b_vol_j = 0.0;
    std::vector<double> energy_j;  // [sat * num_slots + t]

    double at(int sat, int t) const { return energy_j[static_cast<size_t>(sat) * num_slots + t]; }
    double dod(int sat, int t) const { return 1.0 - at(sat, t) / b_vol_j; }
};

inline double per_task_energy_j(double p_cp_w, double t_cp_s) { return p_cp_w * t_cp_s; }

// Cycles-to-failure curve N(d) = a * d^-b, capped at max_cycles. Defaults are
// calibrated so N quarters when the per-cycle DoD doubles (half-life per
// +20 percentage points across the 40..80% range).
struct LifetimeModel {
    double cycles_at_full_dod = 1000.0;  // a
    double exponent = 2.0;               // b
    double cycle_period_s = 5730.0;
    double max_cycles = 1e6;

    double cycles_to_failure(double dod) const;
    void validate() const;
};

// Fit (a, b) through two points of the cycle curve.
LifetimeModel fit_lifetime_curve(double d1, double n1, double d2, double n2, double cycle_period_s,
                                 double max_cycles = 1e6);

struct LifetimeEstimate {
    double years = 0.0;
    bool degenerate = false;  // all-zero DoD: model ceiling returned
};

// Splits the DoD series into charge-discharge cycles of cycle_period_s, takes
// the max DoD of each cycle, and converts the mean per-cycle DoD into years.
LifetimeEstimate lifetime_estimate(std::span<const double> dod_series, const LifetimeModel& model,
                                   double dt_s);

}  // namespace secsim::energy

#endif
