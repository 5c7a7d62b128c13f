#include "secsim/energy.hpp"

#include <algorithm>
#include <cmath>

namespace secsim::energy {

void PowerParams::validate() const {
    if (p_solar_w < 0 || p_basic_w < 0 || p_isl_w < 0 || p_gsl_w < 0 || p_cp_w < 0)
        throw ConfigError("power", "power levels must be >= 0");
    if (battery_wh <= 0) throw ConfigError("power.battery_wh", "must be > 0");
}

BatteryStepResult battery_step(bool sunlit, int n_processing, bool gsl_on, const PowerParams& p,
                               int isl_count, double dt_s, double prev_j) {
    double net_w = (sunlit ? p.p_solar_w : 0.0) - p.p_basic_w - p.p_cp_w * n_processing -
                   isl_count * p.p_isl_w - (gsl_on ? p.p_gsl_w : 0.0);
    double b = std::min(net_w * dt_s + prev_j, p.battery_j());
    BatteryStepResult r;
    r.brownout = b < 0.0;
    r.energy_j = std::max(b, 0.0);
    return r;
}

double LifetimeModel::cycles_to_failure(double dod) const {
    if (dod <= 0.0) return max_cycles;
    return std::min(cycles_at_full_dod * std::pow(dod, -exponent), max_cycles);
}

void LifetimeModel::validate() const {
    if (cycles_at_full_dod <= 0 || exponent <= 0)
        throw ConfigError("lifetime", "curve parameters must be > 0");
    if (cycle_period_s <= 0) throw ConfigError("lifetime.cycle_period_s", "must be > 0");
}

LifetimeModel fit_lifetime_curve(double d1, double n1, double d2, double n2, double cycle_period_s,
                                 double max_cycles) {
    if (d1 <= 0 || d2 <= 0 || d1 == d2 || n1 <= 0 || n2 <= 0)
        throw std::invalid_argument("fit_lifetime_curve: need two distinct positive points");
    LifetimeModel m;
    m.exponent = std::log(n1 / n2) / std::log(d2 / d1);
    m.cycles_at_full_dod = n1 * std::pow(d1, m.exponent);
    m.cycle_period_s = cycle_period_s;
    m.max_cycles = max_cycles;
    m.validate();
    return m;
}

LifetimeEstimate lifetime_estimate(std::span<const double> dod_series, const LifetimeModel& model,
                                   double dt_s) {
    if (dod_series.empty()) throw std::invalid_argument("lifetime_estimate: empty series");
    int cycle_slots = std::max(1, static_cast<int>(std::llround(model.cycle_period_s / dt_s)));
    double sum = 0.0;
    int cycles = 0;
    for (size_t begin = 0; begin < dod_series.size(); begin += cycle_slots) {
        size_t end = std::min(begin + cycle_slots, dod_series.size());
        double peak = 0.0;
        for (size_t t = begin; t < end; ++t) peak = std::max(peak, dod_series[t]);
        sum += peak;
        ++cycles;
    }
    double mean_dod = sum / cycles;
    LifetimeEstimate est;
    est.degenerate = mean_dod <= 0.0;
    double seconds = model.cycles_to_failure(mean_dod) * model.cycle_period_s;
    est.years = seconds / (365.25 * 86400.0);
    return est;
}

}  // namespace secsim::energy
