#ifndef SECSIM_TYPES_HPP
#define SECSIM_TYPES_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace secsim {

// Execution mode for kernels that ship both a plain serial loop and an
// OpenMP-parallel version. The two must produce bit-identical results;
// tests compare them and the bench target times them.
enum class ExecMode { Serial, Parallel };

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline Vec3 normalized(const Vec3& v) {
    double n = norm(v);
    return {v.x / n, v.y / n, v.z / n};
}

// A task k = (src, z, T_arv, T_cp, T_ddl): source satellite, size in bits,
// arrival slot, processing time in slots, deadline slot. Processing that
// starts at slot b occupies slots [b, b + t_compute - 1]; the deadline is
// met when b + t_compute <= t_deadline (last busy slot at most t_deadline-1).
struct Task {
    int id = 0;
    int src = 0;
    double size_bits = 0.0;
    int t_arrival = 0;
    int t_compute = 1;
    int t_deadline = 0;
};

// A task that cannot be met even with an immediate local start is rejected
// at ingestion.
inline void validate_task(const Task& k) {
    if (k.size_bits <= 0.0)
        throw std::invalid_argument("task " + std::to_string(k.id) + ": size_bits must be > 0");
    if (k.t_compute < 1)
        throw std::invalid_argument("task " + std::to_string(k.id) + ": t_compute must be >= 1");
    if (k.t_arrival < 0)
        throw std::invalid_argument("task " + std::to_string(k.id) + ": t_arrival must be >= 0");
    if (k.t_arrival + k.t_compute > k.t_deadline)
        throw std::invalid_argument("task " + std::to_string(k.id) +
                                    ": inherently infeasible (t_arrival + t_compute > t_deadline)");
}

enum class EventKind {
    Brownout,              // battery recurrence would have gone below zero
    DeadlineMiss,          // task finished (or would finish) after its deadline
    InfeasibleDeadline,    // arrangement found no start meeting the deadline
    NoFeasibleDestination  // offload target cannot meet the deadline either
};

struct Event {
    EventKind kind;
    int slot = -1;
    int task = -1;
    int sat = -1;
};

inline const char* event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::Brownout: return "brownout";
        case EventKind::DeadlineMiss: return "deadline_miss";
        case EventKind::InfeasibleDeadline: return "infeasible_deadline";
        case EventKind::NoFeasibleDestination: return "no_feasible_destination";
    }
    return "?";
}

// Configuration problems carry the offending field path.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(field) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

}  // namespace secsim

#endif
