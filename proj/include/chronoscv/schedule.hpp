#pragma once

#include <string>
#include <vector>

#include "chronoscv/gaussian.hpp"

namespace chronoscv::gauss {

/// Which quadrature a measurement event reads out: q, p, or
/// cos(theta) q + sin(theta) p.
struct Quadrature {
  enum class Kind { kQ, kP, kRotated };
  Kind kind = Kind::kQ;
  double theta = 0.0;

  static Quadrature q() { return {Kind::kQ, 0.0}; }
  static Quadrature p() { return {Kind::kP, 0.0}; }
  static Quadrature rotated(double theta) { return {Kind::kRotated, theta}; }

  double angle() const;
  /// Parses "q", "p", or "rotated:<theta>".
  static Quadrature parse(const std::string& s);
  std::string str() const;
};

struct Event {
  int t = 0;     // time slot index, non-decreasing across the schedule
  int mode = 0;  // which mode is probed at this event
};

/// Measurement plan: an initial state, a list of events ordered by time slot,
/// and one channel per gap between consecutive time slots (channels[k] maps
/// slot k to slot k+1). Two events may share a time slot only on distinct
/// modes. eps is the resolution ladder used for sharp-limit extrapolation.
struct EventSchedule {
  GaussianState initial;
  std::vector<Event> events;
  std::vector<GaussianChannel> channels;
  std::vector<double> eps{0.2, 0.1, 0.05};

  int n_events() const { return static_cast<int>(events.size()); }
  int n_slots() const { return events.empty() ? 0 : events.back().t + 1; }
};

/// Throws std::invalid_argument on ordering violations, same-slot same-mode
/// collisions, or channel-count mismatch.
void validate_schedule(const EventSchedule& s);

/// Schedule JSON:
/// {"initial":{"kind":...,"params":[...]} | {"mean":{...},"cov":{...}},
///  "events":[{"t":0,"mode":0},...],
///  "channels":[{"kind":"identity"|"attenuation"|"rotation"|"displacement",
///               "params":[...]}, ...],
///  "eps":[0.2,0.1,0.05]}
EventSchedule schedule_from_json(const nlohmann::json& j);
nlohmann::json schedule_to_json(const EventSchedule& s);

GaussianState state_from_json(const nlohmann::json& j);
GaussianChannel channel_from_json(const nlohmann::json& j, int n_modes);

}  // namespace chronoscv::gauss
