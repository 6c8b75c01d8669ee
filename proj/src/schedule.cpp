#include "chronoscv/schedule.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace chronoscv::gauss {

double Quadrature::angle() const {
  switch (kind) {
    case Kind::kQ: return 0.0;
    case Kind::kP: return M_PI / 2.0;
    case Kind::kRotated: return theta;
  }
  return 0.0;
}

Quadrature Quadrature::parse(const std::string& s) {
  if (s == "q") return q();
  if (s == "p") return p();
  if (s.rfind("rotated:", 0) == 0) {
    std::size_t pos = 0;
    const std::string arg = s.substr(8);
    const double theta = std::stod(arg, &pos);
    if (pos != arg.size()) throw std::invalid_argument("quadrature: bad angle in '" + s + "'");
    return rotated(theta);
  }
  throw std::invalid_argument("quadrature: expected 'q', 'p', or 'rotated:<theta>', got '" + s + "'");
}

std::string Quadrature::str() const {
  switch (kind) {
    case Kind::kQ: return "q";
    case Kind::kP: return "p";
    case Kind::kRotated: return "rotated:" + std::to_string(theta);
  }
  return "q";
}

void validate_schedule(const EventSchedule& s) {
  validate_state(s.initial);
  if (s.events.empty()) throw std::invalid_argument("schedule: needs at least one event");
  std::set<std::pair<int, int>> seen;
  int prev_t = 0;
  for (std::size_t i = 0; i < s.events.size(); ++i) {
    const Event& e = s.events[i];
    if (e.t < 0) throw std::invalid_argument("schedule: time slots must be >= 0");
    if (i == 0 && e.t != 0) throw std::invalid_argument("schedule: first event must sit at slot 0");
    if (i > 0 && e.t < prev_t) throw std::invalid_argument("schedule: events must be time-ordered");
    if (i > 0 && e.t > prev_t + 1)
      throw std::invalid_argument("schedule: time slots must be contiguous");
    if (e.mode < 0 || e.mode >= s.initial.n_modes)
      throw std::invalid_argument("schedule: event mode out of range");
    if (!seen.insert({e.t, e.mode}).second)
      throw std::invalid_argument("schedule: two events share a time slot and mode");
    prev_t = e.t;
  }
  const int gaps = s.events.back().t;
  if (static_cast<int>(s.channels.size()) != gaps)
    throw std::invalid_argument("schedule: expected one channel per time gap (" +
                                std::to_string(gaps) + ")");
  for (const auto& c : s.channels)
    if (c.X.rows() != 2 * s.initial.n_modes)
      throw std::invalid_argument("schedule: channel dimension mismatch");
  if (s.eps.empty()) throw std::invalid_argument("schedule: eps ladder must be non-empty");
  for (double e : s.eps)
    if (!(e > 0.0)) throw std::invalid_argument("schedule: eps values must be positive");
}

GaussianState state_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("state JSON must be an object");
  if (j.contains("kind")) {
    for (auto& [k, v] : j.items()) {
      (void)v;
      if (k != "kind" && k != "params")
        throw std::invalid_argument("state JSON: unknown key '" + k + "'");
    }
    const std::string kind = j.at("kind").get<std::string>();
    std::vector<double> params;
    if (j.contains("params")) params = j.at("params").get<std::vector<double>>();
    if (kind == "vacuum") return make_reference_state(ReferenceKind::kVacuum, params);
    if (kind == "thermal") return make_reference_state(ReferenceKind::kThermal, params);
    if (kind == "coherent") return make_reference_state(ReferenceKind::kCoherent, params);
    if (kind == "tmss") return make_reference_state(ReferenceKind::kTmss, params);
    throw std::invalid_argument("state JSON: unknown kind '" + kind + "'");
  }
  if (j.contains("mean") && j.contains("cov")) {
    for (auto& [k, v] : j.items()) {
      (void)v;
      if (k != "mean" && k != "cov")
        throw std::invalid_argument("state JSON: unknown key '" + k + "'");
    }
    GaussianState g;
    g.mean = vector_from_json(j.at("mean"));
    g.cov = matrix_from_json(j.at("cov"));
    if (g.mean.size() % 2 != 0) throw std::invalid_argument("state JSON: odd mean length");
    g.n_modes = static_cast<int>(g.mean.size() / 2);
    validate_state(g);
    return g;
  }
  throw std::invalid_argument("state JSON: need either kind/params or mean/cov");
}

GaussianChannel channel_from_json(const nlohmann::json& j, int n_modes) {
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument("channel JSON must carry a kind");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "explicit") {
    for (auto& [k, v] : j.items()) {
      (void)v;
      if (k != "kind" && k != "X" && k != "Y" && k != "shift")
        throw std::invalid_argument("channel JSON: unknown key '" + k + "'");
    }
    GaussianChannel c;
    c.X = matrix_from_json(j.at("X"));
    c.Y = matrix_from_json(j.at("Y"));
    c.shift = vector_from_json(j.at("shift"));
    if (c.X.rows() != 2 * n_modes || c.X.cols() != 2 * n_modes || c.Y.rows() != 2 * n_modes ||
        c.Y.cols() != 2 * n_modes || c.shift.size() != 2 * n_modes)
      throw std::invalid_argument("channel JSON: explicit maps must be 2N x 2N");
    return c;
  }
  for (auto& [k, v] : j.items()) {
    (void)v;
    if (k != "kind" && k != "params")
      throw std::invalid_argument("channel JSON: unknown key '" + k + "'");
  }
  std::vector<double> params;
  if (j.contains("params")) params = j.at("params").get<std::vector<double>>();
  if (kind == "identity") {
    if (!params.empty()) throw std::invalid_argument("identity channel takes no params");
    return GaussianChannel::identity(n_modes);
  }
  if (kind == "attenuation") {
    if (params.size() != 1) throw std::invalid_argument("attenuation channel takes {eta}");
    return GaussianChannel::attenuation(params[0], n_modes);
  }
  if (kind == "rotation") {
    if (params.size() != 1) throw std::invalid_argument("rotation channel takes {theta}");
    return GaussianChannel::rotation(params[0], n_modes);
  }
  if (kind == "displacement") {
    if (params.size() != static_cast<std::size_t>(2 * n_modes))
      throw std::invalid_argument("displacement channel takes a length-2N shift");
    VectorXd s(2 * n_modes);
    for (int i = 0; i < 2 * n_modes; ++i) s(i) = params[i];
    return GaussianChannel::displacement(s);
  }
  throw std::invalid_argument("channel JSON: unknown kind '" + kind + "'");
}

EventSchedule schedule_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("schedule JSON must be an object");
  for (auto& [k, v] : j.items()) {
    (void)v;
    if (k != "initial" && k != "events" && k != "channels" && k != "eps")
      throw std::invalid_argument("schedule JSON: unknown key '" + k + "'");
  }
  EventSchedule s;
  s.initial = state_from_json(j.at("initial"));
  if (!j.contains("events") || !j.at("events").is_array())
    throw std::invalid_argument("schedule JSON: events array required");
  for (const auto& ej : j.at("events")) {
    for (auto& [k, v] : ej.items()) {
      (void)v;
      if (k != "t" && k != "mode")
        throw std::invalid_argument("event JSON: unknown key '" + k + "'");
    }
    Event e;
    e.t = ej.at("t").get<int>();
    e.mode = ej.value("mode", 0);
    s.events.push_back(e);
  }
  if (j.contains("channels"))
    for (const auto& cj : j.at("channels"))
      s.channels.push_back(channel_from_json(cj, s.initial.n_modes));
  if (j.contains("eps")) s.eps = j.at("eps").get<std::vector<double>>();
  validate_schedule(s);
  return s;
}

nlohmann::json schedule_to_json(const EventSchedule& s) {
  nlohmann::json j;
  j["initial"] = {{"mean", vector_to_json(s.initial.mean)}, {"cov", matrix_to_json(s.initial.cov)}};
  j["events"] = nlohmann::json::array();
  for (const auto& e : s.events) j["events"].push_back({{"t", e.t}, {"mode", e.mode}});
  j["channels"] = nlohmann::json::array();
  for (const auto& c : s.channels)
    j["channels"].push_back({{"kind", "explicit"},
                             {"X", matrix_to_json(c.X)},
                             {"Y", matrix_to_json(c.Y)},
                             {"shift", vector_to_json(c.shift)}});
  j["eps"] = s.eps;
  return j;
}

}  // namespace chronoscv::gauss
