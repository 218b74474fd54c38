#include "otfs/uav_scenario.hpp"

#include <algorithm>
#include <string>

namespace otfs {

void AntennaConfig::validate() const {
  if (!(gamma_3db_deg > 0.0) || !(theta_3db_deg > 0.0))
    throw InvalidArgument("antenna 3 dB beamwidths must be > 0");
  if (!(first_null_beamwidth() > 0.0)) throw InvalidArgument("first null beamwidth must be > 0");
}

void AirframeConfig::validate() const {
  const double fields[] = {mass_kg,          gravity_mps2,          air_density,
                           drag_coefficient, swept_area_m2,         blade_profile_power_w,
                           induced_power_w,  tip_speed_mps,         induced_velocity_mps,
                           fuselage_drag_ratio, rotor_solidity,     rotor_disc_area_m2};
  for (double f : fields)
    if (!(f > 0.0)) throw InvalidArgument("airframe constants must all be > 0");
}

double antenna_gain_db(double gamma_deg, double theta_deg, double theta_v_deg,
                       const AntennaConfig& cfg) {
  const double h = gamma_deg / cfg.gamma_3db_deg;
  const double v = (theta_deg - theta_v_deg) / cfg.theta_3db_deg;
  return -12.0 * h * h - 12.0 * v * v + cfg.g_rmax_db;
}

PitchAngles pitch_angle(double speed_mps, const AirframeConfig& cfg) {
  if (speed_mps < 0.0) throw InvalidArgument("speed must be >= 0");
  PitchAngles out;
  if (speed_mps == 0.0) return out;  // hover: theta_xi -> 90 deg

  const double drag = cfg.air_density * cfg.drag_coefficient * cfg.swept_area_m2;
  const double weight = cfg.mass_kg * cfg.gravity_mps2;
  const double x = weight / (drag * speed_mps * speed_mps);
  double arg;
  if (cfg.consistent_v_squared) {
    // sqrt(x^2 + 1) - x without cancellation for large x.
    arg = 1.0 / (std::hypot(x, 1.0) + x);
  } else {
    const double y = weight / (drag * speed_mps);
    arg = std::clamp(std::hypot(x, 1.0) - y, -1.0, 1.0);
  }
  out.pitch_deg = rad_to_deg(std::acos(arg));
  out.tilt_deg = 90.0 - out.pitch_deg;
  return out;
}

double propulsion_power(double speed_mps, const AirframeConfig& cfg) {
  if (speed_mps < 0.0) throw InvalidArgument("speed must be >= 0");
  const double v = speed_mps;
  const double v2 = v * v;
  const double w0 = cfg.blade_profile_power_w;
  const double profile =
      w0 * (1.0 + 3.0 * v2 / (cfg.tip_speed_mps * cfg.tip_speed_mps) +
            cfg.fuselage_drag_ratio * cfg.air_density * cfg.rotor_solidity *
                cfg.rotor_disc_area_m2 * v2 * v / (2.0 * w0));
  // sqrt(1 + u^2) - u with u = v^2 / (2 v_0^2), written to avoid cancellation.
  const double u = v2 / (2.0 * cfg.induced_velocity_mps * cfg.induced_velocity_mps);
  const double induced = cfg.induced_power_w * std::sqrt(1.0 / (std::hypot(1.0, u) + u));
  return profile + induced;
}

int los_point_count(double height_m, double spacing_m, double fnb_deg, double theta_v_deg, int p0) {
  if (!(height_m > 0.0) || !(spacing_m > 0.0))
    throw InvalidArgument("height and point spacing must be > 0");
  const double angle = 180.0 - fnb_deg - theta_v_deg;
  if (!(angle > 0.0 && angle < 90.0))
    throw DomainError("180 - FNB - theta_v = " + std::to_string(angle) +
                      " deg lies outside (0, 90)");
  return static_cast<int>(std::floor(height_m / (spacing_m * std::tan(deg_to_rad(angle))))) + p0;
}

std::vector<TrajectoryPoint> build_trajectory(const TrajectorySpec& spec) {
  if (spec.count < 1) throw InvalidArgument("trajectory needs at least one point");
  if (!(spec.spacing_m > 0.0)) throw InvalidArgument("point spacing must be > 0");
  if (!(spec.height_m > 0.0)) throw InvalidArgument("height must be > 0");
  const int p0 = spec.overhead_index.value_or(spec.count / 2);

  std::vector<TrajectoryPoint> points;
  points.reserve(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) {
    TrajectoryPoint p;
    p.index = i;
    p.target = spec.target;
    p.height = spec.height_m;
    p.horizontal_offset = static_cast<double>(i - p0) * spec.spacing_m;
    p.position = {spec.target.x + p.horizontal_offset, spec.target.y, spec.target.z + spec.height_m};
    p.speed = spec.speed_mps;
    p.elevation_deg = rad_to_deg(std::atan2(spec.height_m, std::abs(p.horizontal_offset)));
    points.push_back(p);
  }
  return points;
}

double depression_angle_deg(const TrajectoryPoint& p) {
  const Vec3 d = p.target - p.position;
  return rad_to_deg(std::atan2(-d.z, d.x));
}

double boresight_offset_deg(const TrajectoryPoint& p, double theta_v_deg) {
  const Vec3 d = p.target - p.position;
  const double len = norm(d);
  if (len == 0.0) return 0.0;
  const double tv = deg_to_rad(theta_v_deg);
  const Vec3 boresight{std::cos(tv), 0.0, -std::sin(tv)};
  return rad_to_deg(std::acos(std::clamp(dot(boresight, d) / len, -1.0, 1.0)));
}

bool geometric_los(const TrajectoryPoint& p, double theta_v_deg, double fnb_deg) {
  return boresight_offset_deg(p, theta_v_deg) <= fnb_deg;
}

}  // namespace otfs
