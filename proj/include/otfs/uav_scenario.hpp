#pragma once

#include <optional>
#include <vector>

#include "otfs/common.hpp"

namespace otfs {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// One UAV position. The UAV flies along +x at constant height above the
/// target; horizontal_offset is signed along-track (negative while
/// approaching, zero overhead).
struct TrajectoryPoint {
  int index = 0;
  Vec3 position;
  Vec3 target;
  double height = 0.0;
  double horizontal_offset = 0.0;
  double speed = 0.0;
  /// Elevation of the target seen from the UAV, 90 deg when overhead.
  double elevation_deg = 90.0;

  double distance() const { return norm(position - target); }
};

struct TrajectorySpec {
  double height_m = 30.0;
  double spacing_m = 0.5;
  int count = 140;
  double speed_mps = 10.0;
  Vec3 target;
  /// Index of the point right above the target; count / 2 when unset.
  std::optional<int> overhead_index;
};

/// Directional receive antenna at the UAV.
struct AntennaConfig {
  double g_rmax_db = 10.0;
  double gamma_3db_deg = 40.0;
  double theta_3db_deg = 40.0;
  /// First null beamwidth; 2.5 x theta_3dB when unset.
  std::optional<double> fnb_deg;
  /// Flat gain g_rmax in every direction; the scenario then ignores the
  /// pattern and the first-null cone.
  bool omnidirectional = false;

  double first_null_beamwidth() const { return fnb_deg.value_or(2.5 * theta_3db_deg); }
  void validate() const;
};

/// Rotary-wing airframe constants for the pitch-angle and propulsion models.
struct AirframeConfig {
  double mass_kg = 4.0;
  double gravity_mps2 = 9.81;
  double air_density = 1.225;
  double drag_coefficient = 0.5;  // C_D
  double swept_area_m2 = 0.2;     // A_e, frontal area seen by the airflow
  double blade_profile_power_w = 80.0;   // W_0
  double induced_power_w = 88.6;         // W_i
  double tip_speed_mps = 120.0;          // U_tip
  double induced_velocity_mps = 4.03;    // v_0
  double fuselage_drag_ratio = 0.6;      // d_0
  double rotor_solidity = 0.05;          // s
  double rotor_disc_area_m2 = 0.503;     // A
  /// Use v^2 in both terms of the pitch formula (physical drag form).
  /// When false the formula is evaluated with v in the subtracted term.
  bool consistent_v_squared = true;

  void validate() const;
};

/// G_r = G_rmax - 12 (gamma / gamma_3dB)^2 - 12 ((theta - theta_v) / theta_3dB)^2, in dB.
double antenna_gain_db(double gamma_deg, double theta_deg, double theta_v_deg,
                       const AntennaConfig& cfg);

struct PitchAngles {
  double pitch_deg = 90.0;  // theta_xi
  double tilt_deg = 0.0;    // theta_v = 90 - theta_xi
};

PitchAngles pitch_angle(double speed_mps, const AirframeConfig& cfg);

/// Rotary-wing propulsion power at forward speed v (W).
double propulsion_power(double speed_mps, const AirframeConfig& cfg);

/// floor(h / (dp tan(180 - FNB - theta_v)) + p0). Throws DomainError unless
/// 0 < 180 - FNB - theta_v < 90.
int los_point_count(double height_m, double spacing_m, double fnb_deg, double theta_v_deg, int p0);

std::vector<TrajectoryPoint> build_trajectory(const TrajectorySpec& spec);

/// Angle below the forward horizon at which the target is seen, in [0, 180].
/// Equals elevation_deg while approaching and 180 - elevation_deg after
/// passing the target.
double depression_angle_deg(const TrajectoryPoint& p);

/// theta_a: angle between the antenna boresight (forward, tilted down by
/// theta_v) and the direction to the target.
double boresight_offset_deg(const TrajectoryPoint& p, double theta_v_deg);

/// theta_a <= FNB.
bool geometric_los(const TrajectoryPoint& p, double theta_v_deg, double fnb_deg);

}  // namespace otfs
