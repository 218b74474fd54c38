#include "otfs/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

namespace otfs {
namespace {

// Rounded to the femtosecond so that emit -> parse -> emit is a fixed point.
double to_ns(double seconds) { return std::round(seconds * 1e15) / 1e6; }

using nlohmann::json;
using nlohmann::ordered_json;

class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "/" : path_, "expected an object");
  }

  std::string path_of(const std::string& key) const { return path_ + "/" + key; }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  double number(const std::string& key, double fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError(path_of(key), "expected a number");
    return v->get<double>();
  }

  std::optional<double> optional_number(const std::string& key, std::optional<double> fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (v->is_null()) return std::nullopt;
    if (!v->is_number()) throw ConfigError(path_of(key), "expected a number or null");
    return v->get<double>();
  }

  long long integer(const std::string& key, long long fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) throw ConfigError(path_of(key), "expected an integer");
    return v->get<long long>();
  }

  std::optional<long long> optional_integer(const std::string& key, std::optional<long long> fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (v->is_null()) return std::nullopt;
    if (!v->is_number_integer()) throw ConfigError(path_of(key), "expected an integer or null");
    return v->get<long long>();
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(path_of(key), "expected true or false");
    return v->get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(path_of(key), "expected a string");
    return v->get<std::string>();
  }

  std::vector<double> number_list(const std::string& key) {
    const json* v = find(key);
    if (!v) return {};
    if (!v->is_array()) throw ConfigError(path_of(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      if (!(*v)[i].is_number())
        throw ConfigError(path_of(key) + "/" + std::to_string(i), "expected a number");
      out.push_back((*v)[i].get<double>());
    }
    return out;
  }

  void finish() const {
    for (const auto& [key, value] : j_.items())
      if (!seen_.contains(key)) throw ConfigError(path_of(key), "unknown key");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::size_t positive_size(long long v, const std::string& path) {
  if (v < 1) throw ConfigError(path, "must be >= 1");
  return static_cast<std::size_t>(v);
}

template <typename Fn>
void checked(const std::string& path, Fn&& fn) {
  try {
    fn();
  } catch (const InvalidArgument& e) {
    throw ConfigError(path, e.what());
  }
}

void parse_waveform(const json& j, ExperimentConfig& cfg) {
  ObjectReader r(j, "/waveform");
  auto& w = cfg.waveform;
  w.delta_f_hz = r.number("delta_f_hz", w.delta_f_hz);
  w.n_dft = positive_size(r.integer("n_dft", static_cast<long long>(w.n_dft)), r.path_of("n_dft"));
  w.m = positive_size(r.integer("subcarriers", static_cast<long long>(w.m)), r.path_of("subcarriers"));
  w.n = positive_size(r.integer("symbols", static_cast<long long>(w.n)), r.path_of("symbols"));
  w.n_zc = static_cast<int>(r.integer("n_zc", w.n_zc));
  w.root = static_cast<int>(r.integer("root", w.root));
  const auto cp = r.optional_integer("cp_len", std::nullopt);
  if (cp && *cp < 0) throw ConfigError(r.path_of("cp_len"), "must be >= 0");
  w.cp_len = cp ? static_cast<std::size_t>(*cp) : w.n_dft / 8;
  w.tx_power_w = dbm_to_watts(r.number("tx_power_dbm", watts_to_dbm(w.tx_power_w)));
  cfg.receiver.target_pfa = r.number("target_pfa", cfg.receiver.target_pfa);
  cfg.receiver.refine_peak = r.boolean("refine_peak", cfg.receiver.refine_peak);
  cfg.receiver.cp_window = r.boolean("cp_search_window", cfg.receiver.cp_window);
  r.finish();
  checked("/waveform", [&] {
    w.validate();
    generate_zc(w.root, w.n_zc);
  });
  if (!(cfg.receiver.target_pfa > 0.0 && cfg.receiver.target_pfa < 1.0))
    throw ConfigError("/waveform/target_pfa", "must lie in (0, 1)");
}

void parse_scenario(const json& j, ExperimentConfig& cfg) {
  ObjectReader r(j, "/scenario");
  auto& s = cfg.scenario;
  s.carrier_hz = r.number("carrier_hz", s.carrier_hz);
  if (!(s.carrier_hz > 0.0)) throw ConfigError(r.path_of("carrier_hz"), "must be > 0");
  s.friis_gains = r.boolean("friis_gains", s.friis_gains);

  if (const json* t = r.find("trajectory")) {
    ObjectReader tr(*t, "/scenario/trajectory");
    auto& ts = s.trajectory;
    ts.height_m = tr.number("height_m", ts.height_m);
    ts.spacing_m = tr.number("spacing_m", ts.spacing_m);
    ts.count = static_cast<int>(tr.integer("count", ts.count));
    ts.speed_mps = tr.number("speed_mps", ts.speed_mps);
    if (auto p0 = tr.optional_integer("overhead_index", std::nullopt)) ts.overhead_index = static_cast<int>(*p0);
    const auto target = tr.number_list("target_m");
    if (!target.empty()) {
      if (target.size() != 3) throw ConfigError(tr.path_of("target_m"), "expected [x, y, z]");
      ts.target = {target[0], target[1], target[2]};
    }
    tr.finish();
    if (!(ts.height_m > 0.0)) throw ConfigError(tr.path_of("height_m"), "must be > 0");
    if (!(ts.spacing_m > 0.0)) throw ConfigError(tr.path_of("spacing_m"), "must be > 0");
    if (ts.count < 1) throw ConfigError(tr.path_of("count"), "must be >= 1");
    if (ts.speed_mps < 0.0) throw ConfigError(tr.path_of("speed_mps"), "must be >= 0");
  }

  if (const json* a = r.find("antenna")) {
    ObjectReader ar(*a, "/scenario/antenna");
    auto& ant = s.antenna;
    ant.g_rmax_db = ar.number("g_rmax_db", ant.g_rmax_db);
    s.g_tmax_db = ar.number("g_tmax_db", s.g_tmax_db);
    ant.gamma_3db_deg = ar.number("gamma_3db_deg", ant.gamma_3db_deg);
    ant.theta_3db_deg = ar.number("theta_3db_deg", ant.theta_3db_deg);
    ant.fnb_deg = ar.optional_number("fnb_deg", ant.fnb_deg);
    ant.omnidirectional = ar.boolean("omnidirectional", ant.omnidirectional);
    s.tilt_deg = ar.optional_number("tilt_deg", s.tilt_deg);
    ar.finish();
    checked("/scenario/antenna", [&] { ant.validate(); });
  }

  if (const json* f = r.find("airframe")) {
    ObjectReader fr(*f, "/scenario/airframe");
    auto& af = s.airframe;
    af.mass_kg = fr.number("mass_kg", af.mass_kg);
    af.gravity_mps2 = fr.number("gravity_mps2", af.gravity_mps2);
    af.air_density = fr.number("air_density_kgpm3", af.air_density);
    af.drag_coefficient = fr.number("drag_coefficient", af.drag_coefficient);
    af.swept_area_m2 = fr.number("swept_area_m2", af.swept_area_m2);
    af.blade_profile_power_w = fr.number("blade_profile_power_w", af.blade_profile_power_w);
    af.induced_power_w = fr.number("induced_power_w", af.induced_power_w);
    af.tip_speed_mps = fr.number("tip_speed_mps", af.tip_speed_mps);
    af.induced_velocity_mps = fr.number("induced_velocity_mps", af.induced_velocity_mps);
    af.fuselage_drag_ratio = fr.number("fuselage_drag_ratio", af.fuselage_drag_ratio);
    af.rotor_solidity = fr.number("rotor_solidity", af.rotor_solidity);
    af.rotor_disc_area_m2 = fr.number("rotor_disc_area_m2", af.rotor_disc_area_m2);
    af.consistent_v_squared = fr.boolean("consistent_v_squared", af.consistent_v_squared);
    fr.finish();
    checked("/scenario/airframe", [&] { af.validate(); });
  }
  r.finish();
}

void parse_channel(const json& j, ExperimentConfig& cfg) {
  ObjectReader r(j, "/channel");
  auto& c = cfg.channel;
  const auto source = r.string("source", c.source == ChannelSource::Synthetic ? "synthetic" : "taps_file");
  if (source == "synthetic") {
    c.source = ChannelSource::Synthetic;
  } else if (source == "taps_file") {
    c.source = ChannelSource::TapsFile;
  } else {
    throw ConfigError(r.path_of("source"), "expected \"synthetic\" or \"taps_file\"");
  }
  c.taps_path = r.string("path", c.taps_path);
  if (c.source == ChannelSource::TapsFile && c.taps_path.empty())
    throw ConfigError(r.path_of("path"), "required when source is \"taps_file\"");
  c.los_threshold_db = r.number("los_threshold_db", c.los_threshold_db);

  if (const json* n = r.find("nlos")) {
    ObjectReader nr(*n, "/channel/nlos");
    auto& ns = c.nlos;
    ns.count = static_cast<int>(nr.integer("count", ns.count));
    ns.excess_delay_min_s = nr.number("excess_delay_min_ns", to_ns(ns.excess_delay_min_s)) / 1e9;
    ns.excess_delay_max_s = nr.number("excess_delay_max_ns", to_ns(ns.excess_delay_max_s)) / 1e9;
    ns.rel_power_min_db = nr.number("rel_power_min_db", ns.rel_power_min_db);
    ns.rel_power_max_db = nr.number("rel_power_max_db", ns.rel_power_max_db);
    nr.finish();
    checked("/channel/nlos", [&] { ns.validate(); });
  }
  r.finish();
}

void parse_noise(const json& j, ExperimentConfig& cfg) {
  ObjectReader r(j, "/noise");
  auto& n = cfg.noise;
  const auto mode = r.string("mode", n.mode == NoiseMode::Snr ? "snr" : n.mode == NoiseMode::Absolute ? "absolute" : "none");
  if (mode == "snr") {
    n.mode = NoiseMode::Snr;
  } else if (mode == "absolute") {
    n.mode = NoiseMode::Absolute;
  } else if (mode == "none") {
    n.mode = NoiseMode::None;
  } else {
    throw ConfigError(r.path_of("mode"), "expected \"snr\", \"absolute\" or \"none\"");
  }
  n.snr_db = r.number("snr_db", n.snr_db);
  n.noise_figure_db = r.number("noise_figure_db", n.noise_figure_db);
  n.bandwidth_hz = r.optional_number("bandwidth_hz", n.bandwidth_hz);
  if (n.bandwidth_hz && !(*n.bandwidth_hz > 0.0)) throw ConfigError(r.path_of("bandwidth_hz"), "must be > 0");
  r.finish();
}

void parse_sweep(const json& j, ExperimentConfig& cfg) {
  ObjectReader r(j, "/sweep");
  cfg.sweep.delta_f_hz = r.number_list("delta_f_hz");
  cfg.sweep.speed_mps = r.number_list("speed_mps");
  cfg.sweep.tilt_deg = r.number_list("tilt_deg");
  r.finish();
  for (std::size_t i = 0; i < cfg.sweep.delta_f_hz.size(); ++i)
    if (!(cfg.sweep.delta_f_hz[i] > 0.0))
      throw ConfigError("/sweep/delta_f_hz/" + std::to_string(i), "must be > 0");
  for (std::size_t i = 0; i < cfg.sweep.speed_mps.size(); ++i)
    if (cfg.sweep.speed_mps[i] < 0.0)
      throw ConfigError("/sweep/speed_mps/" + std::to_string(i), "must be >= 0");
}

ordered_json optional_to_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

double ExperimentConfig::effective_tilt_deg() const {
  if (scenario.tilt_deg) return *scenario.tilt_deg;
  return pitch_angle(scenario.trajectory.speed_mps, scenario.airframe).tilt_deg;
}

ExperimentConfig parse_config(const json& j) {
  ExperimentConfig cfg;
  ObjectReader r(j, "");
  if (const json* w = r.find("waveform")) parse_waveform(*w, cfg);
  if (const json* s = r.find("scenario")) parse_scenario(*s, cfg);
  if (const json* c = r.find("channel")) parse_channel(*c, cfg);
  if (const json* n = r.find("noise")) parse_noise(*n, cfg);
  if (const json* s = r.find("sweep")) parse_sweep(*s, cfg);

  const auto trials = r.integer("trials", cfg.trials);
  if (trials < 1) throw ConfigError("/trials", "must be >= 1");
  cfg.trials = static_cast<int>(trials);
  const auto seed = r.integer("seed", static_cast<long long>(cfg.seed));
  if (seed < 0) throw ConfigError("/seed", "must be >= 0");
  cfg.seed = static_cast<std::uint64_t>(seed);

  if (const json* s = r.find("schemes")) {
    if (!s->is_array() || s->empty()) throw ConfigError("/schemes", "expected a non-empty array");
    cfg.schemes.clear();
    for (std::size_t i = 0; i < s->size(); ++i) {
      const auto& item = (*s)[i];
      const auto path = "/schemes/" + std::to_string(i);
      if (!item.is_string()) throw ConfigError(path, "expected \"OTFS\" or \"OFDM\"");
      const auto m = parse_modulation(item.get<std::string>());
      if (!m) throw ConfigError(path, "expected \"OTFS\" or \"OFDM\"");
      if (std::find(cfg.schemes.begin(), cfg.schemes.end(), *m) != cfg.schemes.end())
        throw ConfigError(path, "duplicate scheme");
      cfg.schemes.push_back(*m);
    }
  }
  r.finish();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("/", "cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("/", std::string("malformed JSON: ") + e.what());
  }
  auto cfg = parse_config(j);
  if (cfg.channel.source == ChannelSource::TapsFile) {
    const std::filesystem::path taps(cfg.channel.taps_path);
    if (taps.is_relative())
      cfg.channel.taps_path = (std::filesystem::path(path).parent_path() / taps).string();
  }
  return cfg;
}

ordered_json to_json(const ExperimentConfig& cfg) {
  const auto& w = cfg.waveform;
  const auto& s = cfg.scenario;
  const auto& af = s.airframe;
  const auto& c = cfg.channel;

  ordered_json schemes = ordered_json::array();
  for (auto m : cfg.schemes) schemes.push_back(to_string(m));

  ordered_json out;
  out["waveform"] = {{"delta_f_hz", w.delta_f_hz},
                     {"n_dft", w.n_dft},
                     {"subcarriers", w.m},
                     {"symbols", w.n},
                     {"n_zc", w.n_zc},
                     {"root", w.root},
                     {"cp_len", w.cp_len},
                     {"tx_power_dbm", watts_to_dbm(w.tx_power_w)},
                     {"target_pfa", cfg.receiver.target_pfa},
                     {"refine_peak", cfg.receiver.refine_peak},
                     {"cp_search_window", cfg.receiver.cp_window}};
  out["schemes"] = schemes;
  out["scenario"] = {
      {"carrier_hz", s.carrier_hz},
      {"friis_gains", s.friis_gains},
      {"trajectory",
       {{"height_m", s.trajectory.height_m},
        {"spacing_m", s.trajectory.spacing_m},
        {"count", s.trajectory.count},
        {"speed_mps", s.trajectory.speed_mps},
        {"overhead_index", s.trajectory.overhead_index ? ordered_json(*s.trajectory.overhead_index)
                                                        : ordered_json(nullptr)},
        {"target_m", {s.trajectory.target.x, s.trajectory.target.y, s.trajectory.target.z}}}},
      {"antenna",
       {{"g_rmax_db", s.antenna.g_rmax_db},
        {"g_tmax_db", s.g_tmax_db},
        {"gamma_3db_deg", s.antenna.gamma_3db_deg},
        {"theta_3db_deg", s.antenna.theta_3db_deg},
        {"fnb_deg", optional_to_json(s.antenna.fnb_deg)},
        {"omnidirectional", s.antenna.omnidirectional},
        {"tilt_deg", optional_to_json(s.tilt_deg)}}},
      {"airframe",
       {{"mass_kg", af.mass_kg},
        {"gravity_mps2", af.gravity_mps2},
        {"air_density_kgpm3", af.air_density},
        {"drag_coefficient", af.drag_coefficient},
        {"swept_area_m2", af.swept_area_m2},
        {"blade_profile_power_w", af.blade_profile_power_w},
        {"induced_power_w", af.induced_power_w},
        {"tip_speed_mps", af.tip_speed_mps},
        {"induced_velocity_mps", af.induced_velocity_mps},
        {"fuselage_drag_ratio", af.fuselage_drag_ratio},
        {"rotor_solidity", af.rotor_solidity},
        {"rotor_disc_area_m2", af.rotor_disc_area_m2},
        {"consistent_v_squared", af.consistent_v_squared}}}};
  out["channel"] = {{"source", c.source == ChannelSource::Synthetic ? "synthetic" : "taps_file"},
                    {"path", c.taps_path},
                    {"los_threshold_db", c.los_threshold_db},
                    {"nlos",
                     {{"count", c.nlos.count},
                      {"excess_delay_min_ns", to_ns(c.nlos.excess_delay_min_s)},
                      {"excess_delay_max_ns", to_ns(c.nlos.excess_delay_max_s)},
                      {"rel_power_min_db", c.nlos.rel_power_min_db},
                      {"rel_power_max_db", c.nlos.rel_power_max_db}}}};
  const char* mode = cfg.noise.mode == NoiseMode::Snr        ? "snr"
                     : cfg.noise.mode == NoiseMode::Absolute ? "absolute"
                                                             : "none";
  out["noise"] = {{"mode", mode},
                  {"snr_db", cfg.noise.snr_db},
                  {"noise_figure_db", cfg.noise.noise_figure_db},
                  {"bandwidth_hz", optional_to_json(cfg.noise.bandwidth_hz)}};
  out["trials"] = cfg.trials;
  out["seed"] = cfg.seed;
  out["sweep"] = {{"delta_f_hz", cfg.sweep.delta_f_hz},
                  {"speed_mps", cfg.sweep.speed_mps},
                  {"tilt_deg", cfg.sweep.tilt_deg}};
  return out;
}

}  // namespace otfs
