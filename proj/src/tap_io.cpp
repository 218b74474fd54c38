#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>

#include <fmt/format.h>

#include "otfs/channel.hpp"

namespace otfs {
namespace {

constexpr std::string_view kHeader = "point_index,true_distance_m,gain_db,phase_rad,delay_s,doppler_hz";

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? line.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view field, std::size_t line, const char* name) {
  field = trim(field);
  T value{};
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end || field.empty())
    throw ParseError(line, fmt::format("invalid {} '{}'", name, field));
  return value;
}

}  // namespace

std::vector<ChannelRealization> read_taps(std::istream& in, double los_threshold_db) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "empty tap file");
  ++line_no;
  if (trim(line).substr(0, 3) == "\xEF\xBB\xBF") line.erase(0, 3);
  if (trim(line) != kHeader) throw ParseError(1, fmt::format("expected header '{}'", kHeader));

  std::map<int, ChannelRealization> points;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto fields = split_commas(body);
    if (fields.size() != 6)
      throw ParseError(line_no, fmt::format("expected 6 fields, got {}", fields.size()));

    const int index = parse_number<int>(fields[0], line_no, "point_index");
    const double distance = parse_number<double>(fields[1], line_no, "true_distance_m");
    const double gain_db = parse_number<double>(fields[2], line_no, "gain_db");
    const double phase = parse_number<double>(fields[3], line_no, "phase_rad");
    const double delay = parse_number<double>(fields[4], line_no, "delay_s");
    const double doppler = parse_number<double>(fields[5], line_no, "doppler_hz");

    if (index < 0) throw ValidationError(fmt::format("line {}: negative point index", line_no));
    if (delay < 0.0) throw ValidationError(fmt::format("line {}: negative tap delay {}", line_no, delay));

    auto [it, inserted] = points.try_emplace(index);
    auto& ch = it->second;
    if (inserted) {
      ch.trajectory_index = index;
      ch.true_distance_m = distance;
    } else if (ch.true_distance_m != distance) {
      throw ValidationError(
          fmt::format("line {}: point {} has conflicting true distances", line_no, index));
    }
    ch.taps.push_back({std::polar(std::pow(10.0, gain_db / 20.0), phase), delay, doppler});
  }

  std::vector<ChannelRealization> out;
  out.reserve(points.size());
  for (auto& [index, ch] : points) {
    ch.sort_taps();
    ch.los_tag = classify_taps(ch.taps, los_threshold_db);
    out.push_back(std::move(ch));
  }
  return out;
}

std::vector<ChannelRealization> load_taps(const std::string& path, double los_threshold_db) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open tap file '" + path + "'");
  return read_taps(in, los_threshold_db);
}

void write_taps(std::ostream& out, const std::vector<ChannelRealization>& realizations) {
  out << kHeader << '\n';
  for (const auto& ch : realizations)
    for (const auto& tap : ch.taps)
      out << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", ch.trajectory_index,
                         ch.true_distance_m, 20.0 * std::log10(std::abs(tap.gain)),
                         std::arg(tap.gain), tap.delay_s, tap.doppler_hz);
}

void save_taps(const std::string& path, const std::vector<ChannelRealization>& realizations) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write tap file '" + path + "'");
  write_taps(out, realizations);
}

}  // namespace otfs
