#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace otfs {

using cplx = std::complex<double>;

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s
inline constexpr double kBoltzmann = 1.380649e-23;      // J/K
inline constexpr double kPi = std::numbers::pi;

/// Line-of-sight classification of a trajectory point.
enum class LinkState { Los, Nlos };

const char* to_string(LinkState s);

// Error taxonomy. Every error thrown by the library derives from one of
// the standard exception types so callers can catch at either level.

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Waveform length or grid dimensions disagree with the frame layout.
class FramingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The correlation profile carries no power at all.
class NotDetectable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A geometric formula was evaluated outside its validity window.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed input file; `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a data invariant (e.g. negative delay).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

/// SplitMix64 finalizer; used to derive independent RNG streams from indices.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for the stream identified by (master, a, b, c). Order matters.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ a);
  h = mix64(h ^ b);
  return mix64(h ^ c);
}

}  // namespace otfs
