#pragma once

#include <span>
#include <vector>

#include "otfs/common.hpp"

namespace otfs {

/// M x N grid of delay-Doppler symbols x[l, k]; l is the delay bin
/// (0..M-1), k the Doppler bin (0..N-1). Each Doppler row is contiguous.
class DelayDopplerGrid {
 public:
  DelayDopplerGrid(std::size_t m, std::size_t n);

  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }

  cplx& at(std::size_t l, std::size_t k) { return data_[k * m_ + l]; }
  const cplx& at(std::size_t l, std::size_t k) const { return data_[k * m_ + l]; }

  /// Delay profile of Doppler bin k (length M).
  std::span<cplx> doppler_row(std::size_t k) { return {data_.data() + k * m_, m_}; }
  std::span<const cplx> doppler_row(std::size_t k) const { return {data_.data() + k * m_, m_}; }

  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  double energy() const;

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<cplx> data_;
};

/// N x M time-frequency grid X[n, m] on a critically sampled lattice
/// (T * delta_f = 1). Each OFDM symbol is contiguous.
class TimeFrequencyGrid {
 public:
  TimeFrequencyGrid(std::size_t n, std::size_t m, double subcarrier_spacing_hz);

  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }
  double subcarrier_spacing() const noexcept { return delta_f_; }
  double symbol_interval() const noexcept { return 1.0 / delta_f_; }

  cplx& at(std::size_t n, std::size_t m) { return data_[n * m_ + m]; }
  const cplx& at(std::size_t n, std::size_t m) const { return data_[n * m_ + m]; }

  std::span<cplx> symbol(std::size_t n) { return {data_.data() + n * m_, m_}; }
  std::span<const cplx> symbol(std::size_t n) const { return {data_.data() + n * m_, m_}; }

  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  double energy() const;

 private:
  std::size_t n_;
  std::size_t m_;
  double delta_f_;
  std::vector<cplx> data_;
};

/// Complex baseband samples of a CP-OFDM frame at sample_rate = delta_f * n_dft.
struct Waveform {
  std::vector<cplx> samples;
  double sample_rate = 0.0;
  std::size_t n_dft = 0;
  std::size_t cp_len = 0;

  std::size_t symbol_length() const noexcept { return n_dft + cp_len; }
  double mean_power() const;
  double energy() const;
};

/// X[n,m] = 1/sqrt(MN) sum_{l,k} x[l,k] exp(j 2 pi (nk/N - ml/M)).
TimeFrequencyGrid isfft(const DelayDopplerGrid& dd, double subcarrier_spacing_hz);

/// x[l,k] = 1/sqrt(MN) sum_{n,m} X[n,m] exp(-j 2 pi (nk/N - ml/M)); inverse of isfft.
DelayDopplerGrid sfft(const TimeFrequencyGrid& tf);

/// DFT bin carrying subcarrier m when M subcarriers are centred on DC.
std::size_t subcarrier_bin(std::size_t m, std::size_t num_subcarriers, std::size_t n_dft);

/// CP-OFDM modulator with a rectangular pulse: per symbol, map the M
/// subcarriers onto centred bins of an n_dft spectrum, unitary IDFT,
/// prepend the last cp_len samples.
Waveform heisenberg_modulate(const TimeFrequencyGrid& tf, std::size_t n_dft, std::size_t cp_len);

/// Matched receiver of heisenberg_modulate: strip CP, unitary DFT, pick the
/// M mapped bins. Throws FramingError if the length is not n * (n_dft + cp_len).
TimeFrequencyGrid wigner_demodulate(const Waveform& w, std::size_t m, std::size_t n);

namespace reference {

/// Direct quadruple-sum ISFFT / SFFT.
TimeFrequencyGrid isfft(const DelayDopplerGrid& dd, double subcarrier_spacing_hz);
DelayDopplerGrid sfft(const TimeFrequencyGrid& tf);

}  // namespace reference

}  // namespace otfs
