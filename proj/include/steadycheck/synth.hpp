#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "steadycheck/core.hpp"

namespace steadycheck {

enum class SignalKind { Gaussian, GaussianWithTransient, Ar1, Step, Ramp };
enum class Taper { None, Linear };

std::string_view to_string(SignalKind k);
std::optional<SignalKind> parse_signal_kind(std::string_view s);
std::string_view to_string(Taper t);
std::optional<Taper> parse_taper(std::string_view s);

// Sample i (1-based) sits at time i*dt. Every kind draws its noise from the
// same stream: std::mt19937_64 seeded with `seed`, 53-bit uniforms
// ((u >> 11) + 0.5) * 2^-53, and the trigonometric Box-Muller transform
// consuming two uniforms per pair of normals (cosine branch first).
struct SignalSpec {
  SignalKind kind = SignalKind::Gaussian;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  double mean = 0.3;
  double sd = 0.0066;
  // gaussian_with_transient: A sin(2 pi t / T) * envelope(t) for t < transient_end.
  // step: a constant offset of transient_amplitude for t < transient_end.
  double transient_end = 200.0;
  double transient_amplitude = 0.05;
  double transient_period = 40.0;
  Taper taper = Taper::None;
  double phi = 0.0;    // ar1 coefficient; sd is the stationary standard deviation
  double slope = 0.0;  // ramp: drift per unit time
  double dt = 1.0;

  // Throws Error{InvalidSpec}.
  void validate() const;
};

TimeSeries generate(const SignalSpec& spec);

// Gaussian mean 0.3, sd 0.0066.
SignalSpec stationary_fixture(std::uint64_t seed, std::size_t n = 2000);
// The same noise with a sinusoidal transient ending at 200 s.
SignalSpec transient_fixture(std::uint64_t seed, std::size_t n = 600);

}  // namespace steadycheck
