#include "steadycheck/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace steadycheck {

std::string_view to_string(SignalKind k) {
  switch (k) {
    case SignalKind::Gaussian: return "gaussian";
    case SignalKind::GaussianWithTransient: return "gaussian_with_transient";
    case SignalKind::Ar1: return "ar1";
    case SignalKind::Step: return "step";
    case SignalKind::Ramp: return "ramp";
  }
  return "unknown";
}

std::optional<SignalKind> parse_signal_kind(std::string_view s) {
  if (s == "gaussian") return SignalKind::Gaussian;
  if (s == "gaussian_with_transient") return SignalKind::GaussianWithTransient;
  if (s == "ar1") return SignalKind::Ar1;
  if (s == "step") return SignalKind::Step;
  if (s == "ramp") return SignalKind::Ramp;
  return std::nullopt;
}

std::string_view to_string(Taper t) { return t == Taper::Linear ? "linear" : "none"; }

std::optional<Taper> parse_taper(std::string_view s) {
  if (s == "none") return Taper::None;
  if (s == "linear") return Taper::Linear;
  return std::nullopt;
}

void SignalSpec::validate() const {
  auto fail = [](const char* what) { throw Error(ErrorCode::InvalidSpec, what); };
  if (n < 1) fail("n must be at least 1");
  if (!(sd >= 0.0) || !std::isfinite(sd)) fail("sd must be non-negative");
  if (!(phi >= 0.0 && phi < 1.0)) fail("phi must lie in [0, 1)");
  if (!(dt > 0.0) || !std::isfinite(dt)) fail("dt must be positive");
  if (!std::isfinite(mean) || !std::isfinite(slope)) fail("mean and slope must be finite");
  if (!std::isfinite(transient_end) || !std::isfinite(transient_amplitude)) {
    fail("transient parameters must be finite");
  }
  if (kind == SignalKind::GaussianWithTransient && !(transient_period > 0.0)) {
    fail("transient period must be positive");
  }
}

namespace {

class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

TimeSeries generate(const SignalSpec& spec) {
  spec.validate();
  NormalStream noise(spec.seed);
  std::vector<double> values(spec.n);
  std::vector<double> times(spec.n);

  const double innovation_sd = spec.sd * std::sqrt(1.0 - spec.phi * spec.phi);
  double prev = spec.mean;
  for (std::size_t i = 0; i < spec.n; ++i) {
    const double t = static_cast<double>(i + 1) * spec.dt;
    const double z = noise.next();
    times[i] = t;
    double x = spec.mean + spec.sd * z;
    switch (spec.kind) {
      case SignalKind::Gaussian:
        break;
      case SignalKind::GaussianWithTransient:
        if (t < spec.transient_end) {
          const double envelope = spec.taper == Taper::Linear ? 1.0 - t / spec.transient_end : 1.0;
          x += spec.transient_amplitude * std::sin(2.0 * std::numbers::pi * t / spec.transient_period) *
               envelope;
        }
        break;
      case SignalKind::Ar1:
        x = i == 0 ? x : spec.mean + spec.phi * (prev - spec.mean) + innovation_sd * z;
        break;
      case SignalKind::Step:
        if (t < spec.transient_end) x += spec.transient_amplitude;
        break;
      case SignalKind::Ramp:
        x += spec.slope * t;
        break;
    }
    values[i] = x;
    prev = x;
  }
  return validate_series(values, times);
}

SignalSpec stationary_fixture(std::uint64_t seed, std::size_t n) {
  SignalSpec s;
  s.kind = SignalKind::Gaussian;
  s.n = n;
  s.seed = seed;
  return s;
}

SignalSpec transient_fixture(std::uint64_t seed, std::size_t n) {
  SignalSpec s = stationary_fixture(seed, n);
  s.kind = SignalKind::GaussianWithTransient;
  return s;
}

}  // namespace steadycheck
