#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <vector>

#include "steadycheck/autocorr.hpp"
#include "steadycheck/synth.hpp"

using namespace steadycheck;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("golden values from an independent generator", "[synth]") {
  // tests/oracles/synth_golden.py: seed 7, mean 0.3, sd 0.0066.
  const std::vector<double> golden{0x1.3804d94e62997p-2, 0x1.319c5dbfd72bap-2, 0x1.3e15b46404403p-2,
                                   0x1.2a69dec4095c3p-2, 0x1.3fc71edfd0aadp-2, 0x1.37bc927c60971p-2};
  SignalSpec s;
  s.seed = 7;
  s.n = golden.size();
  const TimeSeries t = generate(s);
  for (std::size_t i = 0; i < golden.size(); ++i) CHECK(t.value(i) == golden[i]);
  CHECK(t.time(0) == 1.0);
  CHECK(t.time(5) == 6.0);
}

TEST_CASE("zero sd gives a constant series", "[synth]") {
  SignalSpec s;
  s.sd = 0.0;
  s.n = 50;
  const TimeSeries t = generate(s);
  for (double v : t.values()) CHECK(v == 0.3);
}

TEST_CASE("sample mean obeys the CLT bound", "[synth]") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const TimeSeries t = generate(stationary_fixture(seed, 10000));
    const double mean = std::accumulate(t.values().begin(), t.values().end(), 0.0) / 1e4;
    CHECK(std::fabs(mean - 0.3) < 4.0 * 0.0066 / 100.0);
  }
}

TEST_CASE("transient leaves the noise untouched after its end", "[synth]") {
  for (Taper taper : {Taper::None, Taper::Linear}) {
    SignalSpec spec = transient_fixture(5);
    spec.taper = taper;
    SignalSpec plain = spec;
    plain.kind = SignalKind::Gaussian;
    const TimeSeries a = generate(spec);
    const TimeSeries b = generate(plain);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a.time(i) >= 200.0) {
        CHECK(a.value(i) == b.value(i));
      }
    }
    CHECK(a.value(9) != b.value(9));
  }
}

TEST_CASE("ar1 lag-one correlation", "[synth]") {
  SignalSpec s;
  s.kind = SignalKind::Ar1;
  s.phi = 0.9;
  s.n = 100000;
  s.seed = 3;
  const AcfEstimate e = acf(generate(s));
  CHECK_THAT(e.rho[1], WithinRel(0.9, 0.05));
  CHECK_THAT(std::sqrt(e.sample_variance), WithinRel(s.sd, 0.1));
}

TEST_CASE("step and ramp shapes", "[synth]") {
  SignalSpec s;
  s.sd = 0.0;
  s.n = 300;
  s.kind = SignalKind::Step;
  const TimeSeries step = generate(s);
  CHECK(step.value(0) == 0.3 + 0.05);
  CHECK(step.value(250) == 0.3);
  s.kind = SignalKind::Ramp;
  s.slope = 1e-4;
  const TimeSeries r = generate(s);
  CHECK_THAT(r.value(99), WithinAbs(0.3 + 1e-2, 1e-15));
}

TEST_CASE("spec validation and fixed seeds", "[synth]") {
  SignalSpec bad;
  bad.n = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = SignalSpec{};
  bad.sd = -1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = SignalSpec{};
  bad.kind = SignalKind::Ar1;
  bad.phi = 1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK(generate(transient_fixture(2)) == generate(transient_fixture(2)));
  CHECK_FALSE(generate(transient_fixture(2)) == generate(transient_fixture(3)));
  for (auto k : {SignalKind::Gaussian, SignalKind::GaussianWithTransient, SignalKind::Ar1, SignalKind::Step,
                 SignalKind::Ramp}) {
    CHECK(parse_signal_kind(to_string(k)) == k);
  }
}
