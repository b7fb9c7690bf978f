#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "pk/dsp.hpp"

using namespace pk::dsp;

TEST_SUITE_BEGIN("dsp");

namespace {

std::vector<double> tone(double freq_hz, double rate_hz, double duration_s, double amp = 1.0,
                         double phase = 0.0) {
    auto n = static_cast<std::size_t>(duration_s * rate_hz);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = amp * std::sin(2.0 * std::numbers::pi * freq_hz * static_cast<double>(i) / rate_hz + phase);
    return x;
}

} // namespace

TEST_CASE("rng is deterministic and roughly standard normal") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng g(7);
    double sum = 0.0, sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        double v = g.gaussian();
        sum += v;
        sq += v * v;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(sq / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("fft recovers a bin-aligned tone") {
    const std::size_t n = 1024;
    std::vector<std::complex<double>> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = std::cos(2.0 * std::numbers::pi * 37.0 * static_cast<double>(i) / static_cast<double>(n));
    fft(x);
    std::size_t best = 0;
    for (std::size_t i = 1; i < n / 2; ++i)
        if (std::abs(x[i]) > std::abs(x[best])) best = i;
    CHECK(best == 37);
    CHECK(std::abs(x[37]) == doctest::Approx(n / 2.0).epsilon(1e-9));
}

TEST_CASE("welch peak lands within one bin across the band") {
    const double rate = 100.0;
    for (double f = 0.8; f < 3.0; f += 0.23) {
        auto x = tone(f, rate, 60.0);
        auto psd = welch_psd_auto(x, rate);
        auto peak = spectral_peak(psd, 0.5, 3.5);
        REQUIRE(peak.has_value());
        CHECK(std::abs(peak->freq_hz - f) <= psd.df);
        CHECK(peak->prominence > 10.0);
    }
}

TEST_CASE("welch psd integrates to the tone power") {
    // parseval-style check: total PSD integral approximates signal variance
    auto x = tone(1.3, 50.0, 120.0, 2.0);
    auto psd = welch_psd_auto(x, 50.0);
    double total = 0.0;
    for (double p : psd.power) total += p * psd.df;
    CHECK(total == doctest::Approx(2.0).epsilon(0.05));  // amp^2/2 = 2
}

TEST_CASE("spectral peak on silence or empty band is nullopt") {
    std::vector<double> zeros(4096, 0.0);
    auto psd = welch_psd_auto(zeros, 100.0);
    CHECK(!spectral_peak(psd, 0.5, 3.0).has_value());
    // far away from a pure tone there is only leakage: prominence stays low
    auto x = tone(1.0, 100.0, 30.0);
    auto psd2 = welch_psd_auto(x, 100.0);
    auto leak = spectral_peak(psd2, 40.0, 45.0);
    if (leak) CHECK(leak->prominence < 10.0);
}

TEST_CASE("ties resolve to the lowest frequency") {
    Psd psd;
    psd.df = 0.1;
    psd.power.assign(100, 1.0);
    auto peak = spectral_peak(psd, 1.0, 5.0);
    REQUIRE(peak.has_value());
    CHECK(peak->freq_hz == doctest::Approx(1.0));
}

TEST_CASE("zero-phase bandpass passes the band and rejects outside") {
    const double rate = 8000.0;
    auto in_band = tone(90.0, rate, 4.0);
    auto out_low = tone(2.0, rate, 4.0);
    auto out_high = tone(3000.0, rate, 4.0);

    auto f1 = bandpass_zero_phase(in_band, rate, 20.0, 150.0);
    auto f2 = bandpass_zero_phase(out_low, rate, 20.0, 150.0);
    auto f3 = bandpass_zero_phase(out_high, rate, 20.0, 150.0);

    // interior comparison dodges edge transients
    auto mid_rms = [](const std::vector<double>& v) {
        std::size_t a = v.size() / 4;
        return rms(std::span(v).subspan(a, v.size() / 2));
    };
    CHECK(mid_rms(f1) > 0.6);
    CHECK(mid_rms(f2) < 0.1);
    CHECK(mid_rms(f3) < 0.1);

    // zero phase: the filtered tone aligns with the input at lag 0
    auto lag = xcorr_peak(in_band, f1, 30);
    CHECK(lag.lag == 0);
    CHECK(lag.rho > 0.9);
}

TEST_CASE("rms envelope finds a burst at its onset") {
    const double rate = 1000.0;
    std::vector<double> x(2000, 0.0);
    for (std::size_t i = 700; i < 760; ++i)
        x[i] = std::exp(-static_cast<double>(i - 700) / 20.0) *
               std::sin(2.0 * std::numbers::pi * 60.0 * static_cast<double>(i - 700) / rate);
    auto env = rms_envelope(x, 20, 5);  // 20 ms window, 5 ms hop at 1 kHz
    std::size_t best = 0;
    for (std::size_t i = 1; i < env.size(); ++i)
        if (env[i] > env[best]) best = i;
    double onset_ms = static_cast<double>(best * 5);
    CHECK(onset_ms >= 690.0);
    CHECK(onset_ms <= 715.0);
}

TEST_CASE("xcorr peak finds a pure delay") {
    Rng rng(3);
    std::vector<double> x(5000);
    for (auto& v : x) v = rng.gaussian();
    std::vector<double> y(x.size(), 0.0);
    for (std::size_t i = 7; i < y.size(); ++i) y[i] = 0.5 * x[i - 7];
    auto peak = xcorr_peak(x, y, 50);
    CHECK(peak.lag == 7);
    CHECK(peak.rho > 0.9);

    // uncorrelated inputs stay below a chance threshold
    Rng rng2(17);
    std::vector<double> z(x.size());
    for (auto& v : z) v = rng2.gaussian();
    auto none = xcorr_peak(x, z, 50);
    CHECK(none.rho < 0.1);
}

TEST_CASE("band power splits disjoint tones") {
    const double rate = 200.0;
    std::vector<double> x = tone(5.0, rate, 60.0);
    auto lowtone = tone(0.5, rate, 60.0, 0.5);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += lowtone[i];
    double p_low = band_power(x, rate, 0.2, 1.0);
    double p_high = band_power(x, rate, 4.0, 6.0);
    CHECK(p_low == doctest::Approx(0.125).epsilon(0.1));
    CHECK(p_high == doctest::Approx(0.5).epsilon(0.1));
}

TEST_SUITE_END();
