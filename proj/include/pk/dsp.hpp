#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pk::dsp {

// Deterministic generator (splitmix64 core). Distributions are hand-rolled so
// generated sessions are byte-identical across standard library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);   // [lo, hi)
    double gaussian();                      // standard normal, Box-Muller

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// ---------------------------------------------------------------------------
// Spectral estimation
// ---------------------------------------------------------------------------

// In-place iterative radix-2 FFT; size must be a power of two.
void fft(std::vector<std::complex<double>>& x);

struct Psd {
    double df = 0.0;            // bin spacing, Hz
    std::vector<double> power;  // one-sided
    double freq(std::size_t i) const { return df * static_cast<double>(i); }
};

// Welch PSD: Hann window, 50% overlap, per-segment mean removal, zero-padded
// FFT of size nfft (>= nperseg, power of two). nperseg is clamped to the
// input length.
Psd welch_psd(std::span<const double> x, double rate_hz, std::size_t nperseg,
              std::size_t nfft);

// Sensible automatic segmentation for an N-sample input.
Psd welch_psd_auto(std::span<const double> x, double rate_hz);

struct SpectralPeak {
    double freq_hz = 0.0;
    double power = 0.0;
    double prominence = 0.0;  // peak power / median in-band power
    bool at_band_edge = false;
};

// Argmax of the PSD inside [fmin, fmax] with 3-point parabolic refinement on
// log power. Ties resolve to the lowest frequency. nullopt when the band is
// empty or the whole band is (numerically) zero.
std::optional<SpectralPeak> spectral_peak(const Psd& psd, double fmin, double fmax);

// ---------------------------------------------------------------------------
// Filtering
// ---------------------------------------------------------------------------

// Direct-form-II-transposed second order section.
struct Biquad {
    double b0 = 1, b1 = 0, b2 = 0, a1 = 0, a2 = 0;
};

Biquad design_lowpass(double cutoff_hz, double rate_hz);   // Butterworth Q
Biquad design_highpass(double cutoff_hz, double rate_hz);

std::vector<double> filter(const Biquad& bq, std::span<const double> x);

// Zero-phase filtering: forward pass, then reverse pass with the same section.
std::vector<double> filtfilt(const Biquad& bq, std::span<const double> x);

// Zero-phase band-pass built from a highpass + lowpass cascade.
std::vector<double> bandpass_zero_phase(std::span<const double> x, double rate_hz,
                                        double lo_hz, double hi_hz);

// ---------------------------------------------------------------------------
// Small utilities
// ---------------------------------------------------------------------------

double rms(std::span<const double> x);
double mean(std::span<const double> x);

// Sliding RMS over a forward-looking window of win samples, evaluated every
// hop samples. Output k covers x[k*hop .. k*hop+win).
std::vector<double> rms_envelope(std::span<const double> x, std::size_t win, std::size_t hop);

// Normalized cross-correlation argmax of y against x over lags [0, max_lag]:
// positive lag means y is a delayed copy of x. Returns (best_lag, peak |rho|).
struct XcorrPeak {
    std::size_t lag = 0;
    double rho = 0.0;
};
XcorrPeak xcorr_peak(std::span<const double> x, std::span<const double> y, std::size_t max_lag);

// Band power via Welch PSD integration over [fmin, fmax].
double band_power(std::span<const double> x, double rate_hz, double fmin, double fmax);

} // namespace pk::dsp
