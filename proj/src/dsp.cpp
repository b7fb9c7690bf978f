#include "pk/dsp.hpp"

#include <algorithm>
#include <cmath>

namespace pk::dsp {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

// ---------------------------------------------------------------------------
// Rng
// ---------------------------------------------------------------------------

std::uint64_t Rng::next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
}

// ---------------------------------------------------------------------------
// FFT
// ---------------------------------------------------------------------------

void fft(std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    if (n < 2) return;
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * kPi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = x[i + k];
                std::complex<double> v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Welch
// ---------------------------------------------------------------------------

namespace {

std::size_t floor_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p * 2 <= n) p *= 2;
    return p;
}

} // namespace

Psd welch_psd(std::span<const double> x, double rate_hz, std::size_t nperseg,
              std::size_t nfft) {
    Psd out;
    if (x.empty() || rate_hz <= 0.0) return out;
    nperseg = std::min(nperseg, x.size());
    nperseg = floor_pow2(nperseg);
    if (nperseg < 8) nperseg = std::min<std::size_t>(8, floor_pow2(x.size()));
    if (nfft < nperseg) nfft = nperseg;
    nfft = floor_pow2(nfft) == nfft ? nfft : 2 * floor_pow2(nfft);

    std::vector<double> window(nperseg);
    double wss = 0.0;
    for (std::size_t i = 0; i < nperseg; ++i) {
        window[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * i / static_cast<double>(nperseg - 1));
        wss += window[i] * window[i];
    }

    const std::size_t hop = nperseg / 2;
    const std::size_t nbins = nfft / 2 + 1;
    out.power.assign(nbins, 0.0);
    out.df = rate_hz / static_cast<double>(nfft);

    std::vector<std::complex<double>> buf(nfft);
    std::size_t nseg = 0;
    for (std::size_t start = 0; start + nperseg <= x.size(); start += hop) {
        double m = 0.0;
        for (std::size_t i = 0; i < nperseg; ++i) m += x[start + i];
        m /= static_cast<double>(nperseg);
        for (std::size_t i = 0; i < nperseg; ++i)
            buf[i] = std::complex<double>((x[start + i] - m) * window[i], 0.0);
        for (std::size_t i = nperseg; i < nfft; ++i) buf[i] = {0.0, 0.0};
        fft(buf);
        for (std::size_t i = 0; i < nbins; ++i) {
            double p = std::norm(buf[i]);
            if (i != 0 && i != nfft / 2) p *= 2.0;  // fold negative frequencies
            out.power[i] += p / (rate_hz * wss);
        }
        ++nseg;
        if (hop == 0) break;
    }
    if (nseg > 1) {
        for (auto& p : out.power) p /= static_cast<double>(nseg);
    }
    return out;
}

Psd welch_psd_auto(std::span<const double> x, double rate_hz) {
    std::size_t nperseg = floor_pow2(std::max<std::size_t>(x.size() / 3, 8));
    nperseg = std::min<std::size_t>(nperseg, 8192);
    std::size_t nfft = std::min<std::size_t>(nperseg * 8, 65536);
    return welch_psd(x, rate_hz, nperseg, nfft);
}

std::optional<SpectralPeak> spectral_peak(const Psd& psd, double fmin, double fmax) {
    if (psd.power.empty() || psd.df <= 0.0) return std::nullopt;
    std::size_t lo = static_cast<std::size_t>(std::ceil(fmin / psd.df));
    std::size_t hi = static_cast<std::size_t>(std::floor(fmax / psd.df));
    hi = std::min(hi, psd.power.size() - 1);
    if (lo > hi) return std::nullopt;

    std::size_t best = lo;
    for (std::size_t i = lo; i <= hi; ++i) {
        if (psd.power[i] > psd.power[best]) best = i;  // strict > keeps lowest tie
    }
    std::vector<double> band(psd.power.begin() + lo, psd.power.begin() + hi + 1);
    std::nth_element(band.begin(), band.begin() + band.size() / 2, band.end());
    double med = band[band.size() / 2];
    double peak = psd.power[best];
    if (!(peak > 0.0)) return std::nullopt;

    SpectralPeak result;
    result.power = peak;
    result.prominence = med > 0.0 ? peak / med : std::numeric_limits<double>::infinity();
    result.at_band_edge = (best == lo || best == hi);
    result.freq_hz = psd.freq(best);

    // parabolic refinement on log power
    if (best > 0 && best + 1 < psd.power.size() && psd.power[best - 1] > 0.0 &&
        psd.power[best + 1] > 0.0) {
        double ym = std::log(psd.power[best - 1]);
        double y0 = std::log(psd.power[best]);
        double yp = std::log(psd.power[best + 1]);
        double denom = ym - 2.0 * y0 + yp;
        if (std::abs(denom) > 1e-300) {
            double delta = 0.5 * (ym - yp) / denom;
            delta = std::clamp(delta, -0.5, 0.5);
            result.freq_hz = psd.df * (static_cast<double>(best) + delta);
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Filtering
// ---------------------------------------------------------------------------

namespace {

// RBJ cookbook biquads at Butterworth Q.
Biquad design(double cutoff_hz, double rate_hz, bool highpass) {
    const double q = 0.70710678118654752440;
    double w0 = 2.0 * kPi * cutoff_hz / rate_hz;
    double cw = std::cos(w0), sw = std::sin(w0);
    double alpha = sw / (2.0 * q);
    double a0 = 1.0 + alpha;
    Biquad bq;
    if (highpass) {
        bq.b0 = (1.0 + cw) / 2.0 / a0;
        bq.b1 = -(1.0 + cw) / a0;
        bq.b2 = (1.0 + cw) / 2.0 / a0;
    } else {
        bq.b0 = (1.0 - cw) / 2.0 / a0;
        bq.b1 = (1.0 - cw) / a0;
        bq.b2 = (1.0 - cw) / 2.0 / a0;
    }
    bq.a1 = (-2.0 * cw) / a0;
    bq.a2 = (1.0 - alpha) / a0;
    return bq;
}

} // namespace

Biquad design_lowpass(double cutoff_hz, double rate_hz) { return design(cutoff_hz, rate_hz, false); }
Biquad design_highpass(double cutoff_hz, double rate_hz) { return design(cutoff_hz, rate_hz, true); }

std::vector<double> filter(const Biquad& bq, std::span<const double> x) {
    std::vector<double> y(x.size());
    double z1 = 0.0, z2 = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
        double in = x[n];
        double out = bq.b0 * in + z1;
        z1 = bq.b1 * in - bq.a1 * out + z2;
        z2 = bq.b2 * in - bq.a2 * out;
        y[n] = out;
    }
    return y;
}

std::vector<double> filtfilt(const Biquad& bq, std::span<const double> x) {
    std::vector<double> y = filter(bq, x);
    std::reverse(y.begin(), y.end());
    y = filter(bq, y);
    std::reverse(y.begin(), y.end());
    return y;
}

std::vector<double> bandpass_zero_phase(std::span<const double> x, double rate_hz,
                                        double lo_hz, double hi_hz) {
    auto hp = filtfilt(design_highpass(lo_hz, rate_hz), x);
    return filtfilt(design_lowpass(hi_hz, rate_hz), hp);
}

// ---------------------------------------------------------------------------
// Utilities
// ---------------------------------------------------------------------------

double mean(std::span<const double> x) {
    if (x.empty()) return 0.0;
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double rms(std::span<const double> x) {
    if (x.empty()) return 0.0;
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s / static_cast<double>(x.size()));
}

std::vector<double> rms_envelope(std::span<const double> x, std::size_t win, std::size_t hop) {
    std::vector<double> env;
    if (x.size() < win || win == 0 || hop == 0) return env;
    env.reserve((x.size() - win) / hop + 1);
    // running sum of squares keeps this O(n)
    double acc = 0.0;
    for (std::size_t i = 0; i < win; ++i) acc += x[i] * x[i];
    std::size_t start = 0;
    while (true) {
        env.push_back(std::sqrt(std::max(acc, 0.0) / static_cast<double>(win)));
        if (start + hop + win > x.size()) break;
        for (std::size_t i = 0; i < hop; ++i) {
            acc -= x[start + i] * x[start + i];
            acc += x[start + win + i] * x[start + win + i];
        }
        start += hop;
    }
    return env;
}

XcorrPeak xcorr_peak(std::span<const double> x, std::span<const double> y, std::size_t max_lag) {
    XcorrPeak best;
    const std::size_t n = std::min(x.size(), y.size());
    if (n == 0) return best;
    double mx = mean(x.subspan(0, n));
    double my = mean(y.subspan(0, n));
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += (x[i] - mx) * (x[i] - mx);
        sy += (y[i] - my) * (y[i] - my);
    }
    double denom = std::sqrt(sx * sy);
    if (denom <= 0.0) return best;
    for (std::size_t lag = 0; lag <= max_lag && lag < n; ++lag) {
        double acc = 0.0;
        for (std::size_t i = lag; i < n; ++i) acc += (x[i - lag] - mx) * (y[i] - my);
        double rho = std::abs(acc) / denom;
        if (rho > best.rho) {
            best.rho = rho;
            best.lag = lag;
        }
    }
    return best;
}

double band_power(std::span<const double> x, double rate_hz, double fmin, double fmax) {
    Psd psd = welch_psd_auto(x, rate_hz);
    if (psd.power.empty()) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < psd.power.size(); ++i) {
        double f = psd.freq(i);
        if (f >= fmin && f <= fmax) total += psd.power[i] * psd.df;
    }
    return total;
}

} // namespace pk::dsp
