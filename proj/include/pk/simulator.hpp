#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pk/codec.hpp"
#include "pk/core.hpp"

namespace pk::sim {

// ---------------------------------------------------------------------------
// Ground truth: the event times the generator placed, exactly.
// ---------------------------------------------------------------------------

struct GroundTruth {
    std::vector<std::uint64_t> r_peak_times_us;
    std::vector<std::uint64_t> s1_times_us;
    std::vector<std::uint64_t> s2_times_us;
    std::vector<std::uint64_t> breath_times_us;
    double mean_hr_bpm = 0.0;
    double mean_rr_brpm = 0.0;

    codec::TruthFile to_truth_file() const;
};

// ---------------------------------------------------------------------------
// Battery
// ---------------------------------------------------------------------------

// Linear drain model. The default all-on draw sums to 20 mA so the stock
// 400 mAh pack lands exactly on the 20 h figure; the per-sensor split is an
// internal default, not a measured one.
struct BatteryModel {
    double capacity_mah = 400.0;
    double base_current_ma = 3.0;
    double ecg_resp_ma = 3.0;
    double ppg_ma = 4.0;
    double imu_ma = 2.0;
    double audio_ma = 8.0;
};

// capacity / (base + sum of enabled sensor currents); throws NoLoad when the
// total draw is not positive.
double estimate_battery_life_hours(const ValidatedConfig& cfg, const BatteryModel& model);

// ---------------------------------------------------------------------------
// Channel synthesis. All generators are pure functions of their arguments;
// each one owns an independent generator seeded from (seed, channel salt) so
// enabling one sensor never shifts another sensor's stream.
// ---------------------------------------------------------------------------

struct EcgResult {
    TimeSeries series;  // millivolts
    std::vector<std::uint64_t> r_peak_times_us;
};

// Sum-of-Gaussians PQRST template per beat; beat-to-beat interval jitter is
// uniform in +/- hr_variability_frac. Throws RateTooLowForMorphology below
// 100 Hz.
EcgResult synth_ecg(const PhysioProfile& profile, double rate_hz, double duration_s,
                    std::uint64_t seed);

struct PcgResult {
    TimeSeries series;  // normalized full-scale
    std::vector<std::uint64_t> s1_times_us;
    std::vector<std::uint64_t> s2_times_us;
};

// S1: decaying tone burst near 60 Hz at each R time; S2: shorter burst near
// 90 Hz at R + s1_s2_interval. Throws IntervalExceedsBeat if an S2 would land
// on or after the next beat's S1, and BadRate below 4 kHz.
PcgResult synth_pcg(const std::vector<std::uint64_t>& r_peak_times_us,
                    const PhysioProfile& profile, double audio_rate_hz, double duration_s,
                    std::uint64_t seed);

// Ambient reference channel: Gaussian floor at noise_rms_dbfs; noisy mode
// adds the interference tone.
TimeSeries synth_ambient(const AmbientProfile& ambient, double rate_hz, double duration_s,
                         std::uint64_t seed);

// Adds gain * ambient[n - delay] into the stethoscope channel in place.
void mix_into_stethoscope(TimeSeries& stethoscope, const TimeSeries& ambient, double leak_gain,
                          std::uint32_t delay_samples);

// Per-beat pulse 250 ms after each R peak, respiration baseline wander, and
// enough noise that the pulse is only recoverable spectrally.
TimeSeries synth_ppg(const std::vector<std::uint64_t>& r_peak_times_us, double resp_rate_brpm,
                     double resp_phase_rad, const PhysioProfile& profile, double rate_hz,
                     double duration_s, std::uint64_t seed);

struct RespImuResult {
    TimeSeries resp;  // counts, rides on ECG channel 2
    std::array<TimeSeries, 3> accel;  // g
    std::array<TimeSeries, 3> gyro;   // dps
    std::vector<std::uint64_t> breath_times_us;
};

// Respiration sinusoid on RESP; the same component appears on gy, gz and az
// (az additionally carries the +1 g gravity offset). gx, ax, ay are noise
// only.
RespImuResult synth_resp_and_imu(const PhysioProfile& profile, double resp_rate_hz_ecg,
                                 double imu_rate_hz, double duration_s, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Whole-session generation
// ---------------------------------------------------------------------------

struct GeneratedSession {
    SensorConfig config;
    std::vector<SensorRecord> records;            // merged, (timestamp, id) sorted
    std::vector<std::int16_t> audio_interleaved;  // empty when audio disabled
    std::uint32_t audio_rate_hz = 0;
    GroundTruth truth;
    // clean stethoscope channel before ambient leakage, for noise-cancellation
    // benchmarking
    std::vector<double> clean_stethoscope;
};

// Deterministic for fixed (profile, cfg, seed). duration_s must be in
// (0, 86400].
GeneratedSession generate(const PhysioProfile& profile, double duration_s,
                          const ValidatedConfig& cfg, std::uint64_t seed);

struct SessionArtifacts {
    codec::SessionLog log;
    GroundTruth truth;
};

// generate() + write <dir>/<name>.pks/.wav/.truth. epoch_us anchors the
// header's wall clock; keep the default for reproducible output.
SessionArtifacts generate_session(const PhysioProfile& profile, double duration_s,
                                  const ValidatedConfig& cfg, std::uint64_t seed,
                                  const std::filesystem::path& out_dir,
                                  const std::string& name = "session",
                                  std::uint64_t epoch_us = 0);

// Record timestamp for sample k at the configured rate: round(k * 1e6 / rate),
// computed per index so drift never accumulates.
std::uint64_t sample_timestamp_us(std::uint64_t k, double rate_hz);

} // namespace pk::sim
