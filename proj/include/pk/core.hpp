#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "pk/error.hpp"

namespace pk {

// ---------------------------------------------------------------------------
// Sensor identities
// ---------------------------------------------------------------------------

// Record ID tags as they appear on the wire and in session files. Audio is
// carried out-of-band in the WAV container and never appears as a record.
enum class SensorId : std::uint8_t {
    EcgResp = 0x01,
    Ppg     = 0x02,
    Imu     = 0x03,
    Marker  = 0x7F,
};

constexpr std::uint8_t raw_id(SensorId id) { return static_cast<std::uint8_t>(id); }
constexpr SensorId sensor_from_raw(std::uint8_t raw) { return static_cast<SensorId>(raw); }

constexpr bool is_known_sensor(SensorId id) {
    return id == SensorId::EcgResp || id == SensorId::Ppg || id == SensorId::Imu ||
           id == SensorId::Marker;
}

std::string sensor_name(SensorId id);

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

// PPG LED mask bits
constexpr std::uint8_t kLedGreen = 0x01;
constexpr std::uint8_t kLedRed   = 0x02;
constexpr std::uint8_t kLedIr    = 0x04;

struct SensorChannelConfig {
    bool enabled = true;
    std::uint32_t rate_hz = 0;
    bool operator==(const SensorChannelConfig&) const = default;
};

struct AudioConfig {
    bool enabled = true;
    std::uint32_t sample_rate_hz = 8000;
    bool operator==(const AudioConfig&) const = default;
};

struct SensorConfig {
    SensorChannelConfig ecg_resp{true, 125};
    SensorChannelConfig ppg{true, 100};
    SensorChannelConfig imu{true, 50};
    std::uint8_t ppg_led_mask = kLedGreen;
    AudioConfig audio{true, 8000};

    bool operator==(const SensorConfig&) const = default;
};

constexpr std::array<std::uint32_t, 3> kAllowedAudioRates = {4000, 8000, 16000};

// Proof-of-validation wrapper: only validate_config can mint one.
class ValidatedConfig {
public:
    const SensorConfig& get() const { return cfg_; }
    const SensorConfig* operator->() const { return &cfg_; }

private:
    friend ValidatedConfig validate_config(const SensorConfig& cfg);
    explicit ValidatedConfig(SensorConfig cfg) : cfg_(cfg) {}
    SensorConfig cfg_;
};

// Checks all invariants and returns the config unchanged.
// Throws Error with RateOutOfRange / NoSensorEnabled / EmptyLedMask; the
// message names the offending field.
ValidatedConfig validate_config(const SensorConfig& cfg);

// Human-editable key-value config text <-> SensorConfig. Schema:
//   ecg.enabled = true        ppg.leds = green,ir
//   ecg.rate_hz = 125         audio.rate_hz = 8000   ...
// '#' starts a comment. Unknown keys or bad values throw Error(ConfigParse)
// with the line number in the message.
SensorConfig parse_config_text(const std::string& text);
std::string config_to_text(const SensorConfig& cfg);

// ---------------------------------------------------------------------------
// Samples and records
// ---------------------------------------------------------------------------

// ADS1292R-style dual channel sample: ch1 = ECG, ch2 = respiration.
// Counts are signed 24-bit values in a 32-bit container.
struct EcgRespSample {
    std::int32_t ch1_counts = 0;
    std::int32_t ch2_counts = 0;
    bool operator==(const EcgRespSample&) const = default;
};

constexpr std::int32_t kCountsMin = -(1 << 23);
constexpr std::int32_t kCountsMax = (1 << 23) - 1;

// counts[i] is meaningful iff bit i of led_mask is set (green/red/IR).
struct PpgSample {
    std::uint8_t led_mask = 0;
    std::array<std::uint32_t, 3> counts{};
    bool operator==(const PpgSample&) const = default;
};

struct ImuSample {
    std::int16_t ax = 0, ay = 0, az = 0;
    std::int16_t gx = 0, gy = 0, gz = 0;
    bool operator==(const ImuSample&) const = default;
};

struct MarkerSample {
    std::uint8_t code = 0;
    bool operator==(const MarkerSample&) const = default;
};

// Payload of a record whose sensor id we do not recognize; kept verbatim so
// unknown sensors survive a parse/re-encode cycle.
struct RawSample {
    std::vector<std::uint8_t> bytes;
    bool operator==(const RawSample&) const = default;
};

using SamplePayload = std::variant<EcgRespSample, PpgSample, ImuSample, MarkerSample, RawSample>;

struct SensorRecord {
    SensorId sensor_id = SensorId::Marker;
    std::uint64_t timestamp_us = 0; // microseconds since session start
    SamplePayload payload;
    bool operator==(const SensorRecord&) const = default;
};

// ---------------------------------------------------------------------------
// Time series
// ---------------------------------------------------------------------------

enum class Unit {
    Millivolts,
    Counts,
    G,
    Dps,
    PascalArbitrary,
    Normalized,
};

const char* unit_name(Unit u);

struct TimeSeries {
    std::uint64_t start_us = 0;
    double rate_hz = 0.0;
    Unit unit = Unit::Counts;
    std::vector<double> samples;

    double time_of_us(std::size_t k) const {
        return static_cast<double>(start_us) + static_cast<double>(k) * 1e6 / rate_hz;
    }
    double duration_s() const {
        return samples.empty() ? 0.0 : static_cast<double>(samples.size()) / rate_hz;
    }
};

// ---------------------------------------------------------------------------
// Physiology profile driving the simulator
// ---------------------------------------------------------------------------

struct AmbientProfile {
    enum class Mode { Quiet, Noisy };
    Mode mode = Mode::Quiet;
    double noise_rms_dbfs = -60.0;  // Gaussian floor (quiet environment)
    double tone_hz = 440.0;         // interference tone, noisy mode only
    double tone_rms_dbfs = -20.0;
    double leak_gain = 0.0;         // [0,1] coupling into the stethoscope channel
    std::uint32_t leak_delay_samples = 5;
};

struct PhysioProfile {
    double heart_rate_bpm = 60.0;      // [30, 220]
    double resp_rate_brpm = 15.0;      // [4, 60]
    double s1_s2_interval_s = 0.30;    // systolic interval, must be < 60/HR
    double hr_variability_frac = 0.05; // [0, 0.2], uniform per-beat jitter

    // per-channel noise levels
    double ecg_noise_mv = 0.01;
    double pcg_body_noise = 0.003;   // full-scale fraction on the stethoscope channel
    double ppg_noise_counts = 900.0; // tuned so the pulse line sits near 0 dB SNR
    double ppg_resp_amp_counts = 400.0;
    double imu_accel_noise_g = 0.005;
    double imu_gyro_noise_dps = 0.2;

    double ecg_r_amplitude_mv = 1.2;
    double pcg_s1_amplitude = 0.4;   // full-scale fraction
    double pcg_s2_amplitude = 0.26;
    double ppg_pulse_amp_counts = 2000.0;
    double resp_amp_counts = 5000.0;
    double imu_resp_gyro_dps = 2.0;  // respiration component on gy/gz
    double imu_resp_accel_g = 0.02;  // respiration component on az

    AmbientProfile ambient;
};

// Throws Error(OutOfRange) naming the field if the profile is unusable.
void validate_profile(const PhysioProfile& profile);

// ---------------------------------------------------------------------------
// Unit conversions
// ---------------------------------------------------------------------------

// ADS1292R at gain 6 with a 2.4 V reference: 1 count = 2400/(6*2^23) mV.
double ecg_counts_to_mv(std::int32_t counts); // throws Error(OutOfRange) outside 24-bit
std::int32_t ecg_mv_to_counts(double mv);     // inverse, rounded and clamped to 24-bit

struct ImuPhysical {
    std::array<double, 3> accel_g;
    std::array<double, 3> gyro_dps;
};

// BMI160 defaults: +/-2 g (16384 LSB/g) and +/-250 dps (131 LSB/dps).
ImuPhysical imu_raw_to_physical(const ImuSample& s);

constexpr double kAccelLsbPerG = 16384.0;
constexpr double kGyroLsbPerDps = 131.0;

} // namespace pk
