#include "pk/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace pk {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::RateOutOfRange: return "RateOutOfRange";
        case Errc::NoSensorEnabled: return "NoSensorEnabled";
        case Errc::EmptyLedMask: return "EmptyLedMask";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::ConfigParse: return "ConfigParse";
        case Errc::UnsortedInput: return "UnsortedInput";
        case Errc::PayloadTooLarge: return "PayloadTooLarge";
        case Errc::IoFailure: return "IoFailure";
        case Errc::BadMagic: return "BadMagic";
        case Errc::UnsupportedVersion: return "UnsupportedVersion";
        case Errc::CrcMismatch: return "CrcMismatch";
        case Errc::TruncatedRecord: return "TruncatedRecord";
        case Errc::MalformedRecord: return "MalformedRecord";
        case Errc::BadRate: return "BadRate";
        case Errc::NotRiff: return "NotRiff";
        case Errc::UnsupportedEncoding: return "UnsupportedEncoding";
        case Errc::ChannelCountNotTwo: return "ChannelCountNotTwo";
        case Errc::RateTooLowForMorphology: return "RateTooLowForMorphology";
        case Errc::IntervalExceedsBeat: return "IntervalExceedsBeat";
        case Errc::NoLoad: return "NoLoad";
        case Errc::EmptySession: return "EmptySession";
        case Errc::TooShort: return "TooShort";
        case Errc::RateTooLow: return "RateTooLow";
        case Errc::NotEnoughPeaks: return "NotEnoughPeaks";
        case Errc::NoEventsFound: return "NoEventsFound";
        case Errc::AmbiguousPairing: return "AmbiguousPairing";
        case Errc::NoSpectralPeak: return "NoSpectralPeak";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::ChannelAbsent: return "ChannelAbsent";
        case Errc::Timeout: return "Timeout";
        case Errc::ProtocolViolation: return "ProtocolViolation";
        case Errc::IllegalState: return "IllegalState";
    }
    return "Unknown";
}

std::string sensor_name(SensorId id) {
    switch (id) {
        case SensorId::EcgResp: return "ECG/RESP";
        case SensorId::Ppg: return "PPG";
        case SensorId::Imu: return "IMU";
        case SensorId::Marker: return "MARKER";
    }
    char buf[16];
    std::snprintf(buf, sizeof(buf), "UNKNOWN(0x%02X)", raw_id(id));
    return buf;
}

const char* unit_name(Unit u) {
    switch (u) {
        case Unit::Millivolts: return "mV";
        case Unit::Counts: return "counts";
        case Unit::G: return "g";
        case Unit::Dps: return "dps";
        case Unit::PascalArbitrary: return "Pa*";
        case Unit::Normalized: return "norm";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Config validation
// ---------------------------------------------------------------------------

namespace {

void check_rate(const char* field, const SensorChannelConfig& c) {
    if (c.enabled && (c.rate_hz < 1 || c.rate_hz > 1000)) {
        throw Error(Errc::RateOutOfRange,
                    std::string(field) + ".rate_hz " + std::to_string(c.rate_hz) +
                        " outside [1, 1000]");
    }
}

} // namespace

ValidatedConfig validate_config(const SensorConfig& cfg) {
    check_rate("ecg", cfg.ecg_resp);
    check_rate("ppg", cfg.ppg);
    check_rate("imu", cfg.imu);
    if (cfg.audio.enabled) {
        bool ok = std::find(kAllowedAudioRates.begin(), kAllowedAudioRates.end(),
                            cfg.audio.sample_rate_hz) != kAllowedAudioRates.end();
        if (!ok) {
            throw Error(Errc::RateOutOfRange,
                        "audio.rate_hz " + std::to_string(cfg.audio.sample_rate_hz) +
                            " not in {4000, 8000, 16000}");
        }
    }
    if (cfg.ppg.enabled && (cfg.ppg_led_mask & 0x07) == 0) {
        throw Error(Errc::EmptyLedMask, "ppg.leds empty while PPG enabled");
    }
    if (!cfg.ecg_resp.enabled && !cfg.ppg.enabled && !cfg.imu.enabled && !cfg.audio.enabled) {
        throw Error(Errc::NoSensorEnabled, "all sensors and audio disabled");
    }
    return ValidatedConfig(cfg);
}

// ---------------------------------------------------------------------------
// Config text format
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw Error(Errc::ConfigParse, "line " + std::to_string(line) + ": bad boolean '" + v + "'");
}

std::uint32_t parse_u32(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        long long n = std::stoll(v, &pos);
        if (pos != v.size() || n < 0 || n > 0xFFFFFFFFll) throw std::invalid_argument(v);
        return static_cast<std::uint32_t>(n);
    } catch (const std::exception&) {
        throw Error(Errc::ConfigParse, "line " + std::to_string(line) + ": bad integer '" + v + "'");
    }
}

std::uint8_t parse_leds(const std::string& v, int line) {
    std::uint8_t mask = 0;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item == "green") mask |= kLedGreen;
        else if (item == "red") mask |= kLedRed;
        else if (item == "ir") mask |= kLedIr;
        else if (item == "none" || item.empty()) continue;
        else
            throw Error(Errc::ConfigParse,
                        "line " + std::to_string(line) + ": unknown LED '" + item + "'");
    }
    return mask;
}

} // namespace

SensorConfig parse_config_text(const std::string& text) {
    SensorConfig cfg;
    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        raw = trim(raw);
        if (raw.empty()) continue;
        auto eq = raw.find('=');
        if (eq == std::string::npos) {
            throw Error(Errc::ConfigParse, "line " + std::to_string(line) + ": expected key = value");
        }
        std::string key = trim(raw.substr(0, eq));
        std::string val = trim(raw.substr(eq + 1));

        if (key == "ecg.enabled") cfg.ecg_resp.enabled = parse_bool(val, line);
        else if (key == "ecg.rate_hz") cfg.ecg_resp.rate_hz = parse_u32(val, line);
        else if (key == "ppg.enabled") cfg.ppg.enabled = parse_bool(val, line);
        else if (key == "ppg.rate_hz") cfg.ppg.rate_hz = parse_u32(val, line);
        else if (key == "ppg.leds") cfg.ppg_led_mask = parse_leds(val, line);
        else if (key == "imu.enabled") cfg.imu.enabled = parse_bool(val, line);
        else if (key == "imu.rate_hz") cfg.imu.rate_hz = parse_u32(val, line);
        else if (key == "audio.enabled") cfg.audio.enabled = parse_bool(val, line);
        else if (key == "audio.rate_hz") cfg.audio.sample_rate_hz = parse_u32(val, line);
        else
            throw Error(Errc::ConfigParse, "line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
    return cfg;
}

std::string config_to_text(const SensorConfig& cfg) {
    std::ostringstream out;
    out << "ecg.enabled = " << (cfg.ecg_resp.enabled ? "true" : "false") << "\n";
    out << "ecg.rate_hz = " << cfg.ecg_resp.rate_hz << "\n";
    out << "ppg.enabled = " << (cfg.ppg.enabled ? "true" : "false") << "\n";
    out << "ppg.rate_hz = " << cfg.ppg.rate_hz << "\n";
    out << "ppg.leds = ";
    bool first = true;
    for (auto [bit, name] : {std::pair{kLedGreen, "green"}, {kLedRed, "red"}, {kLedIr, "ir"}}) {
        if (cfg.ppg_led_mask & bit) {
            if (!first) out << ",";
            out << name;
            first = false;
        }
    }
    if (first) out << "none";
    out << "\n";
    out << "imu.enabled = " << (cfg.imu.enabled ? "true" : "false") << "\n";
    out << "imu.rate_hz = " << cfg.imu.rate_hz << "\n";
    out << "audio.enabled = " << (cfg.audio.enabled ? "true" : "false") << "\n";
    out << "audio.rate_hz = " << cfg.audio.sample_rate_hz << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Profile validation
// ---------------------------------------------------------------------------

void validate_profile(const PhysioProfile& p) {
    if (p.heart_rate_bpm < 30.0 || p.heart_rate_bpm > 220.0)
        throw Error(Errc::OutOfRange, "heart_rate_bpm outside [30, 220]");
    if (p.resp_rate_brpm < 4.0 || p.resp_rate_brpm > 60.0)
        throw Error(Errc::OutOfRange, "resp_rate_brpm outside [4, 60]");
    if (p.hr_variability_frac < 0.0 || p.hr_variability_frac > 0.2)
        throw Error(Errc::OutOfRange, "hr_variability_frac outside [0, 0.2]");
    if (!(p.s1_s2_interval_s > 0.0) || p.s1_s2_interval_s >= 60.0 / p.heart_rate_bpm)
        throw Error(Errc::OutOfRange, "s1_s2_interval_s must be in (0, 60/heart_rate_bpm)");
    if (p.ambient.leak_gain < 0.0 || p.ambient.leak_gain > 1.0)
        throw Error(Errc::OutOfRange, "ambient.leak_gain outside [0, 1]");
}

// ---------------------------------------------------------------------------
// Conversions
// ---------------------------------------------------------------------------

// 2400 mV full span over gain 6 and 2^23 positive codes.
static constexpr double kMvPerCount = 2400.0 / (6.0 * 8388608.0);

double ecg_counts_to_mv(std::int32_t counts) {
    if (counts < kCountsMin || counts > kCountsMax)
        throw Error(Errc::OutOfRange, "counts " + std::to_string(counts) + " outside 24-bit range");
    return static_cast<double>(counts) * kMvPerCount;
}

std::int32_t ecg_mv_to_counts(double mv) {
    double c = mv / kMvPerCount;
    c = std::clamp(c, static_cast<double>(kCountsMin), static_cast<double>(kCountsMax));
    return static_cast<std::int32_t>(std::llround(c));
}

ImuPhysical imu_raw_to_physical(const ImuSample& s) {
    return ImuPhysical{
        {s.ax / kAccelLsbPerG, s.ay / kAccelLsbPerG, s.az / kAccelLsbPerG},
        {s.gx / kGyroLsbPerDps, s.gy / kGyroLsbPerDps, s.gz / kGyroLsbPerDps},
    };
}

} // namespace pk
