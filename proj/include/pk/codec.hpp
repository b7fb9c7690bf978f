#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pk/core.hpp"

namespace pk::codec {

// ---------------------------------------------------------------------------
// Session record file (.pks)
//
// All multi-byte integers are little-endian.
//
//   header:  "PKLG" | version u16 | session_start_epoch_us u64 |
//            entry_count u8 | entries { id u8, rate_hz u16, flags u8 }
//   record:  sensor_id u8 | timestamp_us u64 | payload_len u16 |
//            payload | crc8 over all preceding record bytes
//
// Config entry ids 0x01..0x03 mirror SensorId; 0x04 tags the audio settings
// (audio never appears as a record). flags bit0 = enabled; for PPG, bits 1-3
// carry the LED mask.
// ---------------------------------------------------------------------------

constexpr std::array<char, 4> kMagic = {'P', 'K', 'L', 'G'};
constexpr std::uint16_t kVersion = 1;
constexpr std::uint8_t kAudioConfigTag = 0x04;

// CRC-8, polynomial 0x07, init 0x00, no reflection, no final xor.
std::uint8_t crc8(std::span<const std::uint8_t> data);

struct SessionHeader {
    std::uint64_t session_start_epoch_us = 0;
    SensorConfig config;
    bool operator==(const SessionHeader&) const = default;
};

std::vector<std::uint8_t> encode_header(const SessionHeader& header);
// Throws BadMagic / UnsupportedVersion / TruncatedRecord / ConfigParse.
SessionHeader decode_header(std::istream& in);

// Serialized config block only (count-prefixed entry list); this is also the
// SET_CONFIG payload on the streaming protocol.
std::vector<std::uint8_t> encode_config_block(const SensorConfig& cfg);
SensorConfig decode_config_block(std::span<const std::uint8_t> block);

// One record, exactly as stored in the file (and inside NOTIFY payloads).
// Throws PayloadTooLarge for raw payloads over 65535 bytes.
std::vector<std::uint8_t> encode_record(const SensorRecord& record);

// Decodes one record from the start of `bytes`; `consumed` gets the encoded
// size. Throws TruncatedRecord / CrcMismatch / MalformedRecord with the given
// base offset reported in the error.
SensorRecord decode_record(std::span<const std::uint8_t> bytes, std::uint64_t base_offset,
                           std::size_t& consumed);

// Expected payload length for a known sensor id; nullopt = variable (PPG) or
// unknown id.
std::optional<std::size_t> fixed_payload_len(SensorId id);

// Streaming writer. Records must arrive sorted by timestamp, ties broken by
// ascending sensor id; violations throw UnsortedInput.
class SessionWriter {
public:
    SessionWriter(std::ostream& out, const SessionHeader& header);
    void write(const SensorRecord& record);
    std::uint64_t bytes_written() const { return bytes_written_; }

private:
    std::ostream& out_;
    std::uint64_t bytes_written_ = 0;
    bool have_prev_ = false;
    std::uint64_t prev_ts_ = 0;
    std::uint8_t prev_id_ = 0;
};

std::uint64_t write_session(const SessionHeader& header,
                            std::span<const SensorRecord> records, std::ostream& out);

// Streaming reader; memory use is bounded by the largest record. next()
// returns nullopt at a clean end of file and throws on corruption; records
// yielded before the throw are valid.
class SessionReader {
public:
    explicit SessionReader(std::istream& in);
    const SessionHeader& header() const { return header_; }
    std::optional<SensorRecord> next();
    std::uint64_t offset() const { return offset_; }

private:
    std::istream& in_;
    SessionHeader header_;
    std::uint64_t offset_ = 0;
    bool done_ = false;
};

std::pair<SessionHeader, std::vector<SensorRecord>> read_session_file(
    const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Audio container (RIFF/WAVE, PCM16, stereo)
// channel 0 = stethoscope, channel 1 = ambient reference
// ---------------------------------------------------------------------------

// Incremental WAV writer; RIFF sizes are patched on close.
class WavWriter {
public:
    WavWriter(std::ostream& out, std::uint32_t rate_hz);  // throws BadRate
    void write_frames(std::span<const std::int16_t> interleaved);
    std::uint64_t close();  // returns total bytes written

private:
    std::ostream& out_;
    std::uint64_t data_bytes_ = 0;
    bool closed_ = false;
};

// samples are interleaved stereo; count must be even.
std::uint64_t write_audio(std::span<const std::int16_t> interleaved, std::uint32_t rate_hz,
                          std::ostream& out);

struct StereoAudio {
    std::uint32_t rate_hz = 0;
    TimeSeries stethoscope;  // normalized to [-1, 1) by 1/2^15
    TimeSeries ambient;
};

// Throws NotRiff / UnsupportedEncoding / ChannelCountNotTwo.
StereoAudio read_audio(std::istream& in);
StereoAudio read_audio_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Ground-truth sidecar (.truth): line oriented, one event per line:
//   <kind> <time_us> [value]      kinds: RPEAK, S1, S2, BREATH
// Two leading comment lines carry the session means:
//   # mean_hr_bpm <v>
//   # mean_rr_brpm <v>
// ---------------------------------------------------------------------------

struct TruthEvent {
    std::string kind;
    std::uint64_t time_us = 0;
    std::optional<double> value;
};

struct TruthFile {
    double mean_hr_bpm = 0.0;
    double mean_rr_brpm = 0.0;
    std::vector<TruthEvent> events;

    std::vector<std::uint64_t> times(const std::string& kind) const;
};

void write_truth(const TruthFile& truth, std::ostream& out);
TruthFile read_truth(std::istream& in);
TruthFile read_truth_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Session bundle on disk
// ---------------------------------------------------------------------------

struct SessionLog {
    SessionHeader header;
    std::filesystem::path records_path;            // .pks
    std::filesystem::path audio_path;              // .wav ("" when audio disabled)
    std::optional<std::filesystem::path> truth_path;
};

// Opens <stem>.pks and picks up sibling .wav/.truth files when present.
SessionLog open_session(const std::filesystem::path& pks_path);

// Per-sensor bookkeeping used by the dump subcommand and the acceptance suite.
struct SensorStats {
    std::uint64_t count = 0;
    std::uint64_t first_ts_us = 0;
    std::uint64_t last_ts_us = 0;
    // (count-1) / (last-first); 0 when fewer than 2 records
    double rate_estimate_hz = 0.0;
};

struct SessionStats {
    SessionHeader header;
    std::vector<std::pair<std::uint8_t, SensorStats>> per_sensor;  // sorted by id
    std::uint64_t total_records = 0;
};

SessionStats session_stats(const std::filesystem::path& pks_path);

} // namespace pk::codec
