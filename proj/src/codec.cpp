#include "pk/codec.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace pk::codec {

// ---------------------------------------------------------------------------
// CRC-8 (poly 0x07, init 0x00)
// ---------------------------------------------------------------------------

namespace {

constexpr std::array<std::uint8_t, 256> make_crc_table() {
    std::array<std::uint8_t, 256> table{};
    for (int i = 0; i < 256; ++i) {
        std::uint8_t crc = static_cast<std::uint8_t>(i);
        for (int bit = 0; bit < 8; ++bit)
            crc = (crc & 0x80) ? static_cast<std::uint8_t>((crc << 1) ^ 0x07)
                               : static_cast<std::uint8_t>(crc << 1);
        table[static_cast<std::size_t>(i)] = crc;
    }
    return table;
}

constexpr auto kCrcTable = make_crc_table();

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

std::uint16_t get_u16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint64_t get_u64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

} // namespace

std::uint8_t crc8(std::span<const std::uint8_t> data) {
    std::uint8_t crc = 0x00;
    for (std::uint8_t b : data) crc = kCrcTable[crc ^ b];
    return crc;
}

// ---------------------------------------------------------------------------
// Header / config block
// ---------------------------------------------------------------------------

std::vector<std::uint8_t> encode_config_block(const SensorConfig& cfg) {
    std::vector<std::uint8_t> out;
    out.push_back(4);  // entry count
    auto entry = [&out](std::uint8_t id, bool enabled, std::uint32_t rate, std::uint8_t extra) {
        out.push_back(id);
        put_u16(out, static_cast<std::uint16_t>(rate));
        out.push_back(static_cast<std::uint8_t>((enabled ? 0x01 : 0x00) | extra));
    };
    entry(raw_id(SensorId::EcgResp), cfg.ecg_resp.enabled, cfg.ecg_resp.rate_hz, 0);
    entry(raw_id(SensorId::Ppg), cfg.ppg.enabled, cfg.ppg.rate_hz,
          static_cast<std::uint8_t>((cfg.ppg_led_mask & 0x07) << 1));
    entry(raw_id(SensorId::Imu), cfg.imu.enabled, cfg.imu.rate_hz, 0);
    entry(kAudioConfigTag, cfg.audio.enabled, cfg.audio.sample_rate_hz, 0);
    return out;
}

SensorConfig decode_config_block(std::span<const std::uint8_t> block) {
    if (block.empty()) throw Error(Errc::ConfigParse, "empty config block");
    std::size_t count = block[0];
    if (block.size() < 1 + count * 4)
        throw Error(Errc::ConfigParse, "config block shorter than its entry count");
    SensorConfig cfg;
    cfg.ecg_resp = {false, 0};
    cfg.ppg = {false, 0};
    cfg.imu = {false, 0};
    cfg.ppg_led_mask = 0;
    cfg.audio = {false, 8000};
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint8_t* p = block.data() + 1 + i * 4;
        std::uint8_t id = p[0];
        std::uint16_t rate = get_u16(p + 1);
        std::uint8_t flags = p[3];
        bool enabled = flags & 0x01;
        switch (id) {
            case 0x01: cfg.ecg_resp = {enabled, rate}; break;
            case 0x02:
                cfg.ppg = {enabled, rate};
                cfg.ppg_led_mask = static_cast<std::uint8_t>((flags >> 1) & 0x07);
                break;
            case 0x03: cfg.imu = {enabled, rate}; break;
            case kAudioConfigTag: cfg.audio = {enabled, rate}; break;
            default: break;  // unknown entries are skipped for forward compatibility
        }
    }
    return cfg;
}

std::vector<std::uint8_t> encode_header(const SessionHeader& header) {
    std::vector<std::uint8_t> out;
    out.insert(out.end(), kMagic.begin(), kMagic.end());
    put_u16(out, kVersion);
    put_u64(out, header.session_start_epoch_us);
    auto block = encode_config_block(header.config);
    out.insert(out.end(), block.begin(), block.end());
    return out;
}

SessionHeader decode_header(std::istream& in) {
    std::array<char, 4> magic{};
    in.read(magic.data(), 4);
    if (in.gcount() != 4 || magic != kMagic)
        throw Error(Errc::BadMagic, "not a PKLG session file");
    std::array<std::uint8_t, 10> fixed{};
    in.read(reinterpret_cast<char*>(fixed.data()), fixed.size());
    if (in.gcount() != static_cast<std::streamsize>(fixed.size()))
        throw Error(Errc::TruncatedRecord, "header truncated", 4);
    std::uint16_t version = get_u16(fixed.data());
    if (version != kVersion)
        throw Error(Errc::UnsupportedVersion, "version " + std::to_string(version));
    SessionHeader header;
    header.session_start_epoch_us = get_u64(fixed.data() + 2);
    int count = in.get();
    if (count == EOF) throw Error(Errc::TruncatedRecord, "header truncated", 14);
    std::vector<std::uint8_t> block;
    block.push_back(static_cast<std::uint8_t>(count));
    block.resize(1 + static_cast<std::size_t>(count) * 4);
    in.read(reinterpret_cast<char*>(block.data() + 1), static_cast<std::streamsize>(count) * 4);
    if (in.gcount() != static_cast<std::streamsize>(count) * 4)
        throw Error(Errc::TruncatedRecord, "header config block truncated", 15);
    header.config = decode_config_block(block);
    return header;
}

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

std::optional<std::size_t> fixed_payload_len(SensorId id) {
    switch (id) {
        case SensorId::EcgResp: return 8;
        case SensorId::Imu: return 12;
        case SensorId::Marker: return 1;
        case SensorId::Ppg: return std::nullopt;  // 1 + 4*popcount(mask)
    }
    return std::nullopt;
}

namespace {

std::vector<std::uint8_t> encode_payload(const SensorRecord& record) {
    std::vector<std::uint8_t> out;
    std::visit(
        [&out](const auto& sample) {
            using T = std::decay_t<decltype(sample)>;
            if constexpr (std::is_same_v<T, EcgRespSample>) {
                put_u32(out, static_cast<std::uint32_t>(sample.ch1_counts));
                put_u32(out, static_cast<std::uint32_t>(sample.ch2_counts));
            } else if constexpr (std::is_same_v<T, PpgSample>) {
                out.push_back(sample.led_mask);
                for (int i = 0; i < 3; ++i)
                    if (sample.led_mask & (1u << i)) put_u32(out, sample.counts[static_cast<std::size_t>(i)]);
            } else if constexpr (std::is_same_v<T, ImuSample>) {
                for (std::int16_t v : {sample.ax, sample.ay, sample.az, sample.gx, sample.gy, sample.gz})
                    put_u16(out, static_cast<std::uint16_t>(v));
            } else if constexpr (std::is_same_v<T, MarkerSample>) {
                out.push_back(sample.code);
            } else {
                out = sample.bytes;
            }
        },
        record.payload);
    return out;
}

SamplePayload decode_payload(SensorId id, std::span<const std::uint8_t> p,
                             std::uint64_t offset) {
    switch (id) {
        case SensorId::EcgResp: {
            EcgRespSample s;
            s.ch1_counts = static_cast<std::int32_t>(get_u32(p.data()));
            s.ch2_counts = static_cast<std::int32_t>(get_u32(p.data() + 4));
            return s;
        }
        case SensorId::Ppg: {
            PpgSample s;
            s.led_mask = p[0];
            std::size_t expect = 1 + 4 * static_cast<std::size_t>(std::popcount(s.led_mask));
            if (p.size() != expect)
                throw Error(Errc::MalformedRecord, "PPG payload length does not match LED mask",
                            offset);
            std::size_t at = 1;
            for (int i = 0; i < 3; ++i) {
                if (s.led_mask & (1u << i)) {
                    s.counts[static_cast<std::size_t>(i)] = get_u32(p.data() + at);
                    at += 4;
                }
            }
            return s;
        }
        case SensorId::Imu: {
            ImuSample s;
            s.ax = static_cast<std::int16_t>(get_u16(p.data()));
            s.ay = static_cast<std::int16_t>(get_u16(p.data() + 2));
            s.az = static_cast<std::int16_t>(get_u16(p.data() + 4));
            s.gx = static_cast<std::int16_t>(get_u16(p.data() + 6));
            s.gy = static_cast<std::int16_t>(get_u16(p.data() + 8));
            s.gz = static_cast<std::int16_t>(get_u16(p.data() + 10));
            return s;
        }
        case SensorId::Marker: return MarkerSample{p[0]};
    }
    return RawSample{{p.begin(), p.end()}};
}

} // namespace

std::vector<std::uint8_t> encode_record(const SensorRecord& record) {
    std::vector<std::uint8_t> payload = encode_payload(record);
    if (payload.size() > 0xFFFF)
        throw Error(Errc::PayloadTooLarge,
                    "payload " + std::to_string(payload.size()) + " bytes exceeds 65535");
    std::vector<std::uint8_t> out;
    out.reserve(12 + payload.size());
    out.push_back(raw_id(record.sensor_id));
    put_u64(out, record.timestamp_us);
    put_u16(out, static_cast<std::uint16_t>(payload.size()));
    out.insert(out.end(), payload.begin(), payload.end());
    out.push_back(crc8(out));
    return out;
}

SensorRecord decode_record(std::span<const std::uint8_t> bytes, std::uint64_t base_offset,
                           std::size_t& consumed) {
    if (bytes.size() < 11)
        throw Error(Errc::TruncatedRecord, "record header truncated", base_offset);
    SensorId id = sensor_from_raw(bytes[0]);
    std::uint64_t ts = get_u64(bytes.data() + 1);
    std::uint16_t len = get_u16(bytes.data() + 9);

    if (auto expect = fixed_payload_len(id); expect && *expect != len)
        throw Error(Errc::MalformedRecord,
                    "payload length " + std::to_string(len) + " invalid for " + sensor_name(id),
                    base_offset);
    if (id == SensorId::Ppg && len != 5 && len != 9 && len != 13)
        throw Error(Errc::MalformedRecord, "payload length invalid for PPG", base_offset);

    std::size_t total = 11u + len + 1u;
    if (bytes.size() < total)
        throw Error(Errc::TruncatedRecord, "record body truncated", base_offset);
    if (crc8(bytes.subspan(0, 11u + len)) != bytes[11u + len])
        throw Error(Errc::CrcMismatch, "record CRC mismatch", base_offset);

    SensorRecord record;
    record.sensor_id = id;
    record.timestamp_us = ts;
    record.payload = decode_payload(id, bytes.subspan(11, len), base_offset);
    consumed = total;
    return record;
}

// ---------------------------------------------------------------------------
// SessionWriter / SessionReader
// ---------------------------------------------------------------------------

SessionWriter::SessionWriter(std::ostream& out, const SessionHeader& header) : out_(out) {
    auto bytes = encode_header(header);
    out_.write(reinterpret_cast<const char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()));
    if (!out_) throw Error(Errc::IoFailure, "failed to write session header");
    bytes_written_ += bytes.size();
}

void SessionWriter::write(const SensorRecord& record) {
    std::uint8_t id = raw_id(record.sensor_id);
    if (have_prev_ && (record.timestamp_us < prev_ts_ ||
                       (record.timestamp_us == prev_ts_ && id < prev_id_))) {
        throw Error(Errc::UnsortedInput,
                    "record at " + std::to_string(record.timestamp_us) +
                        "us out of order (previous " + std::to_string(prev_ts_) + "us)");
    }
    auto bytes = encode_record(record);
    out_.write(reinterpret_cast<const char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()));
    if (!out_) throw Error(Errc::IoFailure, "failed to write record");
    bytes_written_ += bytes.size();
    have_prev_ = true;
    prev_ts_ = record.timestamp_us;
    prev_id_ = id;
}

std::uint64_t write_session(const SessionHeader& header,
                            std::span<const SensorRecord> records, std::ostream& out) {
    SessionWriter writer(out, header);
    for (const auto& r : records) writer.write(r);
    return writer.bytes_written();
}

SessionReader::SessionReader(std::istream& in) : in_(in) {
    header_ = decode_header(in_);
    offset_ = static_cast<std::uint64_t>(encode_header(header_).size());
}

std::optional<SensorRecord> SessionReader::next() {
    if (done_) return std::nullopt;
    std::array<std::uint8_t, 11> head{};
    in_.read(reinterpret_cast<char*>(head.data()), head.size());
    std::streamsize got = in_.gcount();
    if (got == 0) {
        done_ = true;
        return std::nullopt;
    }
    if (got < static_cast<std::streamsize>(head.size())) {
        done_ = true;
        throw Error(Errc::TruncatedRecord, "record header truncated", offset_);
    }
    std::uint16_t len = get_u16(head.data() + 9);
    std::vector<std::uint8_t> buf(11u + len + 1u);
    std::memcpy(buf.data(), head.data(), head.size());
    in_.read(reinterpret_cast<char*>(buf.data() + 11), static_cast<std::streamsize>(len) + 1);
    if (in_.gcount() != static_cast<std::streamsize>(len) + 1) {
        done_ = true;
        throw Error(Errc::TruncatedRecord, "record body truncated", offset_);
    }
    std::size_t consumed = 0;
    try {
        SensorRecord record = decode_record(buf, offset_, consumed);
        offset_ += consumed;
        return record;
    } catch (const Error&) {
        done_ = true;
        throw;
    }
}

std::pair<SessionHeader, std::vector<SensorRecord>> read_session_file(
    const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoFailure, "cannot open " + path.string());
    SessionReader reader(in);
    std::vector<SensorRecord> records;
    while (auto r = reader.next()) records.push_back(std::move(*r));
    return {reader.header(), std::move(records)};
}

// ---------------------------------------------------------------------------
// WAV
// ---------------------------------------------------------------------------

namespace {

void wav_header(std::ostream& out, std::uint32_t rate_hz, std::uint32_t data_bytes) {
    std::vector<std::uint8_t> h;
    auto put_tag = [&h](const char* tag) { h.insert(h.end(), tag, tag + 4); };
    put_tag("RIFF");
    put_u32(h, 36 + data_bytes);
    put_tag("WAVE");
    put_tag("fmt ");
    put_u32(h, 16);
    put_u16(h, 1);  // PCM
    put_u16(h, 2);  // stereo
    put_u32(h, rate_hz);
    put_u32(h, rate_hz * 4);  // byte rate: 2 ch * 2 B
    put_u16(h, 4);            // block align
    put_u16(h, 16);           // bits per sample
    put_tag("data");
    put_u32(h, data_bytes);
    out.write(reinterpret_cast<const char*>(h.data()), static_cast<std::streamsize>(h.size()));
}

} // namespace

WavWriter::WavWriter(std::ostream& out, std::uint32_t rate_hz) : out_(out) {
    bool ok = std::find(kAllowedAudioRates.begin(), kAllowedAudioRates.end(), rate_hz) !=
              kAllowedAudioRates.end();
    if (!ok) throw Error(Errc::BadRate, "audio rate " + std::to_string(rate_hz));
    wav_header(out_, rate_hz, 0);
    if (!out_) throw Error(Errc::IoFailure, "failed to write WAV header");
}

void WavWriter::write_frames(std::span<const std::int16_t> interleaved) {
    if (interleaved.size() % 2 != 0)
        throw Error(Errc::OutOfRange, "interleaved stereo sample count must be even");
    std::vector<std::uint8_t> buf(interleaved.size() * 2);
    for (std::size_t i = 0; i < interleaved.size(); ++i) {
        std::uint16_t v = static_cast<std::uint16_t>(interleaved[i]);
        buf[2 * i] = static_cast<std::uint8_t>(v & 0xFF);
        buf[2 * i + 1] = static_cast<std::uint8_t>(v >> 8);
    }
    out_.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out_) throw Error(Errc::IoFailure, "failed to write WAV data");
    data_bytes_ += buf.size();
}

std::uint64_t WavWriter::close() {
    if (closed_) return 44 + data_bytes_;
    closed_ = true;
    // patch RIFF and data chunk sizes
    out_.seekp(4, std::ios::beg);
    std::vector<std::uint8_t> b;
    put_u32(b, static_cast<std::uint32_t>(36 + data_bytes_));
    out_.write(reinterpret_cast<const char*>(b.data()), 4);
    out_.seekp(40, std::ios::beg);
    b.clear();
    put_u32(b, static_cast<std::uint32_t>(data_bytes_));
    out_.write(reinterpret_cast<const char*>(b.data()), 4);
    out_.seekp(0, std::ios::end);
    if (!out_) throw Error(Errc::IoFailure, "failed to finalize WAV header");
    return 44 + data_bytes_;
}

std::uint64_t write_audio(std::span<const std::int16_t> interleaved, std::uint32_t rate_hz,
                          std::ostream& out) {
    WavWriter writer(out, rate_hz);
    writer.write_frames(interleaved);
    return writer.close();
}

StereoAudio read_audio(std::istream& in) {
    auto read_exact = [&in](void* dst, std::size_t n, const char* what) {
        in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
        if (in.gcount() != static_cast<std::streamsize>(n))
            throw Error(Errc::UnsupportedEncoding, std::string("WAV truncated in ") + what);
    };
    char tag[4];
    read_exact(tag, 4, "RIFF tag");
    if (std::memcmp(tag, "RIFF", 4) != 0) throw Error(Errc::NotRiff, "missing RIFF tag");
    std::uint8_t tmp4[4];
    read_exact(tmp4, 4, "RIFF size");
    read_exact(tag, 4, "WAVE tag");
    if (std::memcmp(tag, "WAVE", 4) != 0) throw Error(Errc::NotRiff, "missing WAVE tag");

    std::uint16_t channels = 0, bits = 0, format = 0;
    std::uint32_t rate = 0;
    bool have_fmt = false;
    StereoAudio audio;

    // chunk walk; unknown chunks are skipped
    while (true) {
        in.read(tag, 4);
        if (in.gcount() != 4) break;
        read_exact(tmp4, 4, "chunk size");
        std::uint32_t size = get_u32(tmp4);
        if (std::memcmp(tag, "fmt ", 4) == 0) {
            std::vector<std::uint8_t> fmt(size);
            read_exact(fmt.data(), size, "fmt chunk");
            if (size < 16) throw Error(Errc::UnsupportedEncoding, "short fmt chunk");
            format = get_u16(fmt.data());
            channels = get_u16(fmt.data() + 2);
            rate = get_u32(fmt.data() + 4);
            bits = get_u16(fmt.data() + 14);
            have_fmt = true;
        } else if (std::memcmp(tag, "data", 4) == 0) {
            if (!have_fmt) throw Error(Errc::UnsupportedEncoding, "data chunk before fmt");
            if (format != 1 || bits != 16)
                throw Error(Errc::UnsupportedEncoding, "only PCM16 is supported");
            if (channels != 2)
                throw Error(Errc::ChannelCountNotTwo,
                            "expected stereo, got " + std::to_string(channels) + " channel(s)");
            std::vector<std::uint8_t> data(size);
            read_exact(data.data(), size, "data chunk");
            std::size_t frames = size / 4;
            audio.rate_hz = rate;
            for (TimeSeries* ts : {&audio.stethoscope, &audio.ambient}) {
                ts->start_us = 0;
                ts->rate_hz = rate;
                ts->unit = Unit::Normalized;
                ts->samples.resize(frames);
            }
            for (std::size_t i = 0; i < frames; ++i) {
                auto s0 = static_cast<std::int16_t>(get_u16(data.data() + 4 * i));
                auto s1 = static_cast<std::int16_t>(get_u16(data.data() + 4 * i + 2));
                audio.stethoscope.samples[i] = s0 / 32768.0;
                audio.ambient.samples[i] = s1 / 32768.0;
            }
            return audio;
        } else {
            in.seekg(size + (size & 1), std::ios::cur);
        }
    }
    throw Error(Errc::UnsupportedEncoding, "no data chunk found");
}

StereoAudio read_audio_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoFailure, "cannot open " + path.string());
    return read_audio(in);
}

// ---------------------------------------------------------------------------
// Ground-truth sidecar
// ---------------------------------------------------------------------------

std::vector<std::uint64_t> TruthFile::times(const std::string& kind) const {
    std::vector<std::uint64_t> out;
    for (const auto& e : events)
        if (e.kind == kind) out.push_back(e.time_us);
    return out;
}

void write_truth(const TruthFile& truth, std::ostream& out) {
    out << "# mean_hr_bpm " << truth.mean_hr_bpm << "\n";
    out << "# mean_rr_brpm " << truth.mean_rr_brpm << "\n";
    for (const auto& e : truth.events) {
        out << e.kind << " " << e.time_us;
        if (e.value) out << " " << *e.value;
        out << "\n";
    }
    if (!out) throw Error(Errc::IoFailure, "failed to write truth sidecar");
}

TruthFile read_truth(std::istream& in) {
    TruthFile truth;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        if (line[0] == '#') {
            std::string hash, key;
            double v = 0;
            ss >> hash >> key >> v;
            if (key == "mean_hr_bpm") truth.mean_hr_bpm = v;
            else if (key == "mean_rr_brpm") truth.mean_rr_brpm = v;
            continue;
        }
        TruthEvent e;
        ss >> e.kind >> e.time_us;
        double v;
        if (ss >> v) e.value = v;
        if (e.kind.empty() || ss.bad())
            throw Error(Errc::ConfigParse, "bad truth line: " + line);
        truth.events.push_back(std::move(e));
    }
    return truth;
}

TruthFile read_truth_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoFailure, "cannot open " + path.string());
    return read_truth(in);
}

// ---------------------------------------------------------------------------
// Session bundle / stats
// ---------------------------------------------------------------------------

SessionLog open_session(const std::filesystem::path& pks_path) {
    std::ifstream in(pks_path, std::ios::binary);
    if (!in) throw Error(Errc::IoFailure, "cannot open " + pks_path.string());
    SessionLog log;
    log.header = decode_header(in);
    log.records_path = pks_path;
    auto wav = pks_path;
    wav.replace_extension(".wav");
    if (std::filesystem::exists(wav)) log.audio_path = wav;
    auto truth = pks_path;
    truth.replace_extension(".truth");
    if (std::filesystem::exists(truth)) log.truth_path = truth;
    return log;
}

SessionStats session_stats(const std::filesystem::path& pks_path) {
    std::ifstream in(pks_path, std::ios::binary);
    if (!in) throw Error(Errc::IoFailure, "cannot open " + pks_path.string());
    SessionReader reader(in);
    SessionStats stats;
    stats.header = reader.header();
    std::map<std::uint8_t, SensorStats> acc;
    while (auto r = reader.next()) {
        auto& s = acc[raw_id(r->sensor_id)];
        if (s.count == 0) s.first_ts_us = r->timestamp_us;
        s.last_ts_us = r->timestamp_us;
        ++s.count;
        ++stats.total_records;
    }
    for (auto& [id, s] : acc) {
        if (s.count >= 2 && s.last_ts_us > s.first_ts_us)
            s.rate_estimate_hz = static_cast<double>(s.count - 1) * 1e6 /
                                 static_cast<double>(s.last_ts_us - s.first_ts_us);
        stats.per_sensor.emplace_back(id, s);
    }
    return stats;
}

} // namespace pk::codec
