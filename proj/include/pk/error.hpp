#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pk {

// Every failure mode in the pipeline gets a stable code so callers can
// branch on it without string matching.
enum class Errc {
    // config / conversions
    RateOutOfRange,
    NoSensorEnabled,
    EmptyLedMask,
    OutOfRange,
    ConfigParse,
    // session codec
    UnsortedInput,
    PayloadTooLarge,
    IoFailure,
    BadMagic,
    UnsupportedVersion,
    CrcMismatch,
    TruncatedRecord,
    MalformedRecord,
    // audio codec
    BadRate,
    NotRiff,
    UnsupportedEncoding,
    ChannelCountNotTwo,
    // simulator
    RateTooLowForMorphology,
    IntervalExceedsBeat,
    NoLoad,
    // analysis
    EmptySession,
    TooShort,
    RateTooLow,
    NotEnoughPeaks,
    NoEventsFound,
    AmbiguousPairing,
    NoSpectralPeak,
    LengthMismatch,
    ChannelAbsent,
    // streaming
    Timeout,
    ProtocolViolation,
    IllegalState,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}
    Error(Errc code, std::string message, std::uint64_t offset)
        : std::runtime_error(std::move(message)), code_(code), offset_(offset) {}

    Errc code() const noexcept { return code_; }
    // byte offset of the offending record/frame, when the failure has one
    std::uint64_t offset() const noexcept { return offset_; }

private:
    Errc code_;
    std::uint64_t offset_ = 0;
};

} // namespace pk
