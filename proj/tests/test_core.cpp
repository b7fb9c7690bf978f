#include "doctest.h"

#include "pk/core.hpp"

using namespace pk;

TEST_SUITE_BEGIN("core");

TEST_CASE("default config is valid and matches the documented rates") {
    SensorConfig cfg;
    CHECK(cfg.ecg_resp.rate_hz == 125);
    CHECK(cfg.ppg.rate_hz == 100);
    CHECK(cfg.imu.rate_hz == 50);
    CHECK(cfg.audio.sample_rate_hz == 8000);
    CHECK(cfg.ppg_led_mask == kLedGreen);
    auto valid = validate_config(cfg);
    CHECK(valid.get() == cfg);
}

TEST_CASE("validate_config is idempotent") {
    SensorConfig cfg;
    cfg.imu.enabled = false;
    auto once = validate_config(cfg);
    auto twice = validate_config(once.get());
    CHECK(once.get() == twice.get());
}

TEST_CASE("everything disabled is rejected") {
    SensorConfig cfg;
    cfg.ecg_resp.enabled = false;
    cfg.ppg.enabled = false;
    cfg.imu.enabled = false;
    cfg.audio.enabled = false;
    try {
        validate_config(cfg);
        FAIL("expected NoSensorEnabled");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NoSensorEnabled);
    }
}

TEST_CASE("rate bounds") {
    SensorConfig cfg;
    cfg.ecg_resp.rate_hz = 0;
    try {
        validate_config(cfg);
        FAIL("expected RateOutOfRange");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::RateOutOfRange);
        CHECK(std::string(e.what()).find("ecg") != std::string::npos);
    }

    cfg = SensorConfig{};
    cfg.imu.rate_hz = 1001;
    CHECK_THROWS_AS(validate_config(cfg), Error);

    cfg = SensorConfig{};
    cfg.audio.sample_rate_hz = 44100;
    CHECK_THROWS_AS(validate_config(cfg), Error);

    // disabled channels may carry any rate value
    cfg = SensorConfig{};
    cfg.imu.enabled = false;
    cfg.imu.rate_hz = 0;
    CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("empty LED mask only matters while PPG is enabled") {
    SensorConfig cfg;
    cfg.ppg_led_mask = 0;
    try {
        validate_config(cfg);
        FAIL("expected EmptyLedMask");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::EmptyLedMask);
    }
    cfg.ppg.enabled = false;
    CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("ecg counts to millivolts") {
    CHECK(ecg_counts_to_mv(0) == 0.0);
    // 2400 * (2^23-1) / (6 * 2^23) and the negative rail, computed from the
    // exact rational 25/524288 mV per count
    CHECK(ecg_counts_to_mv(8388607) == doctest::Approx(399.9999523162842).epsilon(1e-12));
    CHECK(ecg_counts_to_mv(-8388608) == doctest::Approx(-400.0).epsilon(1e-12));
    CHECK(ecg_counts_to_mv(1000) == doctest::Approx(1000.0 * 25.0 / 524288.0).epsilon(1e-12));

    CHECK_THROWS_AS(ecg_counts_to_mv(8388608), Error);
    CHECK_THROWS_AS(ecg_counts_to_mv(-8388609), Error);
}

TEST_CASE("conversions are odd and strictly monotone") {
    std::int32_t probes[] = {1, 7, 100, 4096, 65535, 1 << 20, 8388607};
    double prev = ecg_counts_to_mv(-8388608);
    for (std::int32_t c : probes) {
        CHECK(ecg_counts_to_mv(-c) == -ecg_counts_to_mv(c));
    }
    for (std::int32_t c = -8388608 + 1198372; c < 8388607; c += 1198372) {
        double v = ecg_counts_to_mv(c);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("ecg mv/counts round trip") {
    for (std::int32_t c : {-8388608, -12345, 0, 1, 999999, 8388607}) {
        CHECK(ecg_mv_to_counts(ecg_counts_to_mv(c)) == c);
    }
}

TEST_CASE("imu raw to physical") {
    ImuSample s{0, 0, 16384, 0, 0, 0};
    auto phys = imu_raw_to_physical(s);
    CHECK(phys.accel_g[2] == doctest::Approx(1.0));
    CHECK(phys.gyro_dps[0] == 0.0);

    s = ImuSample{0, 0, 0, 131, 0, 0};
    phys = imu_raw_to_physical(s);
    CHECK(phys.gyro_dps[0] == doctest::Approx(1.0));

    s = ImuSample{-16384, 0, 0, 0, -131, 0};
    phys = imu_raw_to_physical(s);
    CHECK(phys.accel_g[0] == doctest::Approx(-1.0));
    CHECK(phys.gyro_dps[1] == doctest::Approx(-1.0));
}

TEST_CASE("sensor ids round trip through raw bytes") {
    for (int raw = 0; raw < 256; ++raw) {
        auto id = sensor_from_raw(static_cast<std::uint8_t>(raw));
        CHECK(raw_id(id) == raw);
    }
    CHECK(is_known_sensor(SensorId::EcgResp));
    CHECK(is_known_sensor(SensorId::Marker));
    CHECK_FALSE(is_known_sensor(sensor_from_raw(0x42)));
    CHECK(sensor_name(sensor_from_raw(0x42)) == "UNKNOWN(0x42)");
}

TEST_CASE("config text round trip") {
    SensorConfig cfg;
    cfg.imu.enabled = false;
    cfg.ppg_led_mask = kLedGreen | kLedIr;
    cfg.audio.sample_rate_hz = 16000;
    auto text = config_to_text(cfg);
    CHECK(parse_config_text(text) == cfg);
}

TEST_CASE("config text accepts comments and reports bad keys") {
    auto cfg = parse_config_text("# comment\n  ecg.rate_hz = 250 # trailing\n\n");
    CHECK(cfg.ecg_resp.rate_hz == 250);

    try {
        parse_config_text("bogus.key = 1\n");
        FAIL("expected ConfigParse");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ConfigParse);
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_text("ecg.enabled = maybe\n"), Error);
    CHECK_THROWS_AS(parse_config_text("just a line\n"), Error);
}

TEST_CASE("profile validation") {
    PhysioProfile p;
    CHECK_NOTHROW(validate_profile(p));
    p.heart_rate_bpm = 250;
    CHECK_THROWS_AS(validate_profile(p), Error);
    p = PhysioProfile{};
    p.s1_s2_interval_s = 1.2;  // >= 60/60
    CHECK_THROWS_AS(validate_profile(p), Error);
    p = PhysioProfile{};
    p.hr_variability_frac = 0.5;
    CHECK_THROWS_AS(validate_profile(p), Error);
}

TEST_SUITE_END();
