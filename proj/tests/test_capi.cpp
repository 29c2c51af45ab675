// Exercises the C API end to end: handle lifecycle, JSON payloads, status
// codes and the thread-local error message. Links against the shared library
// only, so everything here goes through netload_uq.h.
#include <doctest.h>

#include <netload_uq.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

using nlohmann::json;

std::filesystem::path scratch_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "nluq_capi_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << text;
}

/// Frees a profile handle when the test scope unwinds.
struct ProfileGuard {
    nluq_profile* p = nullptr;
    ~ProfileGuard() { nluq_profile_free(p); }
};

/// Frees a string returned by the library when the test scope unwinds.
struct StringGuard {
    char* s = nullptr;
    ~StringGuard() { nluq_string_free(s); }
};

json parse_payload(const StringGuard& payload) {
    REQUIRE(payload.s != nullptr);
    return json::parse(std::string(payload.s));
}

} // namespace

TEST_CASE("version and initial error state") {
    const char* version = nluq_version();
    REQUIRE(version != nullptr);
    CHECK(std::strlen(version) > 0);
    CHECK(std::string(nluq_last_error()).empty());
}

TEST_CASE("profile creation round trips values, interval and count") {
    const std::vector<double> values{1.0, 2.0, 3.0, 4.0};
    ProfileGuard profile;
    REQUIRE(nluq_profile_create(values.data(), values.size(), 0.25, "2022-03-05T06:30:00",
                                &profile.p) == NLUQ_OK);
    REQUIRE(profile.p != nullptr);
    CHECK(nluq_profile_count(profile.p) == 4);
    CHECK(nluq_profile_dt_hours(profile.p) == doctest::Approx(0.25));

    std::vector<double> copy(4, 0.0);
    REQUIRE(nluq_profile_values(profile.p, copy.data(), copy.size()) == NLUQ_OK);
    CHECK(copy == values);

    // Too small a destination is rejected before anything is written.
    double tiny[2] = {0.0, 0.0};
    CHECK(nluq_profile_values(profile.p, tiny, 2) == NLUQ_ERR_INVALID_ARGUMENT);
    CHECK(std::string(nluq_last_error()).find("capacity") != std::string::npos);

    // The next successful call clears the sticky message.
    REQUIRE(nluq_profile_values(profile.p, copy.data(), copy.size()) == NLUQ_OK);
    CHECK(std::string(nluq_last_error()).empty());
}

TEST_CASE("NULL accessors and frees are harmless") {
    CHECK(nluq_profile_count(nullptr) == 0);
    CHECK(nluq_profile_dt_hours(nullptr) == 0.0);
    nluq_profile_free(nullptr);
    nluq_string_free(nullptr);
}

TEST_CASE("profile creation validates its arguments") {
    const std::vector<double> values{1.0, 2.0};
    nluq_profile* out = nullptr;

    CHECK(nluq_profile_create(values.data(), values.size(), 0.25, nullptr, nullptr) ==
          NLUQ_ERR_INVALID_ARGUMENT);
    CHECK(nluq_profile_create(nullptr, 3, 0.25, nullptr, &out) == NLUQ_ERR_INVALID_ARGUMENT);
    CHECK(nluq_profile_create(values.data(), values.size(), 0.0, nullptr, &out) ==
          NLUQ_ERR_INVALID_ARGUMENT);
    CHECK(nluq_profile_create(values.data(), 0, 0.25, nullptr, &out) == NLUQ_ERR_EMPTY_INPUT);

    const std::vector<double> with_nan{1.0, std::nan("")};
    CHECK(nluq_profile_create(with_nan.data(), with_nan.size(), 0.25, nullptr, &out) ==
          NLUQ_ERR_PARSE);
    CHECK(std::string(nluq_last_error()).find("non-finite") != std::string::npos);

    CHECK(nluq_profile_create(values.data(), values.size(), 0.25, "not a timestamp", &out) ==
          NLUQ_ERR_PARSE);
    CHECK(out == nullptr);
}

TEST_CASE("a NULL start timestamp means midnight, 2022-01-01") {
    // One full day at 15 min: with the default start the partition keeps a
    // whole day, while a 01:00 start leaves less than a day after alignment.
    std::vector<double> values(96, 1.0);
    values[10] = 3.0;

    ProfileGuard at_default;
    REQUIRE(nluq_profile_create(values.data(), values.size(), 0.25, nullptr, &at_default.p) ==
            NLUQ_OK);
    StringGuard payload;
    REQUIRE(nluq_basefree_metrics_json(at_default.p, nullptr, &payload.s) == NLUQ_OK);
    const json doc = parse_payload(payload);
    CHECK(doc.at("days").get<int>() == 1);

    ProfileGuard at_one;
    REQUIRE(nluq_profile_create(values.data(), values.size(), 0.25, "2022-01-01T01:00:00",
                                &at_one.p) == NLUQ_OK);
    StringGuard none;
    CHECK(nluq_basefree_metrics_json(at_one.p, nullptr, &none.s) == NLUQ_ERR_EMPTY_INPUT);
}

TEST_CASE("CSV loading surfaces parse and io failures as distinct codes") {
    const auto dir = scratch_dir();

    const auto good = dir / "capi_good.csv";
    write_file(good, "timestamp,power_kw\n"
                     "2022-01-01T00:00:00,1\n"
                     "2022-01-01T00:15:00,2\n"
                     "2022-01-01T00:30:00,3\n");
    ProfileGuard profile;
    REQUIRE(nluq_profile_load_csv(good.string().c_str(), &profile.p) == NLUQ_OK);
    CHECK(nluq_profile_count(profile.p) == 3);
    CHECK(nluq_profile_dt_hours(profile.p) == doctest::Approx(0.25));

    nluq_profile* out = nullptr;
    CHECK(nluq_profile_load_csv((dir / "capi_missing.csv").string().c_str(), &out) == NLUQ_ERR_IO);

    const auto bad_value = dir / "capi_bad_value.csv";
    write_file(bad_value, "2022-01-01T00:00:00,1\n2022-01-01T00:15:00,watts\n");
    CHECK(nluq_profile_load_csv(bad_value.string().c_str(), &out) == NLUQ_ERR_PARSE);
    CHECK(std::string(nluq_last_error()).find(":2:") != std::string::npos);

    const auto gap = dir / "capi_gap.csv";
    write_file(gap, "2022-01-01T00:00:00,1\n"
                    "2022-01-01T00:15:00,2\n"
                    "2022-01-01T00:45:00,3\n");
    CHECK(nluq_profile_load_csv(gap.string().c_str(), &out) == NLUQ_ERR_PARSE);
    CHECK(nluq_profile_load_csv(nullptr, &out) == NLUQ_ERR_INVALID_ARGUMENT);
}

TEST_CASE("resampling through the C API matches block means") {
    const std::vector<double> values{1.0, 3.0, 5.0, 7.0};
    ProfileGuard fine;
    REQUIRE(nluq_profile_create(values.data(), values.size(), 0.25, nullptr, &fine.p) == NLUQ_OK);

    ProfileGuard coarse;
    REQUIRE(nluq_profile_resample(fine.p, 0.5, &coarse.p) == NLUQ_OK);
    CHECK(nluq_profile_count(coarse.p) == 2);
    CHECK(nluq_profile_dt_hours(coarse.p) == doctest::Approx(0.5));
    double out[2] = {0.0, 0.0};
    REQUIRE(nluq_profile_values(coarse.p, out, 2) == NLUQ_OK);
    CHECK(out[0] == 2.0);
    CHECK(out[1] == 6.0);

    nluq_profile* bad = nullptr;
    CHECK(nluq_profile_resample(fine.p, 0.4, &bad) == NLUQ_ERR_RESOLUTION);
    CHECK(nluq_profile_resample(nullptr, 0.5, &bad) == NLUQ_ERR_INVALID_ARGUMENT);
}

TEST_CASE("baseline-free metrics JSON carries the advertised schema and values") {
    // One six-hour-resolution day whose metrics are easy to pin by hand.
    const std::vector<double> values{0.0, 0.0, 1.0, 3.0};
    ProfileGuard profile;
    REQUIRE(nluq_profile_create(values.data(), values.size(), 6.0, nullptr, &profile.p) ==
            NLUQ_OK);

    StringGuard payload;
    REQUIRE(nluq_basefree_metrics_json(profile.p, R"({"bins":{"per_day":4}})", &payload.s) ==
            NLUQ_OK);
    const json doc = parse_payload(payload);
    CHECK(doc.at("schema").get<std::string>() == "netload-uq/basefree/v1");
    CHECK(doc.at("days").get<int>() == 1);
    const json& metrics = doc.at("metrics");
    CHECK(metrics.at("c_annual_kwh").get<double>() == 24.0);
    CHECK(metrics.at("c_min_kw").get<double>() == 0.0);
    CHECK(metrics.at("c_max_kw").get<double>() == 3.0);
    CHECK(metrics.at("ramp_kw").get<double>() == 1.0);
    // Masses 1/2, 1/4, 0, 1/4 over four bins.
    CHECK(metrics.at("entropy_bits").get<double>() == doctest::Approx(1.5));
    CHECK(doc.at("diagnostics").at("moments_defined").get<bool>());
}

TEST_CASE("constant profiles omit the undefined moment metrics") {
    const std::vector<double> values{2.0, 2.0, 2.0, 2.0};
    ProfileGuard profile;
    REQUIRE(nluq_profile_create(values.data(), values.size(), 6.0, nullptr, &profile.p) ==
            NLUQ_OK);

    StringGuard payload;
    REQUIRE(nluq_basefree_metrics_json(profile.p, nullptr, &payload.s) == NLUQ_OK);
    const json doc = parse_payload(payload);
    CHECK_FALSE(doc.at("metrics").contains("skew"));
    CHECK_FALSE(doc.at("metrics").contains("kurt_excess"));
    CHECK(doc.at("metrics").at("sigma_kw").get<double>() == 0.0);
    CHECK_FALSE(doc.at("diagnostics").at("moments_defined").get<bool>());
    CHECK(doc.at("diagnostics").at("degenerate_days").get<int>() == 1);
}

TEST_CASE("metric options JSON is validated strictly") {
    const std::vector<double> values{0.0, 1.0, 2.0, 3.0};
    ProfileGuard profile;
    REQUIRE(nluq_profile_create(values.data(), values.size(), 6.0, nullptr, &profile.p) ==
            NLUQ_OK);

    StringGuard payload;
    CHECK(nluq_basefree_metrics_json(profile.p, R"({"foo":1})", &payload.s) == NLUQ_ERR_CONFIG);
    CHECK(std::string(nluq_last_error()).find("unknown key `foo`") != std::string::npos);
    CHECK(nluq_basefree_metrics_json(profile.p, R"({"bins":{"depth":3}})", &payload.s) ==
          NLUQ_ERR_CONFIG);
    CHECK(nluq_basefree_metrics_json(profile.p, R"({"bins":{"shared":0}})", &payload.s) ==
          NLUQ_ERR_CONFIG);
    CHECK(nluq_basefree_metrics_json(profile.p, R"({"kld":{"epsilon":-1.0}})", &payload.s) ==
          NLUQ_ERR_CONFIG);
    CHECK(nluq_basefree_metrics_json(profile.p, "[1,2]", &payload.s) == NLUQ_ERR_CONFIG);
    CHECK(nluq_basefree_metrics_json(profile.p, "{not json", &payload.s) == NLUQ_ERR_CONFIG);
}

TEST_CASE("relative metrics of a profile against itself are all zero") {
    const std::vector<double> values{0.5, 1.25, 2.0, 0.75};
    ProfileGuard profile;
    REQUIRE(nluq_profile_create(values.data(), values.size(), 6.0, nullptr, &profile.p) ==
            NLUQ_OK);

    StringGuard payload;
    REQUIRE(nluq_relative_metrics_json(profile.p, profile.p, nullptr, &payload.s) == NLUQ_OK);
    const json doc = parse_payload(payload);
    CHECK(doc.at("schema").get<std::string>() == "netload-uq/metric-report/v1");
    CHECK(doc.at("config_hash").get<std::string>().empty());
    const json& metrics = doc.at("report").at("metrics");
    CHECK(metrics.at("kld_bits").get<double>() == 0.0);
    CHECK(metrics.at("tvd").get<double>() == 0.0);
    CHECK(metrics.at("wasserstein_kw").get<double>() == 0.0);
    CHECK(metrics.at("mae_kw").get<double>() == 0.0);
    CHECK(metrics.at("rmse_kw").get<double>() == 0.0);
}

TEST_CASE("an undefined divergence is reported, not fatal") {
    // The base has mass in a bin where the net has none, so the strict
    // divergence is undefined; the report flags it instead of failing.
    const std::vector<double> base_values{0.0, 0.0, 2.0, 2.0};
    const std::vector<double> net_values{0.0, 0.4, 0.0, 0.4};
    ProfileGuard base;
    ProfileGuard net;
    REQUIRE(nluq_profile_create(base_values.data(), base_values.size(), 6.0, nullptr, &base.p) ==
            NLUQ_OK);
    REQUIRE(nluq_profile_create(net_values.data(), net_values.size(), 6.0, nullptr, &net.p) ==
            NLUQ_OK);

    StringGuard strict;
    REQUIRE(nluq_relative_metrics_json(base.p, net.p, R"({"bins":{"shared":2}})", &strict.s) ==
            NLUQ_OK);
    const json report = parse_payload(strict).at("report");
    CHECK_FALSE(report.at("metrics").contains("kld_bits"));
    const auto undefined = report.at("undefined").get<std::vector<std::string>>();
    CHECK(std::find(undefined.begin(), undefined.end(), "kld_bits") != undefined.end());
    CHECK(report.at("diagnostics").at("kld").at("problem_bins").get<int>() >= 1);

    StringGuard smoothed;
    REQUIRE(nluq_relative_metrics_json(base.p, net.p,
                                       R"({"bins":{"shared":2},"kld":{"smoothing":true}})",
                                       &smoothed.s) == NLUQ_OK);
    const json report2 = parse_payload(smoothed).at("report");
    REQUIRE(report2.at("metrics").contains("kld_bits"));
    CHECK(std::isfinite(report2.at("metrics").at("kld_bits").get<double>()));
}

TEST_CASE("mismatched windows are rejected with the mismatch status") {
    const std::vector<double> one_day{1.0, 2.0, 3.0, 4.0};
    const std::vector<double> two_days{1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0};
    ProfileGuard base;
    ProfileGuard net;
    REQUIRE(nluq_profile_create(one_day.data(), one_day.size(), 6.0, nullptr, &base.p) == NLUQ_OK);
    REQUIRE(nluq_profile_create(two_days.data(), two_days.size(), 6.0, nullptr, &net.p) ==
            NLUQ_OK);

    StringGuard payload;
    CHECK(nluq_relative_metrics_json(base.p, net.p, nullptr, &payload.s) == NLUQ_ERR_MISMATCH);
    CHECK(std::string(nluq_last_error()).find("disagree in shape") != std::string::npos);
}

TEST_CASE("nluq_run executes a pipeline command with overrides applied") {
    const auto dir = scratch_dir() / "capi_run";
    std::filesystem::create_directories(dir);

    // Two days of 15-min base data with a mild daily shape.
    std::string csv = "timestamp,power_kw\n";
    for (int i = 0; i < 192; ++i) {
        const int day = 1 + i / 96;
        const int step = i % 96;
        const int hh = step / 4;
        const int mm = (step % 4) * 15;
        char stamp[32];
        std::snprintf(stamp, sizeof stamp, "2022-01-%02dT%02d:%02d:00", day, hh, mm);
        const double kw = 1.0 + 0.5 * std::sin(2.0 * 3.14159265358979 * step / 96.0);
        csv += std::string(stamp) + "," + std::to_string(kw) + "\n";
    }
    write_file(dir / "base.csv", csv);

    json cfg;
    cfg["inputs"]["base"] = (dir / "base.csv").string();
    cfg["levels"]["pv_kwp"] = json::array({0.0});
    cfg["levels"]["ev_kw"] = json::array({0.0, 2.0});
    cfg["output"]["dir"] = (dir / "unused_out").string();
    write_file(dir / "config.json", cfg.dump(2) + "\n");

    const std::string out_dir = (dir / "override_out").string();
    const uint64_t seed = 777;
    nluq_run_options options{out_dir.c_str(), &seed, 2};
    REQUIRE(nluq_run("metrics", (dir / "config.json").string().c_str(), &options) == NLUQ_OK);

    // The override directory receives the outputs; the config one stays unused.
    CHECK_FALSE(std::filesystem::exists(dir / "unused_out"));
    const auto metrics_path = std::filesystem::path(out_dir) / "metrics.json";
    REQUIRE(std::filesystem::exists(metrics_path));
    std::ifstream in(metrics_path);
    const json doc = json::parse(in);
    CHECK(doc.at("schema").get<std::string>() == "netload-uq/metrics/v1");
    REQUIRE(doc.at("reports").size() == 2);
    CHECK(doc.at("reports").at(0).at("scenario").at("seed").get<uint64_t>() == 777);

    CHECK(nluq_run("explode", (dir / "config.json").string().c_str(), nullptr) ==
          NLUQ_ERR_INVALID_ARGUMENT);
    CHECK(nluq_run("metrics", (dir / "no_such_config.json").string().c_str(), nullptr) ==
          NLUQ_ERR_IO);
    CHECK(nluq_run(nullptr, (dir / "config.json").string().c_str(), nullptr) ==
          NLUQ_ERR_INVALID_ARGUMENT);

    write_file(dir / "bad_config.json", R"({"inputs": {"base": "x.csv"}, "surprise": 1})");
    CHECK(nluq_run("metrics", (dir / "bad_config.json").string().c_str(), nullptr) ==
          NLUQ_ERR_CONFIG);
    CHECK(std::string(nluq_last_error()).find("surprise") != std::string::npos);
}
