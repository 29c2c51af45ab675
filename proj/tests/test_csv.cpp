#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "helpers.hpp"
#include "netloaduq/csv.hpp"

using namespace nluq;
using testutil::profile;

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "nluq_csv_tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
    const fs::path p = scratch_dir() / name;
    std::ofstream out(p);
    out << text;
    return p;
}

template <typename Fn>
std::string error_message(ErrorCode expected, Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        CHECK(e.code() == expected);
        return e.what();
    }
    FAIL("expected an Error");
    return {};
}

} // namespace

TEST_CASE("csv: minimal two-row file") {
    const fs::path p = write_file("minimal.csv",
                                  "2022-01-01T00:00:00,1.5\n"
                                  "2022-01-01T00:15:00,2.5\n");
    const TimeSeriesProfile prof = load_profile_csv(p);
    CHECK(prof.size() == 2);
    CHECK(prof.dt_hours == doctest::Approx(0.25));
    CHECK(prof.values[0] == 1.5);
    CHECK(prof.values[1] == 2.5);
    CHECK((prof.start == CivilTime{2022, 1, 1, 0, 0, 0}));
}

TEST_CASE("csv: header row and blank lines are tolerated") {
    const fs::path p = write_file("header.csv",
                                  "timestamp,power_kw\n"
                                  "\n"
                                  "2022-06-01 12:00:00,3.0\n"
                                  "\n"
                                  "2022-06-01 13:00:00,4.0\n");
    const TimeSeriesProfile prof = load_profile_csv(p);
    CHECK(prof.size() == 2);
    CHECK(prof.dt_hours == doctest::Approx(1.0));
}

TEST_CASE("csv: a gap in the grid is rejected with its line number") {
    const fs::path p = write_file("gap.csv",
                                  "timestamp,power_kw\n"
                                  "2022-01-01T00:00:00,1\n"
                                  "2022-01-01T00:15:00,2\n"
                                  "2022-01-01T01:00:00,3\n");
    const std::string msg =
        error_message(ErrorCode::NonUniformSpacing, [&] { (void)load_profile_csv(p); });
    CHECK(msg.find(":4:") != std::string::npos);
    CHECK(msg.find("900") != std::string::npos);  // expected step
    CHECK(msg.find("2700") != std::string::npos); // actual step
}

TEST_CASE("csv: duplicate timestamps are rejected") {
    const fs::path immediate = write_file("dup1.csv",
                                          "2022-01-01T00:00:00,1\n"
                                          "2022-01-01T00:00:00,2\n");
    const std::string msg = error_message(ErrorCode::NonUniformSpacing,
                                          [&] { (void)load_profile_csv(immediate); });
    CHECK(msg.find("strictly increase") != std::string::npos);

    const fs::path later = write_file("dup2.csv",
                                      "2022-01-01T00:00:00,1\n"
                                      "2022-01-01T00:15:00,2\n"
                                      "2022-01-01T00:15:00,3\n");
    error_message(ErrorCode::NonUniformSpacing, [&] { (void)load_profile_csv(later); });
}

TEST_CASE("csv: backwards timestamps are rejected") {
    const fs::path p = write_file("backwards.csv",
                                  "2022-01-01T01:00:00,1\n"
                                  "2022-01-01T00:00:00,2\n");
    error_message(ErrorCode::NonUniformSpacing, [&] { (void)load_profile_csv(p); });
}

TEST_CASE("csv: non-finite power values are rejected") {
    const fs::path p = write_file("nan.csv",
                                  "2022-01-01T00:00:00,1\n"
                                  "2022-01-01T00:15:00,NaN\n");
    const std::string msg =
        error_message(ErrorCode::NonFiniteValue, [&] { (void)load_profile_csv(p); });
    CHECK(msg.find(":2:") != std::string::npos);

    const fs::path inf = write_file("inf.csv",
                                    "2022-01-01T00:00:00,inf\n"
                                    "2022-01-01T00:15:00,2\n");
    error_message(ErrorCode::NonFiniteValue, [&] { (void)load_profile_csv(inf); });
}

TEST_CASE("csv: malformed rows are rejected with their line number") {
    const fs::path bad_value = write_file("badvalue.csv",
                                          "2022-01-01T00:00:00,1\n"
                                          "2022-01-01T00:15:00,watts\n");
    std::string msg = error_message(ErrorCode::ParseError, [&] { (void)load_profile_csv(bad_value); });
    CHECK(msg.find(":2:") != std::string::npos);
    CHECK(msg.find("watts") != std::string::npos);

    const fs::path bad_stamp = write_file("badstamp.csv",
                                          "2022-01-01T00:00:00,1\n"
                                          "yesterday,2\n");
    msg = error_message(ErrorCode::ParseError, [&] { (void)load_profile_csv(bad_stamp); });
    CHECK(msg.find(":2:") != std::string::npos);

    const fs::path no_comma = write_file("nocomma.csv", "2022-01-01T00:00:00 1\n");
    error_message(ErrorCode::ParseError, [&] { (void)load_profile_csv(no_comma); });
}

TEST_CASE("csv: fewer than two rows cannot define an interval") {
    const fs::path one = write_file("onerow.csv", "2022-01-01T00:00:00,1\n");
    error_message(ErrorCode::ParseError, [&] { (void)load_profile_csv(one); });
    const fs::path empty = write_file("empty.csv", "timestamp,power_kw\n");
    error_message(ErrorCode::ParseError, [&] { (void)load_profile_csv(empty); });
}

TEST_CASE("csv: missing file") {
    error_message(ErrorCode::IoError,
                  [] { (void)load_profile_csv(scratch_dir() / "does_not_exist.csv"); });
}

TEST_CASE("csv: write/load round trip is lossless") {
    std::mt19937_64 gen(81);
    const auto v = testutil::random_values(gen, 200, -3.0, 9.0);
    const TimeSeriesProfile original = profile(v, 0.25, CivilTime{2022, 3, 4, 5, 30, 0});
    const fs::path p = scratch_dir() / "roundtrip.csv";
    write_profile_csv(p, original);
    const TimeSeriesProfile loaded = load_profile_csv(p);
    REQUIRE(loaded.size() == original.size());
    CHECK(loaded.dt_hours == original.dt_hours);
    CHECK((loaded.start == original.start));
    for (std::size_t i = 0; i < loaded.size(); ++i)
        CHECK(loaded.values[i] == original.values[i]); // bit-exact round trip
}

TEST_CASE("csv: written files carry the header") {
    const fs::path p = scratch_dir() / "withheader.csv";
    write_profile_csv(p, profile({1.0, 2.0}, 0.5));
    std::ifstream in(p);
    std::string first;
    std::getline(in, first);
    CHECK(first == "timestamp,power_kw");
    std::string second;
    std::getline(in, second);
    CHECK(second == "2022-01-01T00:00:00,1");
}
