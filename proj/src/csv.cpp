#include "netloaduq/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace nluq {

namespace {

std::string strip(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail_line(ErrorCode code, const std::filesystem::path& path, std::size_t line,
                            const std::string& what) {
    fail(code, path.string() + ":" + std::to_string(line) + ": " + what);
}

} // namespace

TimeSeriesProfile load_profile_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());

    TimeSeriesProfile profile;
    std::int64_t prev_epoch = 0;
    std::int64_t dt_s = 0;
    std::string line;
    std::size_t line_no = 0;
    bool header_checked = false;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string trimmed = strip(line);
        if (trimmed.empty()) continue;
        if (!header_checked) {
            header_checked = true;
            if (trimmed.rfind("timestamp", 0) == 0) continue; // optional header row
        }

        const auto comma = trimmed.find(',');
        if (comma == std::string::npos)
            fail_line(ErrorCode::ParseError, path, line_no, "expected `timestamp,power_kw`");
        const std::string stamp = strip(trimmed.substr(0, comma));
        const std::string value_text = strip(trimmed.substr(comma + 1));

        CivilTime t;
        try {
            t = parse_iso8601(stamp);
        } catch (const Error& e) {
            fail_line(ErrorCode::ParseError, path, line_no, e.what());
        }

        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(value_text.c_str(), &end);
        if (end == value_text.c_str() || *end != '\0' || errno == ERANGE)
            fail_line(ErrorCode::ParseError, path, line_no,
                      "cannot parse power value `" + value_text + "`");
        if (!std::isfinite(v))
            fail_line(ErrorCode::NonFiniteValue, path, line_no, "power value is not finite");

        const std::int64_t epoch = to_epoch_seconds(t);
        if (profile.values.empty()) {
            profile.start = t;
        } else if (profile.values.size() == 1) {
            dt_s = epoch - prev_epoch;
            if (dt_s <= 0)
                fail_line(ErrorCode::NonUniformSpacing, path, line_no,
                          "timestamps must strictly increase");
        } else if (epoch - prev_epoch != dt_s) {
            fail_line(ErrorCode::NonUniformSpacing, path, line_no,
                      "expected step of " + std::to_string(dt_s) + " s, got " +
                          std::to_string(epoch - prev_epoch) + " s");
        }
        prev_epoch = epoch;
        profile.values.push_back(v);
    }
    if (in.bad()) fail(ErrorCode::IoError, "read error on " + path.string());
    if (profile.values.size() < 2)
        fail(ErrorCode::ParseError,
             path.string() + ": need at least two rows to infer the sampling interval");

    profile.dt_hours = static_cast<double>(dt_s) / 3600.0;
    profile.validate();
    return profile;
}

void write_profile_csv(const std::filesystem::path& path, const TimeSeriesProfile& profile) {
    profile.validate();
    std::ofstream out(path);
    if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
    out << "timestamp,power_kw\n";
    const std::int64_t start = to_epoch_seconds(profile.start);
    const std::int64_t dt_s = profile.dt_seconds();
    std::ostringstream value;
    value.precision(17);
    for (std::size_t i = 0; i < profile.size(); ++i) {
        value.str("");
        value << profile.values[i];
        out << format_iso8601(from_epoch_seconds(start + static_cast<std::int64_t>(i) * dt_s))
            << ',' << value.str() << '\n';
    }
    if (!out) fail(ErrorCode::IoError, "write error on " + path.string());
}

} // namespace nluq
