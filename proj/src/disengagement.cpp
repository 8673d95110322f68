#include "reliab/disengagement.hpp"

#include "reliab/error.hpp"
#include "reliab/random.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

namespace reliab::data {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            fields.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return fields;
}

template <class T>
std::optional<T> parse_number(std::string_view s) {
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

// Absolute month ordinal for "YYYY-MM", or the integer itself.
std::optional<long> month_ordinal(std::string_view key) {
    if (const auto dash = key.find('-'); dash != std::string_view::npos && dash > 0) {
        const auto year = parse_number<long>(key.substr(0, dash));
        const auto month = parse_number<long>(key.substr(dash + 1));
        if (!year || !month || *month < 1 || *month > 12) return std::nullopt;
        return *year * 12 + (*month - 1);
    }
    return parse_number<long>(key);
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& what) {
    fail(ErrorCode::ParseError, fmt::format("line {}: {}", line_no, what));
}

}  // namespace

double FailureHistory::censored_tail() const noexcept {
    const double used = std::accumulate(interfailure_miles.begin(), interfailure_miles.end(), 0.0);
    return std::max(0.0, total_miles - used);
}

std::vector<double> FailureHistory::failure_times() const {
    std::vector<double> times(interfailure_miles.size());
    std::partial_sum(interfailure_miles.begin(), interfailure_miles.end(), times.begin());
    return times;
}

FailureHistory FailureHistory::prefix(std::size_t count) const {
    count = std::min(count, interfailure_miles.size());
    std::vector<double> gaps(interfailure_miles.begin(),
                             interfailure_miles.begin() + static_cast<std::ptrdiff_t>(count));
    return from_gaps(std::move(gaps), seed);
}

FailureHistory FailureHistory::from_gaps(std::vector<double> gaps, std::uint64_t seed) {
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        if (!(gaps[i] > 0.0) || !std::isfinite(gaps[i])) {
            fail(ErrorCode::InvalidArgument,
                 fmt::format("inter-failure miles must be positive and finite, gap {} is {}", i + 1, gaps[i]));
        }
    }
    const double total = std::accumulate(gaps.begin(), gaps.end(), 0.0);
    return FailureHistory{std::move(gaps), total, seed};
}

std::vector<MonthlyRecord> parse_monthly_csv(std::istream& in) {
    std::vector<MonthlyRecord> records;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::optional<long> first_ordinal;
    std::optional<long> previous_ordinal;

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
        if (view.empty()) continue;
        const auto fields = split_fields(view);
        if (!header_seen) {
            if (fields.size() != 3 || fields[0] != "month" || fields[1] != "miles" ||
                fields[2] != "disengagements") {
                parse_error(line_no, "expected header 'month,miles,disengagements'");
            }
            header_seen = true;
            continue;
        }
        if (fields.size() != 3) {
            parse_error(line_no, fmt::format("expected 3 fields, found {}", fields.size()));
        }
        const auto ordinal = month_ordinal(fields[0]);
        if (!ordinal) parse_error(line_no, fmt::format("bad month '{}'", fields[0]));
        const auto miles = parse_number<double>(fields[1]);
        if (!miles || !std::isfinite(*miles) || *miles < 0.0) {
            parse_error(line_no, fmt::format("miles must be a nonnegative number, got '{}'", fields[1]));
        }
        const auto count = parse_number<std::uint64_t>(fields[2]);
        if (!count) {
            parse_error(line_no,
                        fmt::format("disengagements must be a nonnegative integer, got '{}'", fields[2]));
        }
        if (*count > 0 && *miles <= 0.0) {
            parse_error(line_no, "disengagements reported over zero miles");
        }
        if (previous_ordinal && *ordinal <= *previous_ordinal) {
            fail(ErrorCode::NonMonotoneMonths,
                 fmt::format("line {}: month '{}' does not follow the previous month", line_no,
                             fields[0]));
        }
        if (!first_ordinal) first_ordinal = ordinal;
        previous_ordinal = ordinal;
        records.push_back(MonthlyRecord{static_cast<int>(*ordinal - *first_ordinal), *miles, *count,
                                        std::string(fields[0])});
    }
    if (!header_seen) parse_error(line_no + 1, "missing header");
    return records;
}

std::vector<MonthlyRecord> load_monthly_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, fmt::format("cannot open '{}'", path));
    return parse_monthly_csv(in);
}

FailureHistory expand_to_interfailure(std::span<const MonthlyRecord> records, std::uint64_t seed) {
    Rng rng(seed);
    FailureHistory history;
    history.seed = seed;
    double offset = 0.0;
    double last_event = 0.0;
    std::vector<double> positions;
    for (const MonthlyRecord& month : records) {
        if (month.disengagements > 0 && !(month.miles > 0.0)) {
            fail(ErrorCode::InvalidArgument,
                 fmt::format("month '{}' has disengagements but no miles", month.label));
        }
        positions.resize(month.disengagements);
        for (double& x : positions) x = month.miles * rng.uniform_open_left();
        std::sort(positions.begin(), positions.end());
        for (double x : positions) {
            const double event = offset + x;
            history.interfailure_miles.push_back(event - last_event);
            last_event = event;
        }
        offset += month.miles;
    }
    history.total_miles = offset;
    return history;
}

void write_history_csv(std::ostream& out, const FailureHistory& history) {
    out << "index,interfailure_miles\n";
    for (std::size_t i = 0; i < history.interfailure_miles.size(); ++i) {
        out << fmt::format("{},{}\n", i + 1, history.interfailure_miles[i]);
    }
}

FailureHistory read_history_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<double> gaps;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty()) continue;
        const auto fields = split_fields(view);
        if (!header_seen) {
            if (fields.size() != 2 || fields[0] != "index" || fields[1] != "interfailure_miles") {
                parse_error(line_no, "expected header 'index,interfailure_miles'");
            }
            header_seen = true;
            continue;
        }
        if (fields.size() != 2) parse_error(line_no, "expected 2 fields");
        if (parse_number<std::size_t>(fields[0]) != gaps.size() + 1) {
            parse_error(line_no, fmt::format("expected index {}, got '{}'", gaps.size() + 1, fields[0]));
        }
        const auto gap = parse_number<double>(fields[1]);
        if (!gap || !(*gap > 0.0) || !std::isfinite(*gap)) {
            parse_error(line_no, fmt::format("inter-failure miles must be positive, got '{}'", fields[1]));
        }
        gaps.push_back(*gap);
    }
    if (!header_seen) parse_error(line_no + 1, "missing header");
    return FailureHistory::from_gaps(std::move(gaps));
}

}  // namespace reliab::data
