#pragma once

// Monthly disengagement reports and their expansion into the inter-failure
// mileage sequences that reliability growth models consume.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace reliab::data {

struct MonthlyRecord {
    int month_index = 0;  // months since the first record
    double miles = 0.0;
    std::uint64_t disengagements = 0;
    std::string label;    // month as written in the source, e.g. "2015-01"
};

struct FailureHistory {
    std::vector<double> interfailure_miles;
    double total_miles = 0.0;  // exposure, including the open gap after the last event
    std::uint64_t seed = 0;

    std::size_t size() const noexcept { return interfailure_miles.size(); }

    // Miles driven after the last event without a further failure.
    double censored_tail() const noexcept;

    // Cumulative miles at each event.
    std::vector<double> failure_times() const;

    // First `count` gaps, ending at the count-th event (no open tail).
    FailureHistory prefix(std::size_t count) const;

    // Build from gaps alone; total miles = sum of gaps.
    static FailureHistory from_gaps(std::vector<double> gaps, std::uint64_t seed = 0);
};

// Header `month,miles,disengagements`. Month keys are `YYYY-MM` or a plain
// integer and must strictly increase. Throws ParseError (with the line
// number) or NonMonotoneMonths.
std::vector<MonthlyRecord> parse_monthly_csv(std::istream& in);
std::vector<MonthlyRecord> load_monthly_csv(const std::string& path);

// Places each month's events as sorted uniform draws over that month's
// miles, concatenates months with carried offsets and differences the
// event positions. Deterministic for a fixed seed.
FailureHistory expand_to_interfailure(std::span<const MonthlyRecord> records, std::uint64_t seed);

// `index,interfailure_miles` with 1-based indices.
void write_history_csv(std::ostream& out, const FailureHistory& history);
FailureHistory read_history_csv(std::istream& in);

}  // namespace reliab::data
