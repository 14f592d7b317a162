#include "iceberg/econdata.hpp"

#include "iceberg/csv.hpp"
#include "iceberg/errors.hpp"
#include "iceberg/numeric.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

namespace iceberg {

namespace {

bool valid_fips(std::string_view fips) {
    return fips.size() == 5 &&
           std::all_of(fips.begin(), fips.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

} // namespace

const std::string& Geography::state_of(std::string_view county_fips) const {
    const auto it = counties_.find(std::string(county_fips));
    if (it == counties_.end()) {
        throw InputError("county FIPS '" + std::string(county_fips) +
                         "' is not in the geography file");
    }
    return it->second;
}

bool Geography::has_county(std::string_view county_fips) const {
    return counties_.contains(std::string(county_fips));
}

std::vector<std::string> Geography::states() const {
    std::set<std::string> unique;
    for (const auto& [fips, state] : counties_) {
        unique.insert(state);
    }
    return {unique.begin(), unique.end()};
}

Geography load_geography(const std::filesystem::path& path) {
    static constexpr std::array<std::string_view, 2> kHeader = {"county_fips", "state"};
    csv::Reader reader(path, kHeader);

    Geography geography;
    std::vector<std::string> row;
    while (reader.next(row)) {
        if (!valid_fips(row[0])) {
            reader.fail("county FIPS '" + row[0] + "' is not a 5-digit code");
        }
        if (row[1].size() != 2) {
            reader.fail("state '" + row[1] + "' is not a 2-letter code");
        }
        if (!geography.counties_.emplace(row[0], row[1]).second) {
            reader.fail("duplicate county FIPS '" + row[0] + "'");
        }
    }
    if (geography.counties_.empty()) {
        throw InputError(path.string() + ": geography file has no counties");
    }
    return geography;
}

std::int64_t EmploymentTable::total_employment() const {
    std::int64_t total = 0;
    for (const auto& record : records_) {
        total += record.employment;
    }
    return total;
}

EmploymentTable load_employment(const std::filesystem::path& path, Geography geography) {
    static constexpr std::array<std::string_view, 4> kHeader = {
        "occupation_code", "county_fips", "employment", "median_wage"};
    csv::Reader reader(path, kHeader);

    // Keyed by (occupation, FIPS): catches duplicates and fixes the order.
    std::map<std::pair<std::string, std::string>, EmploymentRecord> records;

    std::vector<std::string> row;
    while (reader.next(row)) {
        if (!geography.has_county(row[1])) {
            reader.fail("county FIPS '" + row[1] + "' cannot be resolved to a state");
        }
        const std::int64_t employment = reader.to_int(row[2], "employment");
        if (employment < 0) {
            reader.fail("employment " + row[2] + " for (" + row[0] + ", " + row[1] +
                        ") is negative");
        }
        const double wage = reader.to_double(row[3], "median_wage");
        if (wage < 0.0) {
            reader.fail("median_wage " + row[3] + " for (" + row[0] + ", " + row[1] +
                        ") is negative");
        }
        EmploymentRecord record{row[0], row[1], employment, wage};
        if (!records.emplace(std::make_pair(row[0], row[1]), std::move(record)).second) {
            reader.fail("duplicate record for (" + row[0] + ", " + row[1] + ")");
        }
    }
    if (records.empty()) {
        throw InputError(path.string() + ": employment file has no records");
    }

    EmploymentTable table;
    table.records_.reserve(records.size());
    for (auto& [key, record] : records) {
        table.records_.push_back(std::move(record));
    }
    table.geography_ = std::move(geography);
    return table;
}

void write_employment(const EmploymentTable& table, const std::filesystem::path& path) {
    static constexpr std::array<std::string_view, 4> kHeader = {
        "occupation_code", "county_fips", "employment", "median_wage"};
    csv::Writer writer(path, kHeader);
    for (const auto& record : table.records()) {
        const std::array<std::string, 4> fields = {
            record.occupation, record.county_fips,
            csv::format_int(record.employment), csv::format_double(record.median_wage)};
        writer.row(fields);
    }
}

std::vector<StateMetrics> load_state_metrics(const std::filesystem::path& path) {
    static constexpr std::array<std::string_view, 4> kHeader = {
        "state", "gdp", "per_capita_income", "unemployment_rate"};
    csv::Reader reader(path, kHeader);

    std::map<std::string, StateMetrics> metrics;
    std::vector<std::string> row;
    while (reader.next(row)) {
        if (row[0].size() != 2) {
            reader.fail("state '" + row[0] + "' is not a 2-letter code");
        }
        StateMetrics m{row[0], reader.to_double(row[1], "gdp"),
                       reader.to_double(row[2], "per_capita_income"),
                       reader.to_double(row[3], "unemployment_rate")};
        if (m.unemployment_rate < 0.0 || m.unemployment_rate > 1.0) {
            reader.fail("unemployment_rate " + row[3] + " for state " + row[0] +
                        " outside [0, 1]");
        }
        if (!metrics.emplace(m.state, std::move(m)).second) {
            reader.fail("duplicate state '" + row[0] + "'");
        }
    }

    std::vector<StateMetrics> out;
    out.reserve(metrics.size());
    for (auto& [state, m] : metrics) {
        out.push_back(std::move(m));
    }
    return out;
}

bool RegionScope::contains(std::string_view county_fips, const Geography& geography) const {
    switch (level) {
    case Level::County: return county_fips == id;
    case Level::State: return geography.state_of(county_fips) == id;
    case Level::National: return true;
    }
    throw InternalError("invalid RegionScope level");
}

std::string RegionScope::key() const {
    return level == Level::National ? "national" : id;
}

std::string_view RegionScope::level_name() const {
    switch (level) {
    case Level::County: return "county";
    case Level::State: return "state";
    case Level::National: return "national";
    }
    throw InternalError("invalid RegionScope level");
}

double wage_base(const EmploymentTable& table, const RegionScope& scope) {
    CompensatedSum sum;
    bool any = false;
    for (const auto& record : table.records()) {
        if (!scope.contains(record.county_fips, table.geography())) {
            continue;
        }
        any = true;
        sum.add(static_cast<double>(record.employment) * record.median_wage);
    }
    if (!any) {
        throw InputError("region scope '" + scope.key() +
                         "' matches no employment record; wage base would be empty");
    }
    return sum.value();
}

} // namespace iceberg
