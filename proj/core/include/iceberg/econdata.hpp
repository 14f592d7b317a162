#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace iceberg {

/// county FIPS (5 digits) -> two-letter state code.
class Geography {
public:
    const std::string& state_of(std::string_view county_fips) const;
    bool has_county(std::string_view county_fips) const;

    /// Counties sorted by FIPS.
    const std::map<std::string, std::string>& counties() const { return counties_; }
    /// Distinct state codes, sorted.
    std::vector<std::string> states() const;

private:
    friend Geography load_geography(const std::filesystem::path&);
    std::map<std::string, std::string> counties_;
};

/// Loads a geography CSV with header `county_fips,state`.
Geography load_geography(const std::filesystem::path& path);

struct EmploymentRecord {
    std::string occupation;
    std::string county_fips;
    std::int64_t employment; // workers, >= 0
    double median_wage;      // annual dollars per worker, >= 0

    bool operator==(const EmploymentRecord&) const = default;
};

/// Employment and wages per (occupation, county), with the geography that
/// resolves counties to states. Immutable after load.
class EmploymentTable {
public:
    /// Records sorted by (occupation code, county FIPS); this order is the
    /// deterministic summation order used everywhere downstream.
    std::span<const EmploymentRecord> records() const { return records_; }
    const Geography& geography() const { return geography_; }

    /// Sum of employment over all records.
    std::int64_t total_employment() const;

    bool operator==(const EmploymentTable& other) const {
        return records_ == other.records_;
    }

private:
    friend EmploymentTable load_employment(const std::filesystem::path&, Geography);
    std::vector<EmploymentRecord> records_;
    Geography geography_;
};

/// Loads an employment CSV with header
///   occupation_code,county_fips,employment,median_wage
/// Every county must resolve through the geography; zero-employment records
/// are retained (they weight nothing), negative values are rejected.
EmploymentTable load_employment(const std::filesystem::path& path, Geography geography);

/// Re-serializes a table in the exact load format (round-trip stable).
void write_employment(const EmploymentTable& table, const std::filesystem::path& path);

struct StateMetrics {
    std::string state;
    double gdp;
    double per_capita_income;
    double unemployment_rate; // [0, 1]

    bool operator==(const StateMetrics&) const = default;
};

/// Loads a state-metrics CSV with header
///   state,gdp,per_capita_income,unemployment_rate
std::vector<StateMetrics> load_state_metrics(const std::filesystem::path& path);

/// One county, one state, or the national total.
struct RegionScope {
    enum class Level { County, State, National };

    Level level = Level::National;
    std::string id; // FIPS for County, state code for State, empty for National

    static RegionScope county(std::string fips) { return {Level::County, std::move(fips)}; }
    static RegionScope state(std::string code) { return {Level::State, std::move(code)}; }
    static RegionScope national() { return {Level::National, {}}; }

    bool contains(std::string_view county_fips, const Geography& geography) const;
    /// Stable report key: FIPS, state code, or "national".
    std::string key() const;
    std::string_view level_name() const;

    bool operator==(const RegionScope&) const = default;
    auto operator<=>(const RegionScope&) const = default;
};

/// Total wage value (employment x median wage) of all records in scope,
/// accumulated in record order with compensated summation. Errors when the
/// scope matches no record at all.
double wage_base(const EmploymentTable& table, const RegionScope& scope);

} // namespace iceberg
