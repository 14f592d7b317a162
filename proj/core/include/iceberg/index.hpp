#pragma once

#include "iceberg/capability.hpp"
#include "iceberg/econdata.hpp"
#include "iceberg/taxonomy.hpp"

#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace iceberg {

struct ExposureScore {
    std::string occupation;
    double value; // [0, 1]: wage-value fraction of skills AI can perform
};

/// Named occupation filter: full codes and/or 2-digit major-group prefixes.
/// The reserved name "all" matches every occupation.
class ScopeFilter {
public:
    static ScopeFilter all();
    static ScopeFilter named(std::string name, std::span<const std::string> codes_or_prefixes);

    const std::string& name() const { return name_; }
    bool is_all() const { return all_; }
    bool matches(std::string_view occupation_code) const;

private:
    std::string name_;
    bool all_ = false;
    std::set<std::string, std::less<>> codes_;
    std::set<std::string, std::less<>> prefixes_;
};

/// Loads a scope CSV with header `scope_name,occupation_code_or_prefix`.
/// The result always carries the implicit "all" scope; a file may not
/// redefine it.
std::map<std::string, ScopeFilter> load_scopes(const std::filesystem::path& path);

/// exposure(o) = sum_s w_s * a_s / sum_s w_s over the skills required by o.
/// An occupation whose total weight is zero gets exposure 0 (recorded as a
/// warning by the bulk variant below).
ExposureScore occupation_exposure(const SkillRequirementMatrix& matrix,
                                  const AutomatabilityMap& automatability,
                                  std::string_view occupation_code,
                                  const WeightPolicy& policy);

/// Exposures for every occupation, sorted by code. Computed nationally once;
/// regional variation enters only through employment weights.
class ExposureSet {
public:
    ExposureSet() = default;
    ExposureSet(std::vector<ExposureScore> scores, std::vector<std::string> zero_weight);

    const std::vector<ExposureScore>& scores() const { return scores_; }
    /// Occupations whose total skill weight was zero (exposure forced to 0).
    const std::vector<std::string>& zero_weight_occupations() const { return zero_weight_; }

    bool covers(std::string_view occupation_code) const;
    /// Throws InputError naming the occupation when it is not covered.
    double value_of(std::string_view occupation_code) const;

private:
    std::vector<ExposureScore> scores_;
    std::vector<std::string> zero_weight_;
    std::map<std::string, double, std::less<>> by_code_;
};

ExposureSet compute_exposures(const SkillRequirementMatrix& matrix,
                              const AutomatabilityMap& automatability,
                              const WeightPolicy& policy, int workers = 1);

struct RegionalIndex {
    RegionScope region;
    std::string scope;         // ScopeFilter name
    double index;              // exposed_wage_value / wage_base, in [0, 1]
    double exposed_wage_value; // dollars
    double wage_base;          // dollars, over ALL occupations in the region
};

/// Wage-weighted index for one region. The numerator is restricted to the
/// scope filter; the denominator is always the region's full wage base, so
/// a technology scope yields the Surface Index and "all" the Iceberg Index.
RegionalIndex regional_index(const ExposureSet& exposures, const EmploymentTable& employment,
                             const ScopeFilter& scope, const RegionScope& region);

/// Indices for every county in the table, sorted by FIPS. Equivalent to
/// calling regional_index per county, but groups records in one pass and may
/// run counties in parallel (bit-stable for any worker count).
std::vector<RegionalIndex> county_indices(const ExposureSet& exposures,
                                          const EmploymentTable& employment,
                                          const ScopeFilter& scope, int workers = 1);

/// Sums children into a parent region: exposed value and wage base add,
/// the index is recomputed from the sums (never averaged). Children are
/// accumulated in sorted region order regardless of input order.
RegionalIndex aggregate(std::span<const RegionalIndex> children, const RegionScope& parent);

/// Iceberg-minus-Surface gap for one region, as an index fraction.
double automation_surprise(const RegionalIndex& surface, const RegionalIndex& iceberg);

} // namespace iceberg
