#include "iceberg/index.hpp"

#include "iceberg/csv.hpp"
#include "iceberg/errors.hpp"
#include "iceberg/numeric.hpp"
#include "iceberg/parallel.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace iceberg {

namespace {

bool is_digits(std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool looks_like_code(std::string_view s) {
    return s.size() == 7 && s[2] == '-' && is_digits(s.substr(0, 2)) && is_digits(s.substr(3));
}

} // namespace

ScopeFilter ScopeFilter::all() {
    ScopeFilter filter;
    filter.name_ = "all";
    filter.all_ = true;
    return filter;
}

ScopeFilter ScopeFilter::named(std::string name, std::span<const std::string> codes_or_prefixes) {
    if (name == "all") {
        throw InputError("scope name 'all' is reserved for the unrestricted scope");
    }
    if (name.empty()) {
        throw InputError("scope name may not be empty");
    }
    if (codes_or_prefixes.empty()) {
        throw InputError("scope '" + name + "' has an empty predicate");
    }
    ScopeFilter filter;
    filter.name_ = std::move(name);
    for (const std::string& entry : codes_or_prefixes) {
        if (looks_like_code(entry)) {
            filter.codes_.insert(entry);
        } else if (entry.size() == 2 && is_digits(entry)) {
            filter.prefixes_.insert(entry);
        } else {
            throw InputError("scope '" + filter.name_ + "' entry '" + entry +
                             "' is neither an NN-NNNN code nor a 2-digit major group");
        }
    }
    return filter;
}

bool ScopeFilter::matches(std::string_view occupation_code) const {
    if (all_) {
        return true;
    }
    if (codes_.contains(occupation_code)) {
        return true;
    }
    return occupation_code.size() >= 2 && prefixes_.contains(occupation_code.substr(0, 2));
}

std::map<std::string, ScopeFilter> load_scopes(const std::filesystem::path& path) {
    static constexpr std::array<std::string_view, 2> kHeader = {
        "scope_name", "occupation_code_or_prefix"};
    csv::Reader reader(path, kHeader);

    std::map<std::string, std::vector<std::string>> entries;
    std::vector<std::string> row;
    while (reader.next(row)) {
        if (row[0] == "all") {
            reader.fail("scope name 'all' is reserved and may not appear in a scope file");
        }
        entries[row[0]].push_back(row[1]);
    }

    std::map<std::string, ScopeFilter> scopes;
    scopes.emplace("all", ScopeFilter::all());
    for (const auto& [name, predicate] : entries) {
        try {
            scopes.emplace(name, ScopeFilter::named(name, predicate));
        } catch (const InputError& e) {
            throw InputError(path.string() + ": " + e.what());
        }
    }
    return scopes;
}

ExposureScore occupation_exposure(const SkillRequirementMatrix& matrix,
                                  const AutomatabilityMap& automatability,
                                  std::string_view occupation_code,
                                  const WeightPolicy& policy) {
    const std::size_t occ = matrix.occupation_index(occupation_code);
    CompensatedSum weighted;
    CompensatedSum total;
    for (const auto& entry : matrix.requirements(occ)) {
        const double w = policy.weight(entry.importance, entry.level);
        total.add(w);
        weighted.add(w * automatability.score(matrix.skills()[entry.skill].id));
    }
    const double denominator = total.value();
    const double value = denominator > 0.0 ? weighted.value() / denominator : 0.0;
    return {std::string(occupation_code), value};
}

ExposureSet::ExposureSet(std::vector<ExposureScore> scores, std::vector<std::string> zero_weight)
    : scores_(std::move(scores)), zero_weight_(std::move(zero_weight)) {
    for (const auto& score : scores_) {
        by_code_.emplace(score.occupation, score.value);
    }
}

bool ExposureSet::covers(std::string_view occupation_code) const {
    return by_code_.find(occupation_code) != by_code_.end();
}

double ExposureSet::value_of(std::string_view occupation_code) const {
    const auto it = by_code_.find(occupation_code);
    if (it == by_code_.end()) {
        throw InputError("no exposure available for occupation '" +
                         std::string(occupation_code) + "'");
    }
    return it->second;
}

ExposureSet compute_exposures(const SkillRequirementMatrix& matrix,
                              const AutomatabilityMap& automatability,
                              const WeightPolicy& policy, int workers) {
    const auto& occupations = matrix.occupations();
    std::vector<ExposureScore> scores(occupations.size());
    parallel_for(occupations.size(), workers, [&](std::size_t i) {
        scores[i] = occupation_exposure(matrix, automatability, occupations[i].code, policy);
    });

    std::vector<std::string> zero_weight;
    for (std::size_t i = 0; i < occupations.size(); ++i) {
        CompensatedSum total;
        for (const auto& entry : matrix.requirements(i)) {
            total.add(policy.weight(entry.importance, entry.level));
        }
        if (total.value() <= 0.0) {
            zero_weight.push_back(occupations[i].code);
        }
    }
    return ExposureSet(std::move(scores), std::move(zero_weight));
}

namespace {

// Shared accumulation core so the single-region and bulk paths are
// bit-identical by construction.
RegionalIndex accumulate_region(const ExposureSet& exposures,
                                std::span<const EmploymentRecord* const> records,
                                const ScopeFilter& scope, const RegionScope& region) {
    CompensatedSum base;
    CompensatedSum exposed;
    for (const EmploymentRecord* record : records) {
        const double value = static_cast<double>(record->employment) * record->median_wage;
        base.add(value);
        if (scope.matches(record->occupation)) {
            exposed.add(exposures.value_of(record->occupation) * value);
        }
    }
    const double wage_base = base.value();
    if (wage_base <= 0.0) {
        throw InputError("region '" + region.key() + "' has a zero wage base");
    }
    const double exposed_value = exposed.value();
    return {region, scope.name(), exposed_value / wage_base, exposed_value, wage_base};
}

} // namespace

RegionalIndex regional_index(const ExposureSet& exposures, const EmploymentTable& employment,
                             const ScopeFilter& scope, const RegionScope& region) {
    std::vector<const EmploymentRecord*> records;
    for (const auto& record : employment.records()) {
        if (region.contains(record.county_fips, employment.geography())) {
            records.push_back(&record);
        }
    }
    if (records.empty()) {
        throw InputError("region scope '" + region.key() +
                         "' matches no employment record; wage base would be empty");
    }
    return accumulate_region(exposures, records, scope, region);
}

std::vector<RegionalIndex> county_indices(const ExposureSet& exposures,
                                          const EmploymentTable& employment,
                                          const ScopeFilter& scope, int workers) {
    // Group record pointers per county; table order is (occupation, FIPS), so
    // each county's list stays in occupation order, matching regional_index.
    std::map<std::string, std::vector<const EmploymentRecord*>> by_county;
    for (const auto& record : employment.records()) {
        by_county[record.county_fips].push_back(&record);
    }

    std::vector<std::pair<const std::string*, const std::vector<const EmploymentRecord*>*>> groups;
    groups.reserve(by_county.size());
    for (const auto& [fips, records] : by_county) {
        groups.emplace_back(&fips, &records);
    }

    std::vector<RegionalIndex> out(groups.size());
    parallel_for(groups.size(), workers, [&](std::size_t i) {
        out[i] = accumulate_region(exposures, *groups[i].second, scope,
                                   RegionScope::county(*groups[i].first));
    });
    return out;
}

RegionalIndex aggregate(std::span<const RegionalIndex> children, const RegionScope& parent) {
    if (children.empty()) {
        throw InputError("cannot aggregate an empty set of regional indices");
    }
    const std::string& scope = children.front().scope;
    for (const auto& child : children) {
        if (child.scope != scope) {
            throw InputError("cannot aggregate mixed scopes '" + scope + "' and '" +
                             child.scope + "'");
        }
    }

    std::vector<const RegionalIndex*> ordered;
    ordered.reserve(children.size());
    for (const auto& child : children) {
        ordered.push_back(&child);
    }
    std::sort(ordered.begin(), ordered.end(), [](const RegionalIndex* a, const RegionalIndex* b) {
        return a->region < b->region;
    });

    CompensatedSum exposed;
    CompensatedSum base;
    for (const RegionalIndex* child : ordered) {
        exposed.add(child->exposed_wage_value);
        base.add(child->wage_base);
    }
    const double wage_base = base.value();
    if (wage_base <= 0.0) {
        throw InputError("aggregated region '" + parent.key() + "' has a zero wage base");
    }
    const double exposed_value = exposed.value();
    return {parent, scope, exposed_value / wage_base, exposed_value, wage_base};
}

double automation_surprise(const RegionalIndex& surface, const RegionalIndex& iceberg) {
    if (surface.region != iceberg.region) {
        throw InputError("automation surprise requires matching regions, got '" +
                         surface.region.key() + "' and '" + iceberg.region.key() + "'");
    }
    return iceberg.index - surface.index;
}

} // namespace iceberg
