#include "iceberg/concentration.hpp"

#include "iceberg/errors.hpp"
#include "iceberg/numeric.hpp"

#include <cmath>

namespace iceberg {

IndustryShares industry_shares(std::string region,
                               const std::map<std::string, double>& exposed_by_industry) {
    CompensatedSum total;
    for (const auto& [industry, value] : exposed_by_industry) {
        if (value < 0.0) {
            throw InputError("industry '" + industry + "' in region '" + region +
                             "' has negative exposed value");
        }
        total.add(value);
    }
    const double denominator = total.value();
    if (denominator <= 0.0) {
        throw InputError("region '" + region + "' has zero total exposed value");
    }

    IndustryShares shares;
    shares.region = std::move(region);
    for (const auto& [industry, value] : exposed_by_industry) {
        if (value > 0.0) {
            shares.shares.emplace_back(industry, value / denominator);
        }
    }
    return shares;
}

std::string_view to_string(ConcentrationTier tier) {
    switch (tier) {
    case ConcentrationTier::MostDistributed: return "most-distributed";
    case ConcentrationTier::Moderate: return "moderate";
    case ConcentrationTier::MostConcentrated: return "most-concentrated";
    }
    throw InternalError("invalid ConcentrationTier value");
}

ConcentrationTier concentration_tier(double hhi_value) {
    // The published boundaries are gapless only on integers.
    const long long rounded = std::llround(hhi_value); // half away from zero = half up here
    if (rounded <= 1580) {
        return ConcentrationTier::MostDistributed;
    }
    if (rounded <= 1737) {
        return ConcentrationTier::Moderate;
    }
    return ConcentrationTier::MostConcentrated;
}

HHIScore hhi(const IndustryShares& shares) {
    CompensatedSum sum;
    for (const auto& [industry, share] : shares.shares) {
        sum.add(share * share);
    }
    const double value = 10000.0 * sum.value();
    return {shares.region, value, concentration_tier(value)};
}

std::map<std::string, double> exposed_value_by_industry(const ExposureSet& exposures,
                                                        const EmploymentTable& employment,
                                                        const SkillRequirementMatrix& matrix,
                                                        const RegionScope& region) {
    // One compensated accumulator per industry, fed in record order.
    std::map<std::string, CompensatedSum> sums;
    for (const auto& record : employment.records()) {
        if (!region.contains(record.county_fips, employment.geography())) {
            continue;
        }
        const Occupation& occupation = matrix.occupation(record.occupation);
        const double value = static_cast<double>(record.employment) * record.median_wage;
        sums[occupation.industry].add(exposures.value_of(record.occupation) * value);
    }

    std::map<std::string, double> out;
    for (const auto& [industry, sum] : sums) {
        out.emplace(industry, sum.value());
    }
    return out;
}

} // namespace iceberg
