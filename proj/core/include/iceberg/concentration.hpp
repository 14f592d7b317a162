#pragma once

#include "iceberg/econdata.hpp"
#include "iceberg/index.hpp"
#include "iceberg/taxonomy.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace iceberg {

/// Industry shares of a region's exposed wage value; zero-value industries
/// are dropped, remaining shares sum to 1.
struct IndustryShares {
    std::string region;
    std::vector<std::pair<std::string, double>> shares; // sorted by industry id
};

IndustryShares industry_shares(std::string region,
                               const std::map<std::string, double>& exposed_by_industry);

enum class ConcentrationTier { MostDistributed, Moderate, MostConcentrated };

std::string_view to_string(ConcentrationTier tier);

/// Tier from an HHI value on the 0-10,000 scale: round half up to an
/// integer, then <=1580 distributed, 1581-1737 moderate, >=1738 concentrated.
ConcentrationTier concentration_tier(double hhi_value);

struct HHIScore {
    std::string region;
    double value; // 10000 * sum of squared shares, in (0, 10000]
    ConcentrationTier tier;
};

HHIScore hhi(const IndustryShares& shares);

/// Exposed wage value per industry for one region: each occupation's
/// exposure times its wage value, bucketed by the occupation's industry tag.
std::map<std::string, double> exposed_value_by_industry(const ExposureSet& exposures,
                                                        const EmploymentTable& employment,
                                                        const SkillRequirementMatrix& matrix,
                                                        const RegionScope& region);

} // namespace iceberg
