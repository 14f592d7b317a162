#include "iceberg/concentration.hpp"
#include "iceberg/errors.hpp"
#include "iceberg/numeric.hpp"
#include "iceberg/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <string>

using namespace iceberg;

TEST_CASE("industry_shares normalizes and drops zero industries") {
    const auto even = industry_shares("AA", {{"FIN", 100.0}, {"MFG", 100.0}});
    REQUIRE(even.shares.size() == 2);
    CHECK(even.shares[0].second == 0.5);
    CHECK(even.shares[1].second == 0.5);

    const auto single = industry_shares("AA", {{"FIN", 100.0}});
    REQUIRE(single.shares.size() == 1);
    CHECK(single.shares[0].second == 1.0);

    const auto dropped = industry_shares("AA", {{"FIN", 100.0}, {"MFG", 0.0}});
    CHECK(dropped.shares.size() == 1);

    CHECK_THROWS_WITH_AS(industry_shares("AA", {{"FIN", 0.0}}),
                         doctest::Contains("zero total"), InputError);
    CHECK_THROWS_WITH_AS(industry_shares("AA", {{"FIN", -1.0}, {"MFG", 5.0}}),
                         doctest::Contains("negative"), InputError);
}

TEST_CASE("hhi: single industry and equal splits are exact") {
    const auto single = hhi(industry_shares("AA", {{"FIN", 123.0}}));
    CHECK(single.value == 10000.0);
    CHECK(single.tier == ConcentrationTier::MostConcentrated);

    for (int n : {2, 4, 8, 16}) {
        std::map<std::string, double> values;
        for (int i = 0; i < n; ++i) {
            values["IND-" + std::to_string(i)] = 100.0;
        }
        const auto score = hhi(industry_shares("AA", values));
        CHECK(score.value == 10000.0 / n);
    }
    // N = 8 -> 1250, most-distributed (symmetry example)
    std::map<std::string, double> eight;
    for (int i = 0; i < 8; ++i) {
        eight["IND-" + std::to_string(i)] = 7.5;
    }
    const auto score = hhi(industry_shares("AA", eight));
    CHECK(score.value == 1250.0);
    CHECK(score.tier == ConcentrationTier::MostDistributed);
}

TEST_CASE("tier thresholds are applied after round-half-up") {
    CHECK(concentration_tier(1580.0) == ConcentrationTier::MostDistributed);
    CHECK(concentration_tier(1580.4) == ConcentrationTier::MostDistributed);
    CHECK(concentration_tier(1580.5) == ConcentrationTier::Moderate); // rounds to 1581
    CHECK(concentration_tier(1581.0) == ConcentrationTier::Moderate);
    CHECK(concentration_tier(1737.0) == ConcentrationTier::Moderate);
    CHECK(concentration_tier(1737.4) == ConcentrationTier::Moderate);
    CHECK(concentration_tier(1737.5) == ConcentrationTier::MostConcentrated); // rounds to 1738
    CHECK(concentration_tier(1738.0) == ConcentrationTier::MostConcentrated);
    CHECK(concentration_tier(10000.0) == ConcentrationTier::MostConcentrated);
    CHECK(concentration_tier(0.1) == ConcentrationTier::MostDistributed);
}

TEST_CASE("every nonnegative value maps to exactly one tier") {
    SplitMix64 rng(3);
    for (int trial = 0; trial < 2000; ++trial) {
        const double value = rng.next_in(0.0, 10000.0);
        int assigned = 0;
        const auto tier = concentration_tier(value);
        for (const auto candidate :
             {ConcentrationTier::MostDistributed, ConcentrationTier::Moderate,
              ConcentrationTier::MostConcentrated}) {
            if (tier == candidate) {
                ++assigned;
            }
        }
        CHECK(assigned == 1);
    }
}

TEST_CASE("hhi bounds, merge monotonicity and invariances") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(10));
        std::map<std::string, double> values;
        for (int i = 0; i < n; ++i) {
            values["IND-" + std::to_string(i)] = rng.next_in(0.5, 100.0);
        }
        const auto base = hhi(industry_shares("AA", values));

        // bounds for n industries with nonzero share
        CHECK(base.value >= 10000.0 / n - 1e-9);
        CHECK(base.value <= 10000.0 + 1e-9);

        // merging two industries never decreases the HHI
        auto merged = values;
        const double a = merged.at("IND-0");
        const double b = merged.at("IND-1");
        merged.erase("IND-0");
        merged["IND-1"] = a + b;
        const auto after = hhi(industry_shares("AA", merged));
        CHECK(after.value >= base.value - 1e-9);

        // invariance under relabeling and under scaling all values
        std::map<std::string, double> relabeled;
        for (const auto& [industry, value] : values) {
            relabeled["X" + industry] = value;
        }
        CHECK(nearly_equal(hhi(industry_shares("AA", relabeled)).value, base.value, 1e-12));

        std::map<std::string, double> scaled;
        for (const auto& [industry, value] : values) {
            scaled[industry] = value * 7.25;
        }
        CHECK(nearly_equal(hhi(industry_shares("AA", scaled)).value, base.value, 1e-9));
    }
}

TEST_CASE("quadratic share fixtures reproduce the published state values") {
    // One dominant industry with share x among 10, the rest equal:
    // HHI/10000 = x^2 + (1-x)^2/9, solved for the target value.
    const auto dominant_mix = [](double target) {
        const double x = (1.0 + std::sqrt(1.0 - 10.0 * (1.0 - 9.0 * target))) / 10.0;
        std::map<std::string, double> values;
        values["IND-0"] = x * 1e9;
        for (int i = 1; i < 10; ++i) {
            values["IND-" + std::to_string(i)] = (1.0 - x) / 9.0 * 1e9;
        }
        return values;
    };

    const auto iowa = hhi(industry_shares("IA", dominant_mix(0.1463)));
    CHECK(std::llround(iowa.value) == 1463);
    CHECK(iowa.tier == ConcentrationTier::MostDistributed);

    const auto delaware = hhi(industry_shares("DE", dominant_mix(0.1741)));
    CHECK(std::llround(delaware.value) == 1741);
    CHECK(delaware.tier == ConcentrationTier::MostConcentrated);
}
