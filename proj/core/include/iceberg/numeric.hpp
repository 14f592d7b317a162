#pragma once

#include <cmath>

namespace iceberg {

/// Neumaier compensated accumulator. Regional wage sums must satisfy
/// county/state/national conservation to 1e-9 relative, which plain
/// left-to-right addition does not guarantee once tables get large.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// |a - b| <= tol * max(|a|, |b|), with exact equality allowed at zero.
inline bool nearly_equal(double a, double b, double rel_tol) {
    if (a == b) {
        return true;
    }
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= rel_tol * scale;
}

} // namespace iceberg
