#ifndef CORRBERN_COMPENSATED_SUM_HPP
#define CORRBERN_COMPENSATED_SUM_HPP

#include <cmath>

namespace corrbern::detail {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }

    void merge(const CompensatedSum& o) noexcept {
        add(o.sum_);
        add(o.comp_);
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace corrbern::detail

#endif
