#pragma once
// Compensated (Kahan) accumulator for long alternating-magnitude sums.

namespace drsim {

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double term) {
        const double y = term - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace drsim
