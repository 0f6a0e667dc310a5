#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace mantel {

// Thrown when an operation would exceed its documented desk-scale guard.
// Callers that want a larger computation must opt into an incomplete mode.
struct scale_guard_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Compensated (Kahan) accumulator; keeps long reductions reproducible at
// the 1e-12 residual level the numeric checks demand.
class KahanSum {
public:
    void add(double v) {
        double y = v - c_;
        double t = sum_ + y;
        c_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t res = 1;
    for (int i = 1; i <= k; ++i) {
        res = res * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return res;
}

// base^exp in int64 with overflow detection.
inline long long ipow_checked(long long base, int exp) {
    long long res = 1;
    for (int i = 0; i < exp; ++i) {
        if (__builtin_mul_overflow(res, base, &res)) {
            throw std::overflow_error("integer power overflow");
        }
    }
    return res;
}

// Visit all k-subsets of {0,...,n-1} in lexicographic order.
template <typename F>
void for_each_combination(int n, int k, F&& fn) {
    if (k < 0 || k > n) return;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        fn(const_cast<const std::vector<int>&>(idx));
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace mantel
