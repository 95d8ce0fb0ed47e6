#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace waterman {

inline constexpr const char* kToolkitVersion = "0.1.0";
inline constexpr double kPi = 3.14159265358979323846;

/// Compensated (Kahan) accumulator for long sums.
class KahanSum {
public:
    KahanSum() = default;
    explicit KahanSum(double init) : sum_(init) {}

    void add(double x) {
        const double y = x - carry_;
        const double t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    KahanSum& operator+=(double x) {
        add(x);
        return *this;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

/// Formats a real with 17 significant digits (round-trip safe).
std::string format_real(double x);

/// Worker count for data-parallel sweeps, capped by WATERMAN_THREADS.
int worker_count();

/// Runs fn(begin, end) over a deterministic partition of [0, count).
/// Results must be merged by the caller in chunk order.
void parallel_chunks(std::size_t count,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

/// Thrown when panel quadrature cannot reach the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_error(achieved) {}
    double achieved_error;
};

/// Thrown when a construction threshold cannot be met; names the inequality.
class ThresholdError : public std::runtime_error {
public:
    explicit ThresholdError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace waterman
