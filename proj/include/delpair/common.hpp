#ifndef DELPAIR_COMMON_HPP
#define DELPAIR_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>
#include <cstdint>
#include <cmath>

namespace delpair {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;
using rvec = std::vector<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline const cplx kI{0.0, 1.0};
inline const cplx kTwoPiI{0.0, 2.0 * kPi};

// Error with a stable machine-readable kind ("NotSymmetric", "DivisorCollision", ...).
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Seeded linear-congruential generator; platform-independent streams.
class Lcg {
public:
    explicit Lcg(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_;
    }

    // uniform in [0, 1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    cplx uniform_complex(double lo, double hi) {
        double re = uniform(lo, hi);
        double im = uniform(lo, hi);
        return {re, im};
    }

private:
    std::uint64_t state_;
};

// Compensated accumulator; keeps lattice sums deterministic and tight.
struct KahanSum {
    cplx sum{0.0, 0.0};
    cplx carry{0.0, 0.0};

    void add(cplx x) {
        cplx y = x - carry;
        cplx t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// value = mantissa * exp(exponent); avoids overflow for large exponents.
struct LogScaled {
    cplx mantissa{0.0, 0.0};
    double exponent = 0.0;

    cplx value() const { return mantissa * std::exp(exponent); }

    // Principal log; requires mantissa != 0.
    cplx log() const { return std::log(mantissa) + exponent; }

    LogScaled operator*(const LogScaled& o) const { return {mantissa * o.mantissa, exponent + o.exponent}; }
    LogScaled operator/(const LogScaled& o) const { return {mantissa / o.mantissa, exponent - o.exponent}; }
};

} // namespace delpair

#endif
