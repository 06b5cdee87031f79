#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace heatrk {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double sqrt_pi = 1.7724538509055160273;

// Base class for all numerical failures raised by the library.
// Callers that only care about "did it work" can catch this one type.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// A point (or parameter) fails a membership or validity precondition.
class domain_error : public error {
public:
    explicit domain_error(const std::string& what) : error(what) {}
};

// A certified series tail cannot be brought under the requested tolerance
// within the configured half-width cap.
class truncation_failure : public error {
public:
    explicit truncation_failure(const std::string& what) : error(what) {}
};

// A kernel denominator is too close to its pole to evaluate reliably.
class pole_proximity : public error {
public:
    explicit pole_proximity(const std::string& what) : error(what) {}
};

// Adaptive quadrature hit its refinement cap before stabilizing.
class quadrature_failure : public error {
public:
    explicit quadrature_failure(const std::string& what) : error(what) {}
};

// A regularized Gram solve failed even after jitter escalation.
class ill_conditioned : public error {
public:
    explicit ill_conditioned(const std::string& what) : error(what) {}
};

// Compensated accumulation; works for double and std::complex<double>
// (componentwise compensation falls out of complex arithmetic).
template <class T>
class kahan_sum {
public:
    void add(const T& v) {
        const T y = v - comp_;
        const T t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    const T& value() const { return sum_; }

private:
    T sum_{};
    T comp_{};
};

}  // namespace heatrk
