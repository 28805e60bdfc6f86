#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lcu {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// An input violates the documented precondition of an operation.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The estimated normalization fell below its admissible floor.
struct NormUnderflowError : PreconditionError {
    using PreconditionError::PreconditionError;
};

/// Malformed configuration or textual input.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numerical procedure failed its own convergence check.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw PreconditionError(what);
    }
}

/// Neumaier compensated accumulator.
class CompensatedSum {
public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    void add(const CompensatedSum& other)
    {
        add(other.sum_);
        add(other.comp_);
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace lcu
