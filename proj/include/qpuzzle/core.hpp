// Shared numeric types, tolerances and error types for the qpuzzle library.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qpuzzle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Tolerances used across the engine.
namespace tol {
inline constexpr double unitary = 1e-12;      // ||M^dag M - I||_max
inline constexpr double norm = 1e-10;         // | ||psi|| - 1 |
inline constexpr double drift_alarm = 1e-8;   // renormalization alarm threshold
inline constexpr double phase_equal = 1e-9;   // equality up to global phase
inline constexpr double hash_grid = 1e-9;     // rounding grid for state hashing
inline constexpr double nonzero = 1e-6;       // "first nonzero" amplitude for phase alignment
}  // namespace tol

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An explicit search budget was exhausted.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Operation is not permitted in the current game state.
class InvalidState : public Error {
public:
    using Error::Error;
};

/// SplitMix64 step; used for seed derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t v) {
    return splitmix64(seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

}  // namespace qpuzzle
