// Global-phase-insensitive comparison and hashing of states and operators.
#pragma once

#include "qpuzzle/core.hpp"

#include <cmath>
#include <cstdint>
#include <optional>

namespace qpuzzle {

/// Unit phase that makes the first non-negligible entry real-positive.
template <class Derived>
Complex alignment_phase(const Eigen::MatrixBase<Derived>& m) {
    const auto* data = m.derived().data();
    const Eigen::Index n = m.size();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double mag = std::abs(data[k]);
        if (mag > tol::nonzero) return std::conj(data[k]) / mag;
    }
    return {1.0, 0.0};
}

/// Equality up to a global phase: align the first nonzero entry of each side
/// to be real-positive, then compare entries in max norm.
template <class A, class B>
bool equal_up_to_phase(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b,
                       double tolerance = tol::phase_equal) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    const Complex pa = alignment_phase(a);
    const Complex pb = alignment_phase(b);
    return ((a * pa) - (b * pb)).cwiseAbs().maxCoeff() <= tolerance;
}

template <class Derived>
std::uint64_t phase_hash(const Eigen::MatrixBase<Derived>& m, double grid = tol::hash_grid) {
    const Complex p = alignment_phase(m);
    const auto* data = m.derived().data();
    std::uint64_t h = 0x51ed270b27e5f3a1ULL;
    for (Eigen::Index k = 0; k < m.size(); ++k) {
        const Complex z = data[k] * p;
        const auto re = static_cast<std::int64_t>(std::llround(z.real() / grid));
        const auto im = static_cast<std::int64_t>(std::llround(z.imag() / grid));
        h = hash_combine(h, static_cast<std::uint64_t>(re));
        h = hash_combine(h, static_cast<std::uint64_t>(im));
    }
    return h;
}

}  // namespace qpuzzle
