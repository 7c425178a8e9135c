#pragma once

#include <complex>
#include <numbers>

namespace hnls {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

/// Largest exponent magnitude accepted before evaluating exp().
inline constexpr double overflow_guard = 700.0;

}  // namespace hnls
