#pragma once

namespace wecg::cdf97 {

// Lifting factorization of the CDF 9/7 biorthogonal filter pair.
inline constexpr double kAlpha = -1.5861343420693648;
inline constexpr double kBeta = -0.0529801185718856;
inline constexpr double kGamma = 0.8829110755411875;
inline constexpr double kDelta = 0.4435068520511142;
// Lowpass is multiplied and highpass divided by this factor.
inline constexpr double kZeta = 1.1496043988602418;

}  // namespace wecg::cdf97
