#pragma once

namespace qcontext::tol {

inline constexpr double kHermitian = 1e-9;
inline constexpr double kEigenvalueMerge = 1e-8;
inline constexpr double kNorm = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kPositivity = 1e-9;
inline constexpr double kSchmidtRank = 1e-8;
inline constexpr double kSupport = 1e-8;
inline constexpr double kCommute = 1e-9;
inline constexpr double kIdentity = 1e-9;
inline constexpr double kDirection = 1e-12;
inline constexpr double kConditioning = 1e-12;
inline constexpr double kNonInteracting = 1e-9;

}  // namespace qcontext::tol
