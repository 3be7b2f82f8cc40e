#pragma once

// Reference values produced by tests/oracle/oracle.py (numpy/scipy, independent of this library).

namespace oracle {

inline constexpr double kEntropyDiag3414 = 0.8112781244591328;   // S(diag(3/4, 1/4))
inline constexpr double kBinaryEntropy09 = 0.4689955935892811;   // h(0.9)
inline constexpr double kLog2Of3 = 1.5849625007211565;
inline constexpr double kEtaMinEigTA = -0.16666666666666663;     // min eig of eta^{T_A}
inline constexpr double kEtaLogNegABC = 0.41503749927884348;     // E_n^{A|BC}(eta) = log2(4/3)
inline constexpr double kEtaDiscordC = 0.33333333333328063;      // D_r^{C|AB}(eta), grid + simplex
inline constexpr double kInducedPurityMean = 0.8001937152963292; // N=2, K=2, 200k samples
inline constexpr double kWernerConcurrence = 0.85;               // p = 0.9
inline constexpr double kWernerEof = 0.7893549609887835;
inline constexpr double kWernerRelEnt = 0.6156884558735031;      // 1 - h((1 + 3p)/4)
inline constexpr double kSepMixInvarianceMin = 0.25;             // |00>/|++> mixture, measured A
inline constexpr double kPhiPlusGeometricDiscord = 0.5;
inline constexpr double kPhiPlusGeometricEnt = 0.5;

}  // namespace oracle
