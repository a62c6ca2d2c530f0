#pragma once

#include <map>

// Frozen output of oracles/curve_oracle.py (exhaustive point counts and
// mpmath quadrature at 30 digits).
namespace oracle {

inline const std::map<long long, long long> kAp11a = {{2, -2}, {3, -1}, {5, 1}, {7, -2}, {11, 1}, {13, 4}, {37, 3}};
inline const std::map<long long, long long> kAp37a = {{2, -2}, {3, -3}, {5, -2}, {7, -1}, {11, -5}, {13, -2}, {37, -1}};

constexpr double kOmega1_11a = 1.2692093042795533039;
constexpr double kOmega2Re_11a = 0.63460465213977665193;
constexpr double kOmega2Im_11a = 1.4588166169384952097;
constexpr double kArea_11a = 1.8515436234559591209;

constexpr double kOmega1_37a = 2.9934586462319592145;
constexpr double kOmega2Im_37a = 2.4513893819867917208;
constexpr double kArea_37a = 7.33813274078958069;

// G(i) = sum a_n/n e^{-2 pi n}
constexpr double kGi_11a = 0.0018639532246330691304;
constexpr double kGi_37a = 0.0018639488830113800897;

constexpr double kVolumeSL2 = 1.0471975511965977462;

}  // namespace oracle
