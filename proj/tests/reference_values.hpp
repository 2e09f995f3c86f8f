// Frozen reference numbers the tests assert against. High-precision entries
// were produced with an arbitrary-precision evaluator before the library was
// built and are independent of every code path under test.
#pragma once

#include <array>
#include <utility>

namespace refs {

// ln Gamma(x) at 20 points, accurate to well beyond double precision.
inline constexpr std::array<std::pair<double, double>, 20> kLogGamma = {{
    {0.1, 2.25271265173420595987},
    {0.25, 1.288022524698077457371},
    {0.5, 0.5723649429247000870717},
    {0.75, 0.2032809514312953714814},
    {1.0, 0.0},
    {1.5, -0.1207822376352452223455},
    {2.0, 0.0},
    {2.5, 0.2846828704729191596325},
    {3.0, 0.6931471805599453094172},
    {4.5, 2.453736570842442220504},
    {7.3, 7.147892523022249032777},
    {10.0, 12.80182748008146961121},
    {15.5, 26.53691449111561362395},
    {20.0, 39.33988418719949403622},
    {35.0, 88.58082754219767880363},
    {50.0, 144.5657439463448860089},
    {100.0, 359.134205369575398776},
    {250.5, 1131.284001332255169148},
    {1000.0, 5905.220423209181211826},
    {12345.6, 103959.1850661684555825},
}};

// Exact values of the second-order series constants at shape 2 (40-digit
// evaluation, truncated far past double precision).
inline constexpr double kMeanConstantAlpha2 = -0.5688373966923480;
inline constexpr double kVarianceConstantAlpha2 = -3.5273222037359216;

// Expected positive part spot values.
inline constexpr double kEpp_2_2 = 0.5413411329464508;    // 4 e^{-2}
inline constexpr double kEpp_8_24 = 6.450351065064413e-5; // deep-tail cancellation case

// Q(2, 1.5) = 2.5 e^{-1.5}.
inline constexpr double kQ_2_15 = 0.5578254003710746;

// Optimal sample size for the survival target, alpha=2, c=3, beta=2, at the
// largest and smallest reference bounds (the reference table rounds these).
inline constexpr double kSurvivalNStarRow1 = 50.00933206593476;  // b = 0.00252
inline constexpr double kSurvivalNStarRow6 = 2000.3732826373906; // b = 0.000063

}  // namespace refs
