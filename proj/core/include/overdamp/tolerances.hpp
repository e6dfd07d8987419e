#pragma once

// Every numerical tolerance used on a production path lives here.

namespace overdamp::tol {

// adaptive Gauss-Kronrod quadrature
inline constexpr double kQuadratureRel = 1e-8;
inline constexpr double kQuadratureAbsFloor = 1e-300;
inline constexpr int kQuadratureMaxPanels = 20000;

// bath correlator quadrature: non-oscillatory head ends at this multiple of the cutoff
inline constexpr double kCorrelatorHeadCutoffs = 50.0;
// coth(x) is replaced by sgn(x) beyond this |x|
inline constexpr double kCothSaturation = 30.0;

// principal-value integrals
inline constexpr double kPrincipalValueRel = 1e-8;

// Regime classification band, relative to max(omega0^2, Gamma^2)
inline constexpr double kCriticalBand = 1e-9;

// cubic roots: relative discriminant below which a multiple root is flagged
inline constexpr double kMultipleRootRel = 1e-10;
inline constexpr double kCubicResidualRel = 1e-12;

// eigensolver contracts
inline constexpr double kEigenResidualRel = 1e-10;
inline constexpr int kGeneralEigMaxDim = 256;

// RK4 stability bound on step * omega_max
inline constexpr double kRk4StabilityBound = 2.8;

// finite-bath oracle: RK4 step times the fastest frequency
inline constexpr double kOracleStepOmega = 0.025;

// Bessel J1 switch from power series to Hankel asymptotics
inline constexpr double kBesselSeriesLimit = 17.0;

} // namespace overdamp::tol
