#pragma once

#include "operators.hpp"

namespace adsmax {

// Solves the conformal-factor equation along the ray q = t*q0:
//   Lap_h u = e^{2u} - t^2 rho^2 e^{-2u} + K_h,   I_t = e^{2u} h.
// Damped Newton on the lumped discretization; the linearized reaction term
// 2e^{2u} + 2 t^2 rho^2 e^{-2u} is strictly positive, so every Newton system
// is SPD.

enum class InitialGuess { Zero, BracketMidpoint, WarmStart };

struct SolveOptions {
  double tolerance = 1e-11;      // max-norm of the pointwise residual
  int max_iterations = 50;
  InitialGuess initial = InitialGuess::Zero;
  Eigen::VectorXd warm_start;    // used when initial == WarmStart
};

struct SolveResult {
  double t = 0;
  Eigen::VectorXd u;
  double residual_norm = 0;
  int iterations = 0;
  bool bracket_low_ok = false;   // u > log(t rho)/2 wherever rho > sentinel, t > 0
  bool bracket_high_ok = false;  // e^{2u} <= x_+ + tol, x_+ from the constant super-solution
  double bracket_high = 0;       // the constant super-solution value x_+
};

// rho values below this are treated as zeros of q0 (the lower bracket is
// stated away from zeros)
inline constexpr double kRhoSentinel = 1e-14;
inline constexpr double kLogZeroSentinel = -std::numeric_limits<double>::infinity();

struct AnalyticBracket {
  Eigen::VectorXd lower;  // log(t rho)/2, sentinel -inf at zeros of rho
  double upper;           // log(x_+)/2
  double x_plus;          // positive root of x^2 - x - t^2 (max rho)^2
};

AnalyticBracket analytic_bracket(const Eigen::VectorXd& rho, double t);

SolveResult solve_gauss(const SurfaceMesh& s, const LaplaceOperator& op,
                        const Eigen::VectorXd& rho, double t, const SolveOptions& opts = {});

// pointwise defect Lap u - (e^{2u} - t^2 rho^2 e^{-2u} + K)
Eigen::VectorXd residual_field(const SurfaceMesh& s, const LaplaceOperator& op,
                               const Eigen::VectorXd& rho, double t, const Eigen::VectorXd& u);

}  // namespace adsmax
