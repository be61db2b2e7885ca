#include "solver.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace adsmax {

AnalyticBracket analytic_bracket(const Eigen::VectorXd& rho, double t) {
  if (!(t > 0)) throw DomainError("analytic_bracket requires t > 0");
  AnalyticBracket b;
  b.lower.resize(rho.size());
  for (Eigen::Index i = 0; i < rho.size(); ++i)
    b.lower[i] = rho[i] > kRhoSentinel ? 0.5 * std::log(t * rho[i]) : kLogZeroSentinel;
  const double m = rho.maxCoeff();
  b.x_plus = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t * m * m));
  b.upper = 0.5 * std::log(b.x_plus);
  return b;
}

Eigen::VectorXd residual_field(const SurfaceMesh& s, const LaplaceOperator& op,
                               const Eigen::VectorXd& rho, double t, const Eigen::VectorXd& u) {
  if (u.size() != s.vertex_count() || rho.size() != s.vertex_count())
    throw ConfigError("residual_field: field size mismatch");
  const Eigen::ArrayXd e2u = (2.0 * u.array()).exp();
  const Eigen::ArrayXd trho = t * rho.array();
  const Eigen::VectorXd K = Eigen::Map<const Eigen::VectorXd>(s.curvature.data(), s.vertex_count());
  Eigen::VectorXd F = (e2u - trho.square() / e2u + K.array()).matrix();
  return op.apply(u) - F;
}

namespace {

void evaluate_brackets(SolveResult& r, const Eigen::VectorXd& rho, double t) {
  const double m = rho.maxCoeff();
  const double x_plus = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t * m * m));
  r.bracket_high = x_plus;
  if (t <= 0) {
    // the bracket statements are for t > 0; the t = 0 solve is the exact
    // Fuchsian baseline and both certificates hold vacuously
    r.bracket_low_ok = true;
    r.bracket_high_ok = ((2.0 * r.u.array()).exp() <= x_plus + 1e-12).all();
    return;
  }
  bool lo = true;
  for (Eigen::Index i = 0; i < rho.size(); ++i)
    if (rho[i] > kRhoSentinel && !(r.u[i] > 0.5 * std::log(t * rho[i]))) lo = false;
  r.bracket_low_ok = lo;
  r.bracket_high_ok = ((2.0 * r.u.array()).exp() <= x_plus + 1e-12).all();
}

}  // namespace

SolveResult solve_gauss(const SurfaceMesh& s, const LaplaceOperator& op,
                        const Eigen::VectorXd& rho, double t, const SolveOptions& opts) {
  const int n = s.vertex_count();
  if (rho.size() != n) throw ConfigError("solve_gauss: rho size mismatch");
  if (t < 0) throw DomainError("solve_gauss: t must be nonnegative");
  if (!(opts.tolerance > 0)) throw ConfigError("solve_gauss: tolerance must be positive");
  if ((rho.array() < 0).any()) throw ConfigError("solve_gauss: rho must be nonnegative");

  SolveResult r;
  r.t = t;
  switch (opts.initial) {
    case InitialGuess::Zero:
      r.u = Eigen::VectorXd::Zero(n);
      break;
    case InitialGuess::BracketMidpoint: {
      if (t > 0) {
        const AnalyticBracket b = analytic_bracket(rho, t);
        r.u.resize(n);
        for (int i = 0; i < n; ++i)
          r.u[i] = std::isfinite(b.lower[i]) ? 0.5 * (b.lower[i] + b.upper) : b.upper;
      } else {
        r.u = Eigen::VectorXd::Zero(n);
      }
      break;
    }
    case InitialGuess::WarmStart:
      if (opts.warm_start.size() != n)
        throw ConfigError("solve_gauss: warm start field size mismatch");
      r.u = opts.warm_start;
      break;
  }

  const Eigen::SparseMatrix<double> S = op.stiffness();
  const Eigen::ArrayXd trho2 = (t * rho.array()).square();
  const Eigen::ArrayXd K = Eigen::Map<const Eigen::VectorXd>(s.curvature.data(), n).array();
  const Eigen::ArrayXd M = op.mass.array();

  // G(u) = S u + M.(e^{2u} - t^2 rho^2 e^{-2u} + K); residual reported as
  // the pointwise defect G/M
  auto eval_G = [&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
    const Eigen::ArrayXd e2u = (2.0 * u.array()).exp();
    return S * u + (M * (e2u - trho2 / e2u + K)).matrix();
  };
  auto res_norm = [&](const Eigen::VectorXd& G) {
    return (G.array() / M).abs().maxCoeff();
  };

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  bool analyzed = false;

  Eigen::VectorXd G = eval_G(r.u);
  r.residual_norm = res_norm(G);
  while (r.residual_norm > opts.tolerance) {
    if (r.iterations >= opts.max_iterations) {
      std::ostringstream msg;
      msg << "solve_gauss: no convergence after " << opts.max_iterations
          << " iterations (t = " << t << ", last residual " << r.residual_norm << ")";
      throw SolverError(msg.str());
    }
    const Eigen::ArrayXd e2u = (2.0 * r.u.array()).exp();
    const Eigen::ArrayXd react = 2.0 * e2u + 2.0 * trho2 / e2u;  // strictly positive
    if (!(react > 0).all() || !react.allFinite())
      throw SolverError("solve_gauss: Newton reaction term lost positivity");
    Eigen::SparseMatrix<double> J = S;
    J += Eigen::SparseMatrix<double>((M * react).matrix().asDiagonal());
    if (!analyzed) {
      ldlt.analyzePattern(J);
      analyzed = true;
    }
    ldlt.factorize(J);
    if (ldlt.info() != Eigen::Success)
      throw SolverError("solve_gauss: Newton system factorization failed");
    const Eigen::VectorXd delta = ldlt.solve(-G);

    // max-norm line search with halving; the merit is the pointwise residual
    double alpha = 1.0;
    Eigen::VectorXd u_next, G_next;
    double rn_next = 0;
    for (;;) {
      u_next = r.u + alpha * delta;
      G_next = eval_G(u_next);
      rn_next = res_norm(G_next);
      if (rn_next < r.residual_norm || alpha < 1e-12) break;
      alpha *= 0.5;
    }
    if (alpha < 1e-12 && rn_next >= r.residual_norm) {
      if (opts.initial != InitialGuess::BracketMidpoint && t > 0) {
        // stalled: retry once from the certified bracket midpoint
        SolveOptions retry = opts;
        retry.initial = InitialGuess::BracketMidpoint;
        return solve_gauss(s, op, rho, t, retry);
      }
      throw SolverError("solve_gauss: line search stalled (t = " + std::to_string(t) + ")");
    }
    r.u = u_next;
    G = G_next;
    r.residual_norm = rn_next;
    ++r.iterations;
  }

  evaluate_brackets(r, rho, t);
  return r;
}

}  // namespace adsmax
