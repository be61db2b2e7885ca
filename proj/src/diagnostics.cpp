#include "diagnostics.hpp"

#include <cmath>

#include "errors.hpp"

namespace adsmax {

Eigen::VectorXd principal_curvature(const Eigen::VectorXd& rho, double t,
                                    const Eigen::VectorXd& u) {
  if (rho.size() != u.size()) throw ConfigError("principal_curvature: field size mismatch");
  return (t * rho.array() * (-2.0 * u.array()).exp()).matrix();
}

Eigen::VectorXd conformal_gap(const Eigen::VectorXd& rho, double t, const Eigen::VectorXd& u) {
  if (!(t > 0)) throw DomainError("conformal_gap requires t > 0");
  if (rho.size() != u.size()) throw ConfigError("conformal_gap: field size mismatch");
  Eigen::VectorXd phi(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i)
    phi[i] = rho[i] > kRhoSentinel ? u[i] - 0.5 * std::log(t * rho[i])
                                   : std::numeric_limits<double>::infinity();
  return phi;
}

WidthBound width_lower_bound(double lambda_max, double C, double delta) {
  if (!(lambda_max >= 0) || lambda_max >= 1)
    throw DomainError("width_lower_bound: lambda_max must lie in [0, 1)");
  if (!(C > 0) || !(delta > 0) || delta >= 1)
    throw ConfigError("width_lower_bound: require C > 0 and delta in (0,1)");
  WidthBound w;
  if (lambda_max < delta) return w;  // hypothesis gate: inapplicable
  w.applicable = true;
  w.radians = std::atan(std::pow(1.0 / (1.0 - lambda_max), 1.0 / C));
  return w;
}

RaySweepResult ray_sweep(const SurfaceMesh& s, const LaplaceOperator& op,
                         const Eigen::VectorXd& rho, const QDiffSpec& spec,
                         const std::vector<double>& t_values, const RaySweepOptions& opts) {
  if (t_values.empty()) throw ConfigError("ray_sweep: empty t grid");
  for (size_t i = 0; i + 1 < t_values.size(); ++i)
    if (!(t_values[i] < t_values[i + 1]))
      throw ConfigError("ray_sweep: t_values must be strictly increasing");
  if (t_values.front() < 0) throw ConfigError("ray_sweep: t must be nonnegative");

  const auto mask = away_mask(s, spec, opts.exclusion_radius);
  RaySweepResult out;
  out.report.exclusion_radius = opts.exclusion_radius;
  for (char m : mask) out.report.away_count += m;
  if (out.report.away_count == 0)
    throw DomainError("ray_sweep: exclusion radius leaves no away vertices");

  Eigen::VectorXd prev_u, prev_phi, prev_lambda;
  double prev_sup_ratio = 0;
  bool have_prev_positive_t = false;

  for (size_t idx = 0; idx < t_values.size(); ++idx) {
    const double t = t_values[idx];
    SolveOptions sopts = opts.solver;
    if (idx > 0) {
      sopts.initial = InitialGuess::WarmStart;
      sopts.warm_start = prev_u;
    }
    SolveResult sr;
    try {
      sr = solve_gauss(s, op, rho, t, sopts);
    } catch (const SolverError& e) {
      throw SolverError("ray_sweep at t = " + std::to_string(t) + ": " + e.what());
    }

    RayRecord rec;
    rec.t = t;
    rec.residual_norm = sr.residual_norm;
    rec.iterations = sr.iterations;
    rec.bracket_low_ok = sr.bracket_low_ok;
    rec.bracket_high_ok = sr.bracket_high_ok;

    const Eigen::VectorXd lambda = principal_curvature(rho, t, sr.u);
    rec.lambda_max = lambda.maxCoeff();
    double lmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < s.vertex_count(); ++i)
      if (mask[i]) lmin = std::min(lmin, lambda[i]);
    rec.lambda_min_away = lmin;
    if (s.genus >= 2 && (lambda.array() >= 1.0).any()) out.report.lambda_below_one = false;

    Eigen::VectorXd phi;
    if (t > 0) {
      phi = conformal_gap(rho, t, sr.u);
      double pmin = std::numeric_limits<double>::infinity();
      double smax = 0;
      for (int i = 0; i < s.vertex_count(); ++i)
        if (mask[i]) {
          pmin = std::min(pmin, phi[i]);
          smax = std::max(smax, std::exp(2.0 * phi[i]));
        }
      rec.min_phi = pmin;
      rec.sup_ratio = smax;
    } else {
      rec.min_phi = std::numeric_limits<double>::quiet_NaN();
      rec.sup_ratio = std::numeric_limits<double>::quiet_NaN();
    }

    if (idx > 0) {
      for (int i = 0; i < s.vertex_count(); ++i) {
        if (!mask[i]) continue;
        if (sr.u[i] < prev_u[i] - 1e-12) out.report.u_nondecreasing = false;
        if (t > 0 && !(lambda[i] > prev_lambda[i]))
          out.report.lambda_strictly_increasing = false;
        if (t > 0 && prev_phi.size() && !(phi[i] < prev_phi[i]))
          out.report.phi_strictly_decreasing = false;
      }
      if (have_prev_positive_t && t > 0 && !(rec.sup_ratio < prev_sup_ratio))
        out.report.sup_ratio_strictly_decreasing = false;
    }
    prev_u = sr.u;
    prev_lambda = lambda;
    if (t > 0) {
      prev_phi = phi;
      prev_sup_ratio = rec.sup_ratio;
      have_prev_positive_t = true;
    }
    out.report.records.push_back(rec);
    if (opts.keep_fields) out.fields.push_back(sr.u);
  }
  return out;
}

}  // namespace adsmax
