#include "lab.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "util.hpp"

namespace adsmax {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void write_file(const fs::path& p, const std::string& text, std::vector<std::string>& artifacts) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + p.string());
  out << text;
  artifacts.push_back(p.filename().string());
}

std::string field_csv(const Eigen::VectorXd& v) {
  std::ostringstream os;
  os << "vertex_id,value\n";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << i << "," << fmt(v[i]) << "\n";
  return os.str();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  ExperimentConfig c;
  c.raw_text = text;

  if (!j.contains("surface") || !j["surface"].contains("type"))
    throw ConfigError("config needs surface.type");
  const std::string type = j["surface"]["type"].get<std::string>();
  if (type == "octagon8")
    c.surface_type = SurfaceType::Octagon8;
  else if (type == "torus-validation")
    c.surface_type = SurfaceType::TorusValidation;
  else
    throw ConfigError("surface.type must be \"octagon8\" or \"torus-validation\"");
  c.subdivision = j["surface"].value("subdivision", 3);

  if (j.contains("qdiff")) {
    c.has_qdiff = true;
    for (const auto& z : j["qdiff"].value("zeros", json::array()))
      c.qdiff.zeros.emplace_back(z.at(0).get<int>(), z.at(1).get<int>());
  }
  if (j.contains("ray")) {
    c.has_ray = true;
    for (const auto& t : j["ray"].at("t_values")) c.t_values.push_back(t.get<double>());
    for (size_t i = 0; i + 1 < c.t_values.size(); ++i)
      if (!(c.t_values[i] < c.t_values[i + 1]))
        throw ConfigError("ray.t_values must be strictly increasing");
    if (!c.t_values.empty() && c.t_values.front() < 0)
      throw ConfigError("ray.t_values must be nonnegative");
  }
  if (j.contains("solver")) {
    c.solver_tolerance = j["solver"].value("tolerance", 1e-11);
    c.solver_max_iterations = j["solver"].value("max_iterations", 50);
  }
  if (!(c.solver_tolerance > 0)) throw ConfigError("solver.tolerance must be positive");
  if (j.contains("entropy")) {
    c.has_entropy = true;
    c.word_radius = j["entropy"].value("word_radius", 4);
    if (j["entropy"].contains("window")) {
      c.entropy_window[0] = j["entropy"]["window"].at(0).get<double>();
      c.entropy_window[1] = j["entropy"]["window"].at(1).get<double>();
    }
    const std::string mode = j["entropy"].value("window_mode", "frontier-fraction");
    if (mode == "frontier-fraction")
      c.window_is_frontier_fraction = true;
    else if (mode == "absolute")
      c.window_is_frontier_fraction = false;
    else
      throw ConfigError("entropy.window_mode must be \"frontier-fraction\" or \"absolute\"");
    if (!(c.entropy_window[0] >= 0) || !(c.entropy_window[1] > c.entropy_window[0]))
      throw ConfigError("entropy.window must be an increasing pair");
  }
  if (j.contains("width")) {
    c.has_width = true;
    c.width_C = j["width"].value("C", 1.0);
    c.width_delta = j["width"].value("delta", 0.5);
    if (!(c.width_C > 0) || !(c.width_delta > 0) || c.width_delta >= 1)
      throw ConfigError("width requires C > 0 and delta in (0,1)");
  }
  if (j.contains("spectrum")) {
    c.has_spectrum = true;
    c.rep_l_path = j["spectrum"].value("rep_l_path", "");
    c.rep_r_path = j["spectrum"].value("rep_r_path", "");
    c.max_word_length = j["spectrum"].value("max_word_length", 4);
    if (c.rep_l_path.empty() || c.rep_r_path.empty())
      throw ConfigError("spectrum requires rep_l_path and rep_r_path");
    if (!fs::exists(c.rep_l_path)) throw ConfigError("missing file: " + c.rep_l_path);
    if (!fs::exists(c.rep_r_path)) throw ConfigError("missing file: " + c.rep_r_path);
  }
  c.exclusion_radius = j.value("exclusion_radius", 0.3);
  c.dump_fields = j.value("dump_fields", false);
  c.export_mesh = j.value("export_mesh", false);
  c.output_dir = j.value("output_dir", "out");
  return c;
}

SurfaceMesh build_surface(const ExperimentConfig& config) {
  return config.surface_type == ExperimentConfig::SurfaceType::Octagon8
             ? build_genus2_surface(config.subdivision)
             : build_torus_surface(config.subdivision);
}

namespace {

json validation_json(const SurfaceMesh& s, const ValidationReport& r) {
  json j;
  j["surface"] = s.genus == 2 ? "octagon8" : (s.closed ? "torus-validation" : "patch");
  if (s.genus == 1) j["note"] = "flat validation harness, outside the genus >= 2 hypotheses";
  j["vertices"] = s.vertex_count();
  j["edges"] = s.edge_count();
  j["faces"] = s.face_count();
  j["euler_characteristic"] = s.euler_characteristic();
  j["total_area"] = s.total_area();
  j["max_edge_length"] = s.max_edge_length();
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"measured", c.measured},
                      {"tolerance", c.tolerance}});
  j["checks"] = std::move(checks);
  j["all_ok"] = r.all_ok();
  if (s.genus == 2 && s.subdivision >= 1) {
    // symmetric simple-zero placement: the four spoke midpoints along
    // alternating corner directions
    json zeros = json::array();
    const Octagon& oct = Octagon::regular();
    for (int k = 0; k < 8; k += 2) {
      const cplx p = disk::midpoint(cplx(0, 0), oct.corners[k]);
      zeros.push_back(find_vertex_near(s, p));
    }
    j["suggested_zeros"] = std::move(zeros);
  }
  return j;
}

struct EntropyRunRow {
  double t = 0;
  EntropyEstimate est;
  double frontier = 0;
  int copies = 0;
  bool ok = false;
  std::string error;
};

EntropyRunRow run_entropy(const SurfaceMesh& s, const Eigen::VectorXd& u, double t,
                          const ExperimentConfig& cfg) {
  EntropyRunRow row;
  row.t = t;
  LiftedGraph g = build_orbit_graph(s, u, cfg.word_radius);
  const auto dists = orbit_distances(g);
  row.frontier = g.frontier_radius;
  row.copies = static_cast<int>(g.words.size());
  std::vector<double> trusted;
  for (const auto& d : dists)
    if (d.trusted) trusted.push_back(d.distance);
  double lo = cfg.entropy_window[0], hi = cfg.entropy_window[1];
  if (cfg.window_is_frontier_fraction) {
    lo *= g.frontier_radius;
    hi *= g.frontier_radius;
  }
  hi = std::min(hi, g.frontier_radius);
  try {
    row.est = entropy_estimate(trusted, lo, hi);
    row.ok = true;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

ValidationReport validate_surface_config(const ExperimentConfig& config, std::string* json_out) {
  const SurfaceMesh s = build_surface(config);
  const ValidationReport r = validate_surface(s);
  if (json_out) *json_out = validation_json(s, r).dump(2) + "\n";
  return r;
}

RunOutcome run_experiment(const ExperimentConfig& config, const std::string& out_override,
                          bool deterministic) {
  if (deterministic) util::set_thread_cap(1);

  RunOutcome out;
  out.output_dir = out_override.empty() ? config.output_dir : out_override;
  fs::create_directories(out.output_dir);
  const fs::path dir(out.output_dir);

  auto check = [&](const std::string& claim, const std::string& ref, double measured,
                   double tolerance, bool pass) {
    out.checks.push_back({claim, ref, measured, tolerance, pass});
  };

  // ---- surface ----
  const SurfaceMesh s = build_surface(config);
  const ValidationReport vr = validate_surface(s);
  write_file(dir / "surface_validation.json", validation_json(s, vr).dump(2) + "\n",
             out.artifacts);
  auto surface_ref = [](const std::string& name) -> std::string {
    if (name == "euler-characteristic") return "chi = 2 - 2g";
    if (name == "gauss-bonnet-defect" || name == "total-area") return "Gauss-Bonnet";
    if (name == "generator-determinant") return "PSL(2,R)";
    if (name == "pairing-relation-residual") return "[a,b][c,d] = 1";
    if (name == "pairing-vertex-match") return "side pairing";
    return "mesh validity";
  };
  for (const auto& c : vr.checks)
    check("surface " + c.name, surface_ref(c.name), c.measured, c.tolerance, c.pass);
  if (config.export_mesh) write_file(dir / "mesh.json", mesh_json(s), out.artifacts);

  const LaplaceOperator op = assemble_operators(s);

  // ---- qdiff + ray ----
  std::vector<EntropyRunRow> entropy_rows;
  std::optional<RaySweepResult> sweep;
  Eigen::VectorXd rho;
  if (config.has_ray) {
    QDiffSpec spec = config.qdiff;
    rho = synth_qdiff_norm(s, op, spec);
    write_file(dir / "rho.csv", field_csv(rho), out.artifacts);
    const double flat_area = (op.mass.array() * rho.array()).sum();
    check("qdiff unit flat area", "ray normalization", std::abs(flat_area - 1.0), 1e-10,
          std::abs(flat_area - 1.0) <= 1e-10);
    if (!spec.zeros.empty()) {
      const double holo = holomorphicity_residual(s, op, rho, spec, config.exclusion_radius);
      check("holomorphicity residual away from zeros", "Prop. 3.4 proof", holo, 1e-8,
            holo <= 1e-8);
    }

    RaySweepOptions ropts;
    ropts.solver.tolerance = config.solver_tolerance;
    ropts.solver.max_iterations = config.solver_max_iterations;
    ropts.exclusion_radius = config.exclusion_radius;
    ropts.keep_fields = true;
    sweep = ray_sweep(s, op, rho, spec, config.t_values, ropts);
    const RayReport& rep = sweep->report;

    double max_res = 0;
    bool brackets = true;
    for (const auto& rec : rep.records) {
      max_res = std::max(max_res, rec.residual_norm);
      if (!(rec.bracket_low_ok && rec.bracket_high_ok)) brackets = false;
    }
    check("solver residuals", "Eq. (1)", max_res, config.solver_tolerance,
          max_res <= config.solver_tolerance);
    // the bracket and monotonicity statements assume genus >= 2 (the strict
    // inequalities degenerate in the flat torus harness, where u = log(t rho)/2
    // exactly); torus reports carry residuals only
    if (s.genus >= 2) {
      check("sub-solution certificate", "Prop. 3.4", brackets ? 1 : 0, 1, brackets);
      check("super-solution certificate", "Prop. 3.6", brackets ? 1 : 0, 1, brackets);
      check("lambda < 1", "Cor. 3.5", rep.lambda_below_one ? 1 : 0, 1, rep.lambda_below_one);
      if (rep.records.size() >= 2) {
        check("u nondecreasing in t", "Prop. 3.13 proof", rep.u_nondecreasing ? 1 : 0, 1,
              rep.u_nondecreasing);
        check("phi strictly decreasing in t", "Prop. 3.8", rep.phi_strictly_decreasing ? 1 : 0, 1,
              rep.phi_strictly_decreasing);
        check("lambda strictly increasing in t", "Cor. 3.9",
              rep.lambda_strictly_increasing ? 1 : 0, 1, rep.lambda_strictly_increasing);
        check("sup I_t/(t|q0|) strictly decreasing", "Cor. 3.7",
              rep.sup_ratio_strictly_decreasing ? 1 : 0, 1, rep.sup_ratio_strictly_decreasing);
      }
    }

    if (config.dump_fields)
      for (size_t i = 0; i < sweep->fields.size(); ++i)
        write_file(dir / ("u_t" + std::to_string(i) + ".csv"), field_csv(sweep->fields[i]),
                   out.artifacts);

    if (config.has_entropy)
      for (size_t i = 0; i < rep.records.size(); ++i)
        entropy_rows.push_back(run_entropy(s, sweep->fields[i], rep.records[i].t, config));
  } else if (config.has_entropy) {
    entropy_rows.push_back(run_entropy(s, Eigen::VectorXd::Zero(s.vertex_count()), 0.0, config));
  }

  // ---- entropy artifacts + checks ----
  if (config.has_entropy) {
    json ej = json::array();
    for (size_t i = 0; i < entropy_rows.size(); ++i) {
      const auto& row = entropy_rows[i];
      json r;
      r["t"] = row.t;
      r["word_radius"] = config.word_radius;
      r["copies"] = row.copies;
      r["frontier_radius"] = row.frontier;
      if (row.ok) {
        r["E_hat"] = row.est.e_hat;
        r["LHdim_upper_bound"] = row.est.e_hat;
        r["fit_residual"] = row.est.fit_residual;
        r["window"] = {row.est.r_min, row.est.r_max};
        r["count_at_rmax"] = row.est.count_at_rmax;
        std::ostringstream csv;
        csv << "R,count\n";
        for (const auto& [R, N] : row.est.counts) csv << fmt(R) << "," << N << "\n";
        write_file(dir / ("entropy_counts_t" + std::to_string(i) + ".csv"), csv.str(),
                   out.artifacts);
      } else {
        r["error"] = row.error;
      }
      ej.push_back(std::move(r));
    }
    write_file(dir / "entropy.json", ej.dump(2) + "\n", out.artifacts);

    if (!entropy_rows.empty() && entropy_rows.front().t == 0 && entropy_rows.front().ok) {
      const double e0 = entropy_rows.front().est.e_hat;
      check("entropy of the hyperbolic metric = 1", "Cor. 3.14", e0, 0.15,
            std::abs(e0 - 1.0) <= 0.15);
    }
    bool mono = true, all_ok = !entropy_rows.empty();
    for (size_t i = 0; i < entropy_rows.size(); ++i) {
      if (!entropy_rows[i].ok) all_ok = false;
      if (i && entropy_rows[i].ok && entropy_rows[i - 1].ok &&
          entropy_rows[i].est.e_hat > entropy_rows[i - 1].est.e_hat)
        mono = false;
    }
    if (entropy_rows.size() >= 2 && all_ok)
      check("entropy nonincreasing along the ray", "Prop. 3.13", mono ? 1 : 0, 1, mono);
  }

  // ---- width bounds ----
  std::vector<std::optional<double>> width_bounds;
  if (config.has_width && sweep) {
    for (const auto& rec : sweep->report.records) {
      if (rec.t > 0 && rec.lambda_max < 1.0) {
        const WidthBound w = width_lower_bound(rec.lambda_max, config.width_C, config.width_delta);
        width_bounds.push_back(w.applicable ? std::optional<double>(w.radians) : std::nullopt);
      } else {
        width_bounds.push_back(std::nullopt);
      }
    }
    bool mono = true, in_range = true;
    double prev = -1;
    for (const auto& w : width_bounds) {
      if (!w) continue;
      if (*w <= 0 || *w >= M_PI / 2) in_range = false;
      if (prev >= 0 && *w < prev) mono = false;
      prev = *w;
    }
    check("width bound in (0, pi/2), monotone in lambda_max", "Thm. 4.3 / Prop. 4.4",
          in_range && mono ? 1 : 0, 1, in_range && mono);
  }

  // ---- ray CSV/JSON ----
  if (sweep) {
    const RayReport& rep = sweep->report;
    std::ostringstream csv;
    csv << "t,lambda_max,lambda_min_away,min_phi,sup_ratio,entropy,width_bound\n";
    for (size_t i = 0; i < rep.records.size(); ++i) {
      const auto& rec = rep.records[i];
      csv << fmt(rec.t) << "," << fmt(rec.lambda_max) << "," << fmt(rec.lambda_min_away) << ","
          << fmt(rec.min_phi) << "," << fmt(rec.sup_ratio) << ",";
      if (config.has_entropy && i < entropy_rows.size() && entropy_rows[i].ok)
        csv << fmt(entropy_rows[i].est.e_hat);
      csv << ",";
      if (i < width_bounds.size() && width_bounds[i]) csv << fmt(*width_bounds[i]);
      csv << "\n";
    }
    write_file(dir / "ray_report.csv", csv.str(), out.artifacts);

    json rj;
    rj["exclusion_radius"] = rep.exclusion_radius;
    rj["away_vertices"] = rep.away_count;
    rj["monotonicity"] = {{"u_nondecreasing", rep.u_nondecreasing},
                          {"phi_strictly_decreasing", rep.phi_strictly_decreasing},
                          {"lambda_strictly_increasing", rep.lambda_strictly_increasing},
                          {"sup_ratio_strictly_decreasing", rep.sup_ratio_strictly_decreasing},
                          {"lambda_below_one", rep.lambda_below_one}};
    json recs = json::array();
    for (size_t i = 0; i < rep.records.size(); ++i) {
      const auto& rec = rep.records[i];
      json r;
      r["t"] = rec.t;
      r["lambda_max"] = rec.lambda_max;
      r["lambda_min_away"] = rec.lambda_min_away;
      if (std::isfinite(rec.min_phi)) r["min_phi"] = rec.min_phi;
      if (std::isfinite(rec.sup_ratio)) r["sup_ratio"] = rec.sup_ratio;
      r["residual_norm"] = rec.residual_norm;
      r["iterations"] = rec.iterations;
      r["bracket_low_ok"] = rec.bracket_low_ok;
      r["bracket_high_ok"] = rec.bracket_high_ok;
      if (i < width_bounds.size() && width_bounds[i]) r["width_bound"] = *width_bounds[i];
      recs.push_back(std::move(r));
    }
    rj["records"] = std::move(recs);
    write_file(dir / "ray_report.json", rj.dump(2) + "\n", out.artifacts);
  }

  // ---- spectrum ----
  if (config.has_spectrum) {
    const FuchsianRep rep_l = FuchsianRep::from_json_file(config.rep_l_path);
    const FuchsianRep rep_r = FuchsianRep::from_json_file(config.rep_r_path);
    const HolderReport hr = holder_estimate(rep_l, rep_r, config.max_word_length);

    std::ostringstream csv;
    csv << "word,ell_l,ell_r,min_ratio,beta,beta_star\n";
    for (const auto& row : hr.table)
      csv << row.word << "," << fmt(row.ell_l) << "," << fmt(row.ell_r) << ","
          << fmt(row.min_ratio) << "," << fmt(row.beta) << "," << fmt(row.beta_star) << "\n";
    write_file(dir / "spectrum_table.csv", csv.str(), out.artifacts);

    double max_identity_defect = 0;
    for (const auto& row : hr.table) {
      const double lhs = (row.beta - row.beta_star) / (row.beta + row.beta_star);
      max_identity_defect = std::max(max_identity_defect, std::abs(lhs - row.min_ratio));
    }
    json sj;
    sj["alpha_hat"] = hr.alpha_hat;
    sj["witness_word"] = hr.witness_word;
    sj["max_word_length"] = hr.max_word_length;
    sj["classes"] = hr.table.size();
    sj["monotone_history"] = hr.monotone_history;
    sj["beta_identity_max_defect"] = max_identity_defect;
    sj["relation_residual_l"] = rep_l.relation_residual();
    sj["relation_residual_r"] = rep_r.relation_residual();
    write_file(dir / "spectrum.json", sj.dump(2) + "\n", out.artifacts);

    check("beta identity (beta-beta*)/(beta+beta*) = min ratio", "Prop. 2.6",
          max_identity_defect, 1e-12, max_identity_defect <= 1e-12);
    check("alpha_hat <= 1", "Eq. (2)", hr.alpha_hat, 1.0, hr.alpha_hat <= 1.0);
    bool mono = true;
    for (size_t i = 1; i < hr.monotone_history.size(); ++i)
      if (hr.monotone_history[i] > hr.monotone_history[i - 1]) mono = false;
    check("alpha_hat nonincreasing in word length", "Thm. 2.3", mono ? 1 : 0, 1, mono);
  }

  // ---- manifest ----
  out.all_pass = true;
  for (const auto& c : out.checks) out.all_pass &= c.pass;
  json mj;
  mj["tool"] = "adsmax";
  mj["version"] = kVersion;
  mj["config_hash"] =
      [&] {
        std::ostringstream os;
        os << std::hex << std::setw(16) << std::setfill('0')
           << util::fnv1a(config.raw_text.data(), config.raw_text.size());
        return os.str();
      }();
  mj["deterministic"] = deterministic;
  mj["config"] = json::parse(config.raw_text.empty() ? "{}" : config.raw_text);
  json checks = json::array();
  for (const auto& c : out.checks)
    checks.push_back({{"claim", c.claim},
                      {"ref", c.ref},
                      {"measured", c.measured},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  mj["checks"] = std::move(checks);
  mj["all_pass"] = out.all_pass;
  mj["artifacts"] = out.artifacts;
  write_file(dir / "manifest.json", mj.dump(2) + "\n", out.artifacts);
  return out;
}

std::string report_text(const std::string& out_dir) {
  const fs::path mp = fs::path(out_dir) / "manifest.json";
  if (!fs::exists(mp)) throw ConfigError("no manifest.json in " + out_dir);
  std::ifstream in(mp);
  json mj;
  try {
    in >> mj;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("manifest parse error: ") + e.what());
  }

  std::ostringstream os;
  os << "adsmax " << mj.value("version", "?") << "  run report  (config "
     << mj.value("config_hash", "?") << (mj.value("deterministic", false) ? ", deterministic" : "")
     << ")\n\n";
  os << std::left << std::setw(50) << "claim" << std::setw(20) << "ref" << std::right
     << std::setw(13) << "measured" << std::setw(13) << "tolerance" << "  verdict\n";
  os << std::string(105, '-') << "\n";
  for (const auto& c : mj["checks"]) {
    std::ostringstream meas, tol;
    meas.precision(5);
    tol.precision(5);
    meas << c["measured"].get<double>();
    tol << c["tolerance"].get<double>();
    os << std::left << std::setw(50) << c["claim"].get<std::string>() << std::setw(20)
       << c["ref"].get<std::string>() << std::right << std::setw(13) << meas.str()
       << std::setw(13) << tol.str() << "  " << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
  }
  os << "\noverall: " << (mj.value("all_pass", false) ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace adsmax
