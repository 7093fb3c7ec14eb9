// Command-line front end: fitting, geodesics, shooting and population statistics.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "h2c/io.hpp"
#include "h2c/shapes.hpp"

namespace fs = std::filesystem;
using namespace h2c;

namespace {

constexpr int kExitBadInput = 2;
constexpr int kExitNotConverged = 3;

struct Globals {
  std::string config_path;
  std::optional<std::string> mode;
  int threads = -1;
  bool error_json = false;
};

RunConfig load_config(const Globals& g) {
  std::string path = g.config_path;
  if (path.empty())
    if (const char* env = std::getenv("H2C_CONFIG")) path = env;
  RunConfig c = path.empty() ? RunConfig{} : config_from_json(read_json(path));
  if (g.mode) c.mode = mode_from_string(*g.mode);
  if (g.threads >= 0) {
    c.threads = g.threads;
  } else if (const char* env = std::getenv("H2C_THREADS")) {
    c.threads = std::atoi(env);
  }
  c.validate();
  for (const auto& w : c.warnings()) std::cerr << "warning: " << w << "\n";
  return c;
}

// Input shapes must be immersions; velocity files are loaded with check = false.
SplineCurve load_curve(const std::string& file, bool check = true) {
  SplineCurve c = curve_from_json(read_json(file));
  if (check && !c.is_immersed(10 * c.space().num_ctrl()))
    throw NotImmersedError("'" + file + "' is not an immersed curve");
  return c;
}

// Curve files from a list of files and directories (directories contribute their
// *.json files in name order).
std::vector<SplineCurve> load_population(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<fs::path> here;
      for (const auto& e : fs::directory_iterator(in))
        if (e.is_regular_file() && e.path().extension() == ".json") here.push_back(e.path());
      std::sort(here.begin(), here.end());
      files.insert(files.end(), here.begin(), here.end());
    } else {
      files.emplace_back(in);
    }
  }
  if (files.empty()) throw InvalidParameterError("no curve files given");
  std::vector<SplineCurve> curves;
  for (const auto& f : files) curves.push_back(load_curve(f.string()));
  return curves;
}

void maybe_normalize(std::vector<SplineCurve>& curves, bool skip) {
  if (skip) return;
  const double factor = normalize_lengths(curves, CurveStencil(curves.front().space(), 5));
  std::cerr << "rescaled the population by " << factor << " to average length 2 pi\n";
}

std::string format_double(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

int report_convergence(bool converged, const std::string& message) {
  if (converged) return 0;
  std::cerr << "not converged: " << message << "\n";
  return kExitNotConverged;
}

void write_svg_if(const std::string& file, const std::vector<SplineCurve>& curves, const SvgStyle& style) {
  if (!file.empty()) write_text(file, emit_svg(curves, style));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geodesics and statistics of closed curves under second-order Sobolev metrics"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "JSON run configuration (env H2C_CONFIG)");
  app.add_option("--mode", g.mode, "parametrized | unparametrized | shape");
  app.add_option("--threads", g.threads, "worker threads, 0 = all cores (env H2C_THREADS)");
  app.add_flag("--error-json", g.error_json, "print errors as JSON on stderr");

  int code = 0;

  // fit
  auto* fit = app.add_subcommand("fit", "least-squares spline fit of a closed point list");
  std::string fit_in, fit_out;
  std::optional<int> fit_n, fit_deg;
  fit->add_option("points", fit_in, "CSV with x,y rows")->required();
  fit->add_option("--nctrl", fit_n, "number of controls N_theta");
  fit->add_option("--degree", fit_deg, "spline degree n_theta");
  fit->add_option("-o,--output", fit_out, "curve JSON")->required();
  fit->callback([&] {
    RunConfig c = load_config(g);
    if (fit_n) c.num_theta = *fit_n;
    if (fit_deg) c.theta_degree = *fit_deg;
    c.validate();
    write_text(fit_out, dump(to_json(fit_points(read_points_csv(fit_in), c.curve_space()))));
  });

  // synth
  auto* synth = app.add_subcommand("synth", "synthetic test curve");
  std::string synth_name, synth_out;
  double synth_noise = 0.0, synth_phase = 0.0;
  int synth_freq = 12;
  std::optional<int> synth_n;
  synth->add_option("name", synth_name, "circle, ellipse, wrap, propeller<k>")->required();
  synth->add_option("--noise", synth_noise, "amplitude of the sinusoidal normal noise");
  synth->add_option("--freq", synth_freq, "noise frequency");
  synth->add_option("--phase", synth_phase, "noise phase");
  synth->add_option("--nctrl", synth_n, "number of controls N_theta");
  synth->add_option("-o,--output", synth_out, "curve JSON")->required();
  synth->callback([&] {
    RunConfig c = load_config(g);
    if (synth_n) c.num_theta = *synth_n;
    c.validate();
    const SplineCurve curve =
        fit_plane_curve(shapes::make(synth_name, synth_noise, synth_freq, synth_phase), c.curve_space());
    if (!curve.is_immersed(10 * c.num_theta)) throw NotImmersedError("generated curve is not immersed");
    write_text(synth_out, dump(to_json(curve)));
  });

  // dist
  auto* dist = app.add_subcommand("dist", "geodesic distance between two curves");
  std::string dist_a, dist_b, dist_out;
  bool dist_audit = false;
  dist->add_option("a", dist_a)->required();
  dist->add_option("b", dist_b)->required();
  dist->add_option("-o,--output", dist_out, "geodesic result JSON");
  dist->add_flag("--audit-symmetry", dist_audit, "also solve b -> a and print the relative asymmetry");
  dist->callback([&] {
    const RunConfig c = load_config(g);
    const SplineCurve a = load_curve(dist_a), b = load_curve(dist_b);
    const GeodesicResult r = solve(c.mode, c.metric, a, b, c.disc, c.solver);
    std::cout << format_double(r.distance) << "\n";
    if (!dist_out.empty()) write_text(dist_out, dump(to_json(r, c)));
    code = report_convergence(r.converged, r.message);
    if (dist_audit) {
      const GeodesicResult back = solve(c.mode, c.metric, b, a, c.disc, c.solver);
      const double top = std::max(r.distance, back.distance);
      std::cout << "backward " << format_double(back.distance) << "\n";
      std::cout << "asymmetry " << format_double(top > 0 ? std::abs(r.distance - back.distance) / top : 0.0) << "\n";
      if (code == 0) code = report_convergence(back.converged, back.message);
    }
  });

  // bvp
  auto* bvp = app.add_subcommand("bvp", "geodesic path between two curves");
  std::string bvp_a, bvp_b, bvp_out, bvp_svg;
  int bvp_frames = 6, bvp_markers = 0;
  bvp->add_option("a", bvp_a)->required();
  bvp->add_option("b", bvp_b)->required();
  bvp->add_option("-o,--output", bvp_out, "geodesic result JSON")->required();
  bvp->add_option("--svg", bvp_svg, "montage of time snapshots");
  bvp->add_option("--frames", bvp_frames, "number of snapshots in the montage");
  bvp->add_option("--markers", bvp_markers, "parameter markers per curve");
  bvp->callback([&] {
    const RunConfig c = load_config(g);
    const GeodesicResult r = solve(c.mode, c.metric, load_curve(bvp_a), load_curve(bvp_b), c.disc, c.solver);
    write_text(bvp_out, dump(to_json(r, c)));
    std::vector<double> times;
    for (int k = 0; k < bvp_frames; ++k) times.push_back(bvp_frames > 1 ? static_cast<double>(k) / (bvp_frames - 1) : 0.0);
    SvgStyle style;
    style.markers = bvp_markers;
    write_svg_if(bvp_svg, snapshots(r.path, times), style);
    std::cout << format_double(r.distance) << "\n";
    code = report_convergence(r.converged, r.message);
  });

  // exp
  auto* exp = app.add_subcommand("exp", "discrete geodesic from a curve and an initial velocity");
  std::string exp_c, exp_v, exp_out, exp_svg, exp_final;
  std::optional<int> exp_steps;
  exp->add_option("curve", exp_c)->required();
  exp->add_option("velocity", exp_v)->required();
  exp->add_option("--steps", exp_steps, "number of steps K");
  exp->add_option("-o,--output", exp_out, "discrete path JSON")->required();
  exp->add_option("--svg", exp_svg, "montage of the discrete path");
  exp->add_option("--final", exp_final, "end curve as curve JSON");
  exp->callback([&] {
    RunConfig c = load_config(g);
    if (exp_steps) c.steps = *exp_steps;
    c.validate();
    const DiscretePath p = shoot(c.metric, load_curve(exp_c), load_curve(exp_v, false), c.steps);
    write_text(exp_out, dump(to_json(p, c)));
    write_svg_if(exp_svg, p.curves, {});
    if (!exp_final.empty()) write_text(exp_final, dump(to_json(p.back())));
  });

  // log
  auto* log = app.add_subcommand("log", "initial velocity of the geodesic from a to b");
  std::string log_a, log_b, log_out;
  log->add_option("a", log_a)->required();
  log->add_option("b", log_b)->required();
  log->add_option("-o,--output", log_out, "velocity as curve JSON")->required();
  log->callback([&] {
    const RunConfig c = load_config(g);
    const GeodesicResult r = solve(c.mode, c.metric, load_curve(log_a), load_curve(log_b), c.disc, c.solver);
    write_text(log_out, dump(to_json(log_map(r))));
  });

  // mean
  auto* mean = app.add_subcommand("mean", "Karcher mean of a population");
  std::vector<std::string> mean_in;
  std::string mean_out;
  bool mean_raw = false;
  mean->add_option("inputs", mean_in, "curve files or directories")->required();
  mean->add_option("-o,--output", mean_out, "mean result JSON")->required();
  mean->add_flag("--no-normalize", mean_raw, "skip the rescaling to average length 2 pi");
  mean->callback([&] {
    const RunConfig c = load_config(g);
    std::vector<SplineCurve> curves = load_population(mean_in);
    maybe_normalize(curves, mean_raw);
    const MeanResult r = karcher_mean(c.metric, curves, c.population(), c.mean);
    for (std::size_t k = 0; k < r.history.size(); ++k) std::cerr << "iteration " << k << " F " << r.history[k] << "\n";
    write_text(mean_out, dump(to_json(r, c)));
    std::cout << "objective " << format_double(r.objective) << " gradient " << format_double(r.grad_norm) << "\n";
    code = report_convergence(r.converged, r.message);
  });

  // pca
  auto* pcacmd = app.add_subcommand("pca", "tangent principal components at the mean");
  std::vector<std::string> pca_in;
  std::string pca_mean, pca_out, pca_svg;
  int pca_modes = 0;
  bool pca_raw = false;
  pcacmd->add_option("inputs", pca_in, "curve files or directories")->required();
  pcacmd->add_option("--mean", pca_mean, "mean result or curve JSON")->required();
  pcacmd->add_option("--modes", pca_modes, "number of modes (0: all)");
  pcacmd->add_option("-o,--output", pca_out, "PCA result JSON")->required();
  pcacmd->add_option("--svg", pca_svg, "geodesics along the first mode at -3..3 sigma");
  pcacmd->add_flag("--no-normalize", pca_raw, "skip the rescaling to average length 2 pi");
  pcacmd->callback([&] {
    const RunConfig c = load_config(g);
    std::vector<SplineCurve> curves = load_population(pca_in);
    maybe_normalize(curves, pca_raw);
    const Json mj = read_json(pca_mean);
    const SplineCurve base = mj.value("format", "") == "h2c.mean" ? curve_from_json(mj.at("mean")) : curve_from_json(mj);
    const TangentDataset data = tangent_dataset(c.metric, base, curves, c.population());
    const PcaResult r = pca(data, pca_modes);
    if (r.truncated) std::cerr << "warning: only " << r.rank << " modes have positive variance\n";
    write_text(pca_out, dump(to_json(r, base, c)));
    for (Eigen::Index i = 0; i < r.explained.size(); ++i)
      std::cout << "mode " << i + 1 << " variance " << format_double(r.eigenvalues(i)) << " explained "
                << format_double(r.explained(i)) << "\n";
    if (!pca_svg.empty() && !r.modes.empty()) {
      // Samples at -3, -2, ..., 3 standard deviations along the first mode.
      const auto [plus, minus] = mode_geodesics(c.metric, base, r, 0, 3.0, 3 * std::max(1, c.steps / 3));
      const int stride = plus.steps() / 3;
      std::vector<SplineCurve> row;
      for (int k = 3; k >= 1; --k) row.push_back(minus.curves[k * stride]);
      row.push_back(base);
      for (int k = 1; k <= 3; ++k) row.push_back(plus.curves[k * stride]);
      write_text(pca_svg, emit_svg(row, {}));
    }
  });

  // distmat
  auto* distmat = app.add_subcommand("distmat", "pairwise distance matrix");
  std::vector<std::string> dm_in;
  std::string dm_out, dm_rho, dm_json;
  bool dm_audit = false, dm_raw = false;
  distmat->add_option("inputs", dm_in, "curve files or directories")->required();
  distmat->add_option("-o,--output", dm_out, "distance matrix CSV")->required();
  distmat->add_option("--rho", dm_rho, "per-pair second-order energy share CSV");
  distmat->add_option("--json", dm_json, "summary JSON");
  distmat->add_flag("--audit-symmetry", dm_audit, "also solve every pair in reverse");
  distmat->add_flag("--no-normalize", dm_raw, "skip the rescaling to average length 2 pi");
  distmat->callback([&] {
    const RunConfig c = load_config(g);
    std::vector<SplineCurve> curves = load_population(dm_in);
    maybe_normalize(curves, dm_raw);
    const DistanceMatrix m = distance_matrix(c.metric, curves, c.population(), dm_audit);
    write_text(dm_out, matrix_csv(m.distance));
    if (!dm_rho.empty()) write_text(dm_rho, matrix_csv(m.rho_h2));
    for (const auto& msg : m.messages) std::cerr << msg << "\n";
    std::cout << "rho_h2 mean " << format_double(m.rho_mean) << " std " << format_double(m.rho_std) << "\n";
    if (dm_audit) std::cout << "max asymmetry " << format_double(m.max_asymmetry) << "\n";
    if (!dm_json.empty()) {
      Json j{{"format", "h2c.distance_matrix"},
             {"size", curves.size()},
             {"rho_h2_mean", m.rho_mean},
             {"rho_h2_std", m.rho_std},
             {"failed", m.failed.sum() / 2},
             {"messages", m.messages}};
      if (dm_audit) j["max_asymmetry"] = m.max_asymmetry;
      j["config"] = to_json(c);
      write_text(dm_json, dump(j));
    }
    if (m.failed.sum() > 0) code = kExitNotConverged;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  } catch (const Error& e) {
    const int exit_code = static_cast<int>(e.kind());
    if (g.error_json)
      std::cerr << Json{{"error", {{"code", e.code()}, {"exit_code", exit_code}, {"message", e.what()}}}}.dump() << "\n";
    else
      std::cerr << "error (" << e.code() << "): " << e.what() << "\n";
    return exit_code;
  }
  return code;
}
