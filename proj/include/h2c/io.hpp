#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

#include "h2c/bvp.hpp"
#include "h2c/ivp.hpp"
#include "h2c/statistics.hpp"

namespace h2c {

using Json = nlohmann::ordered_json;

/// Every user-facing parameter of a run in one record.
struct RunConfig {
  MetricParams metric;
  Discretization disc;
  int num_theta = 40;    // curve controls N_theta used when fitting or generating curves
  int theta_degree = 3;  // n_theta
  int steps = 20;        // K, discrete geodesic steps
  SolverOptions solver;  // the monitor is not part of the record
  MeanOptions mean;
  Mode mode = Mode::unparametrized;
  unsigned seed = 0;
  int threads = 0;

  void validate() const;
  // Settings outside the convergence theory (n_t < 2 or n_theta < 3).
  std::vector<std::string> warnings() const;

  SplineSpace1D curve_space() const { return SplineSpace1D::periodic(theta_degree, num_theta); }
  PopulationOptions population() const;
};

Json to_json(const SplineSpace1D& space);
Json to_json(const SplineCurve& curve);
Json to_json(const SplinePath& path);
Json to_json(const DiffeoSpline& phi);
Json to_json(const RigidMotion& motion);
Json to_json(const EnergyReport& report);
Json to_json(const RunConfig& config);
Json to_json(const GeodesicResult& result, const RunConfig& config);
Json to_json(const DiscretePath& path, const RunConfig& config);
Json to_json(const MeanResult& result, const RunConfig& config);
Json to_json(const PcaResult& result, const SplineCurve& base, const RunConfig& config);

// Parsers throw InvalidParameterError (malformed content) or ShapeError (sizes).
SplineSpace1D space_from_json(const Json& j);
SplineCurve curve_from_json(const Json& j);
SplinePath path_from_json(const Json& j);
DiffeoSpline diffeo_from_json(const Json& j);
RigidMotion motion_from_json(const Json& j);
RunConfig config_from_json(const Json& j);
GeodesicResult geodesic_from_json(const Json& j);
DiscretePath discrete_path_from_json(const Json& j);

/// Canonical text of a document: two-space indentation, 17 significant digits
/// for floating-point numbers and a trailing newline.
std::string dump(const Json& j);
Json read_json(const std::filesystem::path& file);
void write_text(const std::filesystem::path& file, const std::string& text);

/// Points from CSV text: one "x,y" (or "x,y,theta") row per line; blank lines, '#' comments and
/// a non-numeric header row are skipped.
Eigen::MatrixXd parse_points_csv(const std::string& text);
Eigen::MatrixXd read_points_csv(const std::filesystem::path& file);

/// Fit of a closed polygon, sampled uniformly in the parameter unless a third
/// column gives theta (with uniform sampling a repeated first
/// point at the end is dropped).
SplineCurve fit_points(const Eigen::MatrixXd& points, const SplineSpace1D& space);

/// Matrix as CSV with shortest round-trip numbers (NaN written as "nan").
std::string matrix_csv(const Eigen::MatrixXd& m);

struct SvgStyle {
  int width = 800;
  int height = 400;
  int samples = 200;         // points per polyline
  int markers = 0;           // parameter markers at theta = 2 pi k / markers
  bool side_by_side = true;  // montage layout; otherwise overlay
};

/// Deterministic SVG of curves drawn as polylines, one <g class="curve"> group per
/// curve, on a viewbox fitted to the data with a 5% margin.
std::string emit_svg(const std::vector<SplineCurve>& curves, const SvgStyle& style = {});

/// Snapshots of a path at the given times.
std::vector<SplineCurve> snapshots(const SplinePath& path, const std::vector<double>& times);

}  // namespace h2c
