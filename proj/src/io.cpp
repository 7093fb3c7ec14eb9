#include "h2c/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace h2c {

namespace {

template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameterError(std::string("malformed ") + what + ": " + e.what());
  }
}

void expect_format(const Json& j, const char* format) {
  if (!j.is_object() || !j.contains("format") || j.at("format") != format)
    throw InvalidParameterError(std::string("expected a '") + format + "' document");
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from(const Json& rows) {
  if (!rows.is_array() || rows.empty()) throw InvalidParameterError("expected a nonempty array of rows");
  const std::size_t d = rows.at(0).size();
  Eigen::MatrixXd m(rows.size(), d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != d) throw ShapeError("rows of unequal length");
    for (std::size_t k = 0; k < d; ++k) m(i, k) = rows[i][k].get<double>();
  }
  return m;
}

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Eigen::VectorXd vector_from(const Json& a) {
  if (!a.is_array()) throw InvalidParameterError("expected an array of numbers");
  Eigen::VectorXd v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v(i) = a[i].get<double>();
  return v;
}

std::string number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  std::string s(buf);
  return s == "-0.000" ? "0.000" : s;
}

}  // namespace

void RunConfig::validate() const {
  metric.validate();
  disc.validate();
  if (num_theta < 3 || theta_degree < 1 || num_theta <= theta_degree)
    throw InvalidParameterError("curve space needs degree >= 1 and more controls than the degree");
  if (steps < 1) throw InvalidParameterError("the number of discrete steps must be positive");
  if (!(solver.grad_tol > 0.0) || solver.max_iter < 0) throw InvalidParameterError("invalid solver tolerances");
  if (!(mean.grad_tol > 0.0) || mean.max_iter < 0) throw InvalidParameterError("invalid mean tolerances");
}

std::vector<std::string> RunConfig::warnings() const {
  std::vector<std::string> w;
  if (disc.time_degree < 2)
    w.push_back("time degree n_t = " + std::to_string(disc.time_degree) + " < 2: convergence is not guaranteed");
  if (theta_degree < 3)
    w.push_back("curve degree n_theta = " + std::to_string(theta_degree) + " < 3: convergence is not guaranteed");
  return w;
}

PopulationOptions RunConfig::population() const {
  PopulationOptions po;
  po.mode = mode;
  po.disc = disc;
  po.solver = solver;
  po.threads = threads;
  return po;
}

Json to_json(const SplineSpace1D& space) {
  return Json{{"kind", space.is_periodic() ? "periodic" : "clamped"},
              {"degree", space.degree()},
              {"num_ctrl", space.num_ctrl()}};
}

SplineSpace1D space_from_json(const Json& j) {
  return guarded("spline space", [&] {
    const std::string kind = j.at("kind").get<std::string>();
    const int degree = j.at("degree").get<int>(), n = j.at("num_ctrl").get<int>();
    if (kind == "periodic") return SplineSpace1D::periodic(degree, n);
    if (kind == "clamped") return SplineSpace1D::clamped(degree, n);
    throw InvalidParameterError("unknown knot kind '" + kind + "'");
  });
}

Json to_json(const SplineCurve& curve) {
  return Json{{"degree", curve.space().degree()},
              {"num_ctrl", curve.space().num_ctrl()},
              {"dim", curve.dim()},
              {"controls", matrix_json(curve.controls())}};
}

namespace {

int dim_of(const Json& j, Eigen::Index cols) {
  const int d = j.contains("dim") ? j.at("dim").get<int>() : static_cast<int>(cols);
  if (d != cols) throw ShapeError("declared dimension differs from the control points");
  return d;
}

}  // namespace

SplineCurve curve_from_json(const Json& j) {
  return guarded("curve", [&] {
    if (!j.is_object()) throw InvalidParameterError("a curve must be a JSON object");
    SplineSpace1D space = SplineSpace1D::periodic(j.at("degree").get<int>(), j.at("num_ctrl").get<int>());
    Eigen::MatrixXd ctrl = matrix_from(j.at("controls"));
    dim_of(j, ctrl.cols());
    if (ctrl.rows() != space.num_ctrl()) throw ShapeError("curve: number of controls differs from num_ctrl");
    return SplineCurve(std::move(space), std::move(ctrl));
  });
}

Json to_json(const SplinePath& path) {
  const int nt = path.time_space().num_ctrl();
  Json ctrl = Json::array();
  for (int i = 0; i < nt; ++i) ctrl.push_back(matrix_json(path.ctrl_row(i)));
  return Json{{"degree_t", path.time_space().degree()},
              {"num_ctrl_t", nt},
              {"degree", path.curve_space().degree()},
              {"num_ctrl", path.curve_space().num_ctrl()},
              {"dim", path.dim()},
              {"controls", ctrl}};
}

SplinePath path_from_json(const Json& j) {
  return guarded("path", [&] {
    if (!j.is_object()) throw InvalidParameterError("a path must be a JSON object");
    SplineSpace1D ts = SplineSpace1D::clamped(j.at("degree_t").get<int>(), j.at("num_ctrl_t").get<int>());
    SplineSpace1D cs = SplineSpace1D::periodic(j.at("degree").get<int>(), j.at("num_ctrl").get<int>());
    const Json& rows = j.at("controls");
    if (!rows.is_array() || static_cast<int>(rows.size()) != ts.num_ctrl())
      throw ShapeError("path: number of time rows differs from num_ctrl_t");
    Eigen::MatrixXd ctrl;
    for (int i = 0; i < ts.num_ctrl(); ++i) {
      const Eigen::MatrixXd row = matrix_from(rows[i]);
      if (row.rows() != cs.num_ctrl()) throw ShapeError("path: number of controls differs from num_ctrl");
      if (i == 0) ctrl.resize(static_cast<Eigen::Index>(ts.num_ctrl()) * cs.num_ctrl(), row.cols());
      if (row.cols() != ctrl.cols()) throw ShapeError("path: rows of unequal dimension");
      ctrl.middleRows(static_cast<Eigen::Index>(i) * cs.num_ctrl(), cs.num_ctrl()) = row;
    }
    dim_of(j, ctrl.cols());
    return SplinePath(std::move(ts), std::move(cs), std::move(ctrl));
  });
}

Json to_json(const DiffeoSpline& phi) {
  return Json{{"space", to_json(phi.space())}, {"f", vector_json(phi.f())}, {"shift", phi.shift()}};
}

DiffeoSpline diffeo_from_json(const Json& j) {
  return guarded("reparametrization", [&] {
    return DiffeoSpline(space_from_json(j.at("space")), vector_from(j.at("f")), j.at("shift").get<double>());
  });
}

Json to_json(const RigidMotion& motion) {
  return Json{{"angle", motion.angle}, {"translation", {motion.translation.x(), motion.translation.y()}}};
}

RigidMotion motion_from_json(const Json& j) {
  return guarded("rigid motion", [&] {
    const Json& t = j.at("translation");
    if (!t.is_array() || t.size() != 2) throw ShapeError("translation needs two entries");
    return RigidMotion{j.at("angle").get<double>(), Eigen::Vector2d(t[0].get<double>(), t[1].get<double>())};
  });
}

Json to_json(const EnergyReport& r) {
  return Json{{"total", r.total}, {"l2", r.e_l2}, {"h1", r.e_h1}, {"h2", r.e_h2}, {"rho_h2", r.rho_h2()}};
}

namespace {

EnergyReport energy_from(const Json& j) {
  EnergyReport r;
  r.total = j.at("total").get<double>();
  r.e_l2 = j.at("l2").get<double>();
  r.e_h1 = j.at("h1").get<double>();
  r.e_h2 = j.at("h2").get<double>();
  return r;
}

}  // namespace

Json to_json(const RunConfig& c) {
  return Json{
      {"metric",
       {{"a0", c.metric.a0}, {"a1", c.metric.a1}, {"a2", c.metric.a2}, {"scale_invariant", c.metric.scale_invariant}}},
      {"discretization",
       {{"num_time", c.disc.num_time},
        {"time_degree", c.disc.time_degree},
        {"time_quad", c.disc.time_quad},
        {"num_theta", c.num_theta},
        {"theta_degree", c.theta_degree},
        {"space_quad", c.disc.space_quad},
        {"num_phi", c.disc.num_phi},
        {"phi_degree", c.disc.phi_degree},
        {"steps", c.steps}}},
      {"solver",
       {{"grad_tol", c.solver.grad_tol},
        {"max_iter", c.solver.max_iter},
        {"barrier", c.solver.barrier},
        {"shift_grid", c.solver.shift_grid},
        {"mean_grad_tol", c.mean.grad_tol},
        {"mean_max_iter", c.mean.max_iter},
        {"mean_method", c.mean.method == MeanMethod::conjugate_gradient ? "cg" : "gd"}}},
      {"mode", to_string(c.mode)},
      {"seed", c.seed},
      {"threads", c.threads}};
}

RunConfig config_from_json(const Json& j) {
  return guarded("config", [&] {
    if (!j.is_object()) throw InvalidParameterError("a config must be a JSON object");
    // Absent keys keep their defaults, so partial configs are accepted.
    RunConfig c;
    const auto get = [](const Json& obj, const char* key, auto& out) {
      if (obj.contains(key)) out = obj.at(key).get<std::decay_t<decltype(out)>>();
    };
    if (j.contains("metric")) {
      const Json& m = j.at("metric");
      get(m, "a0", c.metric.a0);
      get(m, "a1", c.metric.a1);
      get(m, "a2", c.metric.a2);
      get(m, "scale_invariant", c.metric.scale_invariant);
    }
    if (j.contains("discretization")) {
      const Json& d = j.at("discretization");
      get(d, "num_time", c.disc.num_time);
      get(d, "time_degree", c.disc.time_degree);
      get(d, "time_quad", c.disc.time_quad);
      get(d, "num_theta", c.num_theta);
      get(d, "theta_degree", c.theta_degree);
      get(d, "space_quad", c.disc.space_quad);
      get(d, "num_phi", c.disc.num_phi);
      get(d, "phi_degree", c.disc.phi_degree);
      get(d, "steps", c.steps);
    }
    if (j.contains("solver")) {
      const Json& s = j.at("solver");
      get(s, "grad_tol", c.solver.grad_tol);
      get(s, "max_iter", c.solver.max_iter);
      get(s, "barrier", c.solver.barrier);
      get(s, "shift_grid", c.solver.shift_grid);
      get(s, "mean_grad_tol", c.mean.grad_tol);
      get(s, "mean_max_iter", c.mean.max_iter);
      if (s.contains("mean_method")) {
        const std::string m = s.at("mean_method").get<std::string>();
        if (m == "gd")
          c.mean.method = MeanMethod::gradient_descent;
        else if (m == "cg")
          c.mean.method = MeanMethod::conjugate_gradient;
        else
          throw InvalidParameterError("unknown mean method '" + m + "' (gd or cg)");
      }
    }
    if (j.contains("mode")) c.mode = mode_from_string(j.at("mode").get<std::string>());
    get(j, "seed", c.seed);
    get(j, "threads", c.threads);
    c.validate();
    return c;
  });
}

Json to_json(const GeodesicResult& r, const RunConfig& config) {
  Json j{{"format", "h2c.geodesic"},
         {"mode", to_string(r.mode)},
         {"distance", r.distance},
         {"energy", to_json(r.energy)},
         {"converged", r.converged},
         {"iterations", r.iterations},
         {"grad_norm", r.grad_norm},
         {"message", r.message},
         {"history", r.history},
         {"path", to_json(r.path)}};
  if (r.diffeo) j["reparametrization"] = to_json(*r.diffeo);
  if (r.motion) j["motion"] = to_json(*r.motion);
  j["config"] = to_json(config);
  return j;
}

GeodesicResult geodesic_from_json(const Json& j) {
  return guarded("geodesic result", [&] {
    expect_format(j, "h2c.geodesic");
    GeodesicResult r;
    r.mode = mode_from_string(j.at("mode").get<std::string>());
    r.distance = j.at("distance").get<double>();
    r.energy = energy_from(j.at("energy"));
    r.converged = j.at("converged").get<bool>();
    r.iterations = j.at("iterations").get<int>();
    r.grad_norm = j.at("grad_norm").get<double>();
    r.message = j.at("message").get<std::string>();
    r.history = j.at("history").get<std::vector<double>>();
    r.path = path_from_json(j.at("path"));
    if (j.contains("reparametrization")) r.diffeo = diffeo_from_json(j.at("reparametrization"));
    if (j.contains("motion")) r.motion = motion_from_json(j.at("motion"));
    return r;
  });
}

Json to_json(const DiscretePath& path, const RunConfig& config) {
  Json curves = Json::array();
  for (const auto& c : path.curves) curves.push_back(to_json(c));
  return Json{{"format", "h2c.discrete_path"}, {"steps", path.steps()}, {"curves", curves}, {"config", to_json(config)}};
}

DiscretePath discrete_path_from_json(const Json& j) {
  return guarded("discrete path", [&] {
    expect_format(j, "h2c.discrete_path");
    DiscretePath p;
    for (const auto& c : j.at("curves")) p.curves.push_back(curve_from_json(c));
    if (p.steps() < 1 || p.steps() != j.at("steps").get<int>())
      throw ShapeError("discrete path: step count does not match the curves");
    for (const auto& c : p.curves)
      if (!(c.space() == p.front().space())) throw ShapeError("discrete path: curves in different spaces");
    return p;
  });
}

Json to_json(const MeanResult& r, const RunConfig& config) {
  return Json{{"format", "h2c.mean"},
              {"mean", to_json(r.mean)},
              {"converged", r.converged},
              {"iterations", r.iterations},
              {"objective", r.objective},
              {"grad_norm", r.grad_norm},
              {"message", r.message},
              {"history", r.history},
              {"config", to_json(config)}};
}

Json to_json(const PcaResult& r, const SplineCurve& base, const RunConfig& config) {
  Json modes = Json::array();
  for (const auto& m : r.modes) modes.push_back(to_json(m));
  return Json{{"format", "h2c.pca"},
              {"base", to_json(base)},
              {"eigenvalues", vector_json(r.eigenvalues)},
              {"explained", vector_json(r.explained)},
              {"rank", r.rank},
              {"truncated", r.truncated},
              {"modes", modes},
              {"config", to_json(config)}};
}

namespace {

// nlohmann writes the shortest round-trip form; documents use a fixed 17 digits.
void write_value(std::string& out, const Json& j, int indent) {
  const std::string pad(indent + 2, ' '), close(indent, ' ');
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        write_value(out, value, indent + 2);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write_value(out, j[i], indent + 2);
      }
      out += "\n" + close + "]";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  write_value(out, j, 0);
  return out + "\n";
}

Json read_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InvalidParameterError("cannot read '" + file.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameterError("'" + file.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw InvalidParameterError("cannot write '" + file.string() + "'");
  out << text;
}

Eigen::MatrixXd parse_points_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::array<double, 3>> pts;
  int columns = 0;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    for (char& ch : line)
      if (ch == ';' || ch == '\t') ch = ',';
    std::array<double, 3> p{};
    std::istringstream row(line);
    std::string cell;
    int k = 0;
    bool numeric = true;
    while (std::getline(row, cell, ',')) {
      const auto b = cell.find_first_not_of(' '), e = cell.find_last_not_of(' ');
      if (b == std::string::npos) continue;
      cell = cell.substr(b, e - b + 1);
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        numeric = false;
        break;
      }
      if (k < 3) p[k] = v;
      ++k;
    }
    if (!numeric) {
      if (pts.empty()) continue;  // header
      throw InvalidParameterError("CSV line " + std::to_string(lineno) + " is not numeric");
    }
    if (k != 2 && k != 3) throw ShapeError("CSV line " + std::to_string(lineno) + " needs x,y or x,y,theta");
    if (columns == 0) columns = k;
    if (k != columns) throw ShapeError("CSV line " + std::to_string(lineno) + " has a different column count");
    pts.push_back(p);
  }
  Eigen::MatrixXd m(pts.size(), std::max(columns, 2));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) m(i, k) = pts[i][k];
  return m;
}

Eigen::MatrixXd read_points_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InvalidParameterError("cannot read '" + file.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_points_csv(ss.str());
}

SplineCurve fit_points(const Eigen::MatrixXd& points, const SplineSpace1D& space) {
  if (points.cols() != 2 && points.cols() != 3) throw ShapeError("points need x,y or x,y,theta columns");
  Eigen::Index n = points.rows();
  if (points.cols() == 3) {
    if (n < space.num_ctrl()) throw FitDegenerateError("fewer points than controls");
    const Eigen::VectorXd t = points.col(2);
    return fit_curve(std::vector<double>(t.data(), t.data() + n), points.leftCols(2), space);
  }
  if (n >= 2 && (points.row(0) - points.row(n - 1)).norm() <= 1e-12 * std::max(1.0, points.cwiseAbs().maxCoeff()))
    --n;
  if (n < space.num_ctrl())
    throw FitDegenerateError("fewer points (" + std::to_string(n) + ") than controls (" +
                             std::to_string(space.num_ctrl()) + ")");
  std::vector<double> th(n);
  for (Eigen::Index k = 0; k < n; ++k) th[k] = two_pi * static_cast<double>(k) / static_cast<double>(n);
  return fit_curve(th, points.topRows(n), space);
}

std::string matrix_csv(const Eigen::MatrixXd& m) {
  std::string s;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      if (k) s += ',';
      s += number(m(i, k));
    }
    s += '\n';
  }
  return s;
}

std::vector<SplineCurve> snapshots(const SplinePath& path, const std::vector<double>& times) {
  std::vector<SplineCurve> out;
  for (double t : times) out.push_back(path.curve_at(t));
  return out;
}

std::string emit_svg(const std::vector<SplineCurve>& curves, const SvgStyle& style) {
  const int S = std::max(style.samples, 3);
  std::vector<double> th(S + 1);
  for (int k = 0; k <= S; ++k) th[k] = two_pi * k / S;
  std::vector<Eigen::MatrixXd> pts;
  for (const auto& c : curves) {
    if (c.dim() != 2) throw ShapeError("only planar curves can be drawn");
    pts.push_back(c.eval(th));
  }
  // Side by side: panel i is shifted right by i times the widest curve plus a gap.
  double panel = 0.0;
  for (const auto& p : pts) panel = std::max(panel, p.col(0).maxCoeff() - p.col(0).minCoeff());
  const double pitch = 1.15 * panel;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (style.side_by_side) pts[i].col(0).array() += static_cast<double>(i) * pitch - pts[i].col(0).minCoeff();
    pts[i].col(1) *= -1.0;  // SVG y points down
  }
  double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
  if (!pts.empty()) {
    x0 = y0 = 1e300;
    x1 = y1 = -1e300;
    for (const auto& p : pts) {
      x0 = std::min(x0, p.col(0).minCoeff());
      x1 = std::max(x1, p.col(0).maxCoeff());
      y0 = std::min(y0, p.col(1).minCoeff());
      y1 = std::max(y1, p.col(1).maxCoeff());
    }
  }
  const double mx = 0.05 * std::max(x1 - x0, 1e-12), my = 0.05 * std::max(y1 - y0, 1e-12);
  x0 -= mx, x1 += mx, y0 -= my, y1 += my;
  const double stroke = 0.004 * std::max(x1 - x0, y1 - y0);

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(style.width) + "\" height=\"" +
       std::to_string(style.height) + "\" viewBox=\"" + fixed(x0) + " " + fixed(y0) + " " + fixed(x1 - x0) + " " +
       fixed(y1 - y0) + "\" preserveAspectRatio=\"xMidYMid meet\">\n";
  s += "<g class=\"axes\" stroke=\"#bbbbbb\" stroke-width=\"" + fixed(0.5 * stroke) + "\">\n";
  s += "<line x1=\"" + fixed(x0) + "\" y1=\"0.000\" x2=\"" + fixed(x1) + "\" y2=\"0.000\"/>\n";
  s += "<line x1=\"" + fixed(pts.empty() ? 0.0 : x0 + mx) + "\" y1=\"" + fixed(y0) + "\" x2=\"" +
       fixed(pts.empty() ? 0.0 : x0 + mx) + "\" y2=\"" + fixed(y1) + "\"/>\n";
  s += "</g>\n";
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    // Blue to red along the sequence.
    const double u = n > 1 ? static_cast<double>(i) / (n - 1) : 0.0;
    char color[8];
    std::snprintf(color, sizeof color, "#%02x%02x%02x", static_cast<int>(std::lround(40 + 200 * u)), 60,
                  static_cast<int>(std::lround(240 - 200 * u)));
    s += "<g class=\"curve\" stroke=\"" + std::string(color) + "\" fill=\"none\" stroke-width=\"" + fixed(stroke) +
         "\">\n<polyline points=\"";
    for (int k = 0; k <= S; ++k) {
      if (k) s += ' ';
      s += fixed(pts[i](k, 0)) + "," + fixed(pts[i](k, 1));
    }
    s += "\"/>\n";
    if (style.markers > 0) {
      std::vector<double> mt(style.markers);
      for (int k = 0; k < style.markers; ++k) mt[k] = two_pi * k / style.markers;
      Eigen::MatrixXd mp = curves[i].eval(mt);
      const double shift = pts[i](0, 0) - curves[i].eval(0.0)(0);
      for (int k = 0; k < style.markers; ++k)
        s += "<circle cx=\"" + fixed(mp(k, 0) + shift) + "\" cy=\"" + fixed(-mp(k, 1)) + "\" r=\"" +
             fixed(2.0 * stroke) + "\" fill=\"" + std::string(color) + "\"/>\n";
    }
    s += "</g>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace h2c
