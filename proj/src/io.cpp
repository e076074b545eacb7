#include "polyflow/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace polyflow {

using nlohmann::json;

Polygon PolygonDocument::polygon() const {
  return Polygon(CycleSize(n), vertices);
}

PolygonDocument make_document(const Polygon& z, const std::optional<std::vector<double>>& lengths) {
  PolygonDocument doc;
  doc.n = z.n();
  doc.vertices = z.values();
  doc.lengths = lengths;
  doc.meta_json = "{}";
  return doc;
}

namespace {

json vertices_to_json(const std::vector<Complex>& vs) {
  json arr = json::array();
  for (const auto& v : vs) arr.push_back(json::array({v.real(), v.imag()}));
  return arr;
}

std::vector<Complex> vertices_from_json(const json& arr, int expected, const char* what) {
  if (!arr.is_array()) throw ValidationError(std::string(what) + ": vertices must be an array");
  if (static_cast<int>(arr.size()) != expected) {
    throw ValidationError(std::string(what) + ": vertices length " + std::to_string(arr.size()) +
                          " != n " + std::to_string(expected));
  }
  std::vector<Complex> out;
  out.reserve(arr.size());
  for (const auto& item : arr) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
      throw ValidationError(std::string(what) + ": each vertex must be a [x, y] number pair");
    }
    out.emplace_back(item[0].get<double>(), item[1].get<double>());
  }
  return out;
}

}  // namespace

PolygonDocument parse_polygon_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("polygon document: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("polygon document: top level must be an object");
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw ValidationError("polygon document: missing integer field n");
  }
  PolygonDocument doc;
  doc.n = j["n"].get<int>();
  if (doc.n < 3) throw ValidationError("polygon document: n must be at least 3");
  if (!j.contains("vertices")) throw ValidationError("polygon document: missing vertices");
  doc.vertices = vertices_from_json(j["vertices"], doc.n, "polygon document");
  if (j.contains("lengths") && !j["lengths"].is_null()) {
    if (!j["lengths"].is_array() || static_cast<int>(j["lengths"].size()) != doc.n) {
      throw ValidationError("polygon document: lengths must be an array of n numbers");
    }
    std::vector<double> ls;
    for (const auto& item : j["lengths"]) {
      if (!item.is_number()) throw ValidationError("polygon document: lengths must be numbers");
      const double v = item.get<double>();
      if (!(v > 0.0)) throw ValidationError("polygon document: lengths must be positive");
      ls.push_back(v);
    }
    doc.lengths = std::move(ls);
  }
  doc.meta_json = j.contains("meta") ? j["meta"].dump() : "{}";
  return doc;
}

std::string format_polygon_document(const PolygonDocument& doc) {
  json j;
  j["n"] = doc.n;
  j["vertices"] = vertices_to_json(doc.vertices);
  if (doc.lengths) j["lengths"] = *doc.lengths;
  if (!doc.meta_json.empty() && doc.meta_json != "{}") j["meta"] = json::parse(doc.meta_json);
  return j.dump();
}

PolygonDocument load_polygon_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return parse_polygon_document(buffer.str());
}

void save_polygon_document(const PolygonDocument& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << format_polygon_document(doc) << '\n';
  if (!out) throw IoError("cannot write " + path.string());
}

// ---------------------------------------------------------------------------
// Trajectory streams
// ---------------------------------------------------------------------------

namespace {

json config_to_json(const FlowConfig& cfg) {
  return json{{"dt", cfg.dt},
              {"eps_constraint", cfg.eps_constraint},
              {"newton_max_iter", cfg.newton_max_iter},
              {"max_steps", cfg.max_steps},
              {"grad_tol", cfg.grad_tol},
              {"dt_backoff", cfg.dt_backoff},
              {"snapshot_stride", cfg.snapshot_stride}};
}

FlowConfig config_from_json(const json& j) {
  FlowConfig cfg;
  cfg.dt = j.at("dt").get<double>();
  cfg.eps_constraint = j.at("eps_constraint").get<double>();
  cfg.newton_max_iter = j.at("newton_max_iter").get<int>();
  cfg.max_steps = j.at("max_steps").get<long>();
  cfg.grad_tol = j.at("grad_tol").get<double>();
  cfg.dt_backoff = j.at("dt_backoff").get<double>();
  cfg.snapshot_stride = j.at("snapshot_stride").get<int>();
  return cfg;
}

json step_to_json(const TrajectoryStep& s) {
  json j;
  j["step"] = s.step;
  j["area"] = s.area;
  j["residual"] = s.residual;
  if (std::isinf(s.developed_perimeter)) {
    j["developed_perimeter"] = "inf";
  } else {
    j["developed_perimeter"] = s.developed_perimeter;
  }
  j["membership_residual"] = s.membership_residual;
  j["dt"] = s.dt;
  if (s.snapshot) j["vertices"] = vertices_to_json(*s.snapshot);
  return j;
}

TrajectoryStep step_from_json(const json& j) {
  TrajectoryStep s;
  s.step = j.at("step").get<long>();
  s.area = j.at("area").get<double>();
  s.residual = j.at("residual").get<double>();
  const auto& dp = j.at("developed_perimeter");
  if (dp.is_string()) {
    if (dp.get<std::string>() != "inf") {
      throw ValidationError("trajectory: developed_perimeter must be a number or \"inf\"");
    }
    s.developed_perimeter = std::numeric_limits<double>::infinity();
  } else {
    s.developed_perimeter = dp.get<double>();
  }
  s.membership_residual = j.at("membership_residual").get<double>();
  s.dt = j.at("dt").get<double>();
  if (j.contains("vertices")) {
    const auto& arr = j.at("vertices");
    std::vector<Complex> vs;
    for (const auto& item : arr) vs.emplace_back(item[0].get<double>(), item[1].get<double>());
    s.snapshot = std::move(vs);
  }
  return s;
}

}  // namespace

void write_trajectory(std::ostream& out, const FlowConfig& cfg, const FlowTrajectory& trajectory,
                      StopReason reason) {
  json header;
  header["config"] = config_to_json(cfg);
  header["stop_reason"] = to_string(reason);
  out << header.dump() << '\n';
  for (const auto& step : trajectory.steps) {
    out << step_to_json(step).dump() << '\n';
  }
}

TrajectoryFile read_trajectory(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw ValidationError("trajectory: empty stream");

  TrajectoryFile file;
  json header;
  try {
    header = json::parse(lines.front());
    file.config = config_from_json(header.at("config"));
    file.reason = header.at("stop_reason").get<std::string>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("trajectory: bad header line: ") + e.what());
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    try {
      file.steps.push_back(step_from_json(json::parse(lines[i])));
    } catch (const json::exception& e) {
      if (i + 1 == lines.size()) {
        // Interrupted final write; everything before it stands.
        file.truncated = true;
        break;
      }
      throw ValidationError("trajectory: bad record on line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return file;
}

TrajectoryFile load_trajectory(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_trajectory(in);
}

// ---------------------------------------------------------------------------
// Cluster reports
// ---------------------------------------------------------------------------

std::string format_cluster_report(const LengthSpec& l, const EnumerationResult& result,
                                  const ClusterRelationReport& relations) {
  json j;
  j["lengths"] = l.lengths;
  j["total_starts"] = result.total_starts;
  j["failed_starts"] = result.failed_starts;
  j["delta_n"] = relations.delta;
  j["betti_sum_bound"] = relations.betti_bound;
  json clusters = json::array();
  for (std::size_t i = 0; i < result.clusters.size(); ++i) {
    const auto& c = result.clusters[i];
    json jc;
    jc["area"] = c.mean_area;
    jc["count"] = c.count;
    jc["residual"] = c.residual;
    jc["vertices"] = vertices_to_json(c.representative.values());
    if (i < relations.relation_residuals.size()) {
      jc["relation_residual"] = relations.relation_residuals[i];
    }
    clusters.push_back(std::move(jc));
  }
  j["clusters"] = std::move(clusters);
  return j.dump(2);
}

void save_cluster_report(const LengthSpec& l, const EnumerationResult& result,
                         const ClusterRelationReport& relations, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << format_cluster_report(l, result, relations) << '\n';
  if (!out) throw IoError("cannot write " + path.string());
}

// ---------------------------------------------------------------------------
// SVG rendering
// ---------------------------------------------------------------------------

namespace {

struct PanelFrame {
  double x0, y0, w, h;  // device rectangle
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Polyline through (index, value) samples, split where finite(v) fails.
void plot_series(std::ostringstream& svg, const PanelFrame& f, const std::vector<double>& values,
                 const char* stroke) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const double v : values) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!std::isfinite(lo)) return;
  if (hi - lo < 1e-300) {
    hi = lo + 1.0;
  }
  const double n = std::max<std::size_t>(values.size() - 1, 1);
  auto px = [&](std::size_t i) { return f.x0 + f.w * static_cast<double>(i) / n; };
  auto py = [&](double v) { return f.y0 + f.h - f.h * (v - lo) / (hi - lo); };

  bool open = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      if (open) {
        svg << "' fill='none' stroke='" << stroke << "' stroke-width='1.5'/>\n";
        open = false;
      }
      continue;
    }
    if (!open) {
      svg << "<polyline points='";
      open = true;
    }
    svg << fmt(px(i)) << ',' << fmt(py(values[i])) << ' ';
  }
  if (open) svg << "' fill='none' stroke='" << stroke << "' stroke-width='1.5'/>\n";
  svg << "<text x='" << fmt(f.x0) << "' y='" << fmt(f.y0 + f.h + 14) << "' font-size='10'>min "
      << fmt(lo) << "</text>\n";
  svg << "<text x='" << fmt(f.x0 + f.w - 60) << "' y='" << fmt(f.y0 + f.h + 14)
      << "' font-size='10'>max " << fmt(hi) << "</text>\n";
}

void plot_snapshot(std::ostringstream& svg, const PanelFrame& f, const std::vector<Complex>& vs,
                   long step) {
  double lo_x = vs[0].real(), hi_x = vs[0].real(), lo_y = vs[0].imag(), hi_y = vs[0].imag();
  for (const auto& v : vs) {
    lo_x = std::min(lo_x, v.real());
    hi_x = std::max(hi_x, v.real());
    lo_y = std::min(lo_y, v.imag());
    hi_y = std::max(hi_y, v.imag());
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double cx = (lo_x + hi_x) / 2, cy = (lo_y + hi_y) / 2;
  const double s = 0.42 * std::min(f.w, f.h) / (span / 2);
  auto px = [&](double x) { return f.x0 + f.w / 2 + s * (x - cx); };
  auto py = [&](double y) { return f.y0 + f.h / 2 - s * (y - cy); };
  svg << "<g class='snapshot'><polygon points='";
  for (const auto& v : vs) svg << fmt(px(v.real())) << ',' << fmt(py(v.imag())) << ' ';
  svg << "' fill='none' stroke='#4477aa' stroke-width='1.2'/>";
  svg << "<text x='" << fmt(f.x0 + 4) << "' y='" << fmt(f.y0 + 12) << "' font-size='10'>step "
      << step << "</text></g>\n";
}

}  // namespace

std::string render_flow_svg(const FlowTrajectory& trajectory) {
  const auto& steps = trajectory.steps;
  if (steps.empty()) throw ValidationError("render_flow_svg: empty trajectory");

  std::vector<double> areas, developed;
  for (const auto& s : steps) {
    areas.push_back(s.area);
    developed.push_back(s.developed_perimeter);
  }

  // Snapshot records closest to 0, 1/3, 2/3 and 1 of the accepted range.
  std::vector<std::size_t> with_snapshot;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].snapshot) with_snapshot.push_back(i);
  }
  if (with_snapshot.empty()) throw ValidationError("render_flow_svg: trajectory has no snapshots");
  const long last_step = steps.back().step;
  std::vector<std::size_t> picks;
  for (const double frac : {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}) {
    const double target = frac * static_cast<double>(last_step);
    std::size_t best = with_snapshot.front();
    for (const std::size_t idx : with_snapshot) {
      if (std::abs(static_cast<double>(steps[idx].step) - target) <
          std::abs(static_cast<double>(steps[best].step) - target)) {
        best = idx;
      }
    }
    picks.push_back(best);
  }

  constexpr double panel_w = 360, panel_h = 280, margin = 40, gap = 30;
  const double width = 3 * panel_w + 2 * gap + 2 * margin;
  const double height = panel_h + 2 * margin + 20;

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << fmt(width) << "' height='"
      << fmt(height) << "' viewBox='0 0 " << fmt(width) << ' ' << fmt(height) << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";

  const PanelFrame area_frame{margin, margin, panel_w, panel_h};
  const PanelFrame dev_frame{margin + panel_w + gap, margin, panel_w, panel_h};
  const PanelFrame snap_frame{margin + 2 * (panel_w + gap), margin, panel_w, panel_h};

  for (const auto* f : {&area_frame, &dev_frame, &snap_frame}) {
    svg << "<rect x='" << fmt(f->x0) << "' y='" << fmt(f->y0) << "' width='" << fmt(f->w)
        << "' height='" << fmt(f->h) << "' fill='none' stroke='#999'/>\n";
  }
  svg << "<text x='" << fmt(area_frame.x0) << "' y='" << fmt(margin - 8)
      << "' font-size='12'>oriented area</text>\n";
  svg << "<text x='" << fmt(dev_frame.x0) << "' y='" << fmt(margin - 8)
      << "' font-size='12'>developed perimeter</text>\n";
  svg << "<text x='" << fmt(snap_frame.x0) << "' y='" << fmt(margin - 8)
      << "' font-size='12'>snapshots</text>\n";

  plot_series(svg, area_frame, areas, "#aa3377");
  plot_series(svg, dev_frame, developed, "#228833");

  // 2x2 grid of snapshots inside the third panel.
  const double half_w = snap_frame.w / 2, half_h = snap_frame.h / 2;
  for (std::size_t q = 0; q < picks.size(); ++q) {
    const PanelFrame cell{snap_frame.x0 + (q % 2) * half_w, snap_frame.y0 + (q / 2) * half_h,
                          half_w, half_h};
    plot_snapshot(svg, cell, *steps[picks[q]].snapshot, steps[picks[q]].step);
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace polyflow
