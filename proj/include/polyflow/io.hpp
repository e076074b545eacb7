#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polyflow/flow.hpp"
#include "polyflow/relations.hpp"

namespace polyflow {

// On-disk polygon: {"n": N, "vertices": [[x, y], ...], "lengths": [...]?,
// "meta": {...}?}. Doubles survive write-then-read bitwise.
struct PolygonDocument {
  int n = 0;
  std::vector<Complex> vertices;
  std::optional<std::vector<double>> lengths;
  std::string meta_json;  // serialized meta object, "{}" when absent

  [[nodiscard]] Polygon polygon() const;
};

[[nodiscard]] PolygonDocument make_document(const Polygon& z,
                                            const std::optional<std::vector<double>>& lengths = std::nullopt);

// Throws ValidationError on malformed JSON or violated shape invariants.
[[nodiscard]] PolygonDocument parse_polygon_document(const std::string& text);
[[nodiscard]] std::string format_polygon_document(const PolygonDocument& doc);

[[nodiscard]] PolygonDocument load_polygon_document(const std::filesystem::path& path);
void save_polygon_document(const PolygonDocument& doc, const std::filesystem::path& path);

// Trajectory stream: a header line echoing the flow config, then one JSON
// object per accepted step. An infinite developed perimeter is written as the
// string "inf" (JSON has no infinity).
void write_trajectory(std::ostream& out, const FlowConfig& cfg, const FlowTrajectory& trajectory,
                      StopReason reason);

struct TrajectoryFile {
  FlowConfig config;
  std::string reason;
  std::vector<TrajectoryStep> steps;
  // True when the stream ends in an unparseable final line (interrupted
  // write); the steps before it are still returned.
  bool truncated = false;
};

[[nodiscard]] TrajectoryFile read_trajectory(std::istream& in);
[[nodiscard]] TrajectoryFile load_trajectory(const std::filesystem::path& path);

// Cluster report: lengths, per-cluster area/count/residual/vertices, and the
// closed-form counting data.
[[nodiscard]] std::string format_cluster_report(const LengthSpec& l, const EnumerationResult& result,
                                                const ClusterRelationReport& relations);
void save_cluster_report(const LengthSpec& l, const EnumerationResult& result,
                         const ClusterRelationReport& relations, const std::filesystem::path& path);

// Static SVG with three panels: area vs step, developed perimeter vs step
// (gaps where it is infinite), and four polygon snapshots at the start, one
// third, two thirds, and the end of the run.
[[nodiscard]] std::string render_flow_svg(const FlowTrajectory& trajectory);

}  // namespace polyflow
