#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "polyflow/cli.hpp"
#include "polyflow/io.hpp"

using namespace polyflow;

namespace {

// run_cli writes reports to stdout and summaries to stderr; capture both so
// test output stays readable and assertions can inspect the text.
struct CaptureStreams {
  std::ostringstream out, err;
  std::streambuf* old_out;
  std::streambuf* old_err;
  CaptureStreams()
      : old_out(std::cout.rdbuf(out.rdbuf())), old_err(std::cerr.rdbuf(err.rdbuf())) {}
  ~CaptureStreams() {
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
  }
};

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const char* name) : path(std::filesystem::temp_directory_path() / name) {}
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("selftest passes on a healthy build and fails when corrupted") {
  CaptureStreams cap;
  CHECK(run_cli({"selftest", "--trials", "10"}) == kExitOk);
  CHECK(cap.out.str().find("[ ok ]") != std::string::npos);
  CHECK(cap.out.str().find("[FAIL]") == std::string::npos);

  CaptureStreams cap2;
  CHECK(run_cli({"selftest", "--trials", "10", "--corrupt-b-kernel"}) == kExitNumerical);
  CHECK(cap2.out.str().find("[FAIL]") != std::string::npos);
}

TEST_CASE("malformed invocations exit with the validation code") {
  CaptureStreams cap;
  CHECK(run_cli({}) == kExitValidation);
  CHECK(run_cli({"unknown-subcommand"}) == kExitValidation);
  CHECK(run_cli({"selftest", "--trials", "-3"}) == kExitValidation);
  CHECK(run_cli({"flow", "--lengths", "1,1.2,0.9,1.05", "--dt", "0"}) == kExitValidation);
  CHECK(run_cli({"flow"}) == kExitValidation);
  CHECK(run_cli({"flow", "--lengths", "1,1.2,0.9", "--polygon", "x.json"}) == kExitValidation);
  CHECK(run_cli({"flow", "--lengths", "1,banana,2"}) == kExitValidation);
  CHECK(run_cli({"enumerate", "--lengths", "1,1,3"}) == kExitValidation);
}

TEST_CASE("flow writes a parseable deterministic trajectory") {
  TempFile traj("polyflow_cli_traj.jsonl");
  TempFile svg("polyflow_cli_flow.svg");
  {
    CaptureStreams cap;
    const int rc = run_cli({"flow", "--lengths", "1,1.2,0.9,1.05,1.15", "--seed", "9", "--out",
                            traj.path.string(), "--svg", svg.path.string()});
    CHECK(rc == kExitOk);
    CHECK(cap.err.str().find("stop=converged") != std::string::npos);
  }
  const TrajectoryFile file = load_trajectory(traj.path);
  CHECK(file.reason == "converged");
  CHECK_FALSE(file.truncated);
  REQUIRE(!file.steps.empty());
  CHECK(file.steps.back().residual <= file.config.grad_tol * (1.0 + 1.2 + 0.9 + 1.05 + 1.15));
  CHECK(std::filesystem::file_size(svg.path) > 0);

  // Same seed, same stream.
  TempFile traj2("polyflow_cli_traj2.jsonl");
  {
    CaptureStreams cap;
    CHECK(run_cli({"flow", "--lengths", "1,1.2,0.9,1.05,1.15", "--seed", "9", "--out",
                   traj2.path.string()}) == kExitOk);
  }
  std::ifstream a(traj.path), b(traj2.path);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
}

TEST_CASE("flow accepts a polygon document start") {
  TempFile doc_file("polyflow_cli_start.json");
  const Polygon square(CycleSize(4), {Complex(-0.5, -0.5), Complex(0.5, -0.5), Complex(0.5, 0.5),
                                      Complex(-0.5, 0.5)});
  save_polygon_document(make_document(square), doc_file.path);

  TempFile traj("polyflow_cli_doc_traj.jsonl");
  CaptureStreams cap;
  const int rc =
      run_cli({"flow", "--polygon", doc_file.path.string(), "--out", traj.path.string()});
  CHECK(rc == kExitOk);
  // The square is already critical: the flow stops immediately.
  const TrajectoryFile file = load_trajectory(traj.path);
  CHECK(file.reason == "converged");
  CHECK(file.steps.size() == 1);
}

TEST_CASE("check diagnoses a critical polygon from stdin") {
  const Polygon square(CycleSize(4), {Complex(-0.5, -0.5), Complex(0.5, -0.5), Complex(0.5, 0.5),
                                      Complex(-0.5, 0.5)});
  const std::string text = format_polygon_document(make_document(square));
  std::istringstream input(text);
  auto* old_in = std::cin.rdbuf(input.rdbuf());
  CaptureStreams cap;
  const int rc = run_cli({"check"});
  std::cin.rdbuf(old_in);
  CHECK(rc == kExitOk);
  const std::string report = cap.out.str();
  CHECK(report.find("n: 4") != std::string::npos);
  CHECK(report.find("admissible: yes") != std::string::npos);
  CHECK(report.find("collinear: no") != std::string::npos);
  CHECK(report.find("multipliers") != std::string::npos);
  CHECK(report.find("oriented area: 1") != std::string::npos);
  CHECK(report.find("quadrilateral relation residual") != std::string::npos);
}

TEST_CASE("check reports collinear polygons without diagnostics") {
  TempFile doc_file("polyflow_cli_flat.json");
  const Polygon flat(CycleSize(4), {Complex(0, 0), Complex(1, 0), Complex(2, 0), Complex(0.5, 0)});
  save_polygon_document(make_document(flat), doc_file.path);
  CaptureStreams cap;
  CHECK(run_cli({"check", doc_file.path.string()}) == kExitOk);
  CHECK(cap.out.str().find("collinear: yes") != std::string::npos);
  CHECK(cap.out.str().find("criticality residual") == std::string::npos);
}

TEST_CASE("check maps a missing file to the io exit code") {
  CaptureStreams cap;
  CHECK(run_cli({"check", "/nonexistent/file.json"}) == kExitIo);
}

TEST_CASE("enumerate writes a cluster report and validates lengths") {
  TempFile report("polyflow_cli_report.json");
  {
    CaptureStreams cap;
    const int rc = run_cli({"enumerate", "--lengths", "1,1.2,0.95,1.1", "--starts", "8", "--seed",
                            "4", "--out", report.path.string()});
    CHECK(rc == kExitOk);
    CHECK(cap.err.str().find("clusters from 8 starts") != std::string::npos);
  }
  std::ifstream in(report.path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str().find("\"delta_n\": 2") != std::string::npos);

  // Singular lengths are refused with the sign witness in the message.
  CaptureStreams cap;
  CHECK(run_cli({"enumerate", "--lengths", "1,1,1,1"}) == kExitValidation);
  CHECK(cap.err.str().find("signs") != std::string::npos);

  // Zero starts is a legal, empty search.
  CaptureStreams cap2;
  CHECK(run_cli({"enumerate", "--lengths", "1,1.2,0.95,1.1", "--starts", "0"}) == kExitOk);
}
