#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edr/errors.hpp"
#include "edr/graph_core.hpp"
#include "edr/instances.hpp"
#include "edr/pipeline.hpp"
#include "edr/separations.hpp"
#include "edr/streams.hpp"

// JSON and DOT text for instances, captures, results and traces. All JSON is
// emitted with sorted keys and two-space indentation so equal inputs give
// byte-identical files.
namespace edr {

struct EndSpec {
  int id = 0;
  std::optional<int> vertex_degree;  // empty means thick
};

struct InstanceSpec {
  std::string name;
  InstanceParams params;
  std::optional<std::vector<EndSpec>> ends;  // overrides the built-in metadata
  std::optional<bool> infinitely_many_ends;
};

InstanceSpec parse_instance_spec(const std::string& json_text);
std::string instance_spec_json(const InstanceSpec& spec);
// The built-in instance with any declared metadata replaced. Witness rays are
// kept for end ids the instance already knows.
LazyGraph load_instance(const InstanceSpec& spec);
InstanceSpec spec_of(const LazyGraph& g);

std::string capture_json(const CapturingSequence& seq);
// Rebuilds each separation on the truncation at its recorded horizon.
CapturingSequence capture_from_json(const LazyGraph& g, const std::string& json_text);
std::string capture_report_json(const CaptureReport& report);

struct RayRecord {
  std::string center;
  std::vector<std::string> vertices;
  friend bool operator==(const RayRecord&, const RayRecord&) = default;
};

// Plain data view of an extraction result, read back by the importer.
struct ResultRecord {
  std::string status;  // "ok" or "needs-larger-horizon"
  std::string instance;
  std::string case_tag;
  int horizon = 0;
  int horizon_used = 0;
  std::size_t requested = 0;
  std::size_t achieved = 0;
  int suggested_horizon = 0;
  std::string message;
  std::vector<RayRecord> double_rays;
  std::vector<std::string> audit;
  std::vector<std::size_t> connector_regions;
  std::vector<std::size_t> branch_counts;
  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

ResultRecord result_record(const std::string& instance, const ExtractionResult& res, std::size_t requested);
ResultRecord partial_record(const std::string& instance, const NeedsLargerHorizon& signal, std::size_t requested,
                            int horizon);
std::string result_json(const ResultRecord& rec);
ResultRecord parse_result_json(const std::string& json_text);

std::string trace_json(const TraceLog& trace);

// Truncation in DOT, vertices and edges in id order. Overlay paths colour
// their edges, one colour per path.
std::string dot(const FiniteGraph& fg, const std::vector<Path>& overlay = {});

// Generic named checks, as written by the verification suite.
struct CheckRecord {
  std::string name;
  bool pass = true;
  std::string detail;
};
std::string checks_json(const std::vector<CheckRecord>& checks, unsigned long long seed);

}  // namespace edr
