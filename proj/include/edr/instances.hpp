#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edr/graph_core.hpp"
#include "edr/streams.hpp"

namespace edr {

using InstanceParams = std::map<std::string, long long>;

struct InstanceInfo {
  std::string name;
  std::string summary;
  InstanceParams defaults;
  bool has_generator;
};

// Built-in instances, sorted by name.
const std::vector<InstanceInfo>& instance_catalog();

// Unknown names and malformed parameters raise InputError. Missing parameters
// take their defaults.
LazyGraph instance(const std::string& name, const InstanceParams& params = {});

// Parameters the graph was built with (defaults filled in).
InstanceParams instance_params(const LazyGraph& g);

// The built-in family of arbitrarily many edge-disjoint double rays, when the
// instance has one.
std::optional<FamilyGenerator> canonical_generator(const LazyGraph& g);

// Number of parallel subdivided paths between consecutive spine vertices.
long long ladder_segment_count(const LazyGraph& g, long long segment);

}  // namespace edr
