#include "edr/io.hpp"

#include <iterator>
#include <json.hpp>
#include <map>
#include <sstream>

namespace edr {

using nlohmann::json;

namespace {

std::string emit(const json& j) { return j.dump(2) + "\n"; }

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed ") + what + ": " + e.what());
  }
}

template <class T>
T field(const json& j, const char* key, const char* what) {
  if (!j.contains(key)) throw InputError(std::string(what) + " lacks \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string(what) + " field \"" + key + "\": " + e.what());
  }
}

std::vector<std::string> ids(const Path& p) {
  std::vector<std::string> out;
  out.reserve(p.size());
  for (const auto& v : p) out.push_back(v.str());
  return out;
}

}  // namespace

// ------------------------------------------------------------- instances

InstanceSpec parse_instance_spec(const std::string& json_text) {
  json j = parse(json_text, "instance spec");
  if (!j.is_object()) throw InputError("instance spec must be a JSON object");
  InstanceSpec spec;
  spec.name = field<std::string>(j, "name", "instance spec");
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw InputError("instance spec params must be an object");
    for (const auto& [k, v] : j["params"].items()) {
      if (!v.is_number_integer()) throw InputError("instance parameter " + k + " must be an integer");
      spec.params[k] = v.get<long long>();
    }
  }
  if (j.contains("ends")) {
    if (!j["ends"].is_array()) throw InputError("instance spec ends must be an array");
    std::vector<EndSpec> ends;
    for (const auto& e : j["ends"]) {
      EndSpec end;
      end.id = field<int>(e, "id", "end");
      if (!e.contains("vertex_degree")) throw InputError("end lacks \"vertex_degree\"");
      const auto& d = e["vertex_degree"];
      if (d.is_string() && d.get<std::string>() == "thick") {
        end.vertex_degree = std::nullopt;
      } else if (d.is_number_integer() && d.get<int>() >= 1) {
        end.vertex_degree = d.get<int>();
      } else {
        throw InputError("vertex_degree must be a positive integer or \"thick\"");
      }
      ends.push_back(end);
    }
    spec.ends = std::move(ends);
  }
  if (j.contains("infinitely_many_ends")) spec.infinitely_many_ends = field<bool>(j, "infinitely_many_ends", "spec");
  return spec;
}

std::string instance_spec_json(const InstanceSpec& spec) {
  json j;
  j["name"] = spec.name;
  j["params"] = json::object();
  for (const auto& [k, v] : spec.params) j["params"][k] = v;
  if (spec.ends) {
    j["ends"] = json::array();
    for (const auto& e : *spec.ends) {
      json ej{{"id", e.id}};
      if (e.vertex_degree)
        ej["vertex_degree"] = *e.vertex_degree;
      else
        ej["vertex_degree"] = "thick";
      j["ends"].push_back(ej);
    }
  }
  if (spec.infinitely_many_ends) j["infinitely_many_ends"] = *spec.infinitely_many_ends;
  return emit(j);
}

LazyGraph load_instance(const InstanceSpec& spec) {
  LazyGraph g = instance(spec.name, spec.params);
  if (!spec.ends && !spec.infinitely_many_ends) return g;
  std::vector<EndDecl> ends = g.ends();
  if (spec.ends) {
    ends.clear();
    for (const auto& e : *spec.ends) {
      EndDecl d;
      d.id = e.id;
      d.vertex_degree = e.vertex_degree;
      for (const auto& known : g.ends())
        if (known.id == e.id) d.witness_rays = known.witness_rays;
      ends.push_back(std::move(d));
    }
  }
  return g.with_metadata(std::move(ends), spec.infinitely_many_ends.value_or(g.infinitely_many_ends()));
}

InstanceSpec spec_of(const LazyGraph& g) {
  InstanceSpec spec;
  spec.name = g.name();
  spec.params = instance_params(g);
  std::vector<EndSpec> ends;
  for (const auto& e : g.ends()) ends.push_back({e.id, e.vertex_degree});
  spec.ends = std::move(ends);
  spec.infinitely_many_ends = g.infinitely_many_ends();
  return spec;
}

// -------------------------------------------------------------- captures

std::string capture_json(const CapturingSequence& seq) {
  json j;
  j["end_id"] = seq.end_id;
  j["k"] = seq.k;
  j["separations"] = json::array();
  for (const auto& s : seq.seps)
    j["separations"].push_back({{"separator", ids(s.separator())}, {"horizon", s.horizon()}});
  return emit(j);
}

CapturingSequence capture_from_json(const LazyGraph& g, const std::string& json_text) {
  json j = parse(json_text, "capture");
  CapturingSequence seq;
  seq.end_id = field<int>(j, "end_id", "capture");
  seq.k = field<std::size_t>(j, "k", "capture");
  if (!j.contains("separations") || !j["separations"].is_array()) throw InputError("capture lacks separations");
  for (const auto& s : j["separations"]) {
    auto names = field<std::vector<std::string>>(s, "separator", "separation");
    int h = field<int>(s, "horizon", "separation");
    if (h < 1) throw InputError("separation horizon must be positive");
    std::vector<VertexId> sep;
    for (auto& n : names) sep.emplace_back(std::move(n));
    seq.seps.emplace_back(std::move(sep), g.ball(h));
  }
  return seq;
}

std::string capture_report_json(const CaptureReport& report) {
  json j;
  j["ok"] = report.ok();
  j["bullets"] = json::array();
  for (const auto& b : report.bullets)
    j["bullets"].push_back({{"name", b.name}, {"pass", b.pass}, {"witness", b.witness}});
  return emit(j);
}

// --------------------------------------------------------------- results

ResultRecord result_record(const std::string& instance, const ExtractionResult& res, std::size_t requested) {
  ResultRecord rec;
  rec.status = "ok";
  rec.instance = instance;
  rec.case_tag = res.tag.text();
  rec.horizon = res.horizon;
  rec.horizon_used = res.horizon_used;
  rec.requested = requested;
  rec.achieved = res.double_rays.size();
  for (const auto& d : res.double_rays) rec.double_rays.push_back({d.center_text(), ids(d.at(res.horizon))});
  rec.audit = res.audit;
  rec.connector_regions = res.connector_regions;
  rec.branch_counts = res.branch_counts;
  return rec;
}

ResultRecord partial_record(const std::string& instance, const NeedsLargerHorizon& signal, std::size_t requested,
                            int horizon) {
  ResultRecord rec;
  rec.status = "needs-larger-horizon";
  rec.instance = instance;
  rec.horizon = horizon;
  rec.requested = requested;
  rec.achieved = signal.achieved();
  rec.suggested_horizon = signal.suggested_horizon();
  rec.message = signal.what();
  return rec;
}

std::string result_json(const ResultRecord& rec) {
  json j;
  j["status"] = rec.status;
  j["instance"] = rec.instance;
  j["case"] = rec.case_tag;
  j["horizon"] = rec.horizon;
  j["horizon_used"] = rec.horizon_used;
  j["requested"] = rec.requested;
  j["achieved"] = rec.achieved;
  j["suggested_horizon"] = rec.suggested_horizon;
  j["message"] = rec.message;
  j["double_rays"] = json::array();
  for (const auto& r : rec.double_rays)
    j["double_rays"].push_back({{"center", r.center}, {"vertices", r.vertices}, {"horizon", rec.horizon}});
  j["audit"] = rec.audit;
  j["connector_regions"] = rec.connector_regions;
  j["branch_counts"] = rec.branch_counts;
  return emit(j);
}

ResultRecord parse_result_json(const std::string& json_text) {
  json j = parse(json_text, "result");
  const char* what = "result";
  ResultRecord rec;
  rec.status = field<std::string>(j, "status", what);
  rec.instance = field<std::string>(j, "instance", what);
  rec.case_tag = field<std::string>(j, "case", what);
  rec.horizon = field<int>(j, "horizon", what);
  rec.horizon_used = field<int>(j, "horizon_used", what);
  rec.requested = field<std::size_t>(j, "requested", what);
  rec.achieved = field<std::size_t>(j, "achieved", what);
  rec.suggested_horizon = field<int>(j, "suggested_horizon", what);
  rec.message = field<std::string>(j, "message", what);
  for (const auto& r : j.at("double_rays"))
    rec.double_rays.push_back(
        {field<std::string>(r, "center", "ray"), field<std::vector<std::string>>(r, "vertices", "ray")});
  rec.audit = field<std::vector<std::string>>(j, "audit", what);
  rec.connector_regions = field<std::vector<std::size_t>>(j, "connector_regions", what);
  rec.branch_counts = field<std::vector<std::size_t>>(j, "branch_counts", what);
  return rec;
}

std::string trace_json(const TraceLog& trace) {
  json j = json::array();
  for (const auto& [stage, detail] : trace.events) j.push_back({{"stage", stage}, {"detail", detail}});
  return emit(j);
}

std::string checks_json(const std::vector<CheckRecord>& checks, unsigned long long seed) {
  json j;
  j["seed"] = seed;
  bool ok = true;
  j["checks"] = json::array();
  for (const auto& c : checks) {
    ok = ok && c.pass;
    j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  j["ok"] = ok;
  return emit(j);
}

// ------------------------------------------------------------------- DOT

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

const char* const kPalette[] = {"red",     "blue", "darkgreen", "orange", "purple", "brown",
                                "magenta", "teal", "gold",      "navy",   "olive",  "crimson"};

}  // namespace

std::string dot(const FiniteGraph& fg, const std::vector<Path>& overlay) {
  std::map<EdgeId, std::size_t> colour;
  for (std::size_t i = 0; i < overlay.size(); ++i)
    for (const auto& e : path_edges(overlay[i])) colour.emplace(e, i);
  std::ostringstream out;
  out << "graph truncation {\n";
  for (const auto& v : fg.sorted_vertices()) {
    out << "  " << quoted(v.str());
    int d = fg.depth(fg.index(v));
    if (d >= 0) out << " [depth=" << d << "]";
    out << ";\n";
  }
  for (const auto& e : fg.edges()) {
    out << "  " << quoted(e.first().str()) << " -- " << quoted(e.second().str());
    auto it = colour.find(e);
    if (it != colour.end())
      out << " [color=" << kPalette[it->second % std::size(kPalette)] << ", penwidth=2, ray=" << it->second << "]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace edr
