// Command-line front end: list, extract, verify, export.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "edr/errors.hpp"
#include "edr/instances.hpp"
#include "edr/io.hpp"
#include "edr/pipeline.hpp"
#include "edr/verify_suite.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kNeedsHorizon = 2;

struct RunConfig {
  std::string instance;
  std::string spec_path;
  std::size_t m = 10;
  int horizon = 300;
  bool trace = false;
  std::string out;
  unsigned long long seed = 1;
  std::string from;
  long long corrupt = -1;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw edr::InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw edr::InputError("cannot write " + path);
  out << text;
}

edr::LazyGraph load(const RunConfig& cfg) {
  if (!cfg.spec_path.empty()) return edr::load_instance(edr::parse_instance_spec(slurp(cfg.spec_path)));
  if (cfg.instance.empty()) throw edr::InputError("give --instance or --spec");
  return edr::instance(cfg.instance);
}

void validate(const RunConfig& cfg) {
  if (cfg.horizon < 1) throw edr::InputError("--horizon must be at least 1");
}

int cmd_list() {
  for (const auto& info : edr::instance_catalog()) {
    std::cout << info.name << "\t" << (info.has_generator ? "generator" : "no generator") << "\t" << info.summary;
    for (const auto& [k, v] : info.defaults) std::cout << "\t" << k << "=" << v;
    std::cout << "\n";
  }
  return kOk;
}

int cmd_extract(const RunConfig& cfg) {
  validate(cfg);
  auto g = load(cfg);
  edr::ExtractionResult res;
  try {
    res = edr::extract_double_rays(g, edr::canonical_generator(g), cfg.m, cfg.horizon);
  } catch (const edr::NeedsLargerHorizon& e) {
    write(cfg.out, edr::result_json(edr::partial_record(g.name(), e, cfg.m, cfg.horizon)));
    std::cerr << "needs a larger horizon: " << e.what() << "\n";
    return kNeedsHorizon;
  }
  write(cfg.out, edr::result_json(edr::result_record(g.name(), res, cfg.m)));
  if (cfg.trace) {
    auto text = edr::trace_json(res.trace);
    if (cfg.out.empty())
      std::cerr << text;
    else
      write(cfg.out + ".trace.json", text);
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  edr::SuiteOptions opt;
  opt.seed = cfg.seed;
  if (cfg.corrupt >= 0) opt.corrupt_separator = static_cast<std::size_t>(cfg.corrupt);
  auto checks = edr::run_verify_suite(opt);
  write(cfg.out, edr::checks_json(checks, cfg.seed));
  bool ok = true;
  for (const auto& c : checks) {
    std::cerr << (c.pass ? "pass " : "FAIL ") << c.name << ": " << c.detail << "\n";
    ok = ok && c.pass;
  }
  return ok ? kOk : kFailed;
}

// DOT of the truncation with the extracted rays overlaid, next to the
// instance spec JSON. Rays come from --from (a result file) or a fresh run.
int cmd_export(const RunConfig& cfg) {
  validate(cfg);
  std::vector<edr::Path> overlay;
  std::optional<edr::LazyGraph> g;
  int horizon = cfg.horizon;
  if (!cfg.from.empty()) {
    auto rec = edr::parse_result_json(slurp(cfg.from));
    g = cfg.spec_path.empty() && cfg.instance.empty() ? edr::instance(rec.instance) : load(cfg);
    horizon = rec.horizon;
    for (const auto& r : rec.double_rays) {
      edr::Path p;
      for (const auto& v : r.vertices) p.emplace_back(v);
      overlay.push_back(std::move(p));
    }
  } else {
    g = load(cfg);
    if (cfg.m > 0) {
      auto res = edr::extract_double_rays(*g, edr::canonical_generator(*g), cfg.m, cfg.horizon);
      for (const auto& d : res.double_rays) overlay.push_back(d.at(horizon));
    }
  }
  std::string base = cfg.out.empty() ? g->name() : cfg.out;
  write(base + ".dot", edr::dot(*g->ball(horizon), overlay));
  write(base + ".json", edr::instance_spec_json(edr::spec_of(*g)));
  std::cerr << "wrote " << base << ".dot and " << base << ".json\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-disjoint double rays in lazily presented infinite graphs"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--instance", cfg.instance, "built-in instance name");
    sub->add_option("--spec", cfg.spec_path, "instance spec JSON file");
    sub->add_option("--m", cfg.m, "number of double rays");
    sub->add_option("--horizon", cfg.horizon, "truncation radius");
    sub->add_option("--out", cfg.out, "output path (stdout when omitted)");
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
    sub->add_flag("--trace", cfg.trace, "write the stage trace");
  };
  auto* list = app.add_subcommand("list", "list built-in instances");
  auto* extract = app.add_subcommand("extract", "extract m edge-disjoint double rays");
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  auto* exp = app.add_subcommand("export", "write DOT and JSON for an instance");
  for (auto* sub : {extract, verify, exp}) common(sub);
  verify->add_option("--corrupt-separator", cfg.corrupt, "drop a vertex from this separation first");
  exp->add_option("--from", cfg.from, "result JSON whose rays are overlaid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kFailed;
  }
  try {
    if (*list) return cmd_list();
    if (*extract) return cmd_extract(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*exp) return cmd_export(cfg);
  } catch (const edr::NeedsLargerHorizon& e) {
    std::cerr << "needs a larger horizon: " << e.what() << "\n";
    return kNeedsHorizon;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kFailed;
}
