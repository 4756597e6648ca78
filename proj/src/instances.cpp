#include "edr/instances.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>

#include "edr/errors.hpp"

namespace edr {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::optional<long long> to_int(const std::string& s) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::string params_text(const InstanceParams& p) {
  std::string out;
  for (const auto& [k, v] : p) {
    if (!out.empty()) out += ",";
    out += k + "=" + std::to_string(v);
  }
  return out;
}

InstanceParams merge_params(const std::string& name, const InstanceParams& defaults, const InstanceParams& given) {
  InstanceParams out = defaults;
  for (const auto& [k, v] : given) {
    if (!defaults.count(k)) throw InputError("instance " + name + " has no parameter '" + k + "'");
    out[k] = v;
  }
  return out;
}

VertexId vid(const std::string& s) { return VertexId(s); }

std::string spine(char rail, long long i) { return std::string(1, rail) + ":" + std::to_string(i); }
std::string sub(char rail, long long i, long long j) {
  return "m:" + std::string(1, rail) + ":" + std::to_string(i) + ":" + std::to_string(j);
}

// Parsed ladder vertex: spine r:i or subdivision m:r:i:j.
struct LadderVertex {
  bool subdivision = false;
  char rail = 0;
  long long i = 0;
  long long j = 0;
};

std::optional<LadderVertex> parse_ladder(const VertexId& v, int rails) {
  auto parts = split(v.str(), ':');
  LadderVertex out;
  if (parts.size() == 2 && parts[0].size() == 1) {
    out.rail = parts[0][0];
    auto i = to_int(parts[1]);
    if (!i) return std::nullopt;
    out.i = *i;
  } else if (parts.size() == 4 && parts[0] == "m" && parts[1].size() == 1) {
    out.subdivision = true;
    out.rail = parts[1][0];
    auto i = to_int(parts[2]);
    auto j = to_int(parts[3]);
    if (!i || !j) return std::nullopt;
    out.i = *i;
    out.j = *j;
  } else {
    return std::nullopt;
  }
  if (out.rail < 'a' || out.rail >= 'a' + rails) return std::nullopt;
  return out;
}

// ---------------------------------------------------------------- thick ladder

LazyGraph make_thick_ladder(const InstanceParams& p) {
  const long long base = p.at("base");
  const int rails = static_cast<int>(p.at("rails"));
  if (base < 1) throw InputError("thick_ladder: base must be >= 1");
  if (rails < 2 || rails > 26) throw InputError("thick_ladder: rails must be in [2, 26]");
  auto count = [base](long long i) { return base + i; };
  auto bad = [](const VertexId& v) -> std::vector<VertexId> {
    throw OracleFault(v.str(), "not a thick_ladder vertex");
  };
  auto oracle = [=](const VertexId& v) -> std::vector<VertexId> {
    auto x = parse_ladder(v, rails);
    if (!x || x->i < 0) return bad(v);
    std::vector<VertexId> out;
    if (x->subdivision) {
      if (x->j < 0 || x->j >= count(x->i)) return bad(v);
      out.push_back(vid(spine(x->rail, x->i)));
      out.push_back(vid(spine(x->rail, x->i + 1)));
      return out;
    }
    for (long long j = 0; j < count(x->i); ++j) out.push_back(vid(sub(x->rail, x->i, j)));
    if (x->i > 0)
      for (long long j = 0; j < count(x->i - 1); ++j) out.push_back(vid(sub(x->rail, x->i - 1, j)));
    if (x->rail > 'a') out.push_back(vid(spine(static_cast<char>(x->rail - 1), x->i)));
    if (x->rail < 'a' + rails - 1) out.push_back(vid(spine(static_cast<char>(x->rail + 1), x->i)));
    return out;
  };
  EndDecl end;
  end.id = 0;
  end.vertex_degree = rails;
  for (int r = 0; r < rails; ++r) {
    char rail = static_cast<char>('a' + r);
    end.witness_rays.push_back([rail](std::size_t n) {
      auto i = static_cast<long long>(n / 2);
      return vid(n % 2 == 0 ? spine(rail, i) : sub(rail, i, 0));
    });
  }
  LazyGraph g("thick_ladder", vid("a:0"), oracle, {end});
  g.set_depth_hint([rails](const VertexId& v) -> std::optional<int> {
    auto x = parse_ladder(v, rails);
    if (!x) return std::nullopt;
    long long d = 2 * x->i + (x->rail - 'a') + (x->subdivision ? 1 : 0);
    return static_cast<int>(d);
  });
  g.set_params_text(params_text(p));
  return g;
}

// Member j: rung j, then parallel path j on every later segment of both rails.
FamilyGenerator thick_ladder_generator(const LazyGraph& g) {
  FamilyGenerator gen;
  gen.name = "thick_ladder/rungs";
  gen.produce = [g](std::size_t count) {
    std::vector<DoubleRayStream> out;
    for (std::size_t k = 0; k < count; ++k) {
      auto j = static_cast<long long>(k);
      auto arm = [g, j](char rail) {
        return RayStream::from_sequence(g, [rail, j](std::size_t n) {
          long long i = j + static_cast<long long>(n / 2);
          return vid(n % 2 == 0 ? spine(rail, i) : sub(rail, i, j));
        });
      };
      out.emplace_back(arm('a'), arm('b'), true);
    }
    return out;
  };
  return gen;
}

// ---------------------------------------------------------- double thick ladder

LazyGraph make_double_thick_ladder(const InstanceParams& p) {
  const long long width = p.at("width");
  if (width < 1) throw InputError("double_thick_ladder: width must be >= 1");
  auto count = [width](long long i) { return width + (i >= 0 ? i : -(i + 1)); };
  auto bad = [](const VertexId& v) -> std::vector<VertexId> {
    throw OracleFault(v.str(), "not a double_thick_ladder vertex");
  };
  auto oracle = [=](const VertexId& v) -> std::vector<VertexId> {
    auto x = parse_ladder(v, 2);
    if (!x) return bad(v);
    std::vector<VertexId> out;
    if (x->subdivision) {
      if (x->j < 0 || x->j >= count(x->i)) return bad(v);
      out.push_back(vid(spine(x->rail, x->i)));
      out.push_back(vid(spine(x->rail, x->i + 1)));
      return out;
    }
    for (long long j = 0; j < count(x->i); ++j) out.push_back(vid(sub(x->rail, x->i, j)));
    for (long long j = 0; j < count(x->i - 1); ++j) out.push_back(vid(sub(x->rail, x->i - 1, j)));
    out.push_back(vid(spine(x->rail == 'a' ? 'b' : 'a', x->i)));
    return out;
  };
  auto witness = [](long long sign) {
    return [sign](std::size_t n) {
      auto step = static_cast<long long>(n / 2);
      long long i = sign * (1 + step);
      if (n % 2 == 0) return vid(spine('a', i));
      return vid(sign > 0 ? sub('a', i, 0) : sub('a', i - 1, 0));
    };
  };
  EndDecl plus{0, 2, {witness(+1)}};
  EndDecl minus{1, 2, {witness(-1)}};
  LazyGraph g("double_thick_ladder", vid("a:0"), oracle, {plus, minus});
  g.set_depth_hint([](const VertexId& v) -> std::optional<int> {
    auto x = parse_ladder(v, 2);
    if (!x) return std::nullopt;
    long long rail = x->rail - 'a';
    if (!x->subdivision) return static_cast<int>(2 * std::llabs(x->i) + rail);
    long long near = std::min(std::llabs(x->i), std::llabs(x->i + 1));
    return static_cast<int>(2 * near + rail + 1);
  });
  g.set_params_text(params_text(p));
  return g;
}

// Straight double rays along one rail, one parallel index each.
FamilyGenerator double_ladder_generator(const LazyGraph& g, long long width) {
  FamilyGenerator gen;
  gen.name = "double_thick_ladder/rails";
  gen.max_count = static_cast<std::size_t>(2 * width);
  gen.produce = [g, width](std::size_t count) {
    if (count > static_cast<std::size_t>(2 * width))
      throw InputError("double_thick_ladder carries at most 2*width edge-disjoint double rays");
    std::vector<DoubleRayStream> out;
    for (std::size_t k = 0; k < count; ++k) {
      char rail = static_cast<long long>(k) < width ? 'a' : 'b';
      long long j = static_cast<long long>(k) % width;
      auto arm = [g, rail, j](long long sign) {
        return RayStream::from_sequence(g, [rail, j, sign](std::size_t n) {
          long long step = static_cast<long long>(n / 2);
          if (n % 2 == 0) return vid(spine(rail, sign * step));
          return vid(sign > 0 ? sub(rail, step, j) : sub(rail, -step - 1, j));
        });
      };
      out.emplace_back(arm(-1), arm(+1), false);
    }
    return out;
  };
  return gen;
}

// ----------------------------------------------------------------- binary tree

LazyGraph make_binary_tree(const InstanceParams& p) {
  auto oracle = [](const VertexId& v) -> std::vector<VertexId> {
    const std::string& s = v.str();
    if (s.rfind("t:", 0) != 0 || s.find_first_not_of("01", 2) != std::string::npos)
      throw OracleFault(s, "not a binary_tree vertex");
    std::vector<VertexId> out;
    if (s.size() > 2) out.push_back(vid(s.substr(0, s.size() - 1)));
    out.push_back(vid(s + "0"));
    out.push_back(vid(s + "1"));
    return out;
  };
  LazyGraph g("binary_tree", vid("t:"), oracle, {}, true);
  g.set_depth_hint([](const VertexId& v) -> std::optional<int> {
    const std::string& s = v.str();
    if (s.rfind("t:", 0) != 0) return std::nullopt;
    return static_cast<int>(s.size()) - 2;
  });
  g.set_params_text(params_text(p));
  return g;
}

// ---------------------------------------------------------- two joined lines

LazyGraph make_figure2(const InstanceParams& p) {
  auto oracle = [](const VertexId& v) -> std::vector<VertexId> {
    auto parts = split(v.str(), ':');
    std::optional<long long> i;
    if (parts.size() == 2 && (parts[0] == "p" || parts[0] == "q")) i = to_int(parts[1]);
    if (!i) throw OracleFault(v.str(), "not a figure2_graph vertex");
    const std::string& line = parts[0];
    std::vector<VertexId> out{vid(line + ":" + std::to_string(*i - 1)), vid(line + ":" + std::to_string(*i + 1))};
    if (*i == 0) out.push_back(vid(line == "p" ? "q:0" : "p:0"));
    return out;
  };
  auto ray = [](std::string line, long long sign) {
    return [line, sign](std::size_t n) {
      return vid(line + ":" + std::to_string(sign * (static_cast<long long>(n) + 1)));
    };
  };
  std::vector<EndDecl> ends{
      {0, 1, {ray("p", 1)}}, {1, 1, {ray("p", -1)}}, {2, 1, {ray("q", 1)}}, {3, 1, {ray("q", -1)}}};
  LazyGraph g("figure2_graph", vid("p:0"), oracle, ends);
  g.set_depth_hint([](const VertexId& v) -> std::optional<int> {
    auto parts = split(v.str(), ':');
    if (parts.size() != 2) return std::nullopt;
    auto i = to_int(parts[1]);
    if (!i) return std::nullopt;
    return static_cast<int>(std::llabs(*i) + (parts[0] == "q" ? 1 : 0));
  });
  g.set_params_text(params_text(p));
  return g;
}

InstanceParams parse_params_text(const std::string& text) {
  InstanceParams out;
  if (text.empty()) return out;
  for (const auto& kv : split(text, ',')) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) continue;
    if (auto v = to_int(kv.substr(eq + 1))) out[kv.substr(0, eq)] = *v;
  }
  return out;
}

}  // namespace

const std::vector<InstanceInfo>& instance_catalog() {
  static const std::vector<InstanceInfo> catalog{
      {"binary_tree", "rooted binary tree; infinitely many ends", {}, false},
      {"double_thick_ladder",
       "two-sided ladder with widening parallel paths; two thin ends of degree 2",
       {{"width", 24}},
       true},
      {"figure2_graph", "two double rays joined by a single edge; four thin ends", {}, false},
      {"thick_ladder",
       "ladder with widening parallel paths between spine vertices; one thin end",
       {{"base", 4}, {"rails", 2}},
       true},
  };
  return catalog;
}

LazyGraph instance(const std::string& name, const InstanceParams& params) {
  for (const auto& info : instance_catalog()) {
    if (info.name != name) continue;
    auto p = merge_params(name, info.defaults, params);
    if (name == "thick_ladder") return make_thick_ladder(p);
    if (name == "double_thick_ladder") return make_double_thick_ladder(p);
    if (name == "binary_tree") return make_binary_tree(p);
    return make_figure2(p);
  }
  throw InputError("unknown instance '" + name + "'");
}

InstanceParams instance_params(const LazyGraph& g) { return parse_params_text(g.params_text()); }

std::optional<FamilyGenerator> canonical_generator(const LazyGraph& g) {
  if (g.name() == "thick_ladder") return thick_ladder_generator(g);
  if (g.name() == "double_thick_ladder") return double_ladder_generator(g, instance_params(g).at("width"));
  return std::nullopt;
}

long long ladder_segment_count(const LazyGraph& g, long long segment) {
  auto p = instance_params(g);
  if (g.name() == "thick_ladder") return p.at("base") + segment;
  if (g.name() == "double_thick_ladder") return p.at("width") + (segment >= 0 ? segment : -(segment + 1));
  throw InputError(g.name() + " is not a ladder");
}

}  // namespace edr
