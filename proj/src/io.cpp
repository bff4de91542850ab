#include "coarse/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "coarse/error.hpp"

namespace coarse::io {

namespace {

[[noreturn]] void schema(const std::string& field, const std::string& what) {
  throw Error(Errc::SchemaError, "field '" + field + "': " + what);
}

const json& field(const json& obj, const std::string& name, const std::string& path) {
  const std::string full = path.empty() ? name : path + "." + name;
  if (!obj.is_object()) schema(path.empty() ? "<root>" : path, "expected an object");
  const auto it = obj.find(name);
  if (it == obj.end()) schema(full, "missing");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) schema(path, "expected a number");
  return v.get<double>();
}

long integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) schema(path, "expected an integer");
  return v.get<long>();
}

const json& array(const json& v, const std::string& path) {
  if (!v.is_array()) schema(path, "expected an array");
  return v;
}

std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::to_string(v);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, source + ": malformed JSON at byte " + std::to_string(e.byte));
  }
}

json read_json(const std::string& path) { return parse_json(read_text(path), path); }

json to_json(const FiniteMetricSpace& space) {
  json dist = json::array();
  for (Eigen::Index i = 0; i < space.dist().rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < space.dist().cols(); ++j) row.push_back(space.dist()(i, j));
    dist.push_back(std::move(row));
  }
  return {{"labels", space.labels()}, {"dist", std::move(dist)}};
}

FiniteMetricSpace space_from_json(const json& j) {
  const auto& dist = array(field(j, "dist", ""), "dist");
  const auto n = static_cast<Eigen::Index>(dist.size());
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto rpath = idx("dist", static_cast<std::size_t>(r));
    const auto& row = array(dist[static_cast<std::size_t>(r)], rpath);
    if (static_cast<Eigen::Index>(row.size()) != n) schema(rpath, "expected " + std::to_string(n) + " entries");
    for (Eigen::Index c = 0; c < n; ++c) d(r, c) = number(row[static_cast<std::size_t>(c)], idx(rpath, static_cast<std::size_t>(c)));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const auto& arr = array(j["labels"], "labels");
    if (static_cast<Eigen::Index>(arr.size()) != n) schema("labels", "expected " + std::to_string(n) + " labels");
    for (const auto& l : arr) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
  }
  return validate_metric(d, std::move(labels));
}

json to_json(const BlockSpace& space) {
  json blocks = json::array();
  for (const auto& b : space.blocks()) blocks.push_back(to_json(b));
  return {{"union_rule", BlockSpace::kUnionRule}, {"blocks", std::move(blocks)}};
}

BlockSpace block_space_from_json(const json& j) {
  if (j.contains("union_rule")) {
    const auto& rule = j["union_rule"];
    if (!rule.is_string() || rule.get<std::string>() != BlockSpace::kUnionRule)
      schema("union_rule", std::string("only \"") + BlockSpace::kUnionRule + "\" is supported");
  }
  const auto& arr = array(field(j, "blocks", ""), "blocks");
  std::vector<FiniteMetricSpace> blocks;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    try {
      blocks.push_back(space_from_json(arr[k]));
    } catch (const Error& e) {
      throw Error(e.code(), idx("blocks", k) + ": " + e.what(), e.indices());
    }
  }
  return coarse_disjoint_union(std::move(blocks));
}

json to_json(const CertificateMeasure& mu) {
  json pairs = json::array();
  for (const auto& e : mu.support) pairs.push_back(json::array({e.i, e.j, e.w}));
  return {{"pairs", std::move(pairs)}, {"c", mu.c}, {"R", mu.R}, {"p", mu.p}};
}

CertificateMeasure certificate_from_json(const json& j) {
  CertificateMeasure mu;
  mu.c = number(field(j, "c", "certificate"), "certificate.c");
  mu.R = number(field(j, "R", "certificate"), "certificate.R");
  mu.p = j.contains("p") ? static_cast<int>(integer(j["p"], "certificate.p")) : 2;
  const auto& pairs = array(field(j, "pairs", "certificate"), "certificate.pairs");
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto path = idx("certificate.pairs", k);
    const auto& e = array(pairs[k], path);
    if (e.size() != 3) schema(path, "expected [i, j, w]");
    const long i = integer(e[0], path + "[0]");
    const long jj = integer(e[1], path + "[1]");
    if (i < 0 || jj < 0) schema(path, "point indices must be non-negative");
    mu.support.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(jj), number(e[2], path + "[2]")});
  }
  return mu;
}

json to_json(const EmbedResult& r) {
  json out;
  out["s_star"] = r.s_star;
  json gram = json::array();
  for (Eigen::Index i = 0; i < r.gram.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < r.gram.cols(); ++k) row.push_back(r.gram(i, k));
    gram.push_back(std::move(row));
  }
  out["gram"] = std::move(gram);
  out["certificate"] = to_json(r.certificate);
  out["status"] = status_name(r.status);
  out["iterations"] = r.iterations;
  if (!r.cuts.empty()) {
    json cuts = json::array();
    for (const auto& [mask, w] : r.cuts) cuts.push_back(json::array({mask, w}));
    out["cuts"] = std::move(cuts);
  }
  return out;
}

EmbedResult embed_result_from_json(const json& j) {
  EmbedResult r;
  r.s_star = number(field(j, "s_star", ""), "s_star");
  const auto& gram = array(field(j, "gram", ""), "gram");
  const auto n = static_cast<Eigen::Index>(gram.size());
  r.gram.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto path = idx("gram", static_cast<std::size_t>(i));
    const auto& row = array(gram[static_cast<std::size_t>(i)], path);
    if (static_cast<Eigen::Index>(row.size()) != n) schema(path, "gram must be square");
    for (Eigen::Index k = 0; k < n; ++k) r.gram(i, k) = number(row[static_cast<std::size_t>(k)], idx(path, static_cast<std::size_t>(k)));
  }
  r.certificate = certificate_from_json(field(j, "certificate", ""));
  const auto& status = field(j, "status", "");
  if (status == "Optimal") {
    r.status = SolveStatus::Optimal;
  } else if (status == "NumericallyMarginal") {
    r.status = SolveStatus::NumericallyMarginal;
  } else {
    schema("status", "expected \"Optimal\" or \"NumericallyMarginal\"");
  }
  if (j.contains("iterations")) r.iterations = static_cast<int>(integer(j["iterations"], "iterations"));
  if (j.contains("cuts")) {
    const auto& cuts = array(j["cuts"], "cuts");
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      const auto path = idx("cuts", k);
      const auto& c = array(cuts[k], path);
      if (c.size() != 2 || !c[0].is_number_unsigned()) schema(path, "expected [mask, weight]");
      r.cuts.emplace_back(c[0].get<std::uint64_t>(), number(c[1], path + "[1]"));
    }
  }
  return r;
}

json to_json(const QuotientGroupSpec& spec) {
  return {{"degree", spec.degree}, {"generators", spec.generators}, {"symmetric_closure", spec.symmetric_closure}};
}

QuotientGroupSpec group_spec_from_json(const json& j) {
  QuotientGroupSpec spec;
  spec.degree = static_cast<int>(integer(field(j, "degree", ""), "degree"));
  const auto& gens = array(field(j, "generators", ""), "generators");
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto path = idx("generators", k);
    Permutation p;
    for (std::size_t i = 0; i < array(gens[k], path).size(); ++i)
      p.push_back(static_cast<int>(integer(gens[k][i], idx(path, i))));
    spec.generators.push_back(std::move(p));
  }
  if (j.contains("symmetric_closure")) {
    if (!j["symmetric_closure"].is_boolean()) schema("symmetric_closure", "expected a boolean");
    spec.symmetric_closure = j["symmetric_closure"].get<bool>();
  }
  spec.validate();
  return spec;
}

FiltrationSpec filtration_from_json(const json& j, const std::string& base_dir) {
  FiltrationSpec f;
  const auto& parent = field(j, "parent", "");
  if (parent.is_string()) {
    if (parent.get<std::string>() != "Z") schema("parent", "expected \"Z\" or {\"kind\", \"rank\"}");
    f.parent = ParentGroup::integers();
  } else {
    const auto& kind = field(parent, "kind", "parent");
    const long rank = integer(field(parent, "rank", "parent"), "parent.rank");
    if (rank < 1) schema("parent.rank", "must be at least 1");
    if (kind == "free") {
      f.parent = ParentGroup::free(static_cast<int>(rank));
    } else if (kind == "free_abelian") {
      f.parent = ParentGroup::free_abelian(static_cast<int>(rank));
    } else {
      schema("parent.kind", "expected \"free\" or \"free_abelian\"");
    }
  }
  const auto& stages = array(field(j, "stages", ""), "stages");
  for (std::size_t k = 0; k < stages.size(); ++k) {
    const auto path = idx("stages", k);
    try {
      if (stages[k].is_string()) {
        std::filesystem::path p(stages[k].get<std::string>());
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        f.stages.push_back(group_spec_from_json(read_json(p.string())));
      } else {
        f.stages.push_back(group_spec_from_json(stages[k]));
      }
    } catch (const Error& e) {
      throw Error(e.code(), path + ": " + e.what(), e.indices());
    }
  }
  if (f.stages.empty()) schema("stages", "at least one stage is required");
  return f;
}

FiltrationSpec read_filtration(const std::string& path) {
  return filtration_from_json(read_json(path), std::filesystem::path(path).parent_path().string());
}

NetSpec net_spec_from_json(const json& j) {
  NetSpec s;
  const auto& base = field(j, "base", "");
  if (!base.is_string() || base.get<std::string>() != "circle") schema("base", "only \"circle\" is supported");
  s.base = "circle";
  const long size = integer(field(j, "size", ""), "size");
  if (size < 1) schema("size", "must be positive");
  s.size = static_cast<std::size_t>(size);
  if (j.contains("alpha")) {
    const auto& a = j["alpha"];
    if (!a.is_string()) schema("alpha", "expected a string \"p/q\"");
    try {
      s.alpha = Rational::parse(a.get<std::string>());
    } catch (const Error& e) {
      schema("alpha", e.what());
    }
  }
  const auto& levels = array(field(j, "levels", ""), "levels");
  for (std::size_t k = 0; k < levels.size(); ++k) s.levels.push_back(number(levels[k], idx("levels", k)));
  return s;
}

ConeNet build_net(const NetSpec& spec) {
  std::vector<GeneratorMap> gens;
  if (spec.alpha) gens.push_back(rotation_action(*spec.alpha, spec.size));
  return cone_net(circle_net(spec.size), spec.levels, std::move(gens));
}

FiniteGraph graph_from_edge_list(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long u = 0;
    long v = 0;
    std::string extra;
    if (!(ls >> u)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw Error(Errc::ParseError, source + ":" + std::to_string(lineno) + ": expected \"u v\"");
    }
    if (!(ls >> v) || (ls >> extra) || u < 0 || v < 0)
      throw Error(Errc::ParseError, source + ":" + std::to_string(lineno) + ": expected two non-negative integers");
    edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    n = std::max({n, static_cast<std::size_t>(u) + 1, static_cast<std::size_t>(v) + 1});
  }
  try {
    return FiniteGraph(n, std::move(edges));
  } catch (const Error& e) {
    throw Error(e.code(), source + ": " + e.what(), e.indices());
  }
}

std::string scan_csv(const std::vector<ExpanderCandidate>& candidates) {
  std::ostringstream os;
  os << "block,window_id,n,diam,lambda1,hit\n";
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const auto& c = candidates[k];
    os << c.window.block << ',' << k << ',' << c.report.n << ',' << format_double(c.report.diam) << ','
       << format_double(c.report.lambda1) << ',' << (c.hit ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string profile_csv(const ScanProfile& profile) {
  std::ostringstream os;
  os << "R,block,window,n,s_star\n";
  for (const auto& s : profile.per_scale)
    for (std::size_t k = 0; k < s.windows.size(); ++k) {
      os << format_double(s.R) << ',' << s.windows[k].block << ',' << k << ',' << s.windows[k].points.size() << ',';
      if (s.s_star[k]) os << format_double(*s.s_star[k]);
      os << '\n';
    }
  return os.str();
}

json profile_summary(const ScanProfile& profile) {
  json rho = json::object();
  for (const auto& s : profile.per_scale)
    rho[format_double(s.R)] = s.rho_minus ? json(*s.rho_minus) : json(nullptr);
  json excluded = json::object();
  for (const auto& s : profile.per_scale) excluded[format_double(s.R)] = s.exclude_below;
  return {{"rule", profile.rule}, {"catalogue_certified", true}, {"rho_minus", std::move(rho)},
          {"exclude_below", std::move(excluded)}};
}

json to_json(const ExpanderSearch& search) {
  json slots = json::array();
  for (const auto& s : search.slots) {
    json slot = {{"m", s.m},
                 {"r", search.schedule[s.m].r},
                 {"R", search.schedule[s.m].R},
                 {"exclude_below", s.exclude_below},
                 {"status", slot_status_name(s.status)}};
    if (s.window) {
      slot["block"] = s.window->block;
      slot["points"] = s.window->points;
      slot["certificate"] = to_json(s.certificate);
      slot["poincare_value"] = s.poincare_check;
    }
    slots.push_back(std::move(slot));
  }
  return {{"c_max", search.c_max}, {"c_star", search.c_star}, {"uniform", search.uniform}, {"slots", std::move(slots)}};
}

}  // namespace coarse::io
