#include "coarse/cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "coarse/error.hpp"
#include "coarse/io.hpp"
#include "coarse/spectral.hpp"
#include "coarse/warped.hpp"

namespace coarse::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v))
    throw Error(Errc::ParseError, what + ": not a number: '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

// Output files go through here so that the manifest sees every byte written.
class OutputDir {
 public:
  OutputDir(const RunConfig& cfg) : dir_(cfg.out), config_(config_json(cfg)) {
    fs::create_directories(dir_);
    write_manifest(false, kSuccess);
  }

  void write(const std::string& name, const std::string& bytes) {
    std::ofstream f(dir_ / name, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Errc::InvalidArgument, (dir_ / name).string() + ": cannot write");
    f << bytes;
    f.close();
    files_[name] = {sha256_hex(bytes), bytes.size()};
  }

  void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

  void write_manifest(bool complete, int exit_code) {
    json outputs = json::array();
    for (const auto& [name, info] : files_)
      outputs.push_back({{"file", name}, {"sha256", info.first}, {"bytes", info.second}});
    const json m = {{"config", config_}, {"outputs", std::move(outputs)}, {"complete", complete}, {"exit_code", exit_code}};
    std::ofstream f(dir_ / "manifest.json", std::ios::binary | std::ios::trunc);
    f << m.dump(2) << "\n";
  }

 private:
  static json config_json(const RunConfig& c) {
    json j = {{"command", c.command}, {"seed", c.seed}, {"p", c.p}, {"max_elements", c.max_elements},
              {"samples", c.samples}};
    if (!c.space.empty()) j["space"] = fs::path(c.space).filename().string();
    if (!c.graphs.empty()) {
      json g = json::array();
      for (const auto& p : c.graphs) g.push_back(fs::path(p).filename().string());
      j["graph"] = std::move(g);
    }
    if (!c.filtration.empty()) j["filtration"] = fs::path(c.filtration).filename().string();
    if (!c.net.empty()) j["net"] = fs::path(c.net).filename().string();
    if (c.R) j["R"] = *c.R;
    if (!c.schedule.empty()) j["schedule"] = c.schedule;
    if (!c.exclusion_rule.empty()) j["exclusion_rule"] = c.exclusion_rule;
    if (c.c) j["c"] = *c.c;
    if (c.c_max) j["c_max"] = *c.c_max;
    return j;
  }

  fs::path dir_;
  json config_;
  std::map<std::string, std::pair<std::string, std::size_t>> files_;
};

// Prefixes errors raised while interpreting a file with its path.
template <typename F>
auto with_source(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    const std::string msg = e.what();
    if (msg.find(path) != std::string::npos) throw;
    throw Error(e.code(), path + ": " + msg.substr(msg.find(": ") + 2), e.indices());
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::InvalidArgument, what);
}

json read_input(const std::string& path) { return io::read_json(path); }

bool is_block_space(const json& j) { return j.is_object() && j.contains("blocks"); }

FiniteGraph read_graph(const std::string& path) {
  return io::graph_from_edge_list(io::read_text(path), path);
}

json spectral_json(const SpectralReport& r) {
  return {{"lambda1", r.lambda1}, {"k0", r.k0}, {"n", r.n}, {"diam", r.diam}};
}

struct LoadedBlocks {
  BlockSpace space;
  std::vector<InjectivityRadius> radii;
  std::optional<BoxSpace> box;
  std::optional<FiltrationSpec> filtration;
};

LoadedBlocks load_blocks(const RunConfig& cfg) {
  LoadedBlocks out;
  if (!cfg.filtration.empty()) {
    out.filtration = with_source(cfg.filtration, [&] { return io::read_filtration(cfg.filtration); });
    out.box = with_source(cfg.filtration, [&] { return box_space_build(*out.filtration, cfg.max_elements); });
    out.space = out.box->space;
    out.radii = out.box->radii;
  } else if (!cfg.space.empty()) {
    const auto j = read_input(cfg.space);
    require(is_block_space(j), cfg.space + ": expected a block space (an object with \"blocks\")");
    out.space = with_source(cfg.space, [&] { return io::block_space_from_json(j); });
  } else if (!cfg.graphs.empty()) {
    std::vector<FiniteGraph> graphs;
    for (const auto& p : cfg.graphs) graphs.push_back(read_graph(p));
    out.space = graph_union(std::move(graphs)).space;
  } else {
    throw Error(Errc::InvalidArgument, "one of --filtration, --space or --graph is required");
  }
  return out;
}

int cmd_build(const RunConfig& cfg, OutputDir& out) {
  const auto loaded = load_blocks(cfg);
  out.write_json("blockspace.json", io::to_json(loaded.space));
  if (loaded.box) {
    json groups = json::array();
    for (std::size_t k = 0; k < loaded.box->groups.size(); ++k)
      groups.push_back({{"block", k + 1},
                        {"order", loaded.box->groups[k].order()},
                        {"injectivity_radius", loaded.radii[k].radius},
                        {"radius_exact", loaded.radii[k].exact},
                        {"separation_radius", loaded.space.separation_radius(k + 1)}});
    out.write_json("groups.json", {{"blocks", std::move(groups)}});
  }
  return kSuccess;
}

int cmd_spectrum(const RunConfig& cfg, OutputDir& out) {
  if (cfg.graphs.size() == 1 && cfg.space.empty()) {
    const auto g = read_graph(cfg.graphs.front());
    out.write_json("spectrum.json", spectral_json(spectral_report(g)));
    return kSuccess;
  }
  const auto loaded = load_blocks(cfg);
  const auto gspace = with_source(cfg.space.empty() ? std::string("graph union") : cfg.space,
                                  [&] { return graphs_from_metric(loaded.space); });
  json blocks = json::array();
  for (std::size_t k = 0; k < gspace.graphs.size(); ++k) {
    auto rep = spectral_json(spectral_report(gspace.graphs[k]));
    rep["block"] = k + 1;
    blocks.push_back(std::move(rep));
  }
  out.write_json("spectrum.json", {{"blocks", std::move(blocks)}});
  if (!cfg.schedule.empty()) {
    require(cfg.c.has_value(), "--c is required for a spectral window scan");
    // Entry m asks for windows of diameter <= r_m in blocks numbered >= m + 1.
    std::vector<std::pair<std::size_t, double>> sched;
    const auto entries = parse_schedule(cfg.schedule);
    for (std::size_t m = 0; m < entries.size(); ++m) sched.emplace_back(m + 1, entries[m].r);
    out.write("scan.csv", io::scan_csv(expander_window_scan(gspace, *cfg.c, sched)));
  }
  return kSuccess;
}

int cmd_embed(const RunConfig& cfg, OutputDir& out) {
  require(!cfg.space.empty(), "--space is required");
  require(cfg.R.has_value(), "--R is required");
  const auto j = read_input(cfg.space);
  require(!is_block_space(j), cfg.space + ": embed takes a single metric space, not a block space");
  const auto space = with_source(cfg.space, [&] { return io::space_from_json(j); });
  EmbedResult res;
  if (cfg.p == 2) {
    res = max_separation_sdp(space, *cfg.R);
  } else if (cfg.p == 1) {
    res = cut_cone_lp(space, *cfg.R);
  } else {
    throw Error(Errc::InvalidArgument, "--p must be 1 or 2");
  }
  auto doc = io::to_json(res);
  const double value = poincare_value(space, res.certificate);
  const double sampled = random_lipschitz_max(space, res.certificate, cfg.samples, cfg.seed);
  doc["validation"] = {{"poincare_value", value},
                       {"random_lipschitz_max", sampled},
                       {"samples", cfg.samples},
                       {"seed", cfg.seed},
                       {"certificate_problems", certificate_problems(res.certificate, space)}};
  out.write_json("embed.json", doc);
  return res.status == SolveStatus::Optimal ? kSuccess : kSolverMarginal;
}

int cmd_certify(const RunConfig& cfg, OutputDir& out) {
  if (cfg.graphs.size() == 1 && cfg.schedule.empty()) {
    const auto g = read_graph(cfg.graphs.front());
    const auto cert = certificate_from_spectral_gap(g);
    const auto space = g.metric();
    json doc = io::to_json(cert.measure);
    doc["lambda1"] = cert.lambda1;
    doc["k0"] = cert.k0;
    doc["far_mass"] = cert.far_mass;
    doc["gap_too_small"] = cert.gap_too_small;
    doc["poincare_value"] = poincare_value(space, cert.measure);
    out.write_json("certificate.json", doc);
    return kSuccess;
  }
  require(!cfg.schedule.empty(), "--schedule is required for a certificate search");
  require(cfg.c_max.has_value(), "--c-max is required for a certificate search");
  const auto loaded = load_blocks(cfg);
  const auto search = generalized_expander_search(loaded.space, parse_schedule(cfg.schedule), *cfg.c_max);
  out.write_json("search.json", io::to_json(search));
  return kSuccess;
}

int cmd_scan(const RunConfig& cfg, OutputDir& out) {
  require(!cfg.schedule.empty(), "--schedule is required");
  const auto loaded = load_blocks(cfg);
  std::string rule_text = cfg.exclusion_rule;
  if (rule_text.empty()) rule_text = loaded.radii.empty() ? "none" : "injectivity";
  const auto rule = parse_exclusion_rule(rule_text, loaded.radii);
  std::vector<double> scales;
  for (const auto& e : parse_schedule(cfg.schedule)) scales.push_back(e.R);
  const auto profile = ce_at_infinity_profile(loaded.space, scales, rule);

  auto summary = io::profile_summary(profile);
  bool marginal = false;
  for (const auto& s : profile.per_scale)
    for (auto st : s.status) marginal = marginal || st != SolveStatus::Optimal;
  if (loaded.box) {
    // Windows of a quotient block should lift isometrically to the parent.
    std::size_t lifted = 0;
    std::size_t failed = 0;
    for (const auto& s : profile.per_scale)
      for (const auto& w : s.windows) {
        ++lifted;
        if (!lift_window(loaded.filtration->parent, loaded.box->groups[w.block - 1], w.points).isometric) ++failed;
      }
    summary["lift_check"] = {{"windows", lifted}, {"non_isometric", failed}};
  }
  out.write("profile.csv", io::profile_csv(profile));
  out.write_json("profile.json", summary);
  return marginal ? kSolverMarginal : kSuccess;
}

int cmd_warp(const RunConfig& cfg, OutputDir& out) {
  require(!cfg.net.empty(), "--net is required");
  const auto spec = with_source(cfg.net, [&] { return io::net_spec_from_json(io::read_json(cfg.net)); });
  const auto net = with_source(cfg.net, [&] { return io::build_net(spec); });
  const auto intrinsic = intrinsic_metric(net);
  const auto warped = warp_metric(net);
  out.write_json("intrinsic.json", io::to_json(intrinsic));
  out.write_json("warped.json", io::to_json(warped));
  json gens = json::array();
  for (const auto& g : net.generators)
    gens.push_back({{"name", g.name}, {"exact", g.exact}, {"snap_error", g.snap_error}});
  out.write_json("warp_meta.json", {{"base", spec.base},
                                    {"size", spec.size},
                                    {"levels", spec.levels},
                                    {"points", net.size()},
                                    {"generators", std::move(gens)}});
  return kSuccess;
}

}  // namespace

std::vector<ScheduleEntry> parse_schedule(const std::string& text) {
  std::vector<ScheduleEntry> out;
  for (const auto& item : split(text, ',')) {
    const auto colon = item.find(':');
    ScheduleEntry e;
    if (colon == std::string::npos) {
      e.R = parse_number(item, "--schedule");
      e.r = e.R;
    } else {
      e.r = parse_number(item.substr(0, colon), "--schedule");
      e.R = parse_number(item.substr(colon + 1), "--schedule");
    }
    if (!(e.r > 0.0) || !(e.R > 0.0)) throw Error(Errc::InvalidArgument, "--schedule: scales must be positive");
    out.push_back(e);
  }
  if (out.empty()) throw Error(Errc::InvalidArgument, "--schedule is empty");
  return out;
}

ExclusionRule parse_exclusion_rule(const std::string& text, const std::vector<InjectivityRadius>& radii) {
  if (text == "none") return ExclusionRule::none();
  if (text == "injectivity") {
    if (radii.empty())
      throw Error(Errc::InvalidArgument, "--exclusion-rule injectivity needs a --filtration input");
    return ExclusionRule::injectivity(radii);
  }
  if (text.rfind("prefix:", 0) == 0) {
    const double k = parse_number(text.substr(7), "--exclusion-rule");
    if (k < 0 || k != std::floor(k)) throw Error(Errc::InvalidArgument, "--exclusion-rule: prefix needs a count");
    return ExclusionRule::prefix(static_cast<std::size_t>(k));
  }
  if (text.rfind("table:", 0) == 0) {
    std::map<double, std::size_t> table;
    for (const auto& item : split(text.substr(6), ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw Error(Errc::ParseError, "--exclusion-rule: expected R=k in '" + item + "'");
      const double R = parse_number(item.substr(0, eq), "--exclusion-rule");
      const double k = parse_number(item.substr(eq + 1), "--exclusion-rule");
      if (k < 0 || k != std::floor(k)) throw Error(Errc::InvalidArgument, "--exclusion-rule: k must be a count");
      table[R] = static_cast<std::size_t>(k);
    }
    return ExclusionRule::table(std::move(table));
  }
  throw Error(Errc::InvalidArgument, "unknown --exclusion-rule '" + text + "'");
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(Errc::InvalidArgument, "SHA-256 failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

int run(const RunConfig& config, std::ostream& log) {
  static const std::map<std::string, int (*)(const RunConfig&, OutputDir&)> commands = {
      {"build", cmd_build}, {"spectrum", cmd_spectrum}, {"embed", cmd_embed},
      {"certify", cmd_certify}, {"scan", cmd_scan},     {"warp", cmd_warp}};
  const auto it = commands.find(config.command);
  if (it == commands.end()) {
    log << "error: unknown command '" << config.command << "'\n";
    return kInputError;
  }
  std::optional<OutputDir> out;
  try {
    out.emplace(config);
    const int code = it->second(config, *out);
    out->write_manifest(true, code);
    if (code == kSolverMarginal) log << "warning: some solves ended NumericallyMarginal\n";
    return code;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
  } catch (const fs::filesystem_error& e) {
    log << "error: " << e.what() << "\n";
  }
  if (out) out->write_manifest(false, kInputError);
  return kInputError;
}

}  // namespace coarse::cli
