#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "coarse/cli.hpp"
#include "coarse/error.hpp"
#include "coarse/io.hpp"
#include "coarse/parallel.hpp"
#include "support.hpp"

using namespace coarse;
namespace fs = std::filesystem;
using io::json;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("coarse_lab_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::string schema_message(const json& j, const std::function<void(const json&)>& parse) {
  try {
    parse(j);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SchemaError) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "accepted " << j.dump();
  return {};
}

int run_cli(cli::RunConfig cfg, std::string* log = nullptr) {
  std::ostringstream os;
  const int code = cli::run(cfg, os);
  if (log) *log = os.str();
  return code;
}

}  // namespace

TEST(Io, RoundTripsReValidate) {
  testsupport::Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = validate_metric(testsupport::random_real_metric(rng, testsupport::uniform_int(rng, 1, 8), 0.1, 3));
    const auto back = io::space_from_json(io::parse_json(io::to_json(s).dump(), "mem"));
    EXPECT_EQ(back.dist(), s.dist());
    EXPECT_EQ(back.labels(), s.labels());
  }
  const auto u = coarse_disjoint_union({FiniteGraph::cycle(4).metric(), FiniteGraph::path(3).metric()});
  const auto ub = io::block_space_from_json(io::to_json(u));
  EXPECT_EQ(ub.separation_radii(), u.separation_radii());

  const auto r = max_separation_sdp(FiniteGraph::cycle(4).metric(), 2.0);
  const auto rb = io::embed_result_from_json(io::parse_json(io::to_json(r).dump(), "mem"));
  EXPECT_EQ(rb.s_star, r.s_star);
  EXPECT_EQ(rb.gram, r.gram);
  EXPECT_EQ(rb.certificate.support.size(), r.certificate.support.size());
  EXPECT_TRUE(certificate_problems(rb.certificate, FiniteGraph::cycle(4).metric()).empty());

  QuotientGroupSpec spec{3, {{1, 2, 0}}, false};
  const auto sb = io::group_spec_from_json(io::to_json(spec));
  EXPECT_EQ(sb.generators, spec.generators);
  EXPECT_FALSE(sb.symmetric_closure);
}

TEST(Io, SchemaErrorsNameTheField) {
  auto space = [](const json& j) { io::space_from_json(j); };
  EXPECT_NE(schema_message(json::object(), space).find("'dist'"), std::string::npos);
  EXPECT_NE(schema_message({{"dist", {{0, 1}, {1, "a"}}}}, space).find("dist[1][1]"), std::string::npos);
  EXPECT_NE(schema_message({{"dist", {{0, 1}, {1}}}}, space).find("dist[1]"), std::string::npos);
  auto cert = [](const json& j) { io::certificate_from_json(j); };
  EXPECT_NE(schema_message({{"c", 1}, {"R", 1}, {"pairs", {{0, 1}}}}, cert).find("certificate.pairs[0]"),
            std::string::npos);
  auto blocks = [](const json& j) { io::block_space_from_json(j); };
  EXPECT_NE(schema_message({{"union_rule", "other"}, {"blocks", json::array()}}, blocks).find("union_rule"),
            std::string::npos);
  auto net = [](const json& j) { io::net_spec_from_json(j); };
  EXPECT_NE(schema_message({{"base", "circle"}, {"size", 4}, {"alpha", "1/x"}, {"levels", {1}}}, net).find("alpha"),
            std::string::npos);

  // A well-formed matrix that is not a metric reports the metric error.
  try {
    io::space_from_json({{"dist", {{0, 1}, {2, 0}}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Asymmetric);
  }
  try {
    io::parse_json("{\"dist\": [", "x.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
    EXPECT_NE(std::string(e.what()).find("x.json"), std::string::npos);
  }
}

TEST(Io, EdgeListsReportLines) {
  const auto g = io::graph_from_edge_list("# square\n0 1\n1 2\n\n2 3 # last\n3 0\n", "sq");
  EXPECT_EQ(g.vertex_count(), 4u);
  EXPECT_EQ(g.edges().size(), 4u);
  try {
    io::graph_from_edge_list("0 1\n1 x\n", "bad.edges");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
    EXPECT_NE(std::string(e.what()).find("bad.edges:2"), std::string::npos);
  }
  EXPECT_THROW(io::graph_from_edge_list("1 1\n", "loop"), Error);
}

TEST(Io, FiltrationStagesMayBeFiles) {
  const auto dir = scratch("filtration");
  write_file(dir / "z4.json", R"({"degree": 4, "generators": [[1, 2, 3, 0]]})");
  write_file(dir / "f.json", R"({"parent": "Z", "stages": ["z4.json", {"degree": 8, "generators": [[1,2,3,4,5,6,7,0]]}]})");
  const auto f = io::read_filtration((dir / "f.json").string());
  ASSERT_EQ(f.stages.size(), 2u);
  EXPECT_EQ(f.stages[0].degree, 4);
  EXPECT_EQ(f.parent.kind, ParentGroup::Kind::FreeAbelian);

  write_file(dir / "g.json", R"({"parent": {"kind": "free", "rank": 0}, "stages": []})");
  EXPECT_THROW(io::read_filtration((dir / "g.json").string()), Error);
}

TEST(Io, DoublesRoundTripExactly) {
  testsupport::Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const double v = testsupport::uniform_real(rng, -1e6, 1e6) / 7.0;
    EXPECT_EQ(std::stod(io::format_double(v)), v);
  }
  EXPECT_EQ(io::format_double(2.0), "2");
}

TEST(Cli, ArgumentParsing) {
  const auto s = cli::parse_schedule("1:2,3");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].r, 1.0);
  EXPECT_EQ(s[0].R, 2.0);
  EXPECT_EQ(s[1].r, 3.0);
  EXPECT_THROW(cli::parse_schedule("1,x"), Error);
  EXPECT_THROW(cli::parse_schedule("-1"), Error);

  EXPECT_EQ(cli::parse_exclusion_rule("prefix:2", {}).exclude_below(1), 3u);
  EXPECT_EQ(cli::parse_exclusion_rule("table:2=1,8=2", {}).exclude_below(9), 3u);
  EXPECT_THROW(cli::parse_exclusion_rule("injectivity", {}), Error);
  EXPECT_THROW(cli::parse_exclusion_rule("sometimes", {}), Error);

  EXPECT_EQ(cli::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Cli, EmbedSpectrumAndManifests) {
  const auto out = scratch("embed");
  cli::RunConfig cfg;
  cfg.command = "embed";
  cfg.space = testsupport::data_path("c4.json");
  cfg.R = 2.0;
  cfg.out = (out / "a").string();
  ASSERT_EQ(run_cli(cfg), cli::kSuccess);
  const auto doc = io::read_json((out / "a" / "embed.json").string());
  EXPECT_NEAR(doc["s_star"].get<double>(), 1.41421356, 1e-8);
  const auto cert = io::certificate_from_json(doc["certificate"]);
  // Only the diagonals (0, 2) and (1, 3) carry mass.
  for (const auto& e : cert.support) EXPECT_EQ((e.i + e.j) % 2, 0u);
  EXPECT_LE(doc["validation"]["random_lipschitz_max"].get<double>(), doc["validation"]["poincare_value"].get<double>() + 1e-6);

  // Same config, same bytes.
  cfg.out = (out / "b").string();
  ASSERT_EQ(run_cli(cfg), cli::kSuccess);
  EXPECT_EQ(io::read_text((out / "a" / "manifest.json").string()), io::read_text((out / "b" / "manifest.json").string()));
  const auto manifest = io::read_json((out / "a" / "manifest.json").string());
  EXPECT_TRUE(manifest["complete"].get<bool>());
  for (const auto& o : manifest["outputs"])
    EXPECT_EQ(cli::sha256_hex(io::read_text((out / "a" / o["file"].get<std::string>()).string())), o["sha256"]);

  cli::RunConfig spec;
  spec.command = "spectrum";
  spec.graphs = {testsupport::data_path("k4.edges")};
  spec.out = (out / "k4").string();
  ASSERT_EQ(run_cli(spec), cli::kSuccess);
  EXPECT_NEAR(io::read_json((out / "k4" / "spectrum.json").string())["lambda1"].get<double>(), 4.0, 1e-12);
}

TEST(Cli, InputErrorsExitOne) {
  const auto dir = scratch("errors");
  write_file(dir / "bad.json", R"({"labels": ["a", "b"], "dist": [[0, 1], [1, null]]})");
  cli::RunConfig cfg;
  cfg.command = "embed";
  cfg.space = (dir / "bad.json").string();
  cfg.R = 1.0;
  cfg.out = (dir / "out").string();
  std::string log;
  EXPECT_EQ(run_cli(cfg, &log), cli::kInputError);
  EXPECT_NE(log.find("dist[1][1]"), std::string::npos) << log;
  EXPECT_NE(log.find("bad.json"), std::string::npos) << log;
  EXPECT_FALSE(io::read_json((dir / "out" / "manifest.json").string())["complete"].get<bool>());

  write_file(dir / "broken.json", "{\"dist\": [[0, 1], [1, 0]]");
  cfg.space = (dir / "broken.json").string();
  EXPECT_EQ(run_cli(cfg, &log), cli::kInputError);
  EXPECT_NE(log.find("ParseError"), std::string::npos) << log;

  cfg.command = "nonsense";
  EXPECT_EQ(run_cli(cfg), cli::kInputError);
  cfg.command = "embed";
  cfg.space = testsupport::data_path("c4.json");
  cfg.R.reset();
  EXPECT_EQ(run_cli(cfg), cli::kInputError);
}

TEST(Cli, BuildScanAndWarpOutputsReparse) {
  const auto out = scratch("pipeline");
  cli::RunConfig build;
  build.command = "build";
  build.filtration = testsupport::data_path("filtration_z.json");
  build.out = (out / "build").string();
  ASSERT_EQ(run_cli(build), cli::kSuccess);
  const auto blocks = io::block_space_from_json(io::read_json((out / "build" / "blockspace.json").string()));
  EXPECT_EQ(blocks.block_count(), 3u);

  cli::RunConfig scan;
  scan.command = "scan";
  scan.space = (out / "build" / "blockspace.json").string();
  scan.schedule = "2,4";
  scan.exclusion_rule = "prefix:1";
  scan.out = (out / "scan").string();
  ASSERT_EQ(run_cli(scan), cli::kSuccess);
  const auto summary = io::read_json((out / "scan" / "profile.json").string());
  EXPECT_NEAR(summary["rho_minus"]["4"].get<double>(), 4.0, 1e-6);
  EXPECT_EQ(io::read_text((out / "scan" / "profile.csv").string()).rfind("R,block,window,n,s_star\n", 0), 0u);

  cli::RunConfig warp;
  warp.command = "warp";
  warp.net = testsupport::data_path("net_rot.json");
  warp.out = (out / "warp").string();
  ASSERT_EQ(run_cli(warp), cli::kSuccess);
  const auto w = io::space_from_json(io::read_json((out / "warp" / "warped.json").string()));
  const auto i = io::space_from_json(io::read_json((out / "warp" / "intrinsic.json").string()));
  EXPECT_EQ(w.size(), 24u);
  EXPECT_LE((w.dist() - i.dist()).maxCoeff(), 1e-12);
}

TEST(Parallel, ThreadCapFromEnvironment) {
  setenv("COARSE_LAB_THREADS", "3", 1);
  EXPECT_EQ(worker_count(), 3u);
  setenv("COARSE_LAB_THREADS", "junk", 1);
  EXPECT_GE(worker_count(), 1u);
  unsetenv("COARSE_LAB_THREADS");

  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 7) throw Error(Errc::InvalidArgument, "boom");
               }),
               Error);
}
