#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coarse/embed.hpp"
#include "coarse/group.hpp"
#include "coarse/infinity.hpp"
#include "coarse/metric.hpp"
#include "coarse/spectral.hpp"
#include "coarse/warped.hpp"

namespace coarse::io {

using json = nlohmann::json;

/// Whole file as text. Throws ParseError when it cannot be read.
std::string read_text(const std::string& path);
/// Throws ParseError carrying the parser's position.
json parse_json(const std::string& text, const std::string& source);
json read_json(const std::string& path);

// Every *_from_json throws SchemaError naming the offending field, and the
// validation errors of the type it builds.

json to_json(const FiniteMetricSpace& space);
FiniteMetricSpace space_from_json(const json& j);

json to_json(const BlockSpace& space);
BlockSpace block_space_from_json(const json& j);

json to_json(const CertificateMeasure& mu);
CertificateMeasure certificate_from_json(const json& j);

json to_json(const EmbedResult& result);
EmbedResult embed_result_from_json(const json& j);

json to_json(const QuotientGroupSpec& spec);
QuotientGroupSpec group_spec_from_json(const json& j);

/// {"parent": "Z" | {"kind": "free" | "free_abelian", "rank": r},
///  "stages": [group object or path of a group JSON file, ...]}.
/// Relative stage paths resolve against `base_dir`.
FiltrationSpec filtration_from_json(const json& j, const std::string& base_dir);
FiltrationSpec read_filtration(const std::string& path);

/// {"base": "circle", "size": N, "alpha": "p/q" (optional), "levels": [...]}.
struct NetSpec {
  std::string base;
  std::size_t size = 0;
  std::optional<Rational> alpha;
  std::vector<double> levels;
};
NetSpec net_spec_from_json(const json& j);
ConeNet build_net(const NetSpec& spec);

/// Edge list: one "u v" pair of 0-based vertices per line; blank lines and
/// text after '#' are ignored. The vertex count is the largest index + 1.
/// Throws ParseError with the line number.
FiniteGraph graph_from_edge_list(const std::string& text, const std::string& source);

/// CSV with header block,window_id,n,diam,lambda1,hit.
std::string scan_csv(const std::vector<ExpanderCandidate>& candidates);
/// CSV with header R,block,window,n,s_star (s_star empty without a far pair).
std::string profile_csv(const ScanProfile& profile);
/// {"rule", "catalogue_certified", "rho_minus": {R: value or null}}.
json profile_summary(const ScanProfile& profile);
json to_json(const ExpanderSearch& search);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace coarse::io
