#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "decor/gamma.hpp"
#include "decor/graph.hpp"
#include "decor/oracle.hpp"
#include "decor/spectrum.hpp"

namespace decor::io {

// Insertion-ordered so output keys follow the documented layouts.
using json = nlohmann::ordered_json;

/// {"n": int, "edges": [[i,j], ...], "root": int (optional)}
Graph graph_from_json(const json& j);
/// Requires "root".
RootedGraph rooted_graph_from_json(const json& j);
json graph_to_json(const Graph& g);
json rooted_graph_to_json(const RootedGraph& g);

/// {"dim": n, "entries": [[...], ...]} or {"laplacian_of": <graph object>}.
/// Relative graph paths in "laplacian_of" resolve against `base_dir`.
SymmetricOperator operator_from_json(const json& j, const std::filesystem::path& base_dir = {});
json operator_to_json(const SymmetricOperator& op);

/// A graph file may carry its operator under "operator"; without one the
/// operator is the graph's -Laplacian.
SymmetricOperator operator_for_graph(const json& graph_doc, const Graph& g,
                                     const std::filesystem::path& base_dir = {});

/// {"c", "poles", "weights", "remainder", "cyclic"}
json gamma_to_json(const SpectralMap& map);
/// Reads the first three fields back into a HerglotzRational.
HerglotzRational gamma_from_json(const json& j);

/// {"intervals": [[a,b], ...], "points": [{"value": v, "multiplicity": m | "extensive"}]}
json spectrum_to_json(const SpectrumSet& s);
SpectrumSet spectrum_from_json(const json& j);

json report_to_json(const VerificationReport& r);
/// {"seed", "cases": [...], "summary": {"passed", "failed"}}; summary
/// counts cases, a case failing when any of its checks fails.
json campaign_to_json(const CampaignReport& r);

/// Parses a file; throws InputError on I/O or syntax problems.
json read_json_file(const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double ("NaN" for NaN).
std::string format_number(double x);

}  // namespace decor::io
