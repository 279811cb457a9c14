#include "decor/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace decor::io {

namespace {

std::size_t index_field(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw InputError(std::string("field \"") + key + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

Graph graph_from_json(const json& j) {
  return guarded("invalid graph", [&] {
    const std::size_t n = index_field(j, "n");
    std::vector<Edge> edges;
    for (const auto& e : j.value("edges", json::array())) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
          e[0].get<long long>() < 0 || e[1].get<long long>() < 0) {
        throw InputError("invalid graph: edge " + e.dump() + " is not a pair of vertex indices");
      }
      edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    return Graph(n, std::move(edges));
  });
}

RootedGraph rooted_graph_from_json(const json& j) {
  if (!j.contains("root")) throw InputError("decoration graph has no \"root\"");
  return guarded("invalid rooted graph", [&] { return RootedGraph(graph_from_json(j), index_field(j, "root")); });
}

json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (const auto& [i, k] : g.edges()) edges.push_back({i, k});
  return json{{"n", g.vertex_count()}, {"edges", std::move(edges)}};
}

json rooted_graph_to_json(const RootedGraph& g) {
  auto j = graph_to_json(g.graph);
  j["root"] = g.root;
  return j;
}

SymmetricOperator operator_from_json(const json& j, const std::filesystem::path& base_dir) {
  return guarded("invalid operator", [&] {
    if (j.contains("laplacian_of")) {
      const auto& ref = j.at("laplacian_of");
      if (ref.is_string()) return laplacian(graph_from_json(read_json_file(base_dir / ref.get<std::string>())));
      return laplacian(graph_from_json(ref));
    }
    const std::size_t n = index_field(j, "dim");
    const auto& rows = j.at("entries");
    if (!rows.is_array() || rows.size() != n) throw InputError("operator \"entries\" must have dim rows");
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      if (!rows[r].is_array() || rows[r].size() != n) {
        throw InputError("operator row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
      }
      for (std::size_t c = 0; c < n; ++c) m(r, c) = rows[r][c].get<double>();
    }
    return SymmetricOperator(std::move(m));
  });
}

json operator_to_json(const SymmetricOperator& op) {
  json rows = json::array();
  for (std::size_t r = 0; r < op.dim(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < op.dim(); ++c) row.push_back(op(r, c));
    rows.push_back(std::move(row));
  }
  return json{{"dim", op.dim()}, {"entries", std::move(rows)}};
}

SymmetricOperator operator_for_graph(const json& graph_doc, const Graph& g, const std::filesystem::path& base_dir) {
  if (!graph_doc.contains("operator")) return laplacian(g);
  const auto& spec = graph_doc.at("operator");
  if (spec.contains("laplacian_of") && spec.at("laplacian_of") == "self") return laplacian(g);
  auto op = operator_from_json(spec, base_dir);
  if (auto e = first_incompatible_entry(op, g)) {
    throw InputError("operator entry (" + std::to_string(e->first) + "," + std::to_string(e->second) +
                     ") is nonzero but {" + std::to_string(e->first) + "," + std::to_string(e->second) +
                     "} is not an edge");
  }
  return op;
}

json gamma_to_json(const SpectralMap& map) {
  return json{{"c", map.gamma.constant()},
              {"poles", map.gamma.poles()},
              {"weights", map.gamma.weights()},
              {"remainder", map.remainder},
              {"cyclic", map.is_cyclic()}};
}

HerglotzRational gamma_from_json(const json& j) {
  return guarded("invalid gamma", [&] {
    return HerglotzRational(j.at("c").get<double>(), j.at("poles").get<std::vector<double>>(),
                            j.at("weights").get<std::vector<double>>());
  });
}

json spectrum_to_json(const SpectrumSet& s) {
  json intervals = json::array();
  for (const auto& iv : s.intervals()) intervals.push_back({iv.lo, iv.hi});
  json points = json::array();
  for (const auto& p : s.points()) {
    json m = p.multiplicity.extensive ? json("extensive") : json(p.multiplicity.count);
    points.push_back(json{{"value", p.value}, {"multiplicity", std::move(m)}});
  }
  return json{{"intervals", std::move(intervals)}, {"points", std::move(points)}};
}

SpectrumSet spectrum_from_json(const json& j) {
  return guarded("invalid spectrum", [&] {
    std::vector<Interval> intervals;
    for (const auto& iv : j.value("intervals", json::array())) {
      if (!iv.is_array() || iv.size() != 2) throw InputError("interval must be [lo, hi]");
      intervals.push_back({iv[0].get<double>(), iv[1].get<double>()});
    }
    std::vector<SpectralPoint> points;
    for (const auto& p : j.value("points", json::array())) {
      const auto& m = p.at("multiplicity");
      Multiplicity mult;
      if (m.is_string()) {
        if (m.get<std::string>() != "extensive") throw InputError("multiplicity must be a count or \"extensive\"");
        mult = Multiplicity::infinite();
      } else {
        mult = Multiplicity::finite(index_field(p, "multiplicity"));
      }
      points.push_back({p.at("value").get<double>(), mult});
    }
    return SpectrumSet(std::move(intervals), std::move(points));
  });
}

json report_to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"max_error", c.max_error}, {"tol", c.tol}});
  }
  return json{{"descriptor", r.descriptor}, {"seed", r.seed}, {"checks", std::move(checks)}};
}

json campaign_to_json(const CampaignReport& r) {
  json cases = json::array();
  for (const auto& c : r.cases) cases.push_back(report_to_json(c));
  return json{{"seed", r.seed},
              {"cases", std::move(cases)},
              {"summary", json{{"passed", r.passed()}, {"failed", r.failed()}}}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("cannot parse " + path.string() + ": " + e.what());
  }
}

std::string format_number(double x) {
  if (std::isnan(x)) return "NaN";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

}  // namespace decor::io
