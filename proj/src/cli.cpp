#include "decor/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "decor/io.hpp"

namespace decor::cli {

namespace {

using io::json;

SolverOptions solver_options(const JobConfig& cfg) {
  SolverOptions opts;
  if (cfg.tol_eig) opts.eig_rel_tol = *cfg.tol_eig;
  return opts;
}

struct LoadedGraph {
  json doc;
  std::filesystem::path dir;
};

LoadedGraph load(const std::string& path, const char* flag) {
  if (path.empty()) throw InputError(std::string("missing ") + flag);
  return {io::read_json_file(path), std::filesystem::path(path).parent_path()};
}

struct Decoration {
  RootedGraph graph;
  SymmetricOperator op;
};

Decoration load_decoration(const JobConfig& cfg) {
  auto [doc, dir] = load(cfg.decoration, "--decoration");
  auto g = io::rooted_graph_from_json(doc);
  auto op = io::operator_for_graph(doc, g.graph, dir);
  return {std::move(g), std::move(op)};
}

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

}  // namespace

int run_decorate(const JobConfig& cfg, std::ostream& out) {
  auto [doc, dir] = load(cfg.input, "--input");
  const auto base = io::graph_from_json(doc);
  const auto dec = load_decoration(cfg);
  write_json(out, io::graph_to_json(decorate(base, dec.graph).product));
  return kSuccess;
}

int run_gamma(const JobConfig& cfg, std::ostream& out) {
  const auto dec = load_decoration(cfg);
  write_json(out, io::gamma_to_json(gamma_from_decoration(dec.op, dec.graph.root, solver_options(cfg))));
  return kSuccess;
}

int run_spectrum(const JobConfig& cfg, std::ostream& out) {
  const auto dec = load_decoration(cfg);
  const auto opts = solver_options(cfg);
  const auto map = gamma_from_decoration(dec.op, dec.graph.root, opts);

  if (cfg.preset.empty() == cfg.input.empty()) throw InputError("spectrum needs exactly one of --preset or --input");
  SpectrumSet base;
  BaseSize base_size;
  if (!cfg.preset.empty()) {
    // zd:<d> is the -Laplacian of Z^d, spectrum [0, 4d].
    int d = 0;
    std::size_t used = 0;
    if (cfg.preset.rfind("zd:", 0) == 0) {
      try {
        d = std::stoi(cfg.preset.substr(3), &used);
      } catch (const std::exception&) {
        d = 0;
      }
    }
    if (d < 1 || used != cfg.preset.size() - 3) throw InputError("unknown preset \"" + cfg.preset + "\"");
    base = SpectrumSet({{0.0, 4.0 * d}}, {});
  } else {
    auto [doc, dir] = load(cfg.input, "--input");
    const auto g = io::graph_from_json(doc);
    const auto op = io::operator_for_graph(doc, g, dir);
    base = SpectrumSet::from_eigenvalues(eigenvalues(op, opts), 1e-9);
    base_size = g.vertex_count();
  }
  write_json(out, io::spectrum_to_json(assemble_decorated_spectrum(map.gamma, map.remainder, base, base_size)));
  return kSuccess;
}

int run_sample_gamma(const JobConfig& cfg, std::ostream& out) {
  if (!cfg.range) throw InputError("sample-gamma needs --range a b");
  const auto [a, b] = *cfg.range;
  if (!(a <= b)) throw InputError("empty range");
  if (!(cfg.step > 0.0)) throw InputError("--step must be positive");

  HerglotzRational gamma;
  auto [doc, dir] = load(cfg.decoration, "--decoration");
  if (doc.contains("poles")) {
    gamma = io::gamma_from_json(doc);
  } else {
    auto g = io::rooted_graph_from_json(doc);
    gamma = gamma_from_decoration(io::operator_for_graph(doc, g.graph, dir), g.root, solver_options(cfg)).gamma;
  }

  const auto count = static_cast<std::size_t>(std::floor((b - a) / cfg.step + 1e-9)) + 1;
  out << "E,gamma,dgamma\n";
  for (std::size_t i = 0; i < count; ++i) {
    const double e = a + static_cast<double>(i) * cfg.step;
    out << io::format_number(e) << ",";
    if (gamma.near_pole(e)) {
      out << "NaN,NaN\n";
    } else {
      out << io::format_number(gamma(e)) << "," << io::format_number(gamma.derivative(e)) << "\n";
    }
  }
  return kSuccess;
}

int run_verify(const JobConfig& cfg, std::ostream& out) {
  OracleTolerances tol;
  tol.solver = solver_options(cfg);
  if (cfg.tol_match) tol.spectral_match = *cfg.tol_match;

  CampaignReport report{cfg.seed, {}};
  if (!cfg.input.empty() || !cfg.decoration.empty()) {
    auto [doc, dir] = load(cfg.input, "--input");
    const auto base = io::graph_from_json(doc);
    const auto dec = load_decoration(cfg);
    Instance inst{base, io::operator_for_graph(doc, base, dir), dec.graph, dec.op,
                  "base " + cfg.input + " | decoration " + cfg.decoration};
    report.cases.push_back(verify_instance(inst, cfg.seed, tol));
  } else {
    report = run_campaign(cfg.seed, cfg.cases, tol);
  }
  write_json(out, io::campaign_to_json(report));
  return report.failed() == 0 ? kSuccess : kVerificationFailed;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra of decorated graphs"};
  app.require_subcommand(1);
  JobConfig cfg;
  std::vector<double> range;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--output", cfg.output, "Write the result here instead of stdout");
    sub->add_option("--tol-eig", cfg.tol_eig, "Eigensolver residual tolerance relative to ||A||_F");
  };
  auto* dec = app.add_subcommand("decorate", "Build the decorated product graph");
  dec->add_option("--input", cfg.input, "Base graph JSON")->required();
  dec->add_option("--decoration", cfg.decoration, "Rooted decoration graph JSON")->required();
  common(dec);

  auto* gam = app.add_subcommand("gamma", "Spectral map gamma of a decoration");
  gam->add_option("--decoration", cfg.decoration, "Rooted decoration graph JSON")->required();
  common(gam);

  auto* spec = app.add_subcommand("spectrum", "Spectrum of the decorated operator");
  spec->add_option("--decoration", cfg.decoration, "Rooted decoration graph JSON")->required();
  spec->add_option("--preset", cfg.preset, "Infinite base spectrum, e.g. zd:2");
  spec->add_option("--input", cfg.input, "Finite base graph JSON");
  common(spec);

  auto* samp = app.add_subcommand("sample-gamma", "Tabulate gamma and gamma' as CSV");
  samp->add_option("--decoration", cfg.decoration, "Rooted decoration graph JSON or gamma JSON")->required();
  samp->add_option("--range", range, "Sampling interval a b")->expected(2)->required();
  samp->add_option("--step", cfg.step, "Sample spacing")->required();
  common(samp);

  auto* ver = app.add_subcommand("verify", "Check the decoration identities against dense diagonalization");
  ver->add_option("--seed", cfg.seed, "Campaign seed");
  ver->add_option("--cases", cfg.cases, "Number of random cases");
  ver->add_option("--input", cfg.input, "Base graph JSON (single fixed instance)");
  ver->add_option("--decoration", cfg.decoration, "Rooted decoration graph JSON (single fixed instance)");
  ver->add_option("--tol-match", cfg.tol_match, "Eigenvalue matching tolerance relative to 1 + ||H||");
  common(ver);

  std::vector<const char*> argv{"decor"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }
  if (!range.empty()) cfg.range = std::make_pair(range[0], range[1]);
  cfg.command = app.get_subcommands().front()->get_name();

  std::ostringstream buffer;
  int code = kInputError;
  try {
    if (cfg.command == "decorate") code = run_decorate(cfg, buffer);
    else if (cfg.command == "gamma") code = run_gamma(cfg, buffer);
    else if (cfg.command == "spectrum") code = run_spectrum(cfg, buffer);
    else if (cfg.command == "sample-gamma") code = run_sample_gamma(cfg, buffer);
    else code = run_verify(cfg, buffer);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  if (cfg.output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << cfg.output << "\n";
      return kInputError;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace decor::cli
