// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are fixed here and are not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "decor/cli.hpp"
#include "decor/io.hpp"
#include "decor/oracle.hpp"

using namespace decor;
using io::json;

namespace {

constexpr std::uint64_t kCampaignSeed = 7;
constexpr std::size_t kCampaignCases = 100;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::filesystem::path write_temp(const std::string& name, const json& j) {
  const auto path = std::filesystem::temp_directory_path() / ("decor_acceptance_" + name);
  std::ofstream(path) << j.dump();
  return path;
}

json run_cli_json(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  if (cli::run(args, out, err) != 0) throw std::runtime_error("cli failed: " + err.str());
  return json::parse(out.str());
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const Check& check_of(const VerificationReport& r, const std::string& key) {
  const Check* c = r.find(key);
  if (!c) throw std::runtime_error("report lacks check " + key);
  return *c;
}

// Worst error of one check across campaign cases; counts failures.
Outcome over_campaign(const CampaignReport& campaign, const std::string& key, std::size_t limit = SIZE_MAX) {
  Outcome o;
  double worst = 0.0;
  std::size_t failed = 0, seen = 0;
  for (const auto& c : campaign.cases) {
    if (seen == limit) break;
    ++seen;
    const auto& chk = check_of(c, key);
    worst = std::max(worst, chk.max_error);
    if (!chk.pass) ++failed;
  }
  o.require(failed == 0, std::to_string(failed) + " cases failed");
  o.detail += (o.detail.empty() ? "" : "; ") + key + " worst " + fmt(worst) + " over " +
              std::to_string(seen) + " cases";
  return o;
}

Outcome merge(std::initializer_list<Outcome> parts) {
  Outcome o;
  for (const auto& p : parts) {
    o.pass = o.pass && p.pass;
    if (!o.detail.empty()) o.detail += " | ";
    o.detail += p.detail;
  }
  return o;
}

const json kK2 = json::parse(R"({"n": 2, "edges": [[0, 1]], "root": 0})");
const json kK3 = json::parse(R"({"n": 3, "edges": [[0, 1], [0, 2], [1, 2]], "root": 0})");

Outcome criterion_zd_two_site() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto dec = write_temp("k2.json", kK2);
  double worst = 0.0;
  for (int d = 1; d <= 3; ++d) {
    const auto j = run_cli_json({"spectrum", "--preset", "zd:" + std::to_string(d), "--decoration", dec.string()});
    const double s = std::sqrt(1.0 + 4.0 * d * d);
    const double expected[2][2] = {{0.0, 1.0 + 2.0 * d - s}, {2.0, 1.0 + 2.0 * d + s}};
    if (j["intervals"].size() != 2) {
      o.require(false, "d=" + std::to_string(d) + ": expected two bands");
      continue;
    }
    for (int b = 0; b < 2; ++b)
      for (int e = 0; e < 2; ++e)
        worst = std::max(worst, std::abs(j["intervals"][b][e].get<double>() - expected[b][e]));
  }
  const double secs = seconds_since(t0);
  o.require(worst <= 1e-9, "endpoint error " + fmt(worst) + " > 1e-9");
  o.require(secs < 1.0, "runtime " + fmt(secs) + " s");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("max endpoint error ") + fmt(worst) + ", " + fmt(secs) + " s";
  return o;
}

Outcome criterion_zd_triangle() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto dec = write_temp("k3.json", kK3);
  const auto g = run_cli_json({"gamma", "--decoration", dec.string()});
  o.require(std::abs(g["c"].get<double>() + 2.0) <= 1e-10, "c");
  o.require(g["poles"].size() == 1 && std::abs(g["poles"][0].get<double>() - 1.0) <= 1e-10, "pole");
  o.require(g["weights"].size() == 1 && std::abs(g["weights"][0].get<double>() - 2.0) <= 1e-10, "weight");
  o.require(g["remainder"].size() == 1 && std::abs(g["remainder"][0].get<double>() - 3.0) <= 1e-10, "remainder");

  const auto gamma = io::gamma_from_json(g);
  const auto s = run_cli_json({"spectrum", "--preset", "zd:1", "--decoration", dec.string()});
  double worst = 0.0;
  if (s["intervals"].size() != 2) {
    o.require(false, "expected two bands");
  } else {
    const double eps_minus = s["intervals"][0][1].get<double>();
    const double eps_plus = s["intervals"][1][1].get<double>();
    o.require(std::abs(s["intervals"][0][0].get<double>()) <= 1e-10, "lower band starts at 0");
    o.require(std::abs(s["intervals"][1][0].get<double>() - 3.0) <= 1e-10, "upper band starts at 3");
    o.require(eps_minus < 1.0 && eps_plus > 1.0, "eps- < 1 < eps+");
    worst = std::max(std::abs(gamma(eps_minus) - 4.0), std::abs(gamma(eps_plus) - 4.0));
    o.require(worst <= 1e-10, "gamma(eps+-) - 4 = " + fmt(worst));
  }
  bool flat = false;
  for (const auto& p : s["points"])
    if (std::abs(p["value"].get<double>() - 3.0) <= 1e-10 && p["multiplicity"] == "extensive") flat = true;
  o.require(flat, "extensive point at 3");
  const double secs = seconds_since(t0);
  o.require(secs < 1.0, "runtime " + fmt(secs) + " s");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("|gamma(eps+-) - 4| ") + fmt(worst) + ", " + fmt(secs) + " s";
  return o;
}

Outcome criterion_green_relation(const CampaignReport& campaign) {
  Outcome fixed;
  const auto inst = laplacian_instance(path_graph(5), RootedGraph(complete_graph(3), 0));
  const auto rep = verify_green_relation(inst, sample_upper_half_plane(kCampaignSeed, 20, 2.0, 4.0));
  const auto& c = check_of(rep, "green_relation");
  fixed.require(c.pass && c.tol == 1e-9, "P5/K3 failed");
  fixed.detail += (fixed.detail.empty() ? "" : "; ") + std::string("P5/K3 worst ") + fmt(c.max_error);
  return merge({fixed, over_campaign(campaign, "green_relation", 20)});
}

Outcome criterion_lifting() {
  Outcome o;
  for (const auto& [name, dec] : {std::pair{"C4/K2", complete_graph(2)}, std::pair{"C4/K3", complete_graph(3)}}) {
    const auto rep = verify_lifting(laplacian_instance(cycle_graph(4), RootedGraph(dec, 0)));
    const auto& c = check_of(rep, "eigenfunction_lift");
    o.require(c.pass && c.tol == 1e-9, std::string(name) + " residual " + fmt(c.max_error));
    o.detail += (o.detail.empty() ? "" : "; ") + std::string(name) + " worst residual " + fmt(c.max_error);
  }
  return o;
}

Outcome criterion_pole_projection(const CampaignReport& campaign) {
  auto o = over_campaign(campaign, "pole_projection");
  std::size_t cyclic = 0, non_cyclic = 0, trivial = 0;
  for (const auto& c : campaign.cases) {
    const auto& name = check_of(c, "pole_projection").name;
    if (name.find("non-cyclic") != std::string::npos) ++non_cyclic;
    else if (name.find("trivial") != std::string::npos) ++trivial;
    else ++cyclic;
  }
  o.detail += "; cyclic " + std::to_string(cyclic) + ", non-cyclic " + std::to_string(non_cyclic) + ", 1x1 " +
              std::to_string(trivial);
  o.require(non_cyclic > 0 && cyclic > 0, "campaign must exercise both cyclic and non-cyclic roots");
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](const char* id, const char* title, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %s %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
  };

  report("AC1", "Z^d with two-site decoration", criterion_zd_two_site);
  report("AC2", "Z^d with triangle decoration", criterion_zd_triangle);

  const auto t0 = std::chrono::steady_clock::now();
  const auto campaign = run_campaign(kCampaignSeed, kCampaignCases);
  const double campaign_secs = seconds_since(t0);

  report("AC3", "oracle equivalence campaign", [&] {
    auto o = over_campaign(campaign, "spectral_map");
    o.require(campaign.cases.size() == kCampaignCases, "case count");
    o.require(campaign_secs < 60.0, "runtime " + fmt(campaign_secs) + " s");
    o.detail += "; full campaign " + fmt(campaign_secs) + " s";
    return o;
  });
  report("AC4", "gamma coefficient identities", [&] {
    return merge({over_campaign(campaign, "coefficient_c"), over_campaign(campaign, "weight_sum"),
                  over_campaign(campaign, "pole_interlacing"), over_campaign(campaign, "gamma_reconstruction")});
  });
  report("AC5", "Green function relation", [&] { return criterion_green_relation(campaign); });
  report("AC6", "spectral measure relation", [&] { return over_campaign(campaign, "measure_relation"); });
  report("AC7", "eigenfunction lifting", criterion_lifting);
  report("AC8", "poles versus root-deleted minor", [&] { return criterion_pole_projection(campaign); });

  std::printf("%s: %d criterion(s) failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
