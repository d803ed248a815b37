// cork-calculus: scenario runner and small front ends for the library.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cork/handlebody.hpp"
#include "cork/scenario.hpp"
#include "cork/serialize.hpp"
#include "cork/swalgebra.hpp"

namespace {

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cork-calculus: cannot write " << out_path << "\n";
    return 2;
  }
  out << text;
  return 0;
}

std::string homology_text(const cork::HandlePresentation& pres, const cork::HomologyReport& h) {
  std::ostringstream os;
  os << "presentation: " << (pres.name.empty() ? "(unnamed)" : pres.name) << "\n";
  os << "  dotted circles " << pres.one_handles << ", 2-handles " << pres.two_handles() + pres.opaque_two_handles
     << ", 3-handles " << pres.three_handles << "\n";
  os << "H_1 = " << h.h1.to_string() << "\n";
  os << "H_2 = " << h.h2.to_string() << "\n";
  os << "H_1(boundary) = " << h.boundary_h1.to_string() << "\n";
  os << "euler = " << h.euler << "\n";
  const auto& f = h.intersection_form;
  os << "intersection form: rank " << f.rank << ", signature " << f.signature << ", parity " << to_string(f.parity)
     << ", " << to_string(f.definiteness) << "\n";
  return os.str();
}

std::string beta_text(long n, long m, const cork::BasicClassSet& set) {
  std::ostringstream os;
  os << "beta(E(" << n << ")#" << m << "CP2bar)\n";
  os << "convention: " << to_string(set.convention()) << "\n";
  if (n % 2 != 0)
    os << "! odd n = " << n << ": paper convention gives " << n - 2 << " classes before blow-ups, standard gives "
       << n - 1 << "\n";
  os << "ambient: e=" << set.ambient().e << " sigma=" << set.ambient().sigma << "\n";
  os << "N = " << set.size() << "\n";
  for (const auto& [k, v] : set.sorted()) {
    os << "  t=" << k.t << " e=[";
    for (std::size_t i = 0; i < k.e.size(); ++i) os << (i ? "," : "") << k.e[i];
    os << "] value=" << v.get_str() << "\n";
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cork, plug and rational-blowdown calculus for closed 4-manifold records"};
  app.require_subcommand(1);

  std::string id, p_list, knots, parity = "paper", out_path, format = "text";
  long n = 2;
  auto* sc = app.add_subcommand("scenario", "Run a scenario and print its report");
  sc->add_option("id", id, "Scenario id")->required()->check(CLI::IsMember(cork::scenario_ids()));
  auto* n_opt = sc->add_option("--n", n, "Elliptic surface index for the knotting scenarios");
  sc->add_option("--p-list", p_list, "Comma-separated p values, e.g. 2,4");
  sc->add_option("--knots", knots, "torus:k1,k2,... | twist:k1,... | seifert:FILE | unknot");
  sc->add_option("--parity", parity, "Basic-class parity convention")->check(CLI::IsMember({"paper", "standard"}));
  sc->add_option("--out", out_path, "Write the report to FILE");
  sc->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));

  std::string pres_file, hformat = "text";
  auto* hc = app.add_subcommand("homology", "Homology of a handle presentation file");
  hc->add_option("file", pres_file, "Presentation JSON")->required()->check(CLI::ExistingFile);
  hc->add_option("--format", hformat, "Output format")->check(CLI::IsMember({"text", "json"}));

  long bn = 2, bm = 0;
  std::string bparity = "paper", bformat = "text";
  auto* swc = app.add_subcommand("sw", "Seiberg-Witten basic classes");
  swc->require_subcommand(1);
  auto* beta = swc->add_subcommand("beta", "Basic classes of E(n) # m(-CP2)");
  beta->add_option("--n", bn, "n >= 2")->required();
  beta->add_option("--m", bm, "number of blow-ups")->required()->check(CLI::NonNegativeNumber);
  beta->add_option("--parity", bparity, "Basic-class parity convention")->check(CLI::IsMember({"paper", "standard"}));
  beta->add_option("--format", bformat, "Output format")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (sc->parsed()) {
      cork::ScenarioParams params;
      params.id = id;
      params.convention = cork::parse_convention(parity);
      if (*n_opt) params.n = n;
      if (!p_list.empty()) {
        std::stringstream ss(p_list);
        std::string item;
        while (std::getline(ss, item, ',')) params.p_list.push_back(std::stol(item));
      }
      if (!knots.empty()) params.knots = cork::parse_knots(knots);
      const cork::ScenarioReport rep = cork::run_scenario(params);
      const std::string text = format == "json" ? cork::to_json(rep).dump(2) + "\n" : cork::to_text(rep);
      if (int rc = emit(text, out_path)) return rc;
      return rep.all_pass() ? 0 : 1;
    }
    if (hc->parsed()) {
      const cork::HandlePresentation pres = cork::presentation_from_json(cork::read_json_file(pres_file));
      const cork::HomologyReport h = cork::homology(pres);
      if (hformat == "json") {
        cork::Json j;
        j["presentation"] = cork::to_json(pres);
        j["homology"] = cork::to_json(h);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << homology_text(pres, h);
      }
      return 0;
    }
    if (beta->parsed()) {
      const cork::BasicClassSet set =
          cork::beta_elliptic(bn, static_cast<std::size_t>(bm), cork::parse_convention(bparity));
      if (bformat == "json") {
        cork::Json j = cork::to_json(set);
        j["n"] = bn;
        j["m"] = bm;
        j["count"] = set.size();
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << beta_text(bn, bm, set);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "cork-calculus: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
