// Command line front end: batch verification suites over the exact
// combinatorics library, with machine-readable JSON reports.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dihom/checks.hpp"
#include "dihom/errors.hpp"
#include "dihom/json_io.hpp"

namespace {

int finish(const dihom::CheckReport& report, const std::string& json_out) {
  const nlohmann::ordered_json j = report.to_json();
  if (!json_out.empty()) {
    std::ofstream out(json_out);
    if (!out) {
      std::cerr << "cannot write " << json_out << "\n";
      return 2;
    }
    out << j.dump(2) << "\n";
    std::cout << report.check << ": "
              << (report.verdict() ? "pass" : "fail") << " ("
              << report.cases.size() << " cases, " << report.wall_ms
              << " ms)\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
  return report.verdict() ? 0 : 1;
}

nlohmann::json parse_cat_arg(const std::string& arg) {
  nlohmann::json j = nlohmann::json::parse(arg, nullptr, false);
  if (j.is_discarded()) {
    std::ifstream in(arg);
    if (in) {
      in >> j;
      return j;
    }
    throw dihom::ParseError("category: neither inline JSON nor a file: " +
                            arg);
  }
  return j;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact combinatorics of finite directed shapes"};
  app.require_subcommand(1);

  std::string json_out;
  app.add_option("--json-out", json_out, "write the report to a file");

  std::size_t max_dim = 2, max_edges = 4;
  std::uint64_t bound = 6;
  std::string coeff_spec = "N";

  // hom TREE CAT
  auto* hom = app.add_subcommand("hom", "enumerate functors from a shape");
  std::string hom_tree, hom_cat;
  hom->add_option("tree", hom_tree, "pasting tree, e.g. [[]]")->required();
  hom->add_option("category", hom_cat, "category JSON or file")->required();

  // nerve CAT
  auto* nerve = app.add_subcommand("nerve", "degreewise nerve sizes");
  std::string nerve_cat;
  nerve->add_option("category", nerve_cat, "category JSON or file")
      ->required();
  nerve->add_option("--max-dim", max_dim, "catalog height bound");
  nerve->add_option("--max-edges", max_edges, "catalog edge bound");

  // check-wedge
  auto* wedge = app.add_subcommand(
      "check-wedge", "wedge vs symmetric power, degreewise");
  std::size_t wk = 1, wn = 2;
  wedge->add_option("-k,--k", wk, "cell dimension")->required();
  wedge->add_option("-n,--n", wn, "number of summands")->required();
  wedge->add_option("--max-dim", max_dim, "catalog height bound");
  wedge->add_option("--max-edges", max_edges, "catalog edge bound");

  // check-disks
  auto* disks = app.add_subcommand(
      "check-disks", "symmetric powers of a disk against the chain models");
  std::size_t dk = 1, dn = 3;
  disks->add_option("-k,--k", dk, "cell dimension")->required();
  disks->add_option("-n,--n-max", dn, "largest power");
  disks->add_option("--max-dim", max_dim, "catalog height bound");
  disks->add_option("--max-edges", max_edges, "catalog edge bound");

  // check-dold-thom
  auto* dt = app.add_subcommand(
      "check-dold-thom",
      "symmetric-product colimit vs reduced linear model, degreewise");
  std::string dt_model = "s1";
  std::size_t dt_m = 1, dt_stage = 3;
  dt->add_option("model", dt_model, "corpus name or StratSet JSON file")
      ->required();
  dt->add_option("-m,--degree", dt_m, "simplicial degree");
  dt->add_option("-N,--stage", dt_stage, "tower stage");

  // check-sphere
  auto* sphere = app.add_subcommand(
      "check-sphere", "circle endomorphism monoid against the coefficients");
  std::size_t sphere_n = 1;
  sphere->add_option("--coeff", coeff_spec,
                     "N | Z2 | Z<k> | trivial | freeC:g | freeA:g | "
                     "table:FILE");
  sphere->add_option("-n,--n", sphere_n, "sphere dimension");
  sphere->add_option("--bound", bound, "weight and word bound");

  // check-hurewicz
  auto* hur = app.add_subcommand(
      "check-hurewicz", "abelianization oracle vs congruence closure");
  std::size_t hg = 2;
  hur->add_option("-g,--generators", hg, "number of circles")->required();
  hur->add_option("--coeff", coeff_spec, "coefficient monoid");
  hur->add_option("--bound", bound, "weight and word bound");

  // sp
  auto* sp = app.add_subcommand("sp", "symmetric power of a model");
  std::string sp_model = "s1";
  std::size_t sp_n = 2;
  sp->add_option("model", sp_model, "corpus name or StratSet JSON file")
      ->required();
  sp->add_option("-n,--n", sp_n, "power");

  // nmod
  auto* nmod = app.add_subcommand("nmod", "free linear model sizes");
  std::string nmod_model = "s1";
  bool nmod_reduced = false;
  nmod->add_option("model", nmod_model, "corpus name or StratSet JSON file")
      ->required();
  nmod->add_option("--coeff", coeff_spec, "coefficient monoid");
  nmod->add_option("--bound", bound, "weight bound");
  nmod->add_flag("--reduced", nmod_reduced, "delete the basepoint column");

  // ho1
  auto* h1 = app.add_subcommand("ho1", "bounded homotopy category table");
  std::string h1_model = "s1";
  std::size_t h1_word = 6;
  bool h1_full = false;
  h1->add_option("model", h1_model, "corpus name or StratSet JSON file")
      ->required();
  h1->add_option("--coeff", coeff_spec, "coefficient monoid");
  h1->add_option("--bound", bound, "weight bound");
  h1->add_option("--word-bound", h1_word, "word length bound");
  h1->add_flag("--non-reduced", h1_full, "keep the basepoint column");

  CLI11_PARSE(app, argc, argv);

  try {
    if (hom->parsed())
      return finish(dihom::cmd_hom(hom_tree, parse_cat_arg(hom_cat)),
                    json_out);
    if (nerve->parsed())
      return finish(
          dihom::cmd_nerve(parse_cat_arg(nerve_cat), max_dim, max_edges),
          json_out);
    if (wedge->parsed())
      return finish(dihom::cmd_check_wedge(wk, wn, max_dim, max_edges),
                    json_out);
    if (disks->parsed()) {
      dihom::Bounds b;
      b.max_dim = max_dim;
      b.max_edges = max_edges;
      return finish(dihom::cmd_check_disks(dk, dn, b), json_out);
    }
    if (dt->parsed())
      return finish(dihom::cmd_check_dold_thom(dt_model, dt_m, dt_stage),
                    json_out);
    if (sphere->parsed())
      return finish(dihom::cmd_check_sphere(dihom::parse_coeff(coeff_spec),
                                            sphere_n, bound),
                    json_out);
    if (hur->parsed())
      return finish(dihom::cmd_check_hurewicz(
                        hg, dihom::parse_coeff(coeff_spec), bound),
                    json_out);
    if (sp->parsed()) return finish(dihom::cmd_sp(sp_model, sp_n), json_out);
    if (nmod->parsed())
      return finish(dihom::cmd_nmod(nmod_model,
                                    dihom::parse_coeff(coeff_spec), bound,
                                    nmod_reduced),
                    json_out);
    if (h1->parsed())
      return finish(dihom::cmd_ho1(h1_model, dihom::parse_coeff(coeff_spec),
                                   bound, h1_word, !h1_full),
                    json_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
