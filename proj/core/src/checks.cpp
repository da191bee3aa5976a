#include "dihom/checks.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "dihom/errors.hpp"
#include "dihom/homotopy.hpp"
#include "dihom/json_io.hpp"
#include "dihom/thetaset.hpp"

namespace dihom {

bool CheckReport::verdict() const {
  return std::all_of(cases.begin(), cases.end(), [](const CheckCase& c) {
    return c.diagnostic || c.pass;
  });
}

nlohmann::ordered_json CheckReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["check"] = check;
  j["params"] = params;
  nlohmann::ordered_json cs = nlohmann::ordered_json::array();
  for (const CheckCase& c : cases) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    if (c.diagnostic) cj["diagnostic"] = true;
    cj["details"] = c.details;
    cs.push_back(std::move(cj));
  }
  j["cases"] = std::move(cs);
  j["verdict"] = verdict() ? "pass" : "fail";
  j["wall_ms"] = wall_ms;
  return j;
}

namespace {

class Timer {
public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

} // namespace

CheckReport cmd_hom(const std::string& tree_text,
                    const nlohmann::json& cat_spec) {
  Timer timer;
  CheckReport rep;
  rep.check = "hom";
  rep.params["tree"] = tree_text;
  rep.params["category"] = nlohmann::ordered_json::parse(cat_spec.dump());
  CheckCase c;
  c.name = "hom(" + tree_text + ")";
  try {
    const PastingTree t = PastingTree::parse(tree_text);
    const CatPtr cat = cat_from_json(cat_spec);
    const std::vector<Functor> fs = hom_set(t, *cat);
    c.details["count"] = fs.size();
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Functor& f : fs) arr.push_back(f.to_text());
    c.details["elements"] = std::move(arr);
  } catch (const Error& e) {
    c.pass = false;
    c.details["error"] = e.what();
  }
  rep.cases.push_back(std::move(c));
  rep.wall_ms = timer.ms();
  return rep;
}

CheckReport cmd_nerve(const nlohmann::json& cat_spec, std::size_t max_dim,
                      std::size_t max_edges) {
  Timer timer;
  CheckReport rep;
  rep.check = "nerve";
  rep.params["category"] = nlohmann::ordered_json::parse(cat_spec.dump());
  rep.params["max_dim"] = max_dim;
  rep.params["max_edges"] = max_edges;
  CheckCase c;
  c.name = "nerve";
  try {
    const CatPtr cat = cat_from_json(cat_spec);
    const ThetaFamily f = nerve(*cat, max_dim, max_edges);
    nlohmann::ordered_json sizes;
    for (std::size_t i = 0; i < f.catalog.size(); ++i) {
      if (f.degrees[i].error)
        sizes[f.catalog[i].to_text()] = *f.degrees[i].error;
      else
        sizes[f.catalog[i].to_text()] = f.size_at(i);
    }
    c.details["sizes"] = std::move(sizes);
  } catch (const Error& e) {
    c.pass = false;
    c.details["error"] = e.what();
  }
  rep.cases.push_back(std::move(c));
  rep.wall_ms = timer.ms();
  return rep;
}

CheckReport cmd_check_wedge(std::size_t k, std::size_t n, std::size_t max_dim,
                            std::size_t max_edges) {
  Timer timer;
  CheckReport rep;
  rep.check = "check-wedge";
  rep.params = {{"k", k},
                {"n", n},
                {"max_dim", max_dim},
                {"max_edges", max_edges}};
  try {
    const WedgeReport w = wedge_compare(k, n, max_dim, max_edges);
    for (const TreeComparison& tc : w.cases) {
      CheckCase c;
      c.name = "theta=" + tc.theta.to_text();
      c.diagnostic = k >= 2;
      c.pass = tc.bijective();
      c.details = tc.to_json();
      rep.cases.push_back(std::move(c));
    }
  } catch (const Error& e) {
    CheckCase c;
    c.name = "wedge";
    c.pass = false;
    c.details["error"] = e.what();
    rep.cases.push_back(std::move(c));
  }
  rep.wall_ms = timer.ms();
  return rep;
}

CheckReport cmd_check_disks(std::size_t k, std::size_t n_max,
                            const Bounds& bounds) {
  Timer timer;
  CheckReport rep;
  rep.check = "check-disks";
  rep.params = {{"k", k},
                {"n_max", n_max},
                {"max_dim", bounds.max_dim},
                {"max_edges", bounds.max_edges}};
  const bool diagnostic = k >= 2;
  try {
    const CatPtr globe = OmegaCat::globe(k);
    const std::vector<ThetaFamily> powers =
        sym(*globe, n_max, bounds.max_dim, bounds.max_edges);
    // The n-th symmetric-power summand must match the nerve of the n-fold
    // chain degreewise, through the summand-collapse map.
    for (std::size_t n = 1; n <= n_max; ++n) {
      const WedgeReport w = wedge_compare(k, n, bounds.max_dim,
                                          bounds.max_edges);
      CheckCase c;
      c.name = "summand n=" + std::to_string(n);
      c.diagnostic = diagnostic;
      c.pass = true;
      nlohmann::ordered_json per_tree = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < w.cases.size(); ++i) {
        const TreeComparison& tc = w.cases[i];
        const std::size_t orbit_size = powers[n].degrees[i].error
                                           ? 0
                                           : powers[n].size_at(i);
        const bool sizes_agree = !tc.error && orbit_size == tc.rhs;
        if (!tc.bijective() || !sizes_agree) c.pass = false;
        nlohmann::ordered_json tj = tc.to_json();
        tj["orbit_family_size"] = orbit_size;
        per_tree.push_back(std::move(tj));
      }
      c.details["cases"] = std::move(per_tree);
      rep.cases.push_back(std::move(c));
    }
    const ColimitReport col = reduced_chain_colimit_check(
        k, n_max, bounds.max_dim, bounds.max_edges);
    CheckCase c;
    c.name = "reduced chain colimit";
    c.diagnostic = diagnostic;
    c.pass = col.pass();
    c.details = col.to_json();
    rep.cases.push_back(std::move(c));
  } catch (const Error& e) {
    CheckCase c;
    c.name = "disks";
    c.pass = false;
    c.details["error"] = e.what();
    rep.cases.push_back(std::move(c));
  }
  rep.wall_ms = timer.ms();
  return rep;
}

CheckReport cmd_check_dold_thom(const std::string& strat_source, std::size_t m,
                                std::size_t n_stage) {
  Timer timer;
  CheckReport rep;
  rep.check = "check-dold-thom";
  rep.params = {{"model", strat_source}, {"degree", m}, {"stage", n_stage}};
  CheckCase c;
  c.name = strat_source + " @ degree " + std::to_string(m);
  try {
    const StratSet x = load_strat(strat_source, m + 1);
    const DoldThomReport r = dold_thom_check(x, m, n_stage);
    c.pass = r.pass();
    c.details = r.to_json();
  } catch (const Error& e) {
    c.pass = false;
    c.details["error"] = e.what();
  }
  rep.cases.push_back(std::move(c));
  rep.wall_ms = timer.ms();
  return rep;
}

namespace {

// Endomorphism monoid of the reduced M-linear circle at its point, checked
// against (M, +) on every class within the weight bound.
CheckCase sphere_case(const CommMonoid& coeff, std::uint64_t bound) {
  CheckCase c;
  c.name = "endo(S1; " + coeff.describe() + ")";
  try {
    const StratSet s1 = corpus::circle(2);
    const StratCMonoid lin = m_linear_reduced(s1, coeff, bound);
    const Ho1Skeleton sk = skeleton_of(lin);
    Ho1Options opts;
    opts.word_bound = static_cast<std::size_t>(bound);
    const Ho1Result res = ho1(sk, 0, opts);

    // Arrows are the combinations a * e; identify a with its class.
    const std::uint32_t pad1 = s1.basepoint_pad(1);
    std::uint32_t e_col = pad1 == 0 ? 1 : 0;
    auto arrow_of = [&](const MonElem& a) {
      MComb comb;
      comb.coeffs.assign(s1.count(1), coeff.unit());
      comb.coeffs[e_col] = a;
      return lin.index_of(1, comb);
    };
    const std::vector<MonElem> elems = coeff.elements_up_to(bound);

    bool injective = true, surjective = true, table_ok = true;
    std::map<std::size_t, MonElem> image;
    std::map<MonElem, std::size_t> cls_of;
    for (const MonElem& a : elems) {
      const auto cls = res.word_class.find({0, {arrow_of(a)}});
      if (cls == res.word_class.end())
        throw Error("sphere check: generator word undiscovered");
      cls_of[a] = cls->second;
      if (!image.emplace(cls->second, a).second) injective = false;
    }
    std::size_t within = 0;
    for (const std::size_t ec : res.endo_classes)
      if (res.classes[ec].weight <= bound) {
        ++within;
        if (!image.count(ec)) surjective = false;
      }
    for (const MonElem& a : elems)
      for (const MonElem& b : elems) {
        const MonElem sum = coeff.mul(a, b);
        if (coeff.mass(sum) > bound) continue;
        const auto entry = res.table.find({cls_of[a], cls_of[b]});
        if (entry == res.table.end() || !entry->second ||
            *entry->second != cls_of[sum])
          table_ok = false;
      }
    c.pass = injective && surjective && table_ok;
    c.details["elements_within_bound"] = elems.size();
    c.details["classes_within_bound"] = within;
    c.details["injective"] = injective;
    c.details["surjective"] = surjective;
    c.details["addition_matches"] = table_ok;
    c.details["truncated"] = res.truncated;
  } catch (const Error& e) {
    c.pass = false;
    c.details["error"] = e.what();
  }
  return c;
}

} // namespace

CheckReport cmd_check_sphere(const CommMonoid& coeff, std::size_t n,
                             std::uint64_t bound) {
  Timer timer;
  CheckReport rep;
  rep.check = "check-sphere";
  rep.params = {{"coeff", coeff.describe()}, {"n", n}, {"bound", bound}};
  if (n == 1) {
    rep.cases.push_back(sphere_case(coeff, bound));
  } else {
    // Higher spheres: compare the delooped model's homotopy monoidal
    // category at the top level with the coefficient monoid.
    CheckCase c;
    c.name = "pi_" + std::to_string(n) + "(B^" + std::to_string(n) + "(" +
             coeff.describe() + "))";
    try {
      if (!coeff.is_finite())
        throw InfiniteError(
            "check-sphere: higher spheres need a finite coefficient table");
      const CatPtr b = OmegaCat::delooped_monoid(n, coeff);
      const PiNReport pi = pi_n(*b, 0, n);
      const std::vector<MonElem> elems = coeff.elements_up_to(0);
      bool ok = pi.composition_available && pi.n_objects == 1;
      const auto endo = pi.hom_classes.find({0, 0});
      ok = ok && endo != pi.hom_classes.end() && endo->second == elems.size();
      if (pi.composition_source == "metadata") {
        std::map<MonElem, std::size_t> idx;
        for (std::size_t i = 0; i < elems.size(); ++i) idx[elems[i]] = i;
        for (std::size_t i = 0; i < elems.size() && ok; ++i)
          for (std::size_t k2 = 0; k2 < elems.size(); ++k2)
            if (pi.endo_table[i][k2] != idx[coeff.mul(elems[i], elems[k2])]) {
              ok = false;
              break;
            }
      }
      c.pass = ok;
      c.details = pi.to_json();
    } catch (const Error& e) {
      c.pass = false;
      c.details["error"] = e.what();
    }
    rep.cases.push_back(std::move(c));
  }
  rep.wall_ms = timer.ms();
  return rep;
}

CheckReport cmd_check_hurewicz(std::size_t g, const CommMonoid& coeff,
                               std::uint64_t bound) {
  Timer timer;
  CheckReport rep;
  rep.check = "check-hurewicz";
  rep.params = {{"g", g}, {"coeff", coeff.describe()}, {"bound", bound}};
  const HurewiczReport r = hurewicz_check(g, coeff, bound);
  CheckCase c;
  c.name = "abelianization vs congruence (g=" + std::to_string(g) + ")";
  c.pass = r.pass();
  c.details = r.to_json();
  rep.cases.push_back(std::move(c));
  rep.wall_ms = timer.ms();
  return rep;
}

CheckReport cmd_sp(const std::string& strat_source, std::size_t n) {
  Timer timer;
  CheckReport rep;
  rep.check = "sp";
  rep.params = {{"model", strat_source}, {"n", n}};
  CheckCase c;
  c.name = "sp_power(" + strat_source + ", " + std::to_string(n) + ")";
  try {
    const StratSet x = load_strat(strat_source, 3);
    const StratSet p = sp_power(x, n);
    nlohmann::ordered_json sizes = nlohmann::ordered_json::array();
    bool census = true;
    for (std::size_t m = 0; m <= p.dim(); ++m) {
      sizes.push_back(p.count(m));
      if (p.count(m) != binomial(x.count(m) + n - 1, n)) census = false;
    }
    c.details["sizes"] = std::move(sizes);
    c.details["census_formula"] = census;
    c.pass = census;
  } catch (const Error& e) {
    c.pass = false;
    c.details["error"] = e.what();
  }
  rep.cases.push_back(std::move(c));
  rep.wall_ms = timer.ms();
  return rep;
}

CheckReport cmd_nmod(const std::string& strat_source, const CommMonoid& coeff,
                     std::uint64_t bound, bool reduced) {
  Timer timer;
  CheckReport rep;
  rep.check = "nmod";
  rep.params = {{"model", strat_source},
                {"coeff", coeff.describe()},
                {"bound", bound},
                {"reduced", reduced}};
  CheckCase c;
  c.name = std::string(reduced ? "reduced " : "") + "linear model";
  try {
    const StratSet x = load_strat(strat_source, 3);
    const StratCMonoid lin = StratCMonoid(x, coeff, bound, reduced);
    nlohmann::ordered_json sizes = nlohmann::ordered_json::array();
    nlohmann::ordered_json thin = nlohmann::ordered_json::array();
    for (std::size_t m = 0; m <= lin.dim(); ++m) {
      sizes.push_back(lin.count(m));
      std::size_t t = 0;
      for (std::size_t i = 0; i < lin.count(m); ++i)
        if (m >= 1 && lin.thin(m, i)) ++t;
      thin.push_back(t);
    }
    c.details["carrier_sizes"] = std::move(sizes);
    c.details["thin_counts"] = std::move(thin);
  } catch (const Error& e) {
    c.pass = false;
    c.details["error"] = e.what();
  }
  rep.cases.push_back(std::move(c));
  rep.wall_ms = timer.ms();
  return rep;
}

CheckReport cmd_ho1(const std::string& strat_source, const CommMonoid& coeff,
                    std::uint64_t weight_bound, std::size_t word_bound,
                    bool reduced) {
  Timer timer;
  CheckReport rep;
  rep.check = "ho1";
  rep.params = {{"model", strat_source},
                {"coeff", coeff.describe()},
                {"weight_bound", weight_bound},
                {"word_bound", word_bound},
                {"reduced", reduced}};
  CheckCase c;
  c.name = "ho1(" + strat_source + ")";
  try {
    const StratSet x = load_strat(strat_source, 2);
    const StratCMonoid lin = StratCMonoid(x, coeff, weight_bound, reduced);
    const Ho1Skeleton sk = skeleton_of(lin);
    Ho1Options opts;
    opts.word_bound = word_bound;
    const Ho1Result res = ho1(sk, 0, opts);
    c.details["classes"] = res.classes.size();
    c.details["endo"] = res.table_to_json();
    c.details["truncated"] = res.truncated;
  } catch (const Error& e) {
    c.pass = false;
    c.details["error"] = e.what();
  }
  rep.cases.push_back(std::move(c));
  rep.wall_ms = timer.ms();
  return rep;
}

} // namespace dihom
