#include "dihom/thetaset.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "dihom/errors.hpp"
#include "dihom/parallel.hpp"

namespace dihom {

namespace {

ThetaFamily::Degree degree_of(const PastingTree& t, const OmegaCat& c,
                              const HomOptions& options) {
  ThetaFamily::Degree d;
  try {
    d.elements = hom_set(t, c, options);
  } catch (const InfiniteError& e) {
    d.error = std::string("Infinite: ") + e.what();
  } catch (const ShapeTooDeepError& e) {
    d.error = std::string("ShapeTooDeep: ") + e.what();
  }
  return d;
}

} // namespace

ThetaFamily nerve(const OmegaCat& c, std::size_t max_dim,
                  std::size_t max_edges, const HomOptions& options) {
  ThetaFamily f;
  f.provenance = "nerve(" + c.describe() + ")";
  f.catalog = enumerate_trees(max_dim, max_edges);
  f.degrees.resize(f.catalog.size());
  parallel_for(f.catalog.size(), [&](std::size_t i) {
    f.degrees[i] = degree_of(f.catalog[i], c, options);
  });
  return f;
}

std::vector<Functor> canonical_orbit(std::vector<Functor> tuple) {
  std::sort(tuple.begin(), tuple.end());
  return tuple;
}

namespace {

void multisets(const std::vector<Functor>& elems, std::size_t n,
               std::size_t from, Functor& acc,
               std::vector<Functor>& out) {
  if (n == 0) {
    out.push_back(acc);
    return;
  }
  for (std::size_t i = from; i < elems.size(); ++i) {
    const std::size_t base = acc.data.size();
    acc.data.insert(acc.data.end(), elems[i].data.begin(),
                    elems[i].data.end());
    multisets(elems, n - 1, i, acc, out);
    acc.data.resize(base);
  }
}

} // namespace

ThetaFamily power_orbits(const ThetaFamily& f, std::size_t n) {
  ThetaFamily out;
  out.provenance = "orbits(" + f.provenance + "," + std::to_string(n) + ")";
  out.catalog = f.catalog;
  out.degrees.resize(f.degrees.size());
  for (std::size_t i = 0; i < f.degrees.size(); ++i) {
    if (f.degrees[i].error) {
      out.degrees[i].error = f.degrees[i].error;
      continue;
    }
    Functor acc;
    // Nondecreasing index tuples over the (sorted, duplicate-free) element
    // list enumerate exactly the multisets, already canonically encoded.
    multisets(f.degrees[i].elements, n, 0, acc, out.degrees[i].elements);
  }
  return out;
}

std::vector<ThetaFamily> sym(const OmegaCat& c, std::size_t n_max,
                             std::size_t max_dim, std::size_t max_edges,
                             const HomOptions& options) {
  const ThetaFamily base = nerve(c, max_dim, max_edges, options);
  std::vector<ThetaFamily> out;
  out.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n)
    out.push_back(power_orbits(base, n));
  return out;
}

nlohmann::ordered_json TreeComparison::to_json() const {
  nlohmann::ordered_json j;
  j["theta"] = theta.to_text();
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["injective"] = injective;
  j["surjective"] = surjective;
  if (error) j["error"] = *error;
  nlohmann::ordered_json w = nlohmann::ordered_json::array();
  for (const Collision& c : witnesses) {
    nlohmann::ordered_json g;
    g["image"] = c.image;
    g["preimages"] = c.preimages;
    w.push_back(std::move(g));
  }
  j["witnesses"] = std::move(w);
  return j;
}

bool WedgeReport::all_bijective() const {
  return std::all_of(cases.begin(), cases.end(),
                     [](const TreeComparison& c) { return c.bijective(); });
}

nlohmann::ordered_json WedgeReport::to_json() const {
  nlohmann::ordered_json j;
  j["k"] = k;
  j["n"] = n;
  j["bijective"] = all_bijective();
  nlohmann::ordered_json cs = nlohmann::ordered_json::array();
  for (const TreeComparison& c : cases) cs.push_back(c.to_json());
  j["cases"] = std::move(cs);
  return j;
}

namespace {

std::string orbit_text(const std::vector<Functor>& orbit) {
  std::string s = "{";
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    if (i > 0) s += ',';
    s += orbit[i].to_text();
  }
  return s + "}";
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

TreeComparison wedge_compare_tree(const PastingTree& theta, std::size_t k,
                                  std::size_t n, const HomOptions& options) {
  TreeComparison cmp;
  cmp.theta = theta;
  try {
    const CatPtr chain = OmegaCat::globe_chain(k, n);
    const std::vector<Functor> lhs = hom_set(theta, *chain, options);
    const std::vector<Functor> globe_cells =
        hom_set(theta, *OmegaCat::globe(k), options);
    cmp.lhs = lhs.size();
    cmp.rhs = static_cast<std::size_t>(
        binomial(globe_cells.size() + n - 1, n));

    std::map<std::vector<Functor>, std::vector<const Functor*>> image;
    for (const Functor& f : lhs) {
      std::vector<Functor> tuple;
      tuple.reserve(n);
      for (std::size_t ell = 1; ell <= n; ++ell)
        tuple.push_back(chain_coordinate(theta, f, k, n, ell));
      image[canonical_orbit(std::move(tuple))].push_back(&f);
    }
    for (const auto& [orbit, preimages] : image) {
      if (preimages.size() > 1) {
        cmp.injective = false;
        TreeComparison::Collision c;
        c.image = orbit_text(orbit);
        for (const Functor* p : preimages) c.preimages.push_back(p->to_text());
        cmp.witnesses.push_back(std::move(c));
      }
    }
    cmp.surjective = image.size() == cmp.rhs;
  } catch (const Error& e) {
    cmp.error = e.what();
  }
  return cmp;
}

} // namespace

WedgeReport wedge_compare(std::size_t k, std::size_t n, std::size_t max_dim,
                          std::size_t max_edges, const HomOptions& options) {
  if (k < 1 || n < 1)
    throw Error("wedge_compare(): k and n must be positive");
  WedgeReport report;
  report.k = k;
  report.n = n;
  const std::vector<PastingTree> catalog = enumerate_trees(max_dim, max_edges);
  report.cases.resize(catalog.size());
  parallel_for(catalog.size(), [&](std::size_t i) {
    report.cases[i] = wedge_compare_tree(catalog[i], k, n, options);
  });
  return report;
}

namespace {

std::size_t stage_of(const GlobeCell& cell, std::size_t dim, std::size_t k) {
  const std::size_t top = std::min(dim, k);
  if (cell.side == 1) return cell.level;
  if (cell.side == -1) return cell.level;
  return 2 * top + 1 - cell.level;
}

// Stage vectors over every cell of the shape, one per tuple entry, in a
// fixed cell enumeration order.
std::vector<std::vector<std::size_t>> stage_vectors(
    const PastingTree& theta, const std::vector<Functor>& tuple,
    std::size_t k) {
  const std::size_t len = 2 * theta.edge_count() + 1;
  for (const Functor& f : tuple)
    if (f.data.size() != len)
      throw DimensionMismatchError(
          "staircase: tuple entry does not fit the shape " + theta.to_text());

  const CatPtr shape = OmegaCat::from_tree(theta);
  std::vector<std::vector<std::size_t>> stages(tuple.size());
  for (std::size_t ell = 0; ell <= theta.height(); ++ell) {
    const PastingTree disk = tree_disk(ell);
    const std::vector<Functor> cells = hom_set(disk, *shape);
    for (const Functor& cell : cells) {
      for (std::size_t r = 0; r < tuple.size(); ++r) {
        const Functor img = compose_cell(theta, tuple[r], disk, cell, k);
        stages[r].push_back(stage_of(classify_globe_cell(img, ell, k), ell, k));
      }
    }
  }
  return stages;
}

} // namespace

bool staircase_member(const PastingTree& theta,
                      const std::vector<Functor>& tuple, std::size_t k) {
  if (tuple.empty()) return true;
  const auto stages = stage_vectors(theta, tuple, k);
  for (std::size_t p = 0; p < stages[0].size(); ++p)
    for (std::size_t r = 0; r + 1 < stages.size(); ++r)
      if (stages[r][p] > stages[r + 1][p]) return false;
  return true;
}

StaircaseSort staircase_sort(const PastingTree& theta,
                             const std::vector<Functor>& tuple,
                             std::size_t k) {
  StaircaseSort result;
  const std::size_t n = tuple.size();
  result.permutation.resize(n);
  std::iota(result.permutation.begin(), result.permutation.end(), 0);
  if (n == 0) {
    result.found = true;
    return result;
  }

  const auto stages = stage_vectors(theta, tuple, k);
  std::stable_sort(result.permutation.begin(), result.permutation.end(),
                   [&](std::size_t a, std::size_t b) {
                     return stages[a] < stages[b];
                   });
  auto apply = [&](const std::vector<std::size_t>& perm) {
    std::vector<Functor> sorted;
    sorted.reserve(n);
    for (std::size_t i : perm) sorted.push_back(tuple[i]);
    return sorted;
  };
  result.sorted = apply(result.permutation);
  if (staircase_member(theta, result.sorted, k)) {
    result.found = true;
    return result;
  }
  // Diagnostic regime (k >= 2): lexicographic stage sort can fail, so fall
  // back to exhaustive search over permutations.
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<Functor> sorted = apply(perm);
    if (staircase_member(theta, sorted, k)) {
      result.permutation = perm;
      result.sorted = std::move(sorted);
      result.found = true;
      return result;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  result.found = false;
  return result;
}

nlohmann::ordered_json ColimitTreeRecord::to_json() const {
  nlohmann::ordered_json j;
  j["theta"] = theta.to_text();
  j["stage_sizes"] = stage_sizes;
  j["new_elements"] = new_elements;
  j["transitions_injective"] = transitions_injective;
  j["slice_stabilizes_at"] = slice_stabilizes_at;
  j["slices_stabilize_in_weight"] = slices_stabilize_in_weight;
  if (error) j["error"] = *error;
  return j;
}

bool ColimitReport::pass() const {
  if (diagnostic_only) return true;
  for (const ColimitTreeRecord& r : cases) {
    if (r.error) return false;
    if (!r.transitions_injective || !r.slices_stabilize_in_weight)
      return false;
  }
  return true;
}

nlohmann::ordered_json ColimitReport::to_json() const {
  nlohmann::ordered_json j;
  j["k"] = k;
  j["n_max"] = n_max;
  j["convention"] = convention;
  j["diagnostic_only"] = diagnostic_only;
  j["pass"] = pass();
  nlohmann::ordered_json cs = nlohmann::ordered_json::array();
  for (const ColimitTreeRecord& r : cases) cs.push_back(r.to_json());
  j["cases"] = std::move(cs);
  return j;
}

namespace {

// Number of chain summands a functor genuinely touches: coordinates whose
// image is not the constant functor at the starting object.
std::size_t chain_weight(const PastingTree& theta, const Functor& f,
                         std::size_t k, std::size_t n) {
  std::size_t w = 0;
  for (std::size_t ell = 1; ell <= n; ++ell) {
    const Functor c = chain_coordinate(theta, f, k, n, ell);
    const bool constant_zero =
        std::all_of(c.data.begin(), c.data.end(),
                    [](std::uint32_t v) { return v == 0; });
    if (!constant_zero) ++w;
  }
  return w;
}

ColimitTreeRecord colimit_tree(const PastingTree& theta, std::size_t k,
                               std::size_t n_max, const HomOptions& options) {
  ColimitTreeRecord rec;
  rec.theta = theta;
  try {
    std::vector<std::vector<Functor>> stages;
    stages.reserve(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n)
      stages.push_back(hom_set(theta, *OmegaCat::globe_chain(k, n), options));

    for (std::size_t n = 0; n <= n_max; ++n) {
      rec.stage_sizes.push_back(stages[n].size());
      rec.new_elements.push_back(
          n == 0 ? stages[0].size() : stages[n].size() - stages[n - 1].size());
    }
    // Transitions fix objects and append the fresh summand, so the image of
    // stage n is literally the encodings of stage n inside stage n + 1.
    for (std::size_t n = 0; n + 1 <= n_max; ++n) {
      std::vector<Functor> mapped;
      mapped.reserve(stages[n].size());
      for (const Functor& f : stages[n])
        mapped.push_back(chain_include(theta, f, k, n));
      std::sort(mapped.begin(), mapped.end());
      if (std::adjacent_find(mapped.begin(), mapped.end()) != mapped.end())
        rec.transitions_injective = false;
      std::vector<Functor> next = stages[n + 1];
      std::sort(next.begin(), next.end());
      if (!std::includes(next.begin(), next.end(), mapped.begin(),
                         mapped.end()))
        rec.transitions_injective = false;
    }

    // Weight slices of the directed union.
    std::vector<std::vector<std::size_t>> slice_counts(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) {
      slice_counts[n].assign(n_max + 1, 0);
      for (const Functor& f : stages[n]) {
        const std::size_t w = chain_weight(theta, f, k, n);
        for (std::size_t s = w; s <= n_max; ++s) ++slice_counts[n][s];
      }
    }
    rec.slice_stabilizes_at.assign(n_max + 1, 0);
    for (std::size_t w = 0; w <= n_max; ++w) {
      std::size_t idx = n_max;
      while (idx > 0 && slice_counts[idx - 1][w] == slice_counts[n_max][w])
        --idx;
      rec.slice_stabilizes_at[w] = idx;
      if (idx > w) rec.slices_stabilize_in_weight = false;
    }
  } catch (const Error& e) {
    rec.error = e.what();
  }
  return rec;
}

} // namespace

ColimitReport reduced_chain_colimit_check(std::size_t k, std::size_t n_max,
                                          std::size_t max_dim,
                                          std::size_t max_edges,
                                          const HomOptions& options) {
  if (k < 1 || n_max < 1)
    throw Error("reduced_chain_colimit_check(): k and n_max must be positive");
  ColimitReport report;
  report.k = k;
  report.n_max = n_max;
  report.diagnostic_only = k >= 2;
  report.convention =
      "transition inserts the fresh summand after the last object and fixes "
      "the basepoint 0";
  const std::vector<PastingTree> catalog = enumerate_trees(max_dim, max_edges);
  report.cases.resize(catalog.size());
  parallel_for(catalog.size(), [&](std::size_t i) {
    report.cases[i] = colimit_tree(catalog[i], k, n_max, options);
  });
  return report;
}

} // namespace dihom
