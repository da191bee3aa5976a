#ifndef DIHOM_THETASET_HPP
#define DIHOM_THETASET_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dihom/omegacat.hpp"
#include "dihom/pasting.hpp"

namespace dihom {

/// A degreewise set indexed by a shape catalog: for every tree a finite,
/// duplicate-free set of canonical element encodings, or a per-degree
/// error record when enumeration failed there.
struct ThetaFamily {
  struct Degree {
    std::vector<Functor> elements;
    std::optional<std::string> error;
  };

  std::string provenance;
  std::vector<PastingTree> catalog;
  std::vector<Degree> degrees;

  std::size_t size_at(std::size_t i) const { return degrees[i].elements.size(); }
};

/// Degreewise nerve of C over enumerate_trees(max_dim, max_edges).
ThetaFamily nerve(const OmegaCat& c, std::size_t max_dim,
                  std::size_t max_edges, const HomOptions& options = {});

/// Degreewise multisets of size n over F: the orbit quotient of the n-fold
/// power under permutations.  Elements are concatenations of the n sorted
/// member encodings; sizes obey C(|F(theta)| + n - 1, n).
ThetaFamily power_orbits(const ThetaFamily& f, std::size_t n);

/// Canonical multiset representative: the sorted tuple.
std::vector<Functor> canonical_orbit(std::vector<Functor> tuple);

/// The symmetric powers power_orbits(nerve(C), 0..n_max): the degreewise
/// model of the free strict commutative monoid on the nerve, truncated.
std::vector<ThetaFamily> sym(const OmegaCat& c, std::size_t n_max,
                             std::size_t max_dim, std::size_t max_edges,
                             const HomOptions& options = {});

/// Per-tree outcome of comparing two enumerations through a canonical map.
struct TreeComparison {
  PastingTree theta;
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  bool injective = true;
  bool surjective = true;
  std::optional<std::string> error;
  /// Collision groups on injectivity failure: the shared image and the
  /// distinct preimages, both as encoding text.
  struct Collision {
    std::string image;
    std::vector<std::string> preimages;
  };
  std::vector<Collision> witnesses;

  bool bijective() const { return injective && surjective && !error; }
  nlohmann::ordered_json to_json() const;
};

struct WedgeReport {
  std::size_t k = 0;
  std::size_t n = 0;
  std::vector<TreeComparison> cases;
  bool all_bijective() const;
  nlohmann::ordered_json to_json() const;
};

/// Compares hom(theta, globe_chain(k, n)) with multisets of size n over
/// hom(theta, globe(k)) through the summand-collapse coordinates, for every
/// catalog tree.  For k = 1 the induced map is a bijection; for k >= 2 the
/// outcome is a diagnostic.
WedgeReport wedge_compare(std::size_t k, std::size_t n, std::size_t max_dim,
                          std::size_t max_edges,
                          const HomOptions& options = {});

/// Sorted-representative predicate for a tuple of functors theta ->
/// globe(k) sharing the tree theta.
///
/// Reading implemented here: classify, for every cell of the shape (all
/// dimensions, composites included), each tuple entry's image cell by the
/// dimension of its non-degenerate support and its side, and assign stages
///   side-1 support of level λ     ->  λ
///   top-level support (no side)   ->  level
///   side-0 support of level λ     ->  2·min(dim, k) + 1 - λ.
/// The tuple is a member iff every cell's stage sequence is weakly
/// increasing left to right: entries left of all windows are settled at
/// the 1-side, entries right of them untouched at the 0-side, and the
/// nested windows carry the strictly deeper supports inward.  For k = 1
/// this reads "1-side, then active, then 0-side" per generating cell.
bool staircase_member(const PastingTree& theta,
                      const std::vector<Functor>& tuple, std::size_t k);

struct StaircaseSort {
  bool found = false;
  std::vector<std::size_t> permutation; // sorted[i] = tuple[permutation[i]]
  std::vector<Functor> sorted;
};

/// A permutation making the tuple a staircase member.  For k = 1 this is
/// counting sort on the per-cell stage vectors and always succeeds; for
/// k >= 2 the sort is attempted and, failing that, all permutations are
/// tried (diagnostic regime).  found = false when no permutation works.
StaircaseSort staircase_sort(const PastingTree& theta,
                             const std::vector<Functor>& tuple, std::size_t k);

/// Per-tree record of the sequential-colimit shadow of the chain diagram
/// D^0 -> D^k -> (D^k)^{v2} -> ...; transitions append the fresh summand at
/// the end and fix the basepoint 0, so they are literal inclusions.
struct ColimitTreeRecord {
  PastingTree theta;
  std::vector<std::size_t> stage_sizes;     // |hom(theta, chain(k, n))|
  std::vector<std::size_t> new_elements;    // growth per stage
  bool transitions_injective = true;
  /// stabilization index of the weight-<=w slice: first stage whose slice
  /// agrees with the final one, indexed by w.
  std::vector<std::size_t> slice_stabilizes_at;
  bool slices_stabilize_in_weight = true;   // index <= w for every w
  std::optional<std::string> error;
  nlohmann::ordered_json to_json() const;
};

struct ColimitReport {
  std::size_t k = 0;
  std::size_t n_max = 0;
  std::string convention;
  std::vector<ColimitTreeRecord> cases;
  bool diagnostic_only = false; // k >= 2
  bool pass() const;
  nlohmann::ordered_json to_json() const;
};

/// Verifies injectivity of the stage transitions and stabilization of the
/// weight slices of the directed union, where the weight of a functor into
/// the chain is the number of summands it genuinely touches.
ColimitReport reduced_chain_colimit_check(std::size_t k, std::size_t n_max,
                                          std::size_t max_dim,
                                          std::size_t max_edges,
                                          const HomOptions& options = {});

} // namespace dihom

#endif
