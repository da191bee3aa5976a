#ifndef DIHOM_OMEGACAT_HPP
#define DIHOM_OMEGACAT_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dihom/monoid.hpp"
#include "dihom/pasting.hpp"

namespace dihom {

class OmegaCat;
using CatPtr = std::shared_ptr<const OmegaCat>;

/// A finite gaunt strict omega-category presented by the recursion
/// "objects plus morphism categories".  Values are immutable and freely
/// shared; all constructors are cheap structural descriptions whose
/// morphism categories are produced on demand.
///
/// Object sets may be infinite (free commutative monoid carriers); any
/// enumeration demanding them throws InfiniteError.  Nonemptiness stays
/// decidable either way.
class OmegaCat {
public:
  virtual ~OmegaCat() = default;

  virtual bool has_finite_objects() const = 0;
  /// Number of objects; throws InfiniteError when not finitely enumerable.
  virtual std::size_t object_count() const = 0;
  /// Whether the object set is inhabited (decidable even when infinite).
  virtual bool has_objects() const = 0;
  /// Morphism category between objects a and b.
  virtual CatPtr mor(std::size_t a, std::size_t b) const = 0;
  /// Structural key: equal keys mean isomorphic presentations.  Drives
  /// hom-set memoisation.
  virtual std::string describe() const = 0;

  /// Composition metadata for delooped monoids: level 0 is the bare
  /// carrier, level n the n-fold delooping.  Absent elsewhere.
  struct DeloopingInfo {
    std::size_t level = 0;
    const CommMonoid* monoid = nullptr;
  };
  virtual std::optional<DeloopingInfo> delooping() const {
    return std::nullopt;
  }

  std::optional<std::size_t> basepoint() const { return basepoint_; }

  // Constructors for every shape the theorems mention.
  static CatPtr empty();
  static CatPtr terminal();
  static CatPtr suspension(CatPtr c);
  static CatPtr globe(std::size_t k);
  static CatPtr boundary(std::size_t k);
  static CatPtr product(std::vector<CatPtr> factors);
  /// End-to-start gluing of n cells of dimension k along n+1 objects;
  /// morphism categories between non-adjacent objects use the free model
  /// (products of globes).  Rejects k = 0.
  static CatPtr globe_chain(std::size_t k, std::size_t n);
  /// n-fold delooping of a monoid: one object down to level n-1, then the
  /// discrete category on the carrier of M.  The operation is retained so
  /// homotopy invariants can recover composition.
  static CatPtr delooped_monoid(std::size_t n, CommMonoid m);
  /// Discrete category on a finite list of labels.
  static CatPtr discrete(std::vector<std::string> labels);
  /// Explicit finite presentation: objects plus a full mor table
  /// (mor[a][b]); diagonal entries default to terminal, others to empty.
  static CatPtr explicit_cat(std::vector<std::string> objects,
                             std::vector<std::vector<CatPtr>> mor,
                             std::optional<std::size_t> basepoint);
  /// Free realization of a pasting shape as an omega-category.
  static CatPtr from_tree(const PastingTree& t);

protected:
  std::optional<std::size_t> basepoint_;
};

/// An element of hom_set(t, C): the recursive choice data serialized
/// depth-first.  For the point, a single object index; for a root with m
/// children, m+1 object indices followed by the child encodings in order.
/// For a fixed tree all encodings have equal length, so lexicographic
/// comparison of the payload is the canonical total order.
struct Functor {
  std::vector<std::uint32_t> data;

  auto operator<=>(const Functor&) const = default;
  std::string to_text() const;
};

struct HomOptions {
  std::size_t depth_bound = 64;
};

/// All functors from the shape encoded by t into C, in canonical order,
/// without duplicates.  Computed by the wreath recursion
///   hom(point, C)            = objects of C,
///   hom(root(T_1..T_m), C)   = { (a_0..a_m; F_i in hom(T_i, mor(a_{i-1}, a_i))) },
/// which never consults composition.  The cardinality at t is the degree-t
/// value of the nerve of C.
///
/// Throws InfiniteError when some reached object set is not finitely
/// enumerable and ShapeTooDeepError past options.depth_bound.
std::vector<Functor> hom_set(const PastingTree& t, const OmegaCat& c,
                             const HomOptions& options = {});

/// The unique functor from t into a terminal-like target (all indices 0).
Functor trivial_functor(const PastingTree& t);

/// Split a functor into a product into its component functors.  The target
/// of f must be product(factors).
std::vector<Functor> split_product(const PastingTree& t, const Functor& f,
                                   const std::vector<CatPtr>& factors);

/// Reassemble a functor into product(factors) from component functors.
Functor merge_product(const PastingTree& t, const std::vector<Functor>& parts,
                      const std::vector<CatPtr>& factors);

/// Image of f : t -> globe_chain(k, n) under the coordinate functor that
/// collapses every summand except the ell-th (1 <= ell <= n): objects map
/// to "summand ell already traversed", completed summands to the constant
/// at 1, untouched summands to the constant at 0.
Functor chain_coordinate(const PastingTree& t, const Functor& f,
                         std::size_t k, std::size_t n, std::size_t ell);

/// Post-composition with the chain inclusion globe_chain(k, n) ->
/// globe_chain(k, n + 1) fixing the basepoint 0 (objects map identically;
/// the added summand is appended at the end).
Functor chain_include(const PastingTree& t, const Functor& f, std::size_t k,
                      std::size_t n);

/// Composite of f : shape(t) -> globe(k) with a cell c : D^ell -> shape(t),
/// as an element of hom(tree_disk(ell), globe(k)).
Functor compose_cell(const PastingTree& t, const Functor& f,
                     const PastingTree& disk, const Functor& cell,
                     std::size_t k);

/// Classification of a cell of a globe: the dimension of its
/// non-degenerate support and, below the top, which side it lies on.
struct GlobeCell {
  std::size_t level = 0;
  int side = -1; // 0 or 1; -1 for the top cell
  auto operator<=>(const GlobeCell&) const = default;
};

/// Classify an element of hom(tree_disk(ell), globe(k)).
GlobeCell classify_globe_cell(const Functor& f, std::size_t ell,
                              std::size_t k);

} // namespace dihom

#endif
