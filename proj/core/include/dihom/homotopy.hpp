#ifndef DIHOM_HOMOTOPY_HPP
#define DIHOM_HOMOTOPY_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dihom/monoid.hpp"
#include "dihom/omegacat.hpp"
#include "dihom/strat.hpp"

namespace dihom {

/// Partition of the objects of C under the symmetric-transitive closure of
/// "some morphism exists": entry i is the class id of object i, classes
/// numbered by first appearance.
std::vector<std::size_t> weak_classes(const OmegaCat& c);

/// The 1- and 2-dimensional data a homotopy category presentation reads:
/// objects, generating arrows with endpoints and thin flags, and triangle
/// relations d1 = d0 . d2 read off the 2-simplices.
struct Ho1Skeleton {
  std::size_t n_objects = 0;
  std::vector<std::string> object_labels;
  struct Arrow {
    std::size_t src = 0;
    std::size_t tgt = 0;
    bool thin = false;
    std::uint64_t weight = 1;
    std::string label;
  };
  std::vector<Arrow> arrows;
  struct Triangle {
    std::size_t e01 = 0; // first leg (face 2)
    std::size_t e12 = 0; // second leg (face 0)
    std::size_t e02 = 0; // long edge (face 1)
  };
  std::vector<Triangle> triangles;
};

Ho1Skeleton skeleton_of(const StratSet& x);
Ho1Skeleton skeleton_of(const StratCMonoid& x);

struct Ho1Options {
  std::size_t word_bound = 6;
};

/// Bounded congruence closure of composable words of generating arrows
/// under the relations "thin loop = identity" and the triangle relations,
/// with the endomorphism table at a chosen base object.  Equalities are
/// only those forced by relations within the word bound; `truncated` is
/// set when a rewrite would have left the bounded universe.
class Ho1Result {
public:
  struct ClassInfo {
    std::vector<std::size_t> rep; // lexicographically least member word
    std::size_t src = 0;
    std::size_t tgt = 0;
    std::uint64_t weight = 0;     // least total arrow weight in the class
    std::string label;
  };

  std::vector<ClassInfo> classes;
  bool truncated = false;

  std::size_t base = 0;
  std::vector<std::size_t> endo_classes; // class ids, deterministic order
  /// table[(i, j)]: class of rep_i followed by rep_j; nullopt where the
  /// concatenation leaves the word bound.
  std::map<std::pair<std::size_t, std::size_t>, std::optional<std::size_t>>
      table;
  bool complete = true;

  /// Class id of a single-arrow word, when that word was discovered.
  std::optional<std::size_t> class_of_arrow(std::size_t arrow) const;
  /// Class id of the empty word at an object.
  std::optional<std::size_t> class_of_empty(std::size_t object) const;
  /// Class id of an arbitrary composable word within the bound; extends the
  /// closure on demand.
  nlohmann::ordered_json table_to_json() const;

  // internal lookup: canonical word key -> class id
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t>
      word_class;
};

Ho1Result ho1(const Ho1Skeleton& sk, std::size_t base,
              const Ho1Options& options = {});

/// Comparison of the congruence-closure endomorphism monoid of the reduced
/// M-linear model of a wedge of g directed circles against the independent
/// letter-count oracle (the free module on the abelianization).
struct HurewiczReport {
  std::size_t generators = 0;
  std::string coefficients;
  std::uint64_t bound = 0;
  std::size_t lhs_size = 0; // oracle elements within the bound
  std::size_t rhs_size = 0; // endo classes within the bound
  bool injective = false;
  bool surjective = false;
  bool one_cell_words_match = false; // letter-count cross-check
  bool monoid_map = false;           // products match within the bound
  bool truncated = false;
  std::optional<std::string> error;
  bool pass() const {
    return !error && injective && surjective && one_cell_words_match &&
           monoid_map;
  }
  nlohmann::ordered_json to_json() const;
};

HurewiczReport hurewicz_check(std::size_t g, const CommMonoid& coeff,
                              std::uint64_t bound);

/// Finite shadow of the n-th homotopy monoidal category at an object:
/// objects are the n-fold endomorphism cells at x, hom classes are zig-zag
/// classes one level up, and composition is filled in from delooping
/// metadata or forced singleton structure where available.
struct PiNReport {
  std::size_t n = 0;
  std::size_t n_objects = 0;
  /// hom_classes[(a, b)] = number of zig-zag classes of cells a -> b.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> hom_classes;
  bool composition_available = false;
  std::string composition_source; // "metadata", "forced", or "unavailable"
  /// Endomorphism composition table at the identity object, when available.
  std::vector<std::vector<std::size_t>> endo_table;
  std::vector<std::string> endo_labels;
  nlohmann::ordered_json to_json() const;
};

PiNReport pi_n(const OmegaCat& c, std::size_t x, std::size_t n);

} // namespace dihom

#endif
