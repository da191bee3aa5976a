#ifndef DIHOM_STRAT_HPP
#define DIHOM_STRAT_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dihom/monoid.hpp"

namespace dihom {

/// A simplicial set truncated at a top dimension, with explicit face and
/// degeneracy tables.
struct SimplicialData {
  std::size_t dim = 0;
  std::vector<std::vector<std::string>> labels;                     // per degree
  std::vector<std::vector<std::vector<std::uint32_t>>> faces;      // [n][i][x], 1<=n
  std::vector<std::vector<std::vector<std::uint32_t>>> degens;     // [n][i][x], n<dim

  std::size_t count(std::size_t n) const { return labels[n].size(); }
};

/// A stratified simplicial set: simplices, faces, degeneracies, thin flags
/// (every degenerate simplex is thin) and an optional basepoint vertex.
/// All simplicial identities are verified exhaustively on construction.
class StratSet {
public:
  StratSet(SimplicialData data, std::vector<std::vector<bool>> thin,
           std::optional<std::uint32_t> basepoint);

  const SimplicialData& data() const { return data_; }
  std::size_t dim() const { return data_.dim; }
  std::size_t count(std::size_t n) const { return data_.count(n); }
  const std::string& label(std::size_t n, std::uint32_t x) const {
    return data_.labels[n][x];
  }
  std::uint32_t face(std::size_t n, std::size_t i, std::uint32_t x) const {
    return data_.faces[n][i][x];
  }
  std::uint32_t degen(std::size_t n, std::size_t i, std::uint32_t x) const {
    return data_.degens[n][i][x];
  }
  bool thin(std::size_t n, std::uint32_t x) const {
    return n >= 1 && thin_[n][x];
  }
  bool degenerate(std::size_t n, std::uint32_t x) const {
    return n >= 1 && degenerate_[n][x];
  }
  std::optional<std::uint32_t> basepoint() const { return basepoint_; }
  /// The n-fold degeneracy of the basepoint.
  std::uint32_t basepoint_pad(std::size_t n) const;

  nlohmann::ordered_json to_json() const;
  static StratSet from_json(const nlohmann::json& j);

private:
  void validate() const;

  SimplicialData data_;
  std::vector<std::vector<bool>> thin_;
  std::vector<std::vector<bool>> degenerate_;
  std::optional<std::uint32_t> basepoint_;
};

/// Minimal stratification: thin simplices are exactly the degenerate ones.
StratSet flat(SimplicialData s,
              std::optional<std::uint32_t> basepoint = std::nullopt);

/// Maximal stratification: every positive-dimensional simplex is thin.
StratSet sharp(SimplicialData s,
               std::optional<std::uint32_t> basepoint = std::nullopt);

/// Standard j-simplex truncated at dimension dim.
SimplicialData standard_simplex(std::size_t j, std::size_t dim);

SimplicialData disjoint_union(const SimplicialData& a,
                              const SimplicialData& b);

/// Degreewise product; a pair is thin iff both components are thin.
StratSet strat_product(const StratSet& x, const StratSet& y);

/// Degreewise quotient collapsing the (face- and degeneracy-closed) subset
/// A to a single point, which becomes the basepoint.  Thin simplices are
/// the images of thin simplices.
StratSet collapse(const StratSet& x,
                  const std::vector<std::vector<bool>>& a);

/// A finite category presented by a total composition table.
struct FinCategory {
  std::size_t n_objects = 0;
  struct Arrow {
    std::uint32_t src = 0;
    std::uint32_t tgt = 0;
    std::string label;
  };
  std::vector<Arrow> arrows;
  std::vector<std::uint32_t> identity;            // arrow id per object
  std::vector<std::vector<std::uint32_t>> comp;   // comp[g][f] = g after f

  /// Walking arrow 0 -> 1.
  static FinCategory walking_arrow();
  /// One object whose arrows form the given finite monoid table.
  static FinCategory delooping(const CommMonoid& m);

  void validate() const; // total, unital, associative
};

/// Nerve of a finite category as a stratified simplicial set: n-simplices
/// are composable n-chains, a 1-simplex is thin iff it is an identity, and
/// everything of dimension >= 2 is thin.
StratSet street_nerve1(const FinCategory& c, std::size_t dim,
                       std::optional<std::uint32_t> basepoint = std::nullopt);

/// A formal combination of same-dimension simplices with coefficients in a
/// monoid, almost everywhere the unit.  Stored densely by simplex index.
struct MComb {
  std::vector<MonElem> coeffs;
  auto operator<=>(const MComb&) const = default;
};

/// The free stratified simplicial commutative monoid on a stratified
/// simplicial set, with coefficients in M, materialized up to a weight
/// bound.  Weight of a combination is the total coefficient mass.  The
/// reduced variant deletes the basepoint-degenerate column in every degree.
class StratCMonoid {
public:
  StratCMonoid(StratSet base, CommMonoid coeff, std::uint64_t weight_bound,
               bool reduced);

  const StratSet& base() const { return base_; }
  const CommMonoid& coeff() const { return coeff_; }
  bool reduced() const { return reduced_; }
  std::uint64_t weight_bound() const { return weight_bound_; }
  std::size_t dim() const { return base_.dim(); }

  std::size_t count(std::size_t n) const { return carrier_[n].size(); }
  const MComb& at(std::size_t n, std::size_t idx) const {
    return carrier_[n][idx];
  }
  std::size_t index_of(std::size_t n, const MComb& c) const;
  std::size_t unit_index(std::size_t n) const;

  std::uint64_t weight(std::size_t n, std::size_t idx) const;
  bool thin(std::size_t n, std::size_t idx) const;

  std::size_t face(std::size_t n, std::size_t i, std::size_t idx) const;
  std::size_t degen(std::size_t n, std::size_t i, std::size_t idx) const;

  /// Sum of two combinations; nullopt when the result exceeds the bound.
  std::optional<std::size_t> add(std::size_t n, std::size_t i,
                                 std::size_t j) const;

  /// Combination from explicit simplex multiplicities (natural coefficients).
  std::size_t from_multiplicities(std::size_t n,
                                  const std::vector<std::uint32_t>& mult) const;

  std::string show(std::size_t n, std::size_t idx) const;
  nlohmann::ordered_json comb_to_json(std::size_t n, std::size_t idx) const;

private:
  MComb apply_map(std::size_t n_from,
                  const std::vector<std::uint32_t>& map_table,
                  std::size_t n_to, const MComb& c) const;
  MComb normalize(std::size_t n, MComb c) const;
  std::uint64_t comb_weight(const MComb& c) const;

  StratSet base_;
  CommMonoid coeff_;
  std::uint64_t weight_bound_;
  bool reduced_;
  std::vector<std::vector<MComb>> carrier_;
  std::vector<std::map<MComb, std::size_t>> index_;
};

StratCMonoid m_linear(StratSet x, CommMonoid m, std::uint64_t weight_bound);
StratCMonoid m_linear_reduced(StratSet x, CommMonoid m,
                              std::uint64_t weight_bound);

/// Degreewise multisets of size n of simplices; faces and degeneracies act
/// memberwise, a multiset is thin iff every member is thin, and the
/// basepoint is the constant multiset.
StratSet sp_power(const StratSet& x, std::size_t n);

struct SpTower {
  std::vector<StratSet> stages; // sp_power(x, 0..N)
  /// transition[n][m][idx]: index in stage n+1 of the stage-n multiset at
  /// degree m with the degenerate basepoint inserted.
  std::vector<std::vector<std::vector<std::uint32_t>>> transitions;
};

SpTower sp_tower(const StratSet& x, std::size_t n_max);

/// Degreewise comparison at degree m of the stage-N symmetric-product
/// colimit (multisets modulo basepoint padding) with the weight-bounded
/// reduced natural-coefficient model, including faces, degeneracies and
/// thinness.
struct DoldThomReport {
  std::size_t degree = 0;
  std::size_t stage = 0;
  std::size_t colimit_size = 0;
  std::size_t linear_size = 0;
  bool bijective = false;
  bool faces_match = false;
  bool degens_match = false;
  bool thin_match = false;
  bool transitions_injective = false;
  std::optional<std::string> error;
  bool pass() const {
    return !error && bijective && faces_match && degens_match && thin_match &&
           transitions_injective;
  }
  nlohmann::ordered_json to_json() const;
};

DoldThomReport dold_thom_check(const StratSet& x, std::size_t m,
                               std::size_t n_stage);

namespace corpus {

/// The bundled verification models. Every model carries a basepoint.
StratSet point(std::size_t dim);
StratSet circle(std::size_t dim);            // interval with collapsed ends
StratSet wedge_of_circles(std::size_t g, std::size_t dim);
StratSet nerve_walking_arrow(std::size_t dim);
StratSet nerve_bz2(std::size_t dim);

/// Lookup by name: point, s1, figure8, wedge:<g>, nerve-arrow, nerve-bz2.
std::optional<StratSet> by_name(const std::string& name, std::size_t dim);

} // namespace corpus

} // namespace dihom

#endif
