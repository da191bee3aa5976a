#ifndef DIHOM_MONOID_HPP
#define DIHOM_MONOID_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace dihom {

/// Element of a CommMonoid.  The meaning of the payload depends on the
/// presentation: a single table index, an exponent vector (free commutative)
/// or a word of generator indices (free associative).
struct MonElem {
  std::vector<std::uint32_t> data;

  auto operator<=>(const MonElem&) const = default;
};

/// A monoid with decidable equality, given by a finite multiplication
/// table or by a free presentation on g generators.  Commutativity of
/// table monoids is verified exhaustively, as are the unit and
/// associativity laws.
class CommMonoid {
public:
  enum class Kind { Table, FreeCommutative, FreeAssociative };

  /// Table presentation.  op[i][j] must be total; laws are checked.
  static CommMonoid table(std::vector<std::vector<std::uint32_t>> op,
                          std::uint32_t unit,
                          std::vector<std::string> labels = {});
  /// Free commutative monoid on g generators; elements are exponent vectors.
  static CommMonoid free_commutative(std::size_t generators);
  /// Free associative monoid on g generators; elements are words.
  static CommMonoid free_associative(std::size_t generators);

  static CommMonoid naturals() { return free_commutative(1); }
  static CommMonoid trivial();
  static CommMonoid z2();
  static CommMonoid cyclic(std::uint32_t n); // Z/n addition table

  Kind kind() const { return kind_; }
  bool is_commutative() const { return commutative_; }
  bool is_finite() const;
  std::size_t generator_count() const { return generators_; }
  std::size_t table_size() const { return op_.size(); }

  MonElem unit() const;
  MonElem generator(std::size_t i) const;
  MonElem mul(const MonElem& a, const MonElem& b) const;

  /// Mass of an element: total exponent (free commutative), word length
  /// (free associative), or 0/1 for table elements (unit/non-unit).  Drives
  /// every weight bound in the stratified models.
  std::uint64_t mass(const MonElem& e) const;

  bool is_unit(const MonElem& e) const { return e == unit(); }

  /// All elements of mass <= bound, in canonical order (mass-major, then
  /// lexicographic).  For table monoids the bound is ignored and the whole
  /// carrier is returned.
  std::vector<MonElem> elements_up_to(std::uint64_t bound) const;

  std::string show(const MonElem& e) const;
  nlohmann::json elem_to_json(const MonElem& e) const;
  MonElem elem_from_json(const nlohmann::json& j) const;

  std::string describe() const;

  bool operator==(const CommMonoid& other) const;

private:
  CommMonoid() = default;
  void validate_table() const;

  Kind kind_ = Kind::Table;
  bool commutative_ = true;
  std::size_t generators_ = 0;                  // free presentations
  std::vector<std::vector<std::uint32_t>> op_;  // table presentation
  std::uint32_t unit_ = 0;
  std::vector<std::string> labels_;
};

/// A monoid homomorphism recorded by generator images (free source) or by
/// the full element map (table source).
struct MonoidHom {
  std::vector<MonElem> images;

  auto operator<=>(const MonoidHom&) const = default;
};

/// Evaluate a homomorphism from `src` to `dst` on an element of `src`.
MonElem hom_eval(const CommMonoid& src, const CommMonoid& dst,
                 const MonoidHom& h, const MonElem& e);

/// Composite of f : A -> B and g : B -> C as a homomorphism A -> C.
MonoidHom hom_compose(const CommMonoid& a, const CommMonoid& b,
                      const CommMonoid& c, const MonoidHom& f,
                      const MonoidHom& g);

/// Result of a bounded search for monoid homomorphisms.
struct MonoidHomSearch {
  std::vector<MonoidHom> homs;    // deterministic order, duplicate-free
  bool bound_exceeded = false;    // candidate images were truncated
  bool commutativity_flag = false; // source demanded commutative but is not
};

/// Monoid homomorphisms M -> M' found with generator images of mass
/// <= bound.  For delooping level n >= 2 the source is expected to be
/// commutative; a violation is flagged, not rejected.
MonoidHomSearch pointed_monoid_endos(std::size_t n, const CommMonoid& m,
                                     const CommMonoid& mp,
                                     std::uint64_t bound);

} // namespace dihom

#endif
