#include "dihom/omegacat.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <utility>

#include "dihom/errors.hpp"

namespace dihom {

namespace {

class EmptyCat final : public OmegaCat {
public:
  bool has_finite_objects() const override { return true; }
  std::size_t object_count() const override { return 0; }
  bool has_objects() const override { return false; }
  CatPtr mor(std::size_t, std::size_t) const override {
    throw Error("mor(): the empty category has no objects");
  }
  std::string describe() const override { return "0"; }
};

class TerminalCat final : public OmegaCat {
public:
  bool has_finite_objects() const override { return true; }
  std::size_t object_count() const override { return 1; }
  bool has_objects() const override { return true; }
  CatPtr mor(std::size_t, std::size_t) const override {
    return OmegaCat::terminal();
  }
  std::string describe() const override { return "1"; }
};

class DiscreteCat final : public OmegaCat {
public:
  explicit DiscreteCat(std::vector<std::string> labels)
      : labels_(std::move(labels)) {}
  bool has_finite_objects() const override { return true; }
  std::size_t object_count() const override { return labels_.size(); }
  bool has_objects() const override { return !labels_.empty(); }
  CatPtr mor(std::size_t a, std::size_t b) const override {
    return a == b ? OmegaCat::terminal() : OmegaCat::empty();
  }
  std::string describe() const override {
    return "disc(" + std::to_string(labels_.size()) + ")";
  }

private:
  std::vector<std::string> labels_;
};

// Discrete category on the carrier of a monoid; infinite for free
// presentations with at least one generator.
class CarrierCat final : public OmegaCat {
public:
  explicit CarrierCat(CommMonoid m) : monoid_(std::move(m)) {
    if (monoid_.is_finite()) elements_ = monoid_.elements_up_to(0);
  }
  bool has_finite_objects() const override { return monoid_.is_finite(); }
  std::size_t object_count() const override {
    if (!monoid_.is_finite())
      throw InfiniteError("object_count(): carrier of " + monoid_.describe() +
                          " is not finitely enumerable");
    return elements_.size();
  }
  bool has_objects() const override { return true; }
  CatPtr mor(std::size_t a, std::size_t b) const override {
    return a == b ? OmegaCat::terminal() : OmegaCat::empty();
  }
  std::string describe() const override {
    return "carrier(" + monoid_.describe() + ")";
  }
  std::optional<DeloopingInfo> delooping() const override {
    return DeloopingInfo{0, &monoid_};
  }
  const CommMonoid& monoid() const { return monoid_; }

private:
  CommMonoid monoid_;
  std::vector<MonElem> elements_;
};

class SuspensionCat final : public OmegaCat {
public:
  explicit SuspensionCat(CatPtr c) : inner_(std::move(c)) {
    basepoint_ = 0;
  }
  bool has_finite_objects() const override { return true; }
  std::size_t object_count() const override { return 2; }
  bool has_objects() const override { return true; }
  CatPtr mor(std::size_t a, std::size_t b) const override {
    if (a == b) return OmegaCat::terminal();
    if (a == 0 && b == 1) return inner_;
    return OmegaCat::empty();
  }
  std::string describe() const override {
    return "S(" + inner_->describe() + ")";
  }

private:
  CatPtr inner_;
};

class ProductCat final : public OmegaCat {
public:
  explicit ProductCat(std::vector<CatPtr> factors)
      : factors_(std::move(factors)) {}
  bool has_finite_objects() const override {
    for (const CatPtr& f : factors_)
      if (!f->has_objects()) return true; // empty product set
    for (const CatPtr& f : factors_)
      if (!f->has_finite_objects()) return false;
    return true;
  }
  std::size_t object_count() const override {
    std::size_t n = 1;
    for (const CatPtr& f : factors_) n *= f->object_count();
    return n;
  }
  bool has_objects() const override {
    for (const CatPtr& f : factors_)
      if (!f->has_objects()) return false;
    return true;
  }
  CatPtr mor(std::size_t a, std::size_t b) const override {
    const auto ta = unrank(a), tb = unrank(b);
    std::vector<CatPtr> mors;
    mors.reserve(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i)
      mors.push_back(factors_[i]->mor(ta[i], tb[i]));
    return OmegaCat::product(std::move(mors));
  }
  std::string describe() const override {
    std::string s = "x(";
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i > 0) s += ',';
      s += factors_[i]->describe();
    }
    return s + ")";
  }

  const std::vector<CatPtr>& factors() const { return factors_; }

  // Row-major object ranking; factor 0 is the most significant digit.
  std::vector<std::size_t> unrank(std::size_t o) const {
    std::vector<std::size_t> t(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
      const std::size_t n = factors_[i]->object_count();
      t[i] = o % n;
      o /= n;
    }
    return t;
  }
  std::size_t rank(const std::vector<std::size_t>& t) const {
    std::size_t o = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      o = o * factors_[i]->object_count() + t[i];
    return o;
  }

private:
  std::vector<CatPtr> factors_;
};

class ChainCat final : public OmegaCat {
public:
  ChainCat(std::size_t k, std::size_t n) : k_(k), n_(n) { basepoint_ = 0; }
  bool has_finite_objects() const override { return true; }
  std::size_t object_count() const override { return n_ + 1; }
  bool has_objects() const override { return true; }
  CatPtr mor(std::size_t a, std::size_t b) const override {
    if (a > b) return OmegaCat::empty();
    std::vector<CatPtr> factors(b - a, OmegaCat::globe(k_ - 1));
    return OmegaCat::product(std::move(factors));
  }
  std::string describe() const override {
    return "ch(" + std::to_string(k_) + "," + std::to_string(n_) + ")";
  }

private:
  std::size_t k_;
  std::size_t n_;
};

class DeloopedCat final : public OmegaCat {
public:
  DeloopedCat(std::size_t n, CommMonoid m) : n_(n), monoid_(std::move(m)) {
    basepoint_ = 0;
  }
  bool has_finite_objects() const override { return true; }
  std::size_t object_count() const override { return 1; }
  bool has_objects() const override { return true; }
  CatPtr mor(std::size_t, std::size_t) const override {
    if (n_ >= 2) return OmegaCat::delooped_monoid(n_ - 1, monoid_);
    return std::make_shared<CarrierCat>(monoid_);
  }
  std::string describe() const override {
    return "B^" + std::to_string(n_) + "(" + monoid_.describe() + ")";
  }
  std::optional<DeloopingInfo> delooping() const override {
    return DeloopingInfo{n_, &monoid_};
  }
  std::size_t level() const { return n_; }
  const CommMonoid& monoid() const { return monoid_; }

private:
  std::size_t n_;
  CommMonoid monoid_;
};

class ExplicitCat final : public OmegaCat {
public:
  ExplicitCat(std::vector<std::string> objects,
              std::vector<std::vector<CatPtr>> mor,
              std::optional<std::size_t> basepoint)
      : objects_(std::move(objects)), mor_(std::move(mor)) {
    basepoint_ = basepoint;
    static std::atomic<std::uint64_t> counter{0};
    id_ = counter.fetch_add(1);
  }
  bool has_finite_objects() const override { return true; }
  std::size_t object_count() const override { return objects_.size(); }
  bool has_objects() const override { return !objects_.empty(); }
  CatPtr mor(std::size_t a, std::size_t b) const override {
    return mor_[a][b];
  }
  std::string describe() const override {
    return "expl#" + std::to_string(id_);
  }

private:
  std::vector<std::string> objects_;
  std::vector<std::vector<CatPtr>> mor_;
  std::uint64_t id_ = 0;
};

class ShapeCat final : public OmegaCat {
public:
  explicit ShapeCat(PastingTree t) : tree_(std::move(t)) { basepoint_ = 0; }
  bool has_finite_objects() const override { return true; }
  std::size_t object_count() const override {
    return tree_.children().size() + 1;
  }
  bool has_objects() const override { return true; }
  CatPtr mor(std::size_t a, std::size_t b) const override {
    if (a > b) return OmegaCat::empty();
    std::vector<CatPtr> factors;
    factors.reserve(b - a);
    for (std::size_t i = a; i < b; ++i)
      factors.push_back(OmegaCat::from_tree(tree_.children()[i]));
    return OmegaCat::product(std::move(factors));
  }
  std::string describe() const override {
    return "shape" + tree_.to_text();
  }

private:
  PastingTree tree_;
};

} // namespace

CatPtr OmegaCat::empty() {
  static const CatPtr instance = std::make_shared<EmptyCat>();
  return instance;
}

CatPtr OmegaCat::terminal() {
  static const CatPtr instance = std::make_shared<TerminalCat>();
  return instance;
}

CatPtr OmegaCat::suspension(CatPtr c) {
  return std::make_shared<SuspensionCat>(std::move(c));
}

CatPtr OmegaCat::globe(std::size_t k) {
  CatPtr c = terminal();
  for (std::size_t i = 0; i < k; ++i) c = suspension(c);
  return c;
}

CatPtr OmegaCat::boundary(std::size_t k) {
  CatPtr c = empty();
  for (std::size_t i = 0; i < k; ++i) c = suspension(c);
  return c;
}

CatPtr OmegaCat::product(std::vector<CatPtr> factors) {
  if (factors.empty()) return terminal();
  if (factors.size() == 1) return factors[0];
  return std::make_shared<ProductCat>(std::move(factors));
}

CatPtr OmegaCat::globe_chain(std::size_t k, std::size_t n) {
  if (k == 0)
    throw Error("globe_chain(): k = 0 is rejected, the gluing needs cells");
  return std::make_shared<ChainCat>(k, n);
}

CatPtr OmegaCat::delooped_monoid(std::size_t n, CommMonoid m) {
  if (n == 0)
    throw Error("delooped_monoid(): the delooping level must be positive");
  return std::make_shared<DeloopedCat>(n, std::move(m));
}

CatPtr OmegaCat::discrete(std::vector<std::string> labels) {
  return std::make_shared<DiscreteCat>(std::move(labels));
}

CatPtr OmegaCat::explicit_cat(std::vector<std::string> objects,
                              std::vector<std::vector<CatPtr>> mor,
                              std::optional<std::size_t> basepoint) {
  return std::make_shared<ExplicitCat>(std::move(objects), std::move(mor),
                                       basepoint);
}

CatPtr OmegaCat::from_tree(const PastingTree& t) {
  if (t.is_leaf()) return terminal();
  return std::make_shared<ShapeCat>(t);
}

std::string Functor::to_text() const {
  std::string s = "<";
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (i > 0) s += '.';
    s += std::to_string(data[i]);
  }
  return s + ">";
}

namespace {

std::size_t encoding_length(const PastingTree& t) {
  return 2 * t.edge_count() + 1;
}

class HomEnumerator {
public:
  explicit HomEnumerator(const HomOptions& opt) : opt_(opt) {}

private:
  HomOptions opt_;

public:

  const std::vector<Functor>& run(const PastingTree& t, const OmegaCat& c,
                                  std::size_t depth) {
    if (depth > opt_.depth_bound)
      throw ShapeTooDeepError("hom_set(): recursion exceeded depth bound " +
                              std::to_string(opt_.depth_bound) + " at " +
                              c.describe());
    const CacheKey key{&t, c.describe()};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    std::vector<Functor> out;
    if (!c.has_finite_objects())
      throw InfiniteError("hom_set(): object set of " + c.describe() +
                          " is not finitely enumerable");
    const std::size_t n_objects = c.object_count();
    if (t.is_leaf()) {
      out.reserve(n_objects);
      for (std::size_t a = 0; a < n_objects; ++a)
        out.push_back(Functor{{static_cast<std::uint32_t>(a)}});
    } else {
      const std::size_t m = t.children().size();
      std::vector<std::uint32_t> tuple(m + 1);
      std::vector<const std::vector<Functor>*> branches(m);
      emit_tuples(t, c, depth, 0, n_objects, tuple, branches, out);
    }
    auto [pos, inserted] = cache_.emplace(key, std::move(out));
    return pos->second;
  }

private:
  using CacheKey = std::pair<const PastingTree*, std::string>;

  void emit_tuples(const PastingTree& t, const OmegaCat& c, std::size_t depth,
                   std::size_t slot, std::size_t n_objects,
                   std::vector<std::uint32_t>& tuple,
                   std::vector<const std::vector<Functor>*>& branches,
                   std::vector<Functor>& out) {
    const std::size_t m = t.children().size();
    if (slot == m + 1) {
      Functor f;
      f.data.assign(tuple.begin(), tuple.end());
      emit_product(t, branches, 0, f, out);
      return;
    }
    for (std::size_t a = 0; a < n_objects; ++a) {
      tuple[slot] = static_cast<std::uint32_t>(a);
      if (slot > 0) {
        const CatPtr hom_cat = c.mor(tuple[slot - 1], a);
        const std::vector<Functor>& fs =
            run(t.children()[slot - 1], *hom_cat, depth + 1);
        if (fs.empty()) continue;
        branches[slot - 1] = &fs;
      }
      emit_tuples(t, c, depth, slot + 1, n_objects, tuple, branches, out);
    }
  }

  // Cartesian product of branch encodings in lexicographic order, leftmost
  // branch slowest; appended to the object tuple prefix.
  void emit_product(const PastingTree& t,
                    const std::vector<const std::vector<Functor>*>& branches,
                    std::size_t i, Functor& acc, std::vector<Functor>& out) {
    if (i == branches.size()) {
      out.push_back(acc);
      return;
    }
    const std::size_t base = acc.data.size();
    for (const Functor& f : *branches[i]) {
      acc.data.insert(acc.data.end(), f.data.begin(), f.data.end());
      emit_product(t, branches, i + 1, acc, out);
      acc.data.resize(base);
    }
  }

  std::map<CacheKey, std::vector<Functor>> cache_;
};

} // namespace

std::vector<Functor> hom_set(const PastingTree& t, const OmegaCat& c,
                             const HomOptions& options) {
  HomEnumerator e(options);
  return e.run(t, c, 0);
}

Functor trivial_functor(const PastingTree& t) {
  return Functor{std::vector<std::uint32_t>(encoding_length(t), 0)};
}

namespace {

// Walks an encoding into product(factors) and emits the per-factor
// encodings.  `off` tracks the read position in f.data; `outs` receive the
// component data in step.
void split_walk(const PastingTree& t, const std::vector<std::uint32_t>& data,
                std::size_t& off, const std::vector<CatPtr>& factors,
                std::vector<std::vector<std::uint32_t>>& outs) {
  const std::size_t m = t.children().size();
  const std::size_t r = factors.size();
  std::vector<std::size_t> counts(r);
  for (std::size_t i = 0; i < r; ++i) counts[i] = factors[i]->object_count();

  std::vector<std::vector<std::size_t>> obj(m + 1);
  for (std::size_t s = 0; s <= m; ++s) {
    std::size_t o = data[off + s];
    std::vector<std::size_t> tup(r);
    for (std::size_t i = r; i-- > 0;) {
      tup[i] = o % counts[i];
      o /= counts[i];
    }
    obj[s] = std::move(tup);
    for (std::size_t i = 0; i < r; ++i)
      outs[i].push_back(static_cast<std::uint32_t>(obj[s][i]));
  }
  off += m + 1;
  for (std::size_t b = 0; b < m; ++b) {
    std::vector<CatPtr> sub_factors(r);
    for (std::size_t i = 0; i < r; ++i)
      sub_factors[i] = factors[i]->mor(obj[b][i], obj[b + 1][i]);
    split_walk(t.children()[b], data, off, sub_factors, outs);
  }
}

// Inverse of split_walk: interleaves per-factor encodings into an encoding
// into product(factors).
void merge_walk(const PastingTree& t,
                const std::vector<const std::vector<std::uint32_t>*>& parts,
                std::vector<std::size_t>& offs,
                const std::vector<CatPtr>& factors,
                std::vector<std::uint32_t>& out) {
  const std::size_t m = t.children().size();
  const std::size_t r = factors.size();
  std::vector<std::size_t> counts(r);
  for (std::size_t i = 0; i < r; ++i) counts[i] = factors[i]->object_count();

  std::vector<std::vector<std::size_t>> obj(m + 1, std::vector<std::size_t>(r));
  for (std::size_t s = 0; s <= m; ++s) {
    std::size_t o = 0;
    for (std::size_t i = 0; i < r; ++i) {
      obj[s][i] = (*parts[i])[offs[i] + s];
      o = o * counts[i] + obj[s][i];
    }
    out.push_back(static_cast<std::uint32_t>(o));
  }
  for (std::size_t i = 0; i < r; ++i) offs[i] += m + 1;
  for (std::size_t b = 0; b < m; ++b) {
    std::vector<CatPtr> sub_factors(r);
    for (std::size_t i = 0; i < r; ++i)
      sub_factors[i] = factors[i]->mor(obj[b][i], obj[b + 1][i]);
    merge_walk(t.children()[b], parts, offs, sub_factors, out);
  }
}

} // namespace

std::vector<Functor> split_product(const PastingTree& t, const Functor& f,
                                   const std::vector<CatPtr>& factors) {
  if (factors.size() == 1) return {f};
  std::vector<std::vector<std::uint32_t>> outs(factors.size());
  std::size_t off = 0;
  split_walk(t, f.data, off, factors, outs);
  std::vector<Functor> result;
  result.reserve(factors.size());
  for (auto& d : outs) result.push_back(Functor{std::move(d)});
  return result;
}

Functor merge_product(const PastingTree& t, const std::vector<Functor>& parts,
                      const std::vector<CatPtr>& factors) {
  if (factors.size() == 1) return parts.at(0);
  std::vector<const std::vector<std::uint32_t>*> ps;
  ps.reserve(parts.size());
  for (const Functor& p : parts) ps.push_back(&p.data);
  std::vector<std::size_t> offs(parts.size(), 0);
  std::vector<std::uint32_t> out;
  merge_walk(t, ps, offs, factors, out);
  return Functor{std::move(out)};
}

namespace {

// Stitches the coordinate image: objects j of the chain map to (j >= ell);
// the branch crossing the ell-th summand keeps its component, every other
// branch degenerates.
void coordinate_walk(const PastingTree& t, const std::vector<std::uint32_t>& in,
                     std::size_t& off, std::size_t k, std::size_t ell,
                     std::vector<std::uint32_t>& out) {
  const std::size_t m = t.children().size();
  std::vector<std::uint32_t> a(m + 1);
  for (std::size_t s = 0; s <= m; ++s) {
    a[s] = in[off + s];
    out.push_back(a[s] >= ell ? 1u : 0u);
  }
  off += m + 1;
  for (std::size_t b = 0; b < m; ++b) {
    const PastingTree& sub = t.children()[b];
    const std::size_t lo = a[b], hi = a[b + 1];
    const std::size_t len = encoding_length(sub);
    if (lo == hi || ell <= lo || ell > hi) {
      // Image morphism category is terminal.
      off += len;
      out.insert(out.end(), len, 0u);
      continue;
    }
    Functor piece{std::vector<std::uint32_t>(in.begin() + off,
                                             in.begin() + off + len)};
    off += len;
    std::vector<CatPtr> factors(hi - lo, OmegaCat::globe(k - 1));
    const std::vector<Functor> comps = split_product(sub, piece, factors);
    const Functor& chosen = comps[ell - lo - 1];
    out.insert(out.end(), chosen.data.begin(), chosen.data.end());
  }
}

} // namespace

Functor chain_coordinate(const PastingTree& t, const Functor& f, std::size_t k,
                         std::size_t n, std::size_t ell) {
  if (ell < 1 || ell > n)
    throw Error("chain_coordinate(): summand index out of range");
  std::vector<std::uint32_t> out;
  out.reserve(f.data.size());
  std::size_t off = 0;
  coordinate_walk(t, f.data, off, k, ell, out);
  return Functor{std::move(out)};
}

Functor chain_include(const PastingTree& t, const Functor& f, std::size_t k,
                      std::size_t n) {
  // Objects 0..n sit identically inside 0..n+1 and the morphism categories
  // agree, so the encoding is unchanged.
  (void)t;
  (void)k;
  (void)n;
  return f;
}

namespace {

struct Parsed {
  std::vector<std::uint32_t> objects;
  std::vector<std::size_t> child_off; // offsets of child encodings
};

Parsed parse_node(const PastingTree& t, const std::vector<std::uint32_t>& data,
                  std::size_t off) {
  Parsed p;
  const std::size_t m = t.children().size();
  for (std::size_t s = 0; s <= m; ++s) p.objects.push_back(data[off + s]);
  std::size_t pos = off + m + 1;
  for (std::size_t b = 0; b < m; ++b) {
    p.child_off.push_back(pos);
    pos += encoding_length(t.children()[b]);
  }
  return p;
}

// Degenerate cell encoding at a fixed object of the current globe.
void emit_constant_cell(std::size_t ell, std::uint32_t obj,
                        std::vector<std::uint32_t>& out) {
  if (ell == 0) {
    out.push_back(obj);
    return;
  }
  out.push_back(obj);
  out.push_back(obj);
  emit_constant_cell(ell - 1, 0, out);
}

void compose_walk(const PastingTree& t, const std::vector<std::uint32_t>& fdat,
                  std::size_t foff, const PastingTree& disk,
                  const std::vector<std::uint32_t>& cdat, std::size_t coff,
                  std::size_t ell, std::size_t k,
                  std::vector<std::uint32_t>& out) {
  const Parsed pf = parse_node(t, fdat, foff);
  if (ell == 0) {
    out.push_back(pf.objects[cdat[coff]]);
    return;
  }
  const std::size_t q0 = cdat[coff], q1 = cdat[coff + 1];
  const std::uint32_t a0 = pf.objects[q0], a1 = pf.objects[q1];
  out.push_back(a0);
  out.push_back(a1);
  if (a0 == a1) {
    emit_constant_cell(ell - 1, 0, out);
    return;
  }
  // Exactly one branch between q0 and q1 crosses 0 -> 1; the composite
  // whiskers down to that branch's component.
  std::size_t j = q0;
  while (j < q1 && !(pf.objects[j] == 0 && pf.objects[j + 1] == 1)) ++j;
  const PastingTree& sub_disk = disk.children()[0];
  if (q1 - q0 == 1) {
    compose_walk(t.children()[q0], fdat, pf.child_off[q0], sub_disk, cdat,
                 coff + 2, ell - 1, k - 1, out);
    return;
  }
  // The cell's inner data targets the product of the crossed branches;
  // project to the branch at j.
  std::vector<CatPtr> factors;
  for (std::size_t i = q0; i < q1; ++i)
    factors.push_back(OmegaCat::from_tree(t.children()[i]));
  const std::size_t len = encoding_length(sub_disk);
  Functor inner{std::vector<std::uint32_t>(cdat.begin() + coff + 2,
                                           cdat.begin() + coff + 2 + len)};
  const std::vector<Functor> comps = split_product(sub_disk, inner, factors);
  compose_walk(t.children()[j], fdat, pf.child_off[j], sub_disk,
               comps[j - q0].data, 0, ell - 1, k - 1, out);
}

} // namespace

Functor compose_cell(const PastingTree& t, const Functor& f,
                     const PastingTree& disk, const Functor& cell,
                     std::size_t k) {
  if (disk.height() != disk.edge_count())
    throw DimensionMismatchError("compose_cell(): cell shape is not a disk");
  std::vector<std::uint32_t> out;
  compose_walk(t, f.data, 0, disk, cell.data, 0, disk.height(), k, out);
  return Functor{std::move(out)};
}

GlobeCell classify_globe_cell(const Functor& f, std::size_t ell,
                              std::size_t k) {
  std::size_t off = 0;
  std::size_t level = 0;
  std::size_t dim = ell;
  std::size_t kk = k;
  for (;;) {
    if (kk == 0) return GlobeCell{level, -1};
    if (dim == 0) return GlobeCell{level, static_cast<int>(f.data[off])};
    const std::uint32_t b0 = f.data[off], b1 = f.data[off + 1];
    if (b0 == b1) return GlobeCell{level, static_cast<int>(b0)};
    off += 2;
    ++level;
    --dim;
    --kk;
  }
}

} // namespace dihom
