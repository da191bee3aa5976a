#include "dihom/monoid.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "dihom/errors.hpp"

namespace dihom {

CommMonoid CommMonoid::table(std::vector<std::vector<std::uint32_t>> op,
                             std::uint32_t unit,
                             std::vector<std::string> labels) {
  CommMonoid m;
  m.kind_ = Kind::Table;
  m.op_ = std::move(op);
  m.unit_ = unit;
  m.labels_ = std::move(labels);
  m.validate_table();
  m.commutative_ = true;
  for (std::size_t i = 0; i < m.op_.size() && m.commutative_; ++i)
    for (std::size_t j = 0; j < m.op_.size(); ++j)
      if (m.op_[i][j] != m.op_[j][i]) {
        m.commutative_ = false;
        break;
      }
  return m;
}

void CommMonoid::validate_table() const {
  const std::size_t n = op_.size();
  if (n == 0) throw InvalidCategoryError("monoid table: empty carrier");
  if (unit_ >= n) throw InvalidCategoryError("monoid table: unit out of range");
  for (const auto& row : op_) {
    if (row.size() != n)
      throw InvalidCategoryError("monoid table: ragged table");
    for (std::uint32_t v : row)
      if (v >= n)
        throw InvalidCategoryError("monoid table: entry out of range");
  }
  for (std::size_t i = 0; i < n; ++i)
    if (op_[unit_][i] != i || op_[i][unit_] != i)
      throw InvalidCategoryError("monoid table: unit law fails");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (op_[op_[i][j]][k] != op_[i][op_[j][k]])
          throw InvalidCategoryError("monoid table: associativity fails");
}

CommMonoid CommMonoid::free_commutative(std::size_t generators) {
  CommMonoid m;
  m.kind_ = Kind::FreeCommutative;
  m.generators_ = generators;
  m.commutative_ = true;
  return m;
}

CommMonoid CommMonoid::free_associative(std::size_t generators) {
  CommMonoid m;
  m.kind_ = Kind::FreeAssociative;
  m.generators_ = generators;
  m.commutative_ = generators <= 1;
  return m;
}

CommMonoid CommMonoid::trivial() { return table({{0}}, 0, {"0"}); }

CommMonoid CommMonoid::z2() { return cyclic(2); }

CommMonoid CommMonoid::cyclic(std::uint32_t n) {
  std::vector<std::vector<std::uint32_t>> op(n, std::vector<std::uint32_t>(n));
  std::vector<std::string> labels(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    labels[i] = std::to_string(i);
    for (std::uint32_t j = 0; j < n; ++j) op[i][j] = (i + j) % n;
  }
  return table(std::move(op), 0, std::move(labels));
}

bool CommMonoid::is_finite() const {
  return kind_ == Kind::Table || generators_ == 0;
}

MonElem CommMonoid::unit() const {
  switch (kind_) {
    case Kind::Table:
      return MonElem{{unit_}};
    case Kind::FreeCommutative:
      return MonElem{std::vector<std::uint32_t>(generators_, 0)};
    case Kind::FreeAssociative:
      return MonElem{{}};
  }
  return {};
}

MonElem CommMonoid::generator(std::size_t i) const {
  if (kind_ == Kind::Table)
    throw Error("generator(): table monoids have no chosen generators");
  if (i >= generators_) throw Error("generator(): index out of range");
  if (kind_ == Kind::FreeCommutative) {
    MonElem e = unit();
    e.data[i] = 1;
    return e;
  }
  return MonElem{{static_cast<std::uint32_t>(i)}};
}

MonElem CommMonoid::mul(const MonElem& a, const MonElem& b) const {
  switch (kind_) {
    case Kind::Table:
      return MonElem{{op_[a.data[0]][b.data[0]]}};
    case Kind::FreeCommutative: {
      MonElem r = a;
      for (std::size_t i = 0; i < generators_; ++i) r.data[i] += b.data[i];
      return r;
    }
    case Kind::FreeAssociative: {
      MonElem r = a;
      r.data.insert(r.data.end(), b.data.begin(), b.data.end());
      return r;
    }
  }
  return {};
}

std::uint64_t CommMonoid::mass(const MonElem& e) const {
  switch (kind_) {
    case Kind::Table:
      return e.data[0] == unit_ ? 0 : 1;
    case Kind::FreeCommutative:
      return std::accumulate(e.data.begin(), e.data.end(), std::uint64_t{0});
    case Kind::FreeAssociative:
      return e.data.size();
  }
  return 0;
}

namespace {

void exponent_vectors(std::size_t g, std::uint64_t bound,
                      std::vector<std::uint32_t>& cur,
                      std::vector<MonElem>& out) {
  if (cur.size() == g) {
    out.push_back(MonElem{cur});
    return;
  }
  for (std::uint64_t v = 0; v <= bound; ++v) {
    cur.push_back(static_cast<std::uint32_t>(v));
    exponent_vectors(g, bound - v, cur, out);
    cur.pop_back();
  }
}

} // namespace

std::vector<MonElem> CommMonoid::elements_up_to(std::uint64_t bound) const {
  std::vector<MonElem> out;
  switch (kind_) {
    case Kind::Table:
      for (std::uint32_t i = 0; i < op_.size(); ++i) out.push_back(MonElem{{i}});
      break;
    case Kind::FreeCommutative: {
      std::vector<std::uint32_t> cur;
      exponent_vectors(generators_, bound, cur, out);
      break;
    }
    case Kind::FreeAssociative: {
      out.push_back(unit());
      std::vector<MonElem> layer{unit()};
      for (std::uint64_t len = 1; len <= bound; ++len) {
        std::vector<MonElem> next;
        for (const MonElem& w : layer)
          for (std::uint32_t g = 0; g < generators_; ++g) {
            MonElem e = w;
            e.data.push_back(g);
            next.push_back(std::move(e));
          }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
      }
      break;
    }
  }
  std::sort(out.begin(), out.end(), [this](const MonElem& a, const MonElem& b) {
    const auto ma = mass(a), mb = mass(b);
    if (ma != mb) return ma < mb;
    return a < b;
  });
  return out;
}

std::string CommMonoid::show(const MonElem& e) const {
  switch (kind_) {
    case Kind::Table:
      return labels_.empty() ? std::to_string(e.data[0]) : labels_[e.data[0]];
    case Kind::FreeCommutative: {
      std::string s = "(";
      for (std::size_t i = 0; i < e.data.size(); ++i) {
        if (i > 0) s += ',';
        s += std::to_string(e.data[i]);
      }
      return s + ")";
    }
    case Kind::FreeAssociative: {
      if (e.data.empty()) return "1";
      std::string s;
      for (std::uint32_t g : e.data) s += static_cast<char>('a' + (g % 26));
      return s;
    }
  }
  return {};
}

nlohmann::json CommMonoid::elem_to_json(const MonElem& e) const {
  if (kind_ == Kind::Table) return e.data[0];
  return e.data;
}

MonElem CommMonoid::elem_from_json(const nlohmann::json& j) const {
  if (kind_ == Kind::Table) {
    if (!j.is_number_unsigned() || j.get<std::uint64_t>() >= op_.size())
      throw ParseError("monoid element: bad table index " + j.dump());
    return MonElem{{j.get<std::uint32_t>()}};
  }
  if (!j.is_array()) throw ParseError("monoid element: expected array");
  MonElem e;
  for (const auto& v : j) e.data.push_back(v.get<std::uint32_t>());
  if (kind_ == Kind::FreeCommutative && e.data.size() != generators_)
    throw ParseError("monoid element: wrong exponent vector length");
  return e;
}

std::string CommMonoid::describe() const {
  switch (kind_) {
    case Kind::Table:
      if (op_.size() == 1) return "trivial";
      return "table<" + std::to_string(op_.size()) + ">";
    case Kind::FreeCommutative:
      if (generators_ == 1) return "N";
      return "freeC:" + std::to_string(generators_);
    case Kind::FreeAssociative:
      return "freeA:" + std::to_string(generators_);
  }
  return {};
}

bool CommMonoid::operator==(const CommMonoid& other) const {
  return kind_ == other.kind_ && generators_ == other.generators_ &&
         op_ == other.op_ && unit_ == other.unit_;
}

MonElem hom_eval(const CommMonoid& src, const CommMonoid& dst,
                 const MonoidHom& h, const MonElem& e) {
  switch (src.kind()) {
    case CommMonoid::Kind::Table:
      return h.images[e.data[0]];
    case CommMonoid::Kind::FreeCommutative: {
      MonElem r = dst.unit();
      for (std::size_t i = 0; i < e.data.size(); ++i)
        for (std::uint32_t c = 0; c < e.data[i]; ++c)
          r = dst.mul(r, h.images[i]);
      return r;
    }
    case CommMonoid::Kind::FreeAssociative: {
      MonElem r = dst.unit();
      for (std::uint32_t g : e.data) r = dst.mul(r, h.images[g]);
      return r;
    }
  }
  return {};
}

MonoidHom hom_compose(const CommMonoid& a, const CommMonoid& b,
                      const CommMonoid& c, const MonoidHom& f,
                      const MonoidHom& g) {
  MonoidHom out;
  out.images.reserve(f.images.size());
  for (const MonElem& im : f.images) out.images.push_back(hom_eval(b, c, g, im));
  (void)a;
  return out;
}

namespace {

bool is_hom_from_table(const CommMonoid& m, const CommMonoid& mp,
                       const MonoidHom& h) {
  const std::size_t n = m.table_size();
  if (hom_eval(m, mp, h, m.unit()) != mp.unit()) return false;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      const MonElem lhs = h.images[m.mul(MonElem{{i}}, MonElem{{j}}).data[0]];
      const MonElem rhs = mp.mul(h.images[i], h.images[j]);
      if (lhs != rhs) return false;
    }
  return true;
}

void image_tuples(const std::vector<MonElem>& candidates, std::size_t count,
                  std::vector<MonElem>& cur,
                  const std::function<void(const std::vector<MonElem>&)>& emit) {
  if (cur.size() == count) {
    emit(cur);
    return;
  }
  for (const MonElem& c : candidates) {
    cur.push_back(c);
    image_tuples(candidates, count, cur, emit);
    cur.pop_back();
  }
}

} // namespace

MonoidHomSearch pointed_monoid_endos(std::size_t n, const CommMonoid& m,
                                     const CommMonoid& mp,
                                     std::uint64_t bound) {
  MonoidHomSearch result;
  if (n >= 2 && !m.is_commutative()) result.commutativity_flag = true;

  const std::vector<MonElem> candidates = mp.elements_up_to(bound);
  result.bound_exceeded = !mp.is_finite();

  const std::size_t slots = m.kind() == CommMonoid::Kind::Table
                                ? m.table_size()
                                : m.generator_count();
  std::vector<MonElem> cur;
  image_tuples(candidates, slots, cur, [&](const std::vector<MonElem>& images) {
    MonoidHom h{images};
    switch (m.kind()) {
      case CommMonoid::Kind::Table:
        if (!is_hom_from_table(m, mp, h)) return;
        break;
      case CommMonoid::Kind::FreeCommutative:
        // Generator images must commute pairwise for the map to be defined
        // on exponent vectors.
        for (std::size_t i = 0; i < images.size(); ++i)
          for (std::size_t j = i + 1; j < images.size(); ++j)
            if (mp.mul(images[i], images[j]) != mp.mul(images[j], images[i]))
              return;
        break;
      case CommMonoid::Kind::FreeAssociative:
        break;
    }
    result.homs.push_back(std::move(h));
  });
  std::sort(result.homs.begin(), result.homs.end());
  result.homs.erase(std::unique(result.homs.begin(), result.homs.end()),
                    result.homs.end());
  return result;
}

} // namespace dihom
