#include "dihom/strat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "dihom/errors.hpp"

namespace dihom {

namespace {

std::vector<std::vector<bool>> degenerate_flags(const SimplicialData& d) {
  std::vector<std::vector<bool>> flags(d.dim + 1);
  for (std::size_t n = 0; n <= d.dim; ++n)
    flags[n].assign(d.count(n), false);
  for (std::size_t n = 0; n + 1 <= d.dim; ++n)
    for (std::size_t i = 0; i < d.degens[n].size(); ++i)
      for (std::uint32_t x = 0; x < d.count(n); ++x)
        flags[n + 1][d.degens[n][i][x]] = true;
  return flags;
}

} // namespace

StratSet::StratSet(SimplicialData data, std::vector<std::vector<bool>> thin,
                   std::optional<std::uint32_t> basepoint)
    : data_(std::move(data)), thin_(std::move(thin)), basepoint_(basepoint) {
  degenerate_ = degenerate_flags(data_);
  validate();
}

void StratSet::validate() const {
  const SimplicialData& d = data_;
  if (d.labels.size() != d.dim + 1 || d.faces.size() != d.dim + 1 ||
      d.degens.size() != d.dim)
    throw Error("StratSet: table shapes do not match the dimension");

  for (std::size_t n = 1; n <= d.dim; ++n) {
    if (d.faces[n].size() != n + 1)
      throw Error("StratSet: missing face maps in degree " +
                  std::to_string(n));
    for (const auto& f : d.faces[n]) {
      if (f.size() != d.count(n))
        throw Error("StratSet: face table size mismatch");
      for (std::uint32_t v : f)
        if (v >= d.count(n - 1)) throw Error("StratSet: face out of range");
    }
  }
  for (std::size_t n = 0; n + 1 <= d.dim; ++n) {
    if (d.degens[n].size() != n + 1)
      throw Error("StratSet: missing degeneracy maps in degree " +
                  std::to_string(n));
    for (const auto& s : d.degens[n]) {
      if (s.size() != d.count(n))
        throw Error("StratSet: degeneracy table size mismatch");
      for (std::uint32_t v : s)
        if (v >= d.count(n + 1))
          throw Error("StratSet: degeneracy out of range");
    }
  }

  // Simplicial identities, exhaustively on the truncated range.
  for (std::size_t n = 2; n <= d.dim; ++n)
    for (std::size_t j = 0; j <= n; ++j)
      for (std::size_t i = 0; i < j; ++i)
        for (std::uint32_t x = 0; x < d.count(n); ++x)
          if (d.faces[n - 1][i][d.faces[n][j][x]] !=
              d.faces[n - 1][j - 1][d.faces[n][i][x]])
            throw Error("StratSet: d_i d_j identity fails in degree " +
                        std::to_string(n));
  for (std::size_t n = 0; n + 2 <= d.dim; ++n)
    for (std::size_t j = 0; j <= n; ++j)
      for (std::size_t i = 0; i <= j; ++i)
        for (std::uint32_t x = 0; x < d.count(n); ++x)
          if (d.degens[n + 1][i][d.degens[n][j][x]] !=
              d.degens[n + 1][j + 1][d.degens[n][i][x]])
            throw Error("StratSet: s_i s_j identity fails in degree " +
                        std::to_string(n));
  for (std::size_t n = 0; n + 1 <= d.dim; ++n)
    for (std::size_t j = 0; j <= n; ++j)
      for (std::size_t i = 0; i <= n + 1; ++i)
        for (std::uint32_t x = 0; x < d.count(n); ++x) {
          const std::uint32_t v = d.faces[n + 1][i][d.degens[n][j][x]];
          if (i == j || i == j + 1) {
            if (v != x)
              throw Error("StratSet: d_i s_j != id in degree " +
                          std::to_string(n));
          } else if (i < j) {
            if (n == 0) continue;
            if (v != d.degens[n - 1][j - 1][d.faces[n][i][x]])
              throw Error("StratSet: d_i s_j identity fails (i < j)");
          } else {
            if (n == 0) continue;
            if (v != d.degens[n - 1][j][d.faces[n][i - 1][x]])
              throw Error("StratSet: d_i s_j identity fails (i > j + 1)");
          }
        }

  if (thin_.size() != d.dim + 1)
    throw Error("StratSet: thin flag shape mismatch");
  for (std::size_t n = 0; n <= d.dim; ++n)
    if (thin_[n].size() != d.count(n))
      throw Error("StratSet: thin flag size mismatch in degree " +
                  std::to_string(n));
  for (std::size_t n = 1; n <= d.dim; ++n)
    for (std::uint32_t x = 0; x < d.count(n); ++x)
      if (degenerate_[n][x] && !thin_[n][x])
        throw Error("StratSet: degenerate simplex not thin in degree " +
                    std::to_string(n));

  if (basepoint_ && *basepoint_ >= d.count(0))
    throw Error("StratSet: basepoint out of range");
}

std::uint32_t StratSet::basepoint_pad(std::size_t n) const {
  if (!basepoint_) throw NoBasepointError("basepoint_pad(): no basepoint");
  std::uint32_t x = *basepoint_;
  for (std::size_t i = 0; i < n; ++i) x = data_.degens[i][0][x];
  return x;
}

StratSet flat(SimplicialData s, std::optional<std::uint32_t> basepoint) {
  auto thin = degenerate_flags(s);
  return StratSet(std::move(s), std::move(thin), basepoint);
}

StratSet sharp(SimplicialData s, std::optional<std::uint32_t> basepoint) {
  std::vector<std::vector<bool>> thin(s.dim + 1);
  thin[0].assign(s.count(0), false);
  for (std::size_t n = 1; n <= s.dim; ++n) thin[n].assign(s.count(n), true);
  return StratSet(std::move(s), std::move(thin), basepoint);
}

namespace {

std::string tuple_label(const std::vector<std::uint32_t>& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0) s += '.';
    s += std::to_string(t[i]);
  }
  return s;
}

void monotone_tuples(std::size_t len, std::uint32_t max_value,
                     std::uint32_t from, std::vector<std::uint32_t>& cur,
                     std::vector<std::vector<std::uint32_t>>& out) {
  if (cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (std::uint32_t v = from; v <= max_value; ++v) {
    cur.push_back(v);
    monotone_tuples(len, max_value, v, cur, out);
    cur.pop_back();
  }
}

} // namespace

SimplicialData standard_simplex(std::size_t j, std::size_t dim) {
  SimplicialData d;
  d.dim = dim;
  std::vector<std::vector<std::vector<std::uint32_t>>> simplices(dim + 1);
  std::vector<std::map<std::vector<std::uint32_t>, std::uint32_t>> index(dim +
                                                                         1);
  d.labels.resize(dim + 1);
  for (std::size_t n = 0; n <= dim; ++n) {
    std::vector<std::uint32_t> cur;
    monotone_tuples(n + 1, static_cast<std::uint32_t>(j), 0, cur,
                    simplices[n]);
    for (std::uint32_t x = 0; x < simplices[n].size(); ++x) {
      index[n][simplices[n][x]] = x;
      d.labels[n].push_back(tuple_label(simplices[n][x]));
    }
  }
  d.faces.resize(dim + 1);
  for (std::size_t n = 1; n <= dim; ++n) {
    d.faces[n].assign(n + 1, std::vector<std::uint32_t>(simplices[n].size()));
    for (std::size_t i = 0; i <= n; ++i)
      for (std::uint32_t x = 0; x < simplices[n].size(); ++x) {
        std::vector<std::uint32_t> t = simplices[n][x];
        t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
        d.faces[n][i][x] = index[n - 1][t];
      }
  }
  d.degens.resize(dim);
  for (std::size_t n = 0; n + 1 <= dim; ++n) {
    d.degens[n].assign(n + 1, std::vector<std::uint32_t>(simplices[n].size()));
    for (std::size_t i = 0; i <= n; ++i)
      for (std::uint32_t x = 0; x < simplices[n].size(); ++x) {
        std::vector<std::uint32_t> t = simplices[n][x];
        t.insert(t.begin() + static_cast<std::ptrdiff_t>(i), t[i]);
        d.degens[n][i][x] = index[n + 1][t];
      }
  }
  return d;
}

SimplicialData disjoint_union(const SimplicialData& a,
                              const SimplicialData& b) {
  if (a.dim != b.dim)
    throw Error("disjoint_union(): dimensions differ");
  SimplicialData d;
  d.dim = a.dim;
  d.labels.resize(d.dim + 1);
  for (std::size_t n = 0; n <= d.dim; ++n) {
    for (const std::string& l : a.labels[n]) d.labels[n].push_back("l:" + l);
    for (const std::string& l : b.labels[n]) d.labels[n].push_back("r:" + l);
  }
  d.faces.resize(d.dim + 1);
  for (std::size_t n = 1; n <= d.dim; ++n) {
    d.faces[n].resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::uint32_t v : a.faces[n][i]) d.faces[n][i].push_back(v);
      for (std::uint32_t v : b.faces[n][i])
        d.faces[n][i].push_back(v + static_cast<std::uint32_t>(a.count(n - 1)));
    }
  }
  d.degens.resize(d.dim);
  for (std::size_t n = 0; n + 1 <= d.dim; ++n) {
    d.degens[n].resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::uint32_t v : a.degens[n][i]) d.degens[n][i].push_back(v);
      for (std::uint32_t v : b.degens[n][i])
        d.degens[n][i].push_back(v +
                                 static_cast<std::uint32_t>(a.count(n + 1)));
    }
  }
  return d;
}

StratSet strat_product(const StratSet& x, const StratSet& y) {
  const std::size_t dim = std::min(x.dim(), y.dim());
  SimplicialData d;
  d.dim = dim;
  d.labels.resize(dim + 1);
  auto rank = [&](std::size_t n, std::uint32_t a, std::uint32_t b) {
    return a * static_cast<std::uint32_t>(y.count(n)) + b;
  };
  for (std::size_t n = 0; n <= dim; ++n)
    for (std::uint32_t a = 0; a < x.count(n); ++a)
      for (std::uint32_t b = 0; b < y.count(n); ++b)
        d.labels[n].push_back("(" + x.label(n, a) + "|" + y.label(n, b) + ")");
  d.faces.resize(dim + 1);
  for (std::size_t n = 1; n <= dim; ++n) {
    d.faces[n].assign(n + 1,
                      std::vector<std::uint32_t>(x.count(n) * y.count(n)));
    for (std::size_t i = 0; i <= n; ++i)
      for (std::uint32_t a = 0; a < x.count(n); ++a)
        for (std::uint32_t b = 0; b < y.count(n); ++b)
          d.faces[n][i][rank(n, a, b)] =
              rank(n - 1, x.face(n, i, a), y.face(n, i, b));
  }
  d.degens.resize(dim);
  for (std::size_t n = 0; n + 1 <= dim; ++n) {
    d.degens[n].assign(n + 1,
                       std::vector<std::uint32_t>(x.count(n) * y.count(n)));
    for (std::size_t i = 0; i <= n; ++i)
      for (std::uint32_t a = 0; a < x.count(n); ++a)
        for (std::uint32_t b = 0; b < y.count(n); ++b)
          d.degens[n][i][rank(n, a, b)] =
              rank(n + 1, x.degen(n, i, a), y.degen(n, i, b));
  }
  std::vector<std::vector<bool>> thin(dim + 1);
  thin[0].assign(d.count(0), false);
  for (std::size_t n = 1; n <= dim; ++n) {
    thin[n].assign(d.count(n), false);
    for (std::uint32_t a = 0; a < x.count(n); ++a)
      for (std::uint32_t b = 0; b < y.count(n); ++b)
        thin[n][rank(n, a, b)] = x.thin(n, a) && y.thin(n, b);
  }
  std::optional<std::uint32_t> basepoint;
  if (x.basepoint() && y.basepoint())
    basepoint = rank(0, *x.basepoint(), *y.basepoint());
  return StratSet(std::move(d), std::move(thin), basepoint);
}

StratSet collapse(const StratSet& x, const std::vector<std::vector<bool>>& a) {
  const std::size_t dim = x.dim();
  if (a.size() != dim + 1)
    throw NotClosedError("collapse(): subset shape mismatch");
  for (std::size_t n = 0; n <= dim; ++n)
    if (a[n].size() != x.count(n))
      throw NotClosedError("collapse(): subset size mismatch");
  if (std::none_of(a[0].begin(), a[0].end(), [](bool b) { return b; }))
    throw NotClosedError("collapse(): subset has no vertices");
  for (std::size_t n = 1; n <= dim; ++n)
    for (std::uint32_t v = 0; v < x.count(n); ++v)
      if (a[n][v])
        for (std::size_t i = 0; i <= n; ++i)
          if (!a[n - 1][x.face(n, i, v)])
            throw NotClosedError("collapse(): subset not closed under faces");
  for (std::size_t n = 0; n + 1 <= dim; ++n)
    for (std::uint32_t v = 0; v < x.count(n); ++v)
      if (a[n][v])
        for (std::size_t i = 0; i <= n; ++i)
          if (!a[n + 1][x.degen(n, i, v)])
            throw NotClosedError(
                "collapse(): subset not closed under degeneracies");

  // Index 0 is the collapsed point in every degree.
  std::vector<std::vector<std::uint32_t>> remap(dim + 1);
  SimplicialData d;
  d.dim = dim;
  d.labels.resize(dim + 1);
  for (std::size_t n = 0; n <= dim; ++n) {
    remap[n].assign(x.count(n), 0);
    d.labels[n].push_back("*");
    std::uint32_t next = 1;
    for (std::uint32_t v = 0; v < x.count(n); ++v) {
      if (a[n][v]) continue;
      remap[n][v] = next++;
      d.labels[n].push_back(x.label(n, v));
    }
  }
  d.faces.resize(dim + 1);
  for (std::size_t n = 1; n <= dim; ++n) {
    d.faces[n].assign(n + 1, std::vector<std::uint32_t>(d.count(n)));
    for (std::size_t i = 0; i <= n; ++i) {
      d.faces[n][i][0] = 0;
      for (std::uint32_t v = 0; v < x.count(n); ++v)
        if (!a[n][v])
          d.faces[n][i][remap[n][v]] = remap[n - 1][x.face(n, i, v)];
    }
  }
  d.degens.resize(dim);
  for (std::size_t n = 0; n + 1 <= dim; ++n) {
    d.degens[n].assign(n + 1, std::vector<std::uint32_t>(d.count(n)));
    for (std::size_t i = 0; i <= n; ++i) {
      d.degens[n][i][0] = 0;
      for (std::uint32_t v = 0; v < x.count(n); ++v)
        if (!a[n][v])
          d.degens[n][i][remap[n][v]] = remap[n + 1][x.degen(n, i, v)];
    }
  }
  std::vector<std::vector<bool>> thin(dim + 1);
  thin[0].assign(d.count(0), false);
  for (std::size_t n = 1; n <= dim; ++n) {
    thin[n].assign(d.count(n), false);
    thin[n][0] = true; // image of the degenerate (hence thin) part of A
    for (std::uint32_t v = 0; v < x.count(n); ++v)
      if (!a[n][v] && x.thin(n, v)) thin[n][remap[n][v]] = true;
  }
  return StratSet(std::move(d), std::move(thin), 0u);
}

FinCategory FinCategory::walking_arrow() {
  FinCategory c;
  c.n_objects = 2;
  c.arrows = {{0, 0, "id0"}, {1, 1, "id1"}, {0, 1, "f"}};
  c.identity = {0, 1};
  // comp[g][f]: only composable pairs are ever read; the rest of the total
  // table points at an arbitrary arrow.
  c.comp = {{0, 0, 0}, {0, 1, 2}, {2, 0, 0}};
  c.validate();
  return c;
}

FinCategory FinCategory::delooping(const CommMonoid& m) {
  if (!m.is_finite())
    throw InvalidCategoryError("delooping(): monoid carrier must be finite");
  const std::vector<MonElem> elems = m.elements_up_to(0);
  FinCategory c;
  c.n_objects = 1;
  for (std::uint32_t i = 0; i < elems.size(); ++i)
    c.arrows.push_back({0, 0, m.show(elems[i])});
  // The unit is first in the canonical element order.
  c.identity = {0};
  c.comp.assign(elems.size(), std::vector<std::uint32_t>(elems.size()));
  std::map<MonElem, std::uint32_t> index;
  for (std::uint32_t i = 0; i < elems.size(); ++i) index[elems[i]] = i;
  for (std::uint32_t g = 0; g < elems.size(); ++g)
    for (std::uint32_t f = 0; f < elems.size(); ++f)
      c.comp[g][f] = index[m.mul(elems[g], elems[f])];
  c.validate();
  return c;
}

void FinCategory::validate() const {
  if (identity.size() != n_objects)
    throw InvalidCategoryError("category: one identity per object required");
  for (const Arrow& f : arrows)
    if (f.src >= n_objects || f.tgt >= n_objects)
      throw InvalidCategoryError("category: arrow endpoint out of range");
  for (std::uint32_t o = 0; o < n_objects; ++o) {
    const std::uint32_t id = identity[o];
    if (id >= arrows.size() || arrows[id].src != o || arrows[id].tgt != o)
      throw InvalidCategoryError("category: identity arrow mismatched");
  }
  if (comp.size() != arrows.size())
    throw InvalidCategoryError("category: composition table not total");
  for (const auto& row : comp)
    if (row.size() != arrows.size())
      throw InvalidCategoryError("category: composition table not total");
  auto composable = [&](std::uint32_t g, std::uint32_t f) {
    return arrows[f].tgt == arrows[g].src;
  };
  for (std::uint32_t g = 0; g < arrows.size(); ++g)
    for (std::uint32_t f = 0; f < arrows.size(); ++f) {
      if (!composable(g, f)) continue;
      const std::uint32_t gf = comp[g][f];
      if (gf >= arrows.size() || arrows[gf].src != arrows[f].src ||
          arrows[gf].tgt != arrows[g].tgt)
        throw InvalidCategoryError("category: composite endpoints wrong");
    }
  for (std::uint32_t f = 0; f < arrows.size(); ++f) {
    if (comp[f][identity[arrows[f].src]] != f ||
        comp[identity[arrows[f].tgt]][f] != f)
      throw InvalidCategoryError("category: unit law fails");
  }
  for (std::uint32_t h = 0; h < arrows.size(); ++h)
    for (std::uint32_t g = 0; g < arrows.size(); ++g)
      for (std::uint32_t f = 0; f < arrows.size(); ++f) {
        if (!composable(g, f) || !composable(h, g)) continue;
        if (comp[comp[h][g]][f] != comp[h][comp[g][f]])
          throw InvalidCategoryError("category: associativity fails");
      }
}

StratSet street_nerve1(const FinCategory& c, std::size_t dim,
                       std::optional<std::uint32_t> basepoint) {
  c.validate();
  SimplicialData d;
  d.dim = dim;
  // Chains of composable arrows; degree 0 is indexed by objects.
  std::vector<std::vector<std::vector<std::uint32_t>>> chains(dim + 1);
  std::vector<std::map<std::vector<std::uint32_t>, std::uint32_t>> index(dim +
                                                                          1);
  for (std::uint32_t o = 0; o < c.n_objects; ++o)
    chains[0].push_back({o});
  for (std::size_t n = 1; n <= dim; ++n) {
    for (const auto& prefix : chains[n - 1]) {
      const std::uint32_t tail_obj =
          n == 1 ? prefix[0] : c.arrows[prefix.back()].tgt;
      for (std::uint32_t f = 0; f < c.arrows.size(); ++f) {
        if (c.arrows[f].src != tail_obj) continue;
        std::vector<std::uint32_t> chain;
        if (n > 1) chain = prefix;
        chain.push_back(f);
        chains[n].push_back(std::move(chain));
      }
    }
  }
  d.labels.resize(dim + 1);
  for (std::size_t n = 0; n <= dim; ++n) {
    std::sort(chains[n].begin(), chains[n].end());
    for (std::uint32_t x = 0; x < chains[n].size(); ++x) {
      index[n][chains[n][x]] = x;
      std::string label;
      if (n == 0) {
        label = "o" + std::to_string(chains[0][x][0]);
      } else {
        for (std::size_t i = 0; i < chains[n][x].size(); ++i) {
          if (i > 0) label += '|';
          label += c.arrows[chains[n][x][i]].label;
        }
      }
      d.labels[n].push_back(label);
    }
  }
  auto chain_src = [&](const std::vector<std::uint32_t>& ch, std::size_t n) {
    return n == 0 ? ch[0] : c.arrows[ch[0]].src;
  };
  d.faces.resize(dim + 1);
  for (std::size_t n = 1; n <= dim; ++n) {
    d.faces[n].assign(n + 1, std::vector<std::uint32_t>(chains[n].size()));
    for (std::size_t i = 0; i <= n; ++i)
      for (std::uint32_t x = 0; x < chains[n].size(); ++x) {
        const std::vector<std::uint32_t>& ch = chains[n][x];
        std::vector<std::uint32_t> r;
        if (n == 1) {
          r = {i == 0 ? c.arrows[ch[0]].tgt : c.arrows[ch[0]].src};
        } else if (i == 0) {
          r.assign(ch.begin() + 1, ch.end());
        } else if (i == n) {
          r.assign(ch.begin(), ch.end() - 1);
        } else {
          r.assign(ch.begin(), ch.end());
          r[i - 1] = c.comp[ch[i]][ch[i - 1]];
          r.erase(r.begin() + static_cast<std::ptrdiff_t>(i));
        }
        d.faces[n][i][x] = index[n - 1][r];
      }
  }
  d.degens.resize(dim);
  for (std::size_t n = 0; n + 1 <= dim; ++n) {
    d.degens[n].assign(n + 1, std::vector<std::uint32_t>(chains[n].size()));
    for (std::size_t i = 0; i <= n; ++i)
      for (std::uint32_t x = 0; x < chains[n].size(); ++x) {
        const std::vector<std::uint32_t>& ch = chains[n][x];
        std::uint32_t vertex;
        if (i == 0) {
          vertex = chain_src(ch, n);
        } else {
          vertex = c.arrows[ch[i - 1]].tgt;
        }
        std::vector<std::uint32_t> r;
        if (n == 0) {
          r = {c.identity[ch[0]]};
        } else {
          r.assign(ch.begin(), ch.end());
          r.insert(r.begin() + static_cast<std::ptrdiff_t>(i),
                   c.identity[vertex]);
        }
        d.degens[n][i][x] = index[n + 1][r];
      }
  }
  std::vector<std::vector<bool>> thin(dim + 1);
  thin[0].assign(d.count(0), false);
  for (std::size_t n = 1; n <= dim; ++n) {
    thin[n].assign(d.count(n), n >= 2);
    if (n == 1)
      for (std::uint32_t x = 0; x < chains[1].size(); ++x)
        thin[1][x] = chains[1][x][0] == c.identity[c.arrows[chains[1][x][0]].src];
  }
  return StratSet(std::move(d), std::move(thin), basepoint);
}

// ---------------------------------------------------------------------------
// Free stratified simplicial commutative monoids

StratCMonoid::StratCMonoid(StratSet base, CommMonoid coeff,
                           std::uint64_t weight_bound, bool reduced)
    : base_(std::move(base)), coeff_(std::move(coeff)),
      weight_bound_(weight_bound), reduced_(reduced) {
  if (reduced_ && !base_.basepoint())
    throw NoBasepointError("m_linear_reduced(): the model needs a basepoint");
  if (!coeff_.is_commutative())
    throw Error("m_linear(): coefficients must be commutative");
  if (weight_bound_ < 1) throw Error("m_linear(): weight bound must be >= 1");

  const std::vector<MonElem> cands = coeff_.elements_up_to(weight_bound_);
  carrier_.resize(dim() + 1);
  index_.resize(dim() + 1);
  for (std::size_t n = 0; n <= dim(); ++n) {
    const std::size_t cols = base_.count(n);
    const std::optional<std::uint32_t> pad =
        reduced_ ? std::optional<std::uint32_t>(base_.basepoint_pad(n))
                 : std::nullopt;
    MComb cur;
    cur.coeffs.assign(cols, coeff_.unit());
    // Column-by-column enumeration within the remaining weight budget.
    std::function<void(std::size_t, std::uint64_t)> rec =
        [&](std::size_t col, std::uint64_t budget) {
          if (col == cols) {
            carrier_[n].push_back(cur);
            return;
          }
          if (pad && col == *pad) {
            rec(col + 1, budget);
            return;
          }
          for (const MonElem& c : cands) {
            const std::uint64_t m = coeff_.mass(c);
            if (m > budget) continue;
            cur.coeffs[col] = c;
            rec(col + 1, budget - m);
          }
          cur.coeffs[col] = coeff_.unit();
        };
    rec(0, weight_bound_);
    std::sort(carrier_[n].begin(), carrier_[n].end(),
              [this](const MComb& a, const MComb& b) {
                const auto wa = comb_weight(a), wb = comb_weight(b);
                if (wa != wb) return wa < wb;
                return a < b;
              });
    for (std::size_t i = 0; i < carrier_[n].size(); ++i)
      index_[n][carrier_[n][i]] = i;
  }
}

std::uint64_t StratCMonoid::comb_weight(const MComb& c) const {
  std::uint64_t w = 0;
  for (const MonElem& e : c.coeffs) w += coeff_.mass(e);
  return w;
}

std::size_t StratCMonoid::index_of(std::size_t n, const MComb& c) const {
  const auto it = index_[n].find(c);
  if (it == index_[n].end())
    throw Error("StratCMonoid: combination outside the materialized range");
  return it->second;
}

std::size_t StratCMonoid::unit_index(std::size_t n) const {
  MComb u;
  u.coeffs.assign(base_.count(n), coeff_.unit());
  return index_of(n, u);
}

std::uint64_t StratCMonoid::weight(std::size_t n, std::size_t idx) const {
  return comb_weight(carrier_[n][idx]);
}

bool StratCMonoid::thin(std::size_t n, std::size_t idx) const {
  if (n == 0) return false;
  const MComb& c = carrier_[n][idx];
  for (std::uint32_t col = 0; col < c.coeffs.size(); ++col)
    if (!coeff_.is_unit(c.coeffs[col]) && !base_.thin(n, col)) return false;
  return true;
}

MComb StratCMonoid::normalize(std::size_t n, MComb c) const {
  if (reduced_) c.coeffs[base_.basepoint_pad(n)] = coeff_.unit();
  return c;
}

MComb StratCMonoid::apply_map(std::size_t n_from,
                              const std::vector<std::uint32_t>& map_table,
                              std::size_t n_to, const MComb& c) const {
  MComb out;
  out.coeffs.assign(base_.count(n_to), coeff_.unit());
  for (std::uint32_t col = 0; col < c.coeffs.size(); ++col) {
    if (coeff_.is_unit(c.coeffs[col])) continue;
    const std::uint32_t t = map_table[col];
    out.coeffs[t] = coeff_.mul(out.coeffs[t], c.coeffs[col]);
  }
  (void)n_from;
  return normalize(n_to, out);
}

std::size_t StratCMonoid::face(std::size_t n, std::size_t i,
                               std::size_t idx) const {
  return index_of(n - 1, apply_map(n, base_.data().faces[n][i], n - 1,
                                   carrier_[n][idx]));
}

std::size_t StratCMonoid::degen(std::size_t n, std::size_t i,
                                std::size_t idx) const {
  return index_of(n + 1, apply_map(n, base_.data().degens[n][i], n + 1,
                                   carrier_[n][idx]));
}

std::optional<std::size_t> StratCMonoid::add(std::size_t n, std::size_t i,
                                             std::size_t j) const {
  MComb out = carrier_[n][i];
  const MComb& other = carrier_[n][j];
  for (std::uint32_t col = 0; col < out.coeffs.size(); ++col)
    out.coeffs[col] = coeff_.mul(out.coeffs[col], other.coeffs[col]);
  out = normalize(n, out);
  if (comb_weight(out) > weight_bound_) return std::nullopt;
  return index_of(n, out);
}

std::size_t StratCMonoid::from_multiplicities(
    std::size_t n, const std::vector<std::uint32_t>& mult) const {
  if (coeff_.kind() != CommMonoid::Kind::FreeCommutative ||
      coeff_.generator_count() != 1)
    throw Error("from_multiplicities(): natural coefficients required");
  MComb c;
  c.coeffs.reserve(mult.size());
  for (std::uint32_t m : mult) c.coeffs.push_back(MonElem{{m}});
  return index_of(n, normalize(n, std::move(c)));
}

std::string StratCMonoid::show(std::size_t n, std::size_t idx) const {
  const MComb& c = carrier_[n][idx];
  std::string s;
  for (std::uint32_t col = 0; col < c.coeffs.size(); ++col) {
    if (coeff_.is_unit(c.coeffs[col])) continue;
    if (!s.empty()) s += " + ";
    s += coeff_.show(c.coeffs[col]) + "*" + base_.label(n, col);
  }
  return s.empty() ? "0" : s;
}

nlohmann::ordered_json StratCMonoid::comb_to_json(std::size_t n,
                                                  std::size_t idx) const {
  const MComb& c = carrier_[n][idx];
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::uint32_t col = 0; col < c.coeffs.size(); ++col) {
    if (coeff_.is_unit(c.coeffs[col])) continue;
    arr.push_back({base_.label(n, col), coeff_.elem_to_json(c.coeffs[col])});
  }
  return arr;
}

StratCMonoid m_linear(StratSet x, CommMonoid m, std::uint64_t weight_bound) {
  return StratCMonoid(std::move(x), std::move(m), weight_bound, false);
}

StratCMonoid m_linear_reduced(StratSet x, CommMonoid m,
                              std::uint64_t weight_bound) {
  return StratCMonoid(std::move(x), std::move(m), weight_bound, true);
}

// ---------------------------------------------------------------------------
// Symmetric powers

namespace {

void multisets_over(std::uint32_t count, std::size_t n, std::uint32_t from,
                    std::vector<std::uint32_t>& cur,
                    std::vector<std::vector<std::uint32_t>>& out) {
  if (cur.size() == n) {
    out.push_back(cur);
    return;
  }
  for (std::uint32_t v = from; v < count; ++v) {
    cur.push_back(v);
    multisets_over(count, n, v, cur, out);
    cur.pop_back();
  }
}

std::string multiset_label(const StratSet& x, std::size_t n,
                           const std::vector<std::uint32_t>& ms) {
  std::string s = "{";
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (i > 0) s += ',';
    s += x.label(n, ms[i]);
  }
  return s + "}";
}

} // namespace

StratSet sp_power(const StratSet& x, std::size_t n) {
  if (!x.basepoint())
    throw NoBasepointError("sp_power(): the model needs a basepoint");
  const std::size_t dim = x.dim();
  SimplicialData d;
  d.dim = dim;
  std::vector<std::vector<std::vector<std::uint32_t>>> sets(dim + 1);
  std::vector<std::map<std::vector<std::uint32_t>, std::uint32_t>> index(dim +
                                                                         1);
  d.labels.resize(dim + 1);
  for (std::size_t m = 0; m <= dim; ++m) {
    std::vector<std::uint32_t> cur;
    multisets_over(static_cast<std::uint32_t>(x.count(m)), n, 0, cur, sets[m]);
    for (std::uint32_t i = 0; i < sets[m].size(); ++i) {
      index[m][sets[m][i]] = i;
      d.labels[m].push_back(multiset_label(x, m, sets[m][i]));
    }
  }
  auto mapped = [&](std::size_t m_from, const std::vector<std::uint32_t>& ms,
                    auto&& f) {
    std::vector<std::uint32_t> out;
    out.reserve(ms.size());
    for (std::uint32_t v : ms) out.push_back(f(v));
    std::sort(out.begin(), out.end());
    (void)m_from;
    return out;
  };
  d.faces.resize(dim + 1);
  for (std::size_t m = 1; m <= dim; ++m) {
    d.faces[m].assign(m + 1, std::vector<std::uint32_t>(sets[m].size()));
    for (std::size_t i = 0; i <= m; ++i)
      for (std::uint32_t s = 0; s < sets[m].size(); ++s)
        d.faces[m][i][s] = index[m - 1][mapped(
            m, sets[m][s], [&](std::uint32_t v) { return x.face(m, i, v); })];
  }
  d.degens.resize(dim);
  for (std::size_t m = 0; m + 1 <= dim; ++m) {
    d.degens[m].assign(m + 1, std::vector<std::uint32_t>(sets[m].size()));
    for (std::size_t i = 0; i <= m; ++i)
      for (std::uint32_t s = 0; s < sets[m].size(); ++s)
        d.degens[m][i][s] = index[m + 1][mapped(
            m, sets[m][s], [&](std::uint32_t v) { return x.degen(m, i, v); })];
  }
  std::vector<std::vector<bool>> thin(dim + 1);
  thin[0].assign(d.count(0), false);
  for (std::size_t m = 1; m <= dim; ++m) {
    thin[m].assign(d.count(m), false);
    for (std::uint32_t s = 0; s < sets[m].size(); ++s)
      thin[m][s] = std::all_of(sets[m][s].begin(), sets[m][s].end(),
                               [&](std::uint32_t v) { return x.thin(m, v); });
  }
  std::vector<std::uint32_t> base_ms(n, *x.basepoint());
  const std::uint32_t bp = index[0][base_ms];
  return StratSet(std::move(d), std::move(thin), bp);
}

SpTower sp_tower(const StratSet& x, std::size_t n_max) {
  SpTower tower;
  tower.stages.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n)
    tower.stages.push_back(sp_power(x, n));
  tower.transitions.resize(n_max);
  for (std::size_t n = 0; n < n_max; ++n) {
    tower.transitions[n].resize(x.dim() + 1);
    for (std::size_t m = 0; m <= x.dim(); ++m) {
      // The member tuples are regenerated in the same canonical order the
      // stages used.
      std::vector<std::vector<std::uint32_t>> cur_sets, nxt_sets;
      std::vector<std::uint32_t> tmp;
      multisets_over(static_cast<std::uint32_t>(x.count(m)), n, 0, tmp,
                     cur_sets);
      tmp.clear();
      multisets_over(static_cast<std::uint32_t>(x.count(m)), n + 1, 0, tmp,
                     nxt_sets);
      std::map<std::vector<std::uint32_t>, std::uint32_t> nxt_index;
      for (std::uint32_t i = 0; i < nxt_sets.size(); ++i)
        nxt_index[nxt_sets[i]] = i;
      const std::uint32_t pad = x.basepoint_pad(m);
      tower.transitions[n][m].resize(cur_sets.size());
      for (std::uint32_t s = 0; s < cur_sets.size(); ++s) {
        std::vector<std::uint32_t> ms = cur_sets[s];
        ms.push_back(pad);
        std::sort(ms.begin(), ms.end());
        tower.transitions[n][m][s] = nxt_index[ms];
      }
    }
  }
  return tower;
}

nlohmann::ordered_json DoldThomReport::to_json() const {
  nlohmann::ordered_json j;
  j["degree"] = degree;
  j["stage"] = stage;
  j["colimit_size"] = colimit_size;
  j["linear_size"] = linear_size;
  j["bijective"] = bijective;
  j["faces_match"] = faces_match;
  j["degens_match"] = degens_match;
  j["thin_match"] = thin_match;
  j["transitions_injective"] = transitions_injective;
  j["pass"] = pass();
  if (error) j["error"] = *error;
  return j;
}

namespace {

// Canonical colimit representative: the multiset with every copy of the
// degenerate basepoint removed.
std::vector<std::uint32_t> strip_pad(std::vector<std::uint32_t> ms,
                                     std::uint32_t pad) {
  ms.erase(std::remove(ms.begin(), ms.end(), pad), ms.end());
  return ms;
}

std::vector<std::uint32_t> multiplicities(const std::vector<std::uint32_t>& ms,
                                          std::size_t columns) {
  std::vector<std::uint32_t> mult(columns, 0);
  for (std::uint32_t v : ms) ++mult[v];
  return mult;
}

} // namespace

DoldThomReport dold_thom_check(const StratSet& x, std::size_t m,
                               std::size_t n_stage) {
  DoldThomReport rep;
  rep.degree = m;
  rep.stage = n_stage;
  try {
    if (!x.basepoint())
      throw NoBasepointError("dold_thom_check(): the model needs a basepoint");
    if (m > x.dim())
      throw Error("dold_thom_check(): degree exceeds the model dimension");

    const SpTower tower = sp_tower(x, n_stage);
    rep.transitions_injective = true;
    for (std::size_t n = 0; n < n_stage; ++n)
      for (std::size_t q = 0; q <= x.dim(); ++q) {
        std::vector<std::uint32_t> t = tower.transitions[n][q];
        std::sort(t.begin(), t.end());
        if (std::adjacent_find(t.begin(), t.end()) != t.end())
          rep.transitions_injective = false;
      }

    const StratCMonoid linear =
        m_linear_reduced(x, CommMonoid::naturals(), n_stage);

    // Enumerate the stage-N colimit representatives per degree.
    auto reps_at = [&](std::size_t q) {
      std::set<std::vector<std::uint32_t>> reps;
      std::vector<std::vector<std::uint32_t>> sets;
      std::vector<std::uint32_t> tmp;
      multisets_over(static_cast<std::uint32_t>(x.count(q)), n_stage, 0, tmp,
                     sets);
      const std::uint32_t pad = x.basepoint_pad(q);
      for (const auto& ms : sets) reps.insert(strip_pad(ms, pad));
      return reps;
    };

    const auto reps = reps_at(m);
    rep.colimit_size = reps.size();
    rep.linear_size = linear.count(m);

    // The comparison map sends a representative to its multiplicity
    // combination.
    std::set<std::size_t> image;
    bool injective = true;
    for (const auto& r : reps) {
      const std::size_t idx =
          linear.from_multiplicities(m, multiplicities(r, x.count(m)));
      if (!image.insert(idx).second) injective = false;
    }
    rep.bijective =
        injective && image.size() == linear.count(m) && reps.size() == image.size();

    // Faces commute with the comparison.
    rep.faces_match = true;
    if (m >= 1) {
      for (const auto& r : reps) {
        const std::size_t idx =
            linear.from_multiplicities(m, multiplicities(r, x.count(m)));
        for (std::size_t i = 0; i <= m; ++i) {
          std::vector<std::uint32_t> fm;
          fm.reserve(r.size());
          for (std::uint32_t v : r) fm.push_back(x.face(m, i, v));
          std::sort(fm.begin(), fm.end());
          fm = strip_pad(fm, x.basepoint_pad(m - 1));
          const std::size_t lhs = linear.from_multiplicities(
              m - 1, multiplicities(fm, x.count(m - 1)));
          if (lhs != linear.face(m, i, idx)) rep.faces_match = false;
        }
      }
    }

    rep.degens_match = true;
    if (m + 1 <= x.dim()) {
      for (const auto& r : reps) {
        const std::size_t idx =
            linear.from_multiplicities(m, multiplicities(r, x.count(m)));
        for (std::size_t i = 0; i <= m; ++i) {
          std::vector<std::uint32_t> sm;
          sm.reserve(r.size());
          for (std::uint32_t v : r) sm.push_back(x.degen(m, i, v));
          std::sort(sm.begin(), sm.end());
          sm = strip_pad(sm, x.basepoint_pad(m + 1));
          const std::size_t lhs = linear.from_multiplicities(
              m + 1, multiplicities(sm, x.count(m + 1)));
          if (lhs != linear.degen(m, i, idx)) rep.degens_match = false;
        }
      }
    }

    rep.thin_match = true;
    if (m >= 1) {
      for (const auto& r : reps) {
        const bool all_thin = std::all_of(
            r.begin(), r.end(), [&](std::uint32_t v) { return x.thin(m, v); });
        const std::size_t idx =
            linear.from_multiplicities(m, multiplicities(r, x.count(m)));
        if (all_thin != linear.thin(m, idx)) rep.thin_match = false;
      }
    }
  } catch (const Error& e) {
    rep.error = e.what();
  }
  return rep;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::ordered_json StratSet::to_json() const {
  nlohmann::ordered_json j;
  j["dim"] = dim();
  nlohmann::ordered_json simp;
  for (std::size_t n = 0; n <= dim(); ++n)
    simp[std::to_string(n)] = data_.labels[n];
  j["simplices"] = std::move(simp);
  nlohmann::ordered_json faces;
  for (std::size_t n = 1; n <= dim(); ++n)
    for (std::size_t i = 0; i <= n; ++i) {
      nlohmann::ordered_json f;
      for (std::uint32_t x = 0; x < count(n); ++x)
        f[label(n, x)] = label(n - 1, face(n, i, x));
      faces[std::to_string(n) + "," + std::to_string(i)] = std::move(f);
    }
  j["faces"] = std::move(faces);
  nlohmann::ordered_json degens;
  for (std::size_t n = 0; n + 1 <= dim(); ++n)
    for (std::size_t i = 0; i <= n; ++i) {
      nlohmann::ordered_json s;
      for (std::uint32_t x = 0; x < count(n); ++x)
        s[label(n, x)] = label(n + 1, degen(n, i, x));
      degens[std::to_string(n) + "," + std::to_string(i)] = std::move(s);
    }
  j["degens"] = std::move(degens);
  nlohmann::ordered_json thin;
  for (std::size_t n = 1; n <= dim(); ++n) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::uint32_t x = 0; x < count(n); ++x)
      if (thin_[n][x]) arr.push_back(label(n, x));
    thin[std::to_string(n)] = std::move(arr);
  }
  j["thin"] = std::move(thin);
  if (basepoint_) j["basepoint"] = label(0, *basepoint_);
  return j;
}

StratSet StratSet::from_json(const nlohmann::json& j) {
  SimplicialData d;
  d.dim = j.at("dim").get<std::size_t>();
  d.labels.resize(d.dim + 1);
  std::vector<std::map<std::string, std::uint32_t>> index(d.dim + 1);
  for (std::size_t n = 0; n <= d.dim; ++n) {
    const auto key = std::to_string(n);
    if (!j.at("simplices").contains(key))
      throw ParseError("strat set: missing simplices in degree " + key);
    for (const auto& l : j.at("simplices").at(key)) {
      const std::string s = l.get<std::string>();
      if (index[n].count(s))
        throw ParseError("strat set: duplicate simplex id " + s);
      index[n][s] = static_cast<std::uint32_t>(d.labels[n].size());
      d.labels[n].push_back(s);
    }
  }
  auto read_map = [&](const nlohmann::json& m, std::size_t n_from,
                      std::size_t n_to) {
    std::vector<std::uint32_t> table(d.count(n_from));
    if (m.size() != d.count(n_from))
      throw ParseError("strat set: structure map not total");
    for (const auto& [from, to] : m.items()) {
      if (!index[n_from].count(from) ||
          !index[n_to].count(to.get<std::string>()))
        throw ParseError("strat set: structure map references unknown id");
      table[index[n_from][from]] = index[n_to][to.get<std::string>()];
    }
    return table;
  };
  d.faces.resize(d.dim + 1);
  for (std::size_t n = 1; n <= d.dim; ++n) {
    d.faces[n].resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      const auto key = std::to_string(n) + "," + std::to_string(i);
      d.faces[n][i] = read_map(j.at("faces").at(key), n, n - 1);
    }
  }
  d.degens.resize(d.dim);
  for (std::size_t n = 0; n + 1 <= d.dim; ++n) {
    d.degens[n].resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      const auto key = std::to_string(n) + "," + std::to_string(i);
      d.degens[n][i] = read_map(j.at("degens").at(key), n, n + 1);
    }
  }
  std::vector<std::vector<bool>> thin(d.dim + 1);
  thin[0].assign(d.count(0), false);
  for (std::size_t n = 1; n <= d.dim; ++n) {
    thin[n].assign(d.count(n), false);
    const auto key = std::to_string(n);
    if (j.at("thin").contains(key))
      for (const auto& l : j.at("thin").at(key)) {
        const std::string s = l.get<std::string>();
        if (!index[n].count(s))
          throw ParseError("strat set: thin references unknown id " + s);
        thin[n][index[n][s]] = true;
      }
  }
  std::optional<std::uint32_t> basepoint;
  if (j.contains("basepoint")) {
    const std::string s = j.at("basepoint").get<std::string>();
    if (!index[0].count(s))
      throw ParseError("strat set: basepoint references unknown id " + s);
    basepoint = index[0][s];
  }
  return StratSet(std::move(d), std::move(thin), basepoint);
}

// ---------------------------------------------------------------------------
// Bundled corpus

namespace corpus {

StratSet point(std::size_t dim) {
  return flat(standard_simplex(0, dim), 0u);
}

namespace {

// Degeneracy closure of a set of vertices, as per-degree flags.
std::vector<std::vector<bool>> vertex_closure(
    const StratSet& x, const std::vector<std::uint32_t>& vertices) {
  std::vector<std::vector<bool>> a(x.dim() + 1);
  for (std::size_t n = 0; n <= x.dim(); ++n) a[n].assign(x.count(n), false);
  for (std::uint32_t v : vertices) a[0][v] = true;
  for (std::size_t n = 0; n + 1 <= x.dim(); ++n)
    for (std::uint32_t v = 0; v < x.count(n); ++v)
      if (a[n][v])
        for (std::size_t i = 0; i <= n; ++i) a[n + 1][x.degen(n, i, v)] = true;
  return a;
}

} // namespace

StratSet circle(std::size_t dim) {
  StratSet interval = flat(standard_simplex(1, dim));
  return collapse(interval, vertex_closure(interval, {0, 1}));
}

StratSet wedge_of_circles(std::size_t g, std::size_t dim) {
  if (g < 1) throw Error("wedge_of_circles(): at least one circle");
  SimplicialData d = standard_simplex(1, dim);
  for (std::size_t i = 1; i < g; ++i)
    d = disjoint_union(d, standard_simplex(1, dim));
  StratSet x = flat(std::move(d));
  std::vector<std::uint32_t> vertices;
  for (std::uint32_t v = 0; v < x.count(0); ++v) vertices.push_back(v);
  return collapse(x, vertex_closure(x, vertices));
}

StratSet nerve_walking_arrow(std::size_t dim) {
  return street_nerve1(FinCategory::walking_arrow(), dim, 0u);
}

StratSet nerve_bz2(std::size_t dim) {
  return street_nerve1(FinCategory::delooping(CommMonoid::z2()), dim, 0u);
}

std::optional<StratSet> by_name(const std::string& name, std::size_t dim) {
  if (name == "point") return point(dim);
  if (name == "s1" || name == "circle") return circle(dim);
  if (name == "figure8") return wedge_of_circles(2, dim);
  if (name.rfind("wedge:", 0) == 0)
    return wedge_of_circles(std::stoul(name.substr(6)), dim);
  if (name == "nerve-arrow") return nerve_walking_arrow(dim);
  if (name == "nerve-bz2") return nerve_bz2(dim);
  return std::nullopt;
}

} // namespace corpus

} // namespace dihom
