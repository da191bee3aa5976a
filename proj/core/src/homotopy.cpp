#include "dihom/homotopy.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>

#include "dihom/errors.hpp"

namespace dihom {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  std::size_t add() {
    parent.push_back(parent.size());
    return parent.size() - 1;
  }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

} // namespace

std::vector<std::size_t> weak_classes(const OmegaCat& c) {
  if (!c.has_finite_objects())
    throw InfiniteError("weak_classes(): object set not finitely enumerable");
  const std::size_t n = c.object_count();
  UnionFind uf;
  for (std::size_t i = 0; i < n; ++i) uf.add();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      if (c.mor(a, b)->has_objects()) uf.unite(a, b);
    }
  std::vector<std::size_t> out(n);
  std::map<std::size_t, std::size_t> renumber;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = uf.find(i);
    auto [it, fresh] = renumber.emplace(root, renumber.size());
    out[i] = it->second;
  }
  return out;
}

Ho1Skeleton skeleton_of(const StratSet& x) {
  Ho1Skeleton sk;
  sk.n_objects = x.count(0);
  for (std::uint32_t v = 0; v < x.count(0); ++v)
    sk.object_labels.push_back(x.label(0, v));
  if (x.dim() >= 1)
    for (std::uint32_t e = 0; e < x.count(1); ++e)
      sk.arrows.push_back({x.face(1, 1, e), x.face(1, 0, e), x.thin(1, e), 1,
                           x.label(1, e)});
  if (x.dim() >= 2)
    for (std::uint32_t t = 0; t < x.count(2); ++t)
      sk.triangles.push_back(
          {x.face(2, 2, t), x.face(2, 0, t), x.face(2, 1, t)});
  return sk;
}

Ho1Skeleton skeleton_of(const StratCMonoid& x) {
  Ho1Skeleton sk;
  sk.n_objects = x.count(0);
  for (std::size_t v = 0; v < x.count(0); ++v)
    sk.object_labels.push_back(x.show(0, v));
  if (x.dim() >= 1)
    for (std::size_t e = 0; e < x.count(1); ++e)
      sk.arrows.push_back({x.face(1, 1, e), x.face(1, 0, e), x.thin(1, e),
                           x.weight(1, e), x.show(1, e)});
  if (x.dim() >= 2)
    for (std::size_t t = 0; t < x.count(2); ++t)
      sk.triangles.push_back(
          {x.face(2, 2, t), x.face(2, 0, t), x.face(2, 1, t)});
  return sk;
}

namespace {

using Word = std::pair<std::size_t, std::vector<std::size_t>>; // (src, arrows)

class Closure {
public:
  Closure(const Ho1Skeleton& sk, std::size_t bound)
      : sk_(sk), bound_(bound) {
    for (const auto& t : sk_.triangles) {
      // Relation sides must be parallel; the simplicial identities of the
      // source guarantee it.
      const auto& a = sk_.arrows;
      if (a[t.e02].src != a[t.e01].src || a[t.e02].tgt != a[t.e12].tgt ||
          a[t.e01].tgt != a[t.e12].src)
        throw Error("ho1(): triangle faces are not composable");
    }
  }

  std::size_t ensure(const Word& w) {
    auto it = ids_.find(w);
    if (it != ids_.end()) return it->second;
    const std::size_t id = uf_.add();
    ids_.emplace(w, id);
    words_.push_back(w);
    queue_.push_back(id);
    return id;
  }

  void run() {
    while (!queue_.empty()) {
      const std::size_t id = queue_.front();
      queue_.pop_front();
      expand(words_[id], id);
    }
  }

  bool truncated() const { return truncated_; }
  const std::vector<Word>& words() const { return words_; }
  const std::map<Word, std::size_t>& ids() const { return ids_; }
  std::size_t root(std::size_t id) { return uf_.find(id); }

private:
  std::size_t object_at(const Word& w, std::size_t pos) const {
    if (pos == 0) return w.first;
    return sk_.arrows[w.second[pos - 1]].tgt;
  }

  void link(const Word& w, std::size_t id) {
    if (w.second.size() > bound_) {
      truncated_ = true;
      return;
    }
    const std::size_t other = ensure(w);
    uf_.unite(id, other);
  }

  void expand(const Word w, std::size_t id) {
    const std::vector<std::size_t>& a = w.second;
    // Thin loops disappear.
    for (std::size_t p = 0; p < a.size(); ++p) {
      const auto& arr = sk_.arrows[a[p]];
      if (arr.thin && arr.src == arr.tgt) {
        Word v = w;
        v.second.erase(v.second.begin() + static_cast<std::ptrdiff_t>(p));
        link(v, id);
      }
    }
    // Thin loops appear anywhere they are composable.
    for (std::size_t t = 0; t < sk_.arrows.size(); ++t) {
      const auto& arr = sk_.arrows[t];
      if (!arr.thin || arr.src != arr.tgt) continue;
      for (std::size_t p = 0; p <= a.size(); ++p) {
        if (object_at(w, p) != arr.src) continue;
        Word v = w;
        v.second.insert(v.second.begin() + static_cast<std::ptrdiff_t>(p), t);
        link(v, id);
      }
    }
    // Triangle relations, both directions.
    for (const auto& tri : sk_.triangles) {
      for (std::size_t p = 0; p < a.size(); ++p) {
        if (a[p] == tri.e02) {
          Word v = w;
          v.second[p] = tri.e01;
          v.second.insert(v.second.begin() + static_cast<std::ptrdiff_t>(p + 1),
                          tri.e12);
          link(v, id);
        }
        if (p + 1 < a.size() && a[p] == tri.e01 && a[p + 1] == tri.e12) {
          Word v = w;
          v.second[p] = tri.e02;
          v.second.erase(v.second.begin() + static_cast<std::ptrdiff_t>(p + 1));
          link(v, id);
        }
      }
    }
  }

  const Ho1Skeleton& sk_;
  std::size_t bound_;
  std::map<Word, std::size_t> ids_;
  std::vector<Word> words_;
  std::deque<std::size_t> queue_;
  UnionFind uf_;
  bool truncated_ = false;
};

bool word_less(const Word& a, const Word& b) {
  if (a.second.size() != b.second.size())
    return a.second.size() < b.second.size();
  if (a.second != b.second) return a.second < b.second;
  return a.first < b.first;
}

} // namespace

std::optional<std::size_t> Ho1Result::class_of_arrow(std::size_t arrow) const {
  for (const auto& [word, cls] : word_class)
    if (word.second.size() == 1 && word.second[0] == arrow) return cls;
  return std::nullopt;
}

std::optional<std::size_t> Ho1Result::class_of_empty(
    std::size_t object) const {
  const auto it = word_class.find({object, {}});
  if (it == word_class.end()) return std::nullopt;
  return it->second;
}

nlohmann::ordered_json Ho1Result::table_to_json() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json cls = nlohmann::ordered_json::array();
  for (const std::size_t c : endo_classes) cls.push_back(classes[c].label);
  j["classes"] = std::move(cls);
  nlohmann::ordered_json tbl;
  for (std::size_t i = 0; i < endo_classes.size(); ++i)
    for (std::size_t k = 0; k < endo_classes.size(); ++k) {
      const auto key = std::to_string(i) + "," + std::to_string(k);
      const auto entry = table.at({endo_classes[i], endo_classes[k]});
      if (!entry) {
        tbl[key] = nullptr;
        continue;
      }
      const auto pos = std::find(endo_classes.begin(), endo_classes.end(),
                                 *entry);
      if (pos == endo_classes.end())
        tbl[key] = nullptr;
      else
        tbl[key] = pos - endo_classes.begin();
    }
  j["table"] = std::move(tbl);
  j["complete"] = complete;
  return j;
}

Ho1Result ho1(const Ho1Skeleton& sk, std::size_t base,
              const Ho1Options& options) {
  if (base >= sk.n_objects) throw Error("ho1(): base object out of range");
  Closure closure(sk, options.word_bound);
  for (std::size_t o = 0; o < sk.n_objects; ++o) closure.ensure({o, {}});
  for (std::size_t a = 0; a < sk.arrows.size(); ++a)
    closure.ensure({sk.arrows[a].src, {a}});
  closure.run();

  Ho1Result res;
  res.base = base;

  // The endomorphism table may demand words (products of representatives)
  // the seed closure never met; inserting them can merge classes, so
  // iterate to a fixpoint.
  for (;;) {
    closure.run();
    std::map<std::size_t, std::vector<std::size_t>> members;
    for (std::size_t id = 0; id < closure.words().size(); ++id)
      members[closure.root(id)].push_back(id);

    struct Provisional {
      Word rep;
      std::size_t src, tgt;
      std::uint64_t weight;
    };
    std::vector<Provisional> classes;
    std::map<std::size_t, std::size_t> root_to_class;
    for (const auto& [root, ids] : members) {
      Provisional p;
      bool first = true;
      p.weight = UINT64_MAX;
      for (const std::size_t id : ids) {
        const Word& w = closure.words()[id];
        std::uint64_t wt = 0;
        for (const std::size_t a : w.second) wt += sk.arrows[a].weight;
        p.weight = std::min(p.weight, wt);
        if (first || word_less(w, p.rep)) {
          p.rep = w;
          first = false;
        }
      }
      const Word& r = p.rep;
      p.src = r.second.empty() ? r.first : sk.arrows[r.second.front()].src;
      p.tgt = r.second.empty() ? r.first : sk.arrows[r.second.back()].tgt;
      root_to_class[root] = classes.size();
      classes.push_back(std::move(p));
    }

    bool inserted = false;
    for (std::size_t i = 0; i < classes.size() && !inserted; ++i) {
      if (classes[i].src != base || classes[i].tgt != base) continue;
      for (std::size_t k = 0; k < classes.size() && !inserted; ++k) {
        if (classes[k].src != base || classes[k].tgt != base) continue;
        Word w{base, classes[i].rep.second};
        w.second.insert(w.second.end(), classes[k].rep.second.begin(),
                        classes[k].rep.second.end());
        if (w.second.size() > options.word_bound) continue;
        if (!closure.ids().count(w)) {
          closure.ensure(w);
          inserted = true;
        }
      }
    }
    if (inserted) continue;

    // Fixpoint reached: finalize in deterministic order.
    std::vector<std::size_t> order(classes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return word_less(classes[a].rep, classes[b].rep);
    });
    std::vector<std::size_t> class_renamed(classes.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos)
      class_renamed[order[pos]] = pos;

    res.classes.resize(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
      Ho1Result::ClassInfo info;
      info.rep = classes[c].rep.second;
      info.src = classes[c].src;
      info.tgt = classes[c].tgt;
      info.weight = classes[c].weight;
      std::string label;
      if (info.rep.empty()) {
        label = "id@" + sk.object_labels[classes[c].rep.first];
      } else {
        for (std::size_t i = 0; i < info.rep.size(); ++i) {
          if (i > 0) label += " ; ";
          label += sk.arrows[info.rep[i]].label;
        }
      }
      info.label = std::move(label);
      res.classes[class_renamed[c]] = std::move(info);
    }
    for (std::size_t id = 0; id < closure.words().size(); ++id)
      res.word_class[closure.words()[id]] =
          class_renamed[root_to_class[closure.root(id)]];

    for (std::size_t c = 0; c < res.classes.size(); ++c)
      if (res.classes[c].src == base && res.classes[c].tgt == base)
        res.endo_classes.push_back(c);
    std::sort(res.endo_classes.begin(), res.endo_classes.end(),
              [&](std::size_t a, std::size_t b) {
                if (res.classes[a].weight != res.classes[b].weight)
                  return res.classes[a].weight < res.classes[b].weight;
                return a < b;
              });

    for (const std::size_t i : res.endo_classes)
      for (const std::size_t k : res.endo_classes) {
        Word w{base, res.classes[i].rep};
        w.second.insert(w.second.end(), res.classes[k].rep.begin(),
                        res.classes[k].rep.end());
        if (w.second.size() > options.word_bound) {
          res.table[{i, k}] = std::nullopt;
          res.complete = false;
          continue;
        }
        const auto it = res.word_class.find(w);
        if (it == res.word_class.end()) {
          res.table[{i, k}] = std::nullopt;
          res.complete = false;
        } else {
          res.table[{i, k}] = it->second;
        }
      }
    break;
  }

  res.truncated = closure.truncated();
  return res;
}

nlohmann::ordered_json HurewiczReport::to_json() const {
  nlohmann::ordered_json j;
  j["generators"] = generators;
  j["coefficients"] = coefficients;
  j["bound"] = bound;
  j["lhs_size"] = lhs_size;
  j["rhs_size"] = rhs_size;
  j["injective"] = injective;
  j["surjective"] = surjective;
  j["one_cell_words_match"] = one_cell_words_match;
  j["monoid_map"] = monoid_map;
  j["truncated"] = truncated;
  j["pass"] = pass();
  if (error) j["error"] = *error;
  return j;
}

namespace {

MonElem one_of(const CommMonoid& m) {
  if (m.kind() == CommMonoid::Kind::FreeCommutative &&
      m.generator_count() == 1)
    return m.generator(0);
  if (m.kind() == CommMonoid::Kind::Table) {
    if (m.table_size() == 1) return m.unit();
    return MonElem{{1}};
  }
  throw Error("hurewicz_check(): coefficients must be naturals or a table");
}

void coeff_tuples(const CommMonoid& m, const std::vector<MonElem>& cands,
                  std::size_t g, std::uint64_t budget,
                  std::vector<MonElem>& cur,
                  std::vector<std::vector<MonElem>>& out) {
  if (cur.size() == g) {
    out.push_back(cur);
    return;
  }
  for (const MonElem& c : cands) {
    const std::uint64_t mass = m.mass(c);
    if (mass > budget) continue;
    cur.push_back(c);
    coeff_tuples(m, cands, g, budget - mass, cur, out);
    cur.pop_back();
  }
}

} // namespace

HurewiczReport hurewicz_check(std::size_t g, const CommMonoid& coeff,
                              std::uint64_t bound) {
  HurewiczReport rep;
  rep.generators = g;
  rep.coefficients = coeff.describe();
  rep.bound = bound;
  try {
    if (g < 1 || g > 3)
      throw Error("hurewicz_check(): 1 <= g <= 3 at desk scale");
    const StratSet model = corpus::wedge_of_circles(g, 2);
    const StratCMonoid lin = m_linear_reduced(model, coeff, bound);
    const Ho1Skeleton sk = skeleton_of(lin);

    // Columns of degree 1 that carry the circle generators (everything but
    // the collapsed point's degeneracy).
    const std::uint32_t pad1 = model.basepoint_pad(1);
    std::vector<std::uint32_t> gen_cols;
    for (std::uint32_t c = 0; c < model.count(1); ++c)
      if (c != pad1) gen_cols.push_back(c);
    if (gen_cols.size() != g)
      throw Error("hurewicz_check(): unexpected generator count");

    auto arrow_of_tuple = [&](const std::vector<MonElem>& tuple) {
      MComb comb;
      comb.coeffs.assign(model.count(1), coeff.unit());
      for (std::size_t i = 0; i < g; ++i) comb.coeffs[gen_cols[i]] = tuple[i];
      return lin.index_of(1, comb);
    };

    // The independent oracle: tuples in coeff^g of total mass <= bound.
    const std::vector<MonElem> cands = coeff.elements_up_to(bound);
    std::vector<std::vector<MonElem>> tuples;
    std::vector<MonElem> cur;
    coeff_tuples(coeff, cands, g, bound, cur, tuples);
    std::sort(tuples.begin(), tuples.end());
    rep.lhs_size = tuples.size();

    // Letter-count cross-check words: all words over the unit generators.
    Ho1Options opts;
    opts.word_bound = static_cast<std::size_t>(bound);
    const MonElem one = one_of(coeff);
    std::vector<std::size_t> gen_arrows(g);
    for (std::size_t i = 0; i < g; ++i) {
      std::vector<MonElem> t(g, coeff.unit());
      t[i] = one;
      gen_arrows[i] = arrow_of_tuple(t);
    }

    Ho1Result res = ho1(sk, 0, opts);
    rep.truncated = res.truncated;

    auto class_of_word = [&](const std::vector<std::size_t>& arrows)
        -> std::optional<std::size_t> {
      const auto it = res.word_class.find({0, arrows});
      if (it == res.word_class.end()) return std::nullopt;
      return it->second;
    };

    // Injectivity and surjectivity of tuple -> class within the bound.
    std::map<std::size_t, std::vector<MonElem>> image;
    rep.injective = true;
    for (const auto& t : tuples) {
      const auto cls = class_of_word({arrow_of_tuple(t)});
      if (!cls) throw Error("hurewicz_check(): generator word undiscovered");
      if (!image.emplace(*cls, t).second) rep.injective = false;
    }
    rep.surjective = true;
    std::set<std::size_t> within;
    for (const std::size_t c : res.endo_classes)
      if (res.classes[c].weight <= bound) within.insert(c);
    for (const std::size_t c : within)
      if (!image.count(c)) rep.surjective = false;
    rep.rhs_size = within.size();

    // Words of unit generators agree with their letter counts.
    rep.one_cell_words_match = true;
    std::vector<std::size_t> word;
    std::function<void()> walk = [&]() {
      if (!word.empty()) {
        std::vector<MonElem> counts(g, coeff.unit());
        std::vector<std::size_t> arrows;
        for (const std::size_t i : word) {
          arrows.push_back(gen_arrows[i]);
          counts[i] = coeff.mul(counts[i], one);
        }
        const auto lhs = class_of_word(arrows);
        const auto rhs = class_of_word({arrow_of_tuple(counts)});
        if (!lhs || !rhs || *lhs != *rhs) rep.one_cell_words_match = false;
      }
      if (word.size() == static_cast<std::size_t>(bound)) return;
      for (std::size_t i = 0; i < g; ++i) {
        word.push_back(i);
        walk();
        word.pop_back();
      }
    };
    walk();

    // The identification is a map of monoids within the bound.
    rep.monoid_map = true;
    for (const auto& s : tuples)
      for (const auto& t : tuples) {
        std::vector<MonElem> sum(g);
        std::uint64_t mass = 0;
        for (std::size_t i = 0; i < g; ++i) {
          sum[i] = coeff.mul(s[i], t[i]);
          mass += coeff.mass(sum[i]);
        }
        if (mass > bound) continue;
        const auto cs = class_of_word({arrow_of_tuple(s)});
        const auto ct = class_of_word({arrow_of_tuple(t)});
        const auto csum = class_of_word({arrow_of_tuple(sum)});
        const auto entry = res.table.find({*cs, *ct});
        if (entry == res.table.end() || !entry->second ||
            *entry->second != *csum)
          rep.monoid_map = false;
      }
  } catch (const Error& e) {
    rep.error = e.what();
  }
  return rep;
}

nlohmann::ordered_json PiNReport::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["objects"] = n_objects;
  nlohmann::ordered_json h;
  for (const auto& [key, v] : hom_classes)
    h[std::to_string(key.first) + "," + std::to_string(key.second)] = v;
  j["hom_classes"] = std::move(h);
  j["composition"] = composition_source;
  if (composition_available && !endo_table.empty()) {
    j["endo_labels"] = endo_labels;
    j["endo_table"] = endo_table;
  }
  return j;
}

PiNReport pi_n(const OmegaCat& c, std::size_t x, std::size_t n) {
  PiNReport rep;
  rep.n = n;

  // Walk down to the n-fold endomorphism category at x; the identity
  // object of every built-in morphism category has index 0.
  std::vector<CatPtr> owned;
  const OmegaCat* level = &c;
  std::size_t at = x;
  for (std::size_t i = 0; i < n; ++i) {
    owned.push_back(level->mor(at, at));
    level = owned.back().get();
    at = 0;
  }

  std::vector<std::size_t> objects;
  if (n == 0) {
    objects = {x};
  } else {
    if (!level->has_finite_objects())
      throw InfiniteError("pi_n(): level category not finitely enumerable");
    objects.resize(level->object_count());
    std::iota(objects.begin(), objects.end(), 0);
  }
  rep.n_objects = objects.size();

  bool all_small = true;
  for (std::size_t a = 0; a < objects.size(); ++a)
    for (std::size_t b = 0; b < objects.size(); ++b) {
      const CatPtr h = level->mor(objects[a], objects[b]);
      std::size_t k = 0;
      if (h->has_objects()) {
        const std::vector<std::size_t> wc = weak_classes(*h);
        k = wc.empty() ? 0 : 1 + *std::max_element(wc.begin(), wc.end());
      }
      rep.hom_classes[{a, b}] = k;
      if (k > 1) all_small = false;
    }

  // Composition for the endomorphism classes at the identity object.
  const CatPtr endo =
      objects.empty() ? nullptr : level->mor(objects[0], objects[0]);
  std::optional<OmegaCat::DeloopingInfo> info;
  if (endo) info = endo->delooping();
  if (info && info->level == 0 && info->monoid->is_finite()) {
    const CommMonoid& m = *info->monoid;
    const std::vector<MonElem> elems = m.elements_up_to(0);
    std::map<MonElem, std::size_t> idx;
    for (std::size_t i = 0; i < elems.size(); ++i) idx[elems[i]] = i;
    rep.endo_table.assign(elems.size(),
                          std::vector<std::size_t>(elems.size()));
    for (std::size_t i = 0; i < elems.size(); ++i) {
      rep.endo_labels.push_back(m.show(elems[i]));
      for (std::size_t k = 0; k < elems.size(); ++k)
        rep.endo_table[i][k] = idx[m.mul(elems[i], elems[k])];
    }
    rep.composition_available = true;
    rep.composition_source = "metadata";
  } else if (all_small) {
    rep.composition_available = true;
    rep.composition_source = "forced";
    const std::size_t k = objects.empty() ? 0 : rep.hom_classes[{0, 0}];
    rep.endo_table.assign(k, std::vector<std::size_t>(k, 0));
    if (k == 1) rep.endo_labels = {"id"};
  } else {
    rep.composition_available = false;
    rep.composition_source = "unavailable";
  }
  return rep;
}

} // namespace dihom
