#include "dihom/json_io.hpp"

#include <fstream>

#include "dihom/errors.hpp"

namespace dihom {

CommMonoid monoid_from_json(const nlohmann::json& j) {
  const std::size_t size = j.at("size").get<std::size_t>();
  const std::uint32_t unit = j.at("unit").get<std::uint32_t>();
  std::vector<std::vector<std::uint32_t>> op;
  for (const auto& row : j.at("op"))
    op.push_back(row.get<std::vector<std::uint32_t>>());
  if (op.size() != size)
    throw ParseError("monoid table: size field does not match table");
  std::vector<std::string> labels;
  if (j.contains("labels"))
    labels = j.at("labels").get<std::vector<std::string>>();
  return CommMonoid::table(std::move(op), unit, std::move(labels));
}

CommMonoid parse_coeff(const std::string& spec) {
  if (spec == "N") return CommMonoid::naturals();
  if (spec == "Z2") return CommMonoid::z2();
  if (spec == "trivial") return CommMonoid::trivial();
  if (spec.rfind("Z", 0) == 0 && spec.size() > 1)
    return CommMonoid::cyclic(
        static_cast<std::uint32_t>(std::stoul(spec.substr(1))));
  if (spec.rfind("freeC:", 0) == 0)
    return CommMonoid::free_commutative(std::stoul(spec.substr(6)));
  if (spec.rfind("freeA:", 0) == 0)
    return CommMonoid::free_associative(std::stoul(spec.substr(6)));
  if (spec.rfind("table:", 0) == 0) {
    std::ifstream in(spec.substr(6));
    if (!in) throw ParseError("coeff: cannot open " + spec.substr(6));
    nlohmann::json j;
    in >> j;
    return monoid_from_json(j);
  }
  throw ParseError("coeff: unknown specification '" + spec + "'");
}

CatPtr cat_from_json(const nlohmann::json& j, std::size_t depth) {
  if (depth > 64) throw ShapeTooDeepError("category JSON nested too deeply");
  if (!j.is_object()) throw ParseError("category: expected a JSON object");

  if (j.contains("builtin")) {
    const std::string name = j.at("builtin").get<std::string>();
    const nlohmann::json params =
        j.contains("params") ? j.at("params") : nlohmann::json::array();
    if (name == "empty") return OmegaCat::empty();
    if (name == "terminal") return OmegaCat::terminal();
    if (name == "globe")
      return OmegaCat::globe(params.at(0).get<std::size_t>());
    if (name == "boundary")
      return OmegaCat::boundary(params.at(0).get<std::size_t>());
    if (name == "suspension")
      return OmegaCat::suspension(cat_from_json(params.at(0), depth + 1));
    if (name == "product") {
      std::vector<CatPtr> factors;
      for (const auto& p : params)
        factors.push_back(cat_from_json(p, depth + 1));
      return OmegaCat::product(std::move(factors));
    }
    if (name == "globe_chain")
      return OmegaCat::globe_chain(params.at(0).get<std::size_t>(),
                                   params.at(1).get<std::size_t>());
    if (name == "delooped_monoid") {
      const auto& coeff = params.at(1);
      CommMonoid m = coeff.is_string() ? parse_coeff(coeff.get<std::string>())
                                       : monoid_from_json(coeff);
      return OmegaCat::delooped_monoid(params.at(0).get<std::size_t>(),
                                       std::move(m));
    }
    if (name == "shape")
      return OmegaCat::from_tree(
          PastingTree::from_json(params.at(0)));
    throw ParseError("category: unknown builtin '" + name + "'");
  }

  if (!j.contains("objects"))
    throw ParseError("category: need 'builtin' or 'objects'");
  std::vector<std::string> objects;
  std::map<std::string, std::size_t> index;
  for (const auto& o : j.at("objects")) {
    const std::string name = o.get<std::string>();
    if (index.count(name))
      throw ParseError("category: duplicate object '" + name + "'");
    index[name] = objects.size();
    objects.push_back(name);
  }
  const std::size_t n = objects.size();
  std::vector<std::vector<CatPtr>> mor(n, std::vector<CatPtr>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      mor[a][b] = a == b ? OmegaCat::terminal() : OmegaCat::empty();
  if (j.contains("mor")) {
    for (const auto& [key, sub] : j.at("mor").items()) {
      const auto comma = key.find(',');
      if (comma == std::string::npos)
        throw ParseError("category: mor key must be 'a,b'");
      const std::string a = key.substr(0, comma), b = key.substr(comma + 1);
      if (!index.count(a) || !index.count(b))
        throw ParseError("category: mor key references unknown object");
      mor[index[a]][index[b]] = cat_from_json(sub, depth + 1);
    }
  }
  std::optional<std::size_t> basepoint;
  if (j.contains("basepoint")) {
    const std::string b = j.at("basepoint").get<std::string>();
    if (!index.count(b))
      throw ParseError("category: basepoint references unknown object");
    basepoint = index[b];
  }
  return OmegaCat::explicit_cat(std::move(objects), std::move(mor), basepoint);
}

StratSet load_strat(const std::string& source, std::size_t dim) {
  if (auto builtin = corpus::by_name(source, dim)) return std::move(*builtin);
  std::ifstream in(source);
  if (!in)
    throw ParseError("strat source: neither a corpus name nor a readable "
                     "file: " +
                     source);
  nlohmann::json j;
  in >> j;
  return StratSet::from_json(j);
}

} // namespace dihom
