#ifndef DIHOM_JSON_IO_HPP
#define DIHOM_JSON_IO_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "dihom/monoid.hpp"
#include "dihom/omegacat.hpp"
#include "dihom/strat.hpp"

namespace dihom {

/// Coefficient specification: N | Z2 | Z<k> | trivial | freeC:<g> |
/// freeA:<g> | table:<file>.
CommMonoid parse_coeff(const std::string& spec);

/// Monoid table file: {"size": n, "unit": u, "op": [[..]], "labels": [..]}.
CommMonoid monoid_from_json(const nlohmann::json& j);

/// Omega-category from JSON: {"builtin": name, "params": [...]} with
/// builtins empty, terminal, suspension, globe, boundary, product,
/// globe_chain, delooped_monoid, shape; or an explicit presentation
/// {"objects": [...], "mor": {"a,b": <cat>}, "basepoint": ...} whose
/// missing diagonal entries default to terminal and off-diagonal entries
/// to empty.
CatPtr cat_from_json(const nlohmann::json& j, std::size_t depth = 0);

/// Stratified set source: a corpus name (point, s1, figure8, wedge:<g>,
/// nerve-arrow, nerve-bz2) or a path to a StratSet JSON file.
StratSet load_strat(const std::string& source, std::size_t dim);

} // namespace dihom

#endif
