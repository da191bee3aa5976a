#ifndef DIHOM_CHECKS_HPP
#define DIHOM_CHECKS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dihom/monoid.hpp"

namespace dihom {

/// One named case of a check: its inputs, outcome and details.  Diagnostic
/// cases document open comparisons and never affect the verdict.
struct CheckCase {
  std::string name;
  bool pass = true;
  bool diagnostic = false;
  nlohmann::ordered_json details;
};

/// Machine-readable report of one verification command.  Byte-identical
/// for identical inputs apart from the wall-time field.
struct CheckReport {
  std::string check;
  nlohmann::ordered_json params;
  std::vector<CheckCase> cases;
  double wall_ms = 0.0;

  bool verdict() const;
  nlohmann::ordered_json to_json() const; // {"schema": 1, ...}
};

struct Bounds {
  std::size_t max_dim = 2;
  std::size_t max_edges = 4;
  std::size_t n_max = 3;
  std::size_t word_bound = 6;
  std::uint64_t weight_bound = 6;
};

CheckReport cmd_hom(const std::string& tree_text,
                    const nlohmann::json& cat_spec);
CheckReport cmd_nerve(const nlohmann::json& cat_spec, std::size_t max_dim,
                      std::size_t max_edges);
CheckReport cmd_check_wedge(std::size_t k, std::size_t n, std::size_t max_dim,
                            std::size_t max_edges);
CheckReport cmd_check_disks(std::size_t k, std::size_t n_max,
                            const Bounds& bounds);
CheckReport cmd_check_dold_thom(const std::string& strat_source, std::size_t m,
                                std::size_t n_stage);
CheckReport cmd_check_sphere(const CommMonoid& coeff, std::size_t n,
                             std::uint64_t bound);
CheckReport cmd_check_hurewicz(std::size_t g, const CommMonoid& coeff,
                               std::uint64_t bound);
CheckReport cmd_sp(const std::string& strat_source, std::size_t n);
CheckReport cmd_nmod(const std::string& strat_source, const CommMonoid& coeff,
                     std::uint64_t bound, bool reduced);
CheckReport cmd_ho1(const std::string& strat_source, const CommMonoid& coeff,
                    std::uint64_t weight_bound, std::size_t word_bound,
                    bool reduced);

} // namespace dihom

#endif
