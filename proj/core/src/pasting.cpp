#include "dihom/pasting.hpp"

#include <algorithm>
#include <utility>

#include "dihom/errors.hpp"

namespace dihom {

PastingTree::PastingTree(std::vector<PastingTree> children)
    : children_(std::move(children)) {
  for (const PastingTree& c : children_) {
    height_ = std::max(height_, c.height_ + 1);
    edge_count_ += c.edge_count_ + 1;
  }
}

bool PastingTree::operator==(const PastingTree& other) const {
  if (edge_count_ != other.edge_count_ || height_ != other.height_)
    return false;
  return children_ == other.children_;
}

std::string PastingTree::to_text() const {
  std::string out = "[";
  for (std::size_t i = 0; i < children_.size(); ++i) {
    if (i > 0) out += ',';
    out += children_[i].to_text();
  }
  out += ']';
  return out;
}

nlohmann::json PastingTree::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const PastingTree& c : children_) arr.push_back(c.to_json());
  return arr;
}

PastingTree PastingTree::from_json(const nlohmann::json& j) {
  if (!j.is_array())
    throw ParseError("pasting tree: expected a nested array, got " + j.dump());
  std::vector<PastingTree> children;
  children.reserve(j.size());
  for (const auto& c : j) children.push_back(from_json(c));
  return PastingTree(std::move(children));
}

PastingTree PastingTree::parse(std::string_view text) {
  // The bracket form is valid JSON, so one parser serves both interfaces.
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw ParseError("pasting tree: malformed input '" + std::string(text) +
                     "'");
  return from_json(j);
}

PastingTree tree_disk(std::size_t n) {
  PastingTree t;
  for (std::size_t i = 0; i < n; ++i)
    t = PastingTree({std::move(t)});
  return t;
}

PastingTree tree_chain(std::size_t n) {
  std::vector<PastingTree> leaves(n);
  return PastingTree(std::move(leaves));
}

std::size_t dimension(const PastingTree& t) { return t.height(); }

bool catalog_less(const PastingTree& a, const PastingTree& b) {
  if (a.edge_count() != b.edge_count())
    return a.edge_count() < b.edge_count();
  return std::lexicographical_compare(
      a.children().begin(), a.children().end(), b.children().begin(),
      b.children().end(), catalog_less);
}

namespace {

// All trees with exactly `edges` edges and height <= max_dim.
void trees_with_edges(std::size_t edges, std::size_t max_dim,
                      std::vector<PastingTree>& out) {
  if (edges == 0) {
    out.push_back(PastingTree{});
    return;
  }
  if (max_dim == 0) return;
  // Split off the first child (c edges below it, costing c + 1) and build
  // the remaining children as a smaller root.
  for (std::size_t c = 0; c + 1 <= edges; ++c) {
    std::vector<PastingTree> firsts;
    trees_with_edges(c, max_dim - 1, firsts);
    std::vector<PastingTree> rests;
    trees_with_edges(edges - c - 1, max_dim, rests);
    for (const PastingTree& f : firsts) {
      for (const PastingTree& r : rests) {
        std::vector<PastingTree> kids;
        kids.reserve(r.children().size() + 1);
        kids.push_back(f);
        kids.insert(kids.end(), r.children().begin(), r.children().end());
        out.push_back(PastingTree(std::move(kids)));
      }
    }
  }
}

} // namespace

std::vector<PastingTree> enumerate_trees(std::size_t max_dim,
                                         std::size_t max_edges) {
  std::vector<PastingTree> out;
  for (std::size_t e = 0; e <= max_edges; ++e)
    trees_with_edges(e, max_dim, out);
  std::sort(out.begin(), out.end(), catalog_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace dihom
