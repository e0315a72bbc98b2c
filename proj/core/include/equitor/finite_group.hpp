#pragma once

// Finite groups given by multiplication tables, realised either from an
// explicit table or as the closure of generators under a product.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "equitor/error.hpp"
#include "equitor/exact_linear.hpp"

namespace equitor {

using Element = std::size_t;

class FiniteGroup {
 public:
  // table[a][b] is the index of a*b; index 0 must be the identity.
  FiniteGroup(std::vector<std::vector<Element>> table, std::vector<Element> generators,
              std::vector<std::string> generator_names = {});

  // Breadth-first closure from the identity; element i+1 is discovered by
  // right-multiplying an earlier element by a generator. Labels are the
  // corresponding shortest words. Throws BudgetError past max_order.
  template <class T, class Mul, class Key>
  static FiniteGroup closure(const T& identity, const std::vector<T>& generators,
                             const std::vector<std::string>& names, Mul mul, Key key,
                             std::size_t max_order, std::vector<T>* elements_out);

  std::size_t order() const { return n_; }
  Element identity() const { return 0; }
  Element mul(Element a, Element b) const { return table_[a * n_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  Element power(Element a, long k) const;
  std::size_t element_order(Element a) const;
  bool is_abelian() const;

  const std::vector<Element>& generators() const { return generators_; }
  const std::vector<std::string>& generator_names() const { return generator_names_; }
  const std::string& label(Element a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  // Accepts "1", "e", generator names, concatenations (single-letter names),
  // '*' separated products and ^k exponents, e.g. "x^2*y" or "xxy".
  Element element_from_word(std::string_view word) const;
  std::vector<std::vector<Element>> table() const;

 private:
  std::size_t n_;
  std::vector<std::uint32_t> table_;
  std::vector<Element> inverse_;
  std::vector<Element> generators_;
  std::vector<std::string> generator_names_;
  std::vector<std::string> labels_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Sorted list of elements of a subgroup.
struct Subgroup {
  std::vector<Element> elements;
  bool contains(Element e) const;
  std::size_t order() const { return elements.size(); }
  bool operator==(const Subgroup& other) const = default;
  bool operator<(const Subgroup& other) const;
};

Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<Element>& generators);
bool is_abelian(const FiniteGroup& g, const Subgroup& h);
// Smallest generating set found greedily in element order.
std::vector<Element> greedy_generators(const FiniteGroup& g, const Subgroup& h);

enum class SubgroupFilter { All, Abelian, Cyclic };

// Subgroups sorted by order, then lexicographically by element list.
std::vector<Subgroup> subgroups(const FiniteGroup& g, SubgroupFilter filter = SubgroupFilter::All,
                                std::size_t max_order = 64);

// A subgroup as a group in its own right with the inclusion into the parent.
struct SubgroupEmbedding {
  GroupPtr group;
  std::vector<Element> inclusion;
};
SubgroupEmbedding subgroup_as_group(const FiniteGroup& g, const Subgroup& h);

// Central extension 1 -> Z/ell -> E -> G -> 1 of a normalised 2-cocycle
// c(g,h) in (1/ell)Z/Z given as numerators mod ell. Element (z, g) has index g*ell + z.
struct CentralExtension {
  GroupPtr total;
  std::vector<Element> projection;
  std::size_t ell;
};
CentralExtension central_cyclic_extension(const FiniteGroup& g,
                                          const std::vector<std::vector<Int>>& cocycle,
                                          const Int& ell, std::size_t max_order = 64);

// Backtracking search on generator images; practical for orders up to ~64.
std::optional<std::vector<Element>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b);

// --------------------------------------------------------------- AffineMap

// Automorphism of the torus written as the pair (A, lambda): A is the pullback
// matrix on the character lattice (columns are images of basis characters),
// lambda in (Q/Z)^d the constant prefactors, so a character m pulls back to
// exp(2 pi i <lambda, m>) times the character A m. Composition of pullbacks:
// (A1, l1)(A2, l2) = (A1 A2, l2 + A2^T l1).
struct AffineMap {
  IntMatrix matrix;
  QmodZVector lambda;

  static AffineMap identity(std::size_t d);
  AffineMap operator*(const AffineMap& other) const;
  std::string key() const;
  bool operator==(const AffineMap& other) const = default;
};

// Group realised by affine pairs; assignment[g] is the pair of element g.
struct AffineGroup {
  GroupPtr group;
  std::vector<AffineMap> assignment;
};

AffineGroup affine_group_closure(const std::vector<AffineMap>& generators,
                                 const std::vector<std::string>& names, std::size_t max_order = 64);

// Checks the assignment is a homomorphism for the table; throws ValidationError otherwise.
void validate_affine_assignment(const FiniteGroup& g, const std::vector<AffineMap>& assignment);

// ------------------------------------------------------------ template body

template <class T, class Mul, class Key>
FiniteGroup FiniteGroup::closure(const T& identity, const std::vector<T>& generators,
                                 const std::vector<std::string>& names, Mul mul, Key key,
                                 std::size_t max_order, std::vector<T>* elements_out) {
  std::vector<T> elements{identity};
  std::vector<std::string> labels{""};
  std::map<std::string, Element> index{{key(identity), 0}};
  bool single = true;
  for (const auto& n : names) single = single && n.size() == 1;
  for (std::size_t cur = 0; cur < elements.size(); ++cur)
    for (std::size_t s = 0; s < generators.size(); ++s) {
      T next = mul(elements[cur], generators[s]);
      auto k = key(next);
      if (index.count(k)) continue;
      if (elements.size() >= max_order)
        throw BudgetError("group closure exceeds order bound " + std::to_string(max_order));
      index.emplace(std::move(k), elements.size());
      labels.push_back(labels[cur].empty() || single ? labels[cur] + names[s]
                                                     : labels[cur] + "*" + names[s]);
      elements.push_back(std::move(next));
    }
  const std::size_t n = elements.size();
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto it = index.find(key(mul(elements[a], elements[b])));
      if (it == index.end()) throw ValidationError("group closure", "product left the closure");
      table[a][b] = it->second;
    }
  std::vector<Element> gens;
  for (const auto& g : generators) gens.push_back(index.at(key(g)));
  FiniteGroup group(std::move(table), std::move(gens), names);
  for (std::size_t i = 0; i < n; ++i) group.labels_[i] = labels[i].empty() ? "1" : labels[i];
  if (elements_out) *elements_out = std::move(elements);
  return group;
}

}  // namespace equitor
