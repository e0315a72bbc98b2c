#include "equitor/finite_group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>

namespace equitor {

FiniteGroup::FiniteGroup(std::vector<std::vector<Element>> table, std::vector<Element> generators,
                         std::vector<std::string> generator_names)
    : n_(table.size()) {
  if (n_ == 0) throw InputError("group table is empty");
  table_.resize(n_ * n_);
  for (std::size_t a = 0; a < n_; ++a) {
    if (table[a].size() != n_) throw InputError("group table is not square");
    for (std::size_t b = 0; b < n_; ++b) {
      if (table[a][b] >= n_) throw InputError("group table entry out of range");
      table_[a * n_ + b] = static_cast<std::uint32_t>(table[a][b]);
    }
  }
  for (std::size_t a = 0; a < n_; ++a)
    if (mul(0, a) != a || mul(a, 0) != a)
      throw ValidationError("group table", "element 0 is not the identity");
  inverse_.assign(n_, n_);
  for (std::size_t a = 0; a < n_; ++a) {
    std::vector<bool> seen_row(n_), seen_col(n_);
    for (std::size_t b = 0; b < n_; ++b) {
      if (seen_row[mul(a, b)] || seen_col[mul(b, a)])
        throw ValidationError("group table", "table is not a Latin square");
      seen_row[mul(a, b)] = true;
      seen_col[mul(b, a)] = true;
      if (mul(a, b) == 0) inverse_[a] = b;
    }
  }
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b)
      for (std::size_t c = 0; c < n_; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw ValidationError("group table", "multiplication is not associative");
  for (Element g : generators)
    if (g >= n_) throw InputError("generator index out of range");
  generators_ = std::move(generators);
  if (generators_.empty() && n_ > 1) {
    Subgroup all;
    for (std::size_t i = 0; i < n_; ++i) all.elements.push_back(i);
    generators_ = greedy_generators(*this, all);
  }
  if (generator_names.empty())
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      std::string name;
      if (generators_.size() <= 26) name = std::string(1, static_cast<char>('a' + i));
      else name = "g" + std::to_string(i);
      generator_names.push_back(name);
    }
  if (generator_names.size() != generators_.size())
    throw InputError("generator names do not match generators");
  generator_names_ = std::move(generator_names);

  bool single = true;
  for (const auto& nm : generator_names_) single = single && nm.size() == 1;
  labels_.assign(n_, "");
  std::vector<bool> seen(n_);
  seen[0] = true;
  std::vector<Element> order{0};
  for (std::size_t cur = 0; cur < order.size(); ++cur)
    for (std::size_t s = 0; s < generators_.size(); ++s) {
      Element next = mul(order[cur], generators_[s]);
      if (seen[next]) continue;
      seen[next] = true;
      const std::string& base = labels_[order[cur]];
      labels_[next] = base.empty() || single ? base + generator_names_[s]
                                             : base + "*" + generator_names_[s];
      order.push_back(next);
    }
  if (order.size() != n_) throw ValidationError("group table", "generators do not generate the group");
  labels_[0] = "1";
}

Element FiniteGroup::power(Element a, long k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  Element r = 0;
  for (long i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

std::size_t FiniteGroup::element_order(Element a) const {
  std::size_t k = 1;
  for (Element x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<std::vector<Element>> FiniteGroup::table() const {
  std::vector<std::vector<Element>> t(n_, std::vector<Element>(n_));
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) t[a][b] = mul(a, b);
  return t;
}

Element FiniteGroup::element_from_word(std::string_view word) const {
  std::string w;
  for (char c : word)
    if (!std::isspace(static_cast<unsigned char>(c))) w.push_back(c);
  if (w.empty() || w == "1" || w == "e") return 0;
  auto name_index = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < generator_names_.size(); ++i)
      if (generator_names_[i] == name) return i;
    throw InputError("unknown generator '" + name + "' in word '" + std::string(word) + "'");
  };
  auto parse_exponent = [&](const std::string& s, std::size_t& pos) -> long {
    if (pos >= s.size() || s[pos] != '^') return 1;
    ++pos;
    std::size_t start = pos;
    if (pos < s.size() && s[pos] == '-') ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw InputError("bad exponent in word '" + s + "'");
    return std::stol(s.substr(start, pos - start));
  };
  Element result = 0;
  bool single = true;
  for (const auto& n : generator_names_) single = single && n.size() == 1;
  if (w.find('*') != std::string::npos || !single) {
    std::stringstream ss(w);
    std::string tok;
    while (std::getline(ss, tok, '*')) {
      if (tok == "1" || tok == "e") continue;
      auto caret = tok.find('^');
      std::size_t pos = caret == std::string::npos ? tok.size() : caret;
      Element base = generators_[name_index(tok.substr(0, pos))];
      long k = parse_exponent(tok, pos);
      if (pos != tok.size()) throw InputError("bad token '" + tok + "'");
      result = mul(result, power(base, k));
    }
    return result;
  }
  std::size_t pos = 0;
  while (pos < w.size()) {
    Element base = generators_[name_index(std::string(1, w[pos]))];
    ++pos;
    result = mul(result, power(base, parse_exponent(w, pos)));
  }
  return result;
}

// ---------------------------------------------------------------- subgroups

bool Subgroup::contains(Element e) const {
  return std::binary_search(elements.begin(), elements.end(), e);
}

bool Subgroup::operator<(const Subgroup& other) const {
  if (elements.size() != other.elements.size()) return elements.size() < other.elements.size();
  return elements < other.elements;
}

Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<Element>& generators) {
  std::vector<bool> in(g.order());
  std::vector<Element> list{0};
  in[0] = true;
  for (std::size_t cur = 0; cur < list.size(); ++cur)
    for (Element s : generators) {
      Element next = g.mul(list[cur], s);
      if (!in[next]) {
        in[next] = true;
        list.push_back(next);
      }
    }
  std::sort(list.begin(), list.end());
  return {list};
}

bool is_abelian(const FiniteGroup& g, const Subgroup& h) {
  for (Element a : h.elements)
    for (Element b : h.elements)
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

std::vector<Element> greedy_generators(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Element> gens;
  Subgroup cur{{0}};
  // Prefer elements of large order so cyclic groups get one generator.
  std::vector<Element> candidates = h.elements;
  std::stable_sort(candidates.begin(), candidates.end(), [&](Element a, Element b) {
    return g.element_order(a) > g.element_order(b);
  });
  for (Element e : candidates) {
    if (cur.order() == h.order()) break;
    if (cur.contains(e)) continue;
    gens.push_back(e);
    cur = generated_subgroup(g, gens);
  }
  return gens;
}

std::vector<Subgroup> subgroups(const FiniteGroup& g, SubgroupFilter filter, std::size_t max_order) {
  if (g.order() > max_order)
    throw BudgetError("subgroup enumeration limited to order " + std::to_string(max_order));
  std::map<Subgroup, Element> cyclic;
  for (Element e = 0; e < g.order(); ++e) cyclic.emplace(generated_subgroup(g, {e}), e);
  std::set<Subgroup> all;
  for (const auto& [c, e] : cyclic) all.insert(c);
  if (filter != SubgroupFilter::Cyclic) {
    std::vector<Subgroup> frontier(all.begin(), all.end());
    while (!frontier.empty()) {
      std::vector<Subgroup> next;
      for (const auto& h : frontier) {
        std::vector<Element> base = greedy_generators(g, h);
        for (const auto& [c, gen] : cyclic) {
          if (h.contains(gen)) continue;
          std::vector<Element> gens = base;
          gens.push_back(gen);
          Subgroup j = generated_subgroup(g, gens);
          if (filter == SubgroupFilter::Abelian && !is_abelian(g, j)) continue;
          if (all.insert(j).second) next.push_back(j);
        }
      }
      frontier = std::move(next);
    }
  }
  std::vector<Subgroup> out;
  for (const auto& h : all) {
    if (filter == SubgroupFilter::Abelian && !is_abelian(g, h)) continue;
    out.push_back(h);
  }
  return out;
}

SubgroupEmbedding subgroup_as_group(const FiniteGroup& g, const Subgroup& h) {
  const std::size_t n = h.order();
  std::vector<std::size_t> local(g.order(), n);
  for (std::size_t i = 0; i < n; ++i) local[h.elements[i]] = i;
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Element p = local[g.mul(h.elements[a], h.elements[b])];
      if (p == n) throw ValidationError("subgroup", "element set is not closed");
      table[a][b] = p;
    }
  std::vector<Element> gens;
  std::vector<std::string> names;
  for (Element e : greedy_generators(g, h)) {
    gens.push_back(local[e]);
    names.push_back(g.label(e));
  }
  bool simple = true;
  for (const auto& nm : names) simple = simple && nm.size() == 1;
  if (!simple)
    for (std::size_t i = 0; i < names.size(); ++i) names[i] = "(" + names[i] + ")";
  auto group = std::make_shared<FiniteGroup>(std::move(table), std::move(gens), std::move(names));
  return {group, h.elements};
}

CentralExtension central_cyclic_extension(const FiniteGroup& g,
                                          const std::vector<std::vector<Int>>& cocycle,
                                          const Int& ell_value, std::size_t max_order) {
  if (ell_value < 1) throw InputError("extension order must be positive");
  if (!ell_value.fits_ulong_p() || ell_value.get_ui() * g.order() > max_order)
    throw BudgetError("extension exceeds order bound " + std::to_string(max_order));
  const std::size_t ell = ell_value.get_ui();
  const std::size_t n = g.order();
  if (cocycle.size() != n) throw InputError("cocycle has wrong size");
  std::vector<std::vector<std::size_t>> c(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    if (cocycle[a].size() != n) throw InputError("cocycle has wrong size");
    for (std::size_t b = 0; b < n; ++b) {
      Int r;
      mpz_fdiv_r(r.get_mpz_t(), cocycle[a][b].get_mpz_t(), ell_value.get_mpz_t());
      c[a][b] = r.get_ui();
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    if (c[0][a] != 0 || c[a][0] != 0) throw ValidationError("extension", "cocycle is not normalised");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t d = 0; d < n; ++d)
        if ((c[a][b] + c[g.mul(a, b)][d]) % ell != (c[b][d] + c[a][g.mul(b, d)]) % ell)
          throw ValidationError("extension", "cocycle condition fails");
  const std::size_t total = n * ell;
  std::vector<std::vector<Element>> table(total, std::vector<Element>(total));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t z1 = 0; z1 < ell; ++z1)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t z2 = 0; z2 < ell; ++z2)
          table[a * ell + z1][b * ell + z2] = g.mul(a, b) * ell + (z1 + z2 + c[a][b]) % ell;
  std::vector<Element> projection(total);
  for (std::size_t i = 0; i < total; ++i) projection[i] = i / ell;

  // Lifts of the generators, plus the central generator when they do not suffice.
  std::vector<Element> gens;
  std::vector<std::string> names = g.generator_names();
  for (Element s : g.generators()) gens.push_back(s * ell);
  std::vector<bool> in(total);
  std::vector<Element> list{0};
  in[0] = true;
  for (std::size_t cur = 0; cur < list.size(); ++cur)
    for (Element s : gens) {
      Element next = table[list[cur]][s];
      if (!in[next]) {
        in[next] = true;
        list.push_back(next);
      }
    }
  if (list.size() != total) {
    gens.push_back(1 % total);
    std::string z = "z";
    while (std::find(names.begin(), names.end(), z) != names.end()) z += "'";
    names.push_back(z);
  }
  auto group = std::make_shared<FiniteGroup>(std::move(table), std::move(gens), std::move(names));
  return {group, projection, ell};
}

std::optional<std::vector<Element>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t n = a.order();
  if (b.order() != n) return std::nullopt;
  std::vector<std::size_t> ha(n + 1), hb(n + 1);
  for (Element e = 0; e < n; ++e) {
    ++ha[a.element_order(e)];
    ++hb[b.element_order(e)];
  }
  if (ha != hb) return std::nullopt;
  Subgroup all;
  for (Element e = 0; e < n; ++e) all.elements.push_back(e);
  std::vector<Element> gens = greedy_generators(a, all);
  std::vector<std::vector<Element>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Element e = 0; e < n; ++e)
      if (b.element_order(e) == a.element_order(gens[i])) candidates[i].push_back(e);
  std::vector<Element> images(gens.size());
  std::optional<std::vector<Element>> result;

  auto try_map = [&]() -> bool {
    std::vector<Element> map(n, n);
    map[0] = 0;
    std::vector<Element> queue{0};
    for (std::size_t cur = 0; cur < queue.size(); ++cur)
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Element x = a.mul(queue[cur], gens[i]);
        Element img = b.mul(map[queue[cur]], images[i]);
        if (map[x] == n) {
          map[x] = img;
          queue.push_back(x);
        } else if (map[x] != img) {
          return false;
        }
      }
    std::vector<bool> hit(n);
    for (Element e = 0; e < n; ++e) {
      if (hit[map[e]]) return false;
      hit[map[e]] = true;
    }
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        if (map[a.mul(x, y)] != b.mul(map[x], map[y])) return false;
    result = map;
    return true;
  };
  std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
    if (i == gens.size()) return try_map();
    for (Element e : candidates[i]) {
      images[i] = e;
      if (search(i + 1)) return true;
    }
    return false;
  };
  search(0);
  return result;
}

// ---------------------------------------------------------------- AffineMap

AffineMap AffineMap::identity(std::size_t d) { return {IntMatrix::identity(d), QmodZVector(d)}; }

AffineMap AffineMap::operator*(const AffineMap& other) const {
  return {matrix * other.matrix, other.lambda + other.matrix.transpose() * lambda};
}

std::string AffineMap::key() const { return matrix.to_string() + lambda.to_string(); }

AffineGroup affine_group_closure(const std::vector<AffineMap>& generators,
                                 const std::vector<std::string>& names, std::size_t max_order) {
  if (generators.empty()) throw InputError("no generators given");
  const std::size_t d = generators[0].matrix.rows();
  for (const auto& g : generators) {
    if (g.matrix.rows() != d || g.matrix.cols() != d || g.lambda.size() != d)
      throw InputError("generator dimensions are inconsistent");
    Int det = determinant(g.matrix);
    if (det != 1 && det != -1) throw ValidationError("group", "generator matrix is not in GL(d, Z)");
  }
  std::vector<AffineMap> elements;
  FiniteGroup group = FiniteGroup::closure(
      AffineMap::identity(d), generators, names,
      [](const AffineMap& x, const AffineMap& y) { return x * y; },
      [](const AffineMap& x) { return x.key(); }, max_order, &elements);
  return {std::make_shared<FiniteGroup>(std::move(group)), std::move(elements)};
}

void validate_affine_assignment(const FiniteGroup& g, const std::vector<AffineMap>& assignment) {
  if (assignment.size() != g.order()) throw InputError("assignment must list every group element");
  const std::size_t d = assignment[0].matrix.rows();
  for (const auto& a : assignment) {
    if (a.matrix.rows() != d || a.matrix.cols() != d || a.lambda.size() != d)
      throw InputError("assignment dimensions are inconsistent");
    Int det = determinant(a.matrix);
    if (det != 1 && det != -1) throw ValidationError("group", "assigned matrix is not in GL(d, Z)");
  }
  if (!(assignment[0] == AffineMap::identity(d)))
    throw ValidationError("group", "identity element is not assigned the identity pair");
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      if (!(assignment[a] * assignment[b] == assignment[g.mul(a, b)]))
        throw ValidationError("group", "assignment is not a homomorphism at (" + g.label(a) + ", " +
                                           g.label(b) + ")");
}

}  // namespace equitor
