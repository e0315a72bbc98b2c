#include <algorithm>
#include <map>

#include "equitor/cohomology.hpp"

namespace equitor {

GroupRingElement::GroupRingElement(std::vector<std::pair<Element, Int>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().first == t.first) terms_.back().second += t.second;
    else terms_.push_back(std::move(t));
  }
  terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [](const auto& t) { return t.second == 0; }),
               terms_.end());
}

GroupRingElement GroupRingElement::unit(Element g, const Int& coefficient) {
  return GroupRingElement({{g, coefficient}});
}

Int GroupRingElement::augmentation() const {
  Int s = 0;
  for (const auto& t : terms_) s += t.second;
  return s;
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& other) const {
  auto t = terms_;
  t.insert(t.end(), other.terms_.begin(), other.terms_.end());
  return GroupRingElement(std::move(t));
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& other) const {
  return *this + other.scaled(-1);
}

GroupRingElement GroupRingElement::scaled(const Int& c) const {
  auto t = terms_;
  for (auto& x : t) x.second *= c;
  return GroupRingElement(std::move(t));
}

GroupRingElement GroupRingElement::multiply(const FiniteGroup& g, const GroupRingElement& other) const {
  std::vector<std::pair<Element, Int>> t;
  for (const auto& a : terms_)
    for (const auto& b : other.terms_) t.emplace_back(g.mul(a.first, b.first), a.second * b.second);
  return GroupRingElement(std::move(t));
}

GroupRingElement GroupRingElement::mapped(const std::vector<Element>& phi) const {
  auto t = terms_;
  for (auto& x : t) x.first = phi.at(x.first);
  return GroupRingElement(std::move(t));
}

IntMatrix GroupRingElement::act(const GLattice& l) const {
  IntMatrix m(l.rank(), l.rank());
  for (const auto& t : terms_) m = m + l.action(t.first).scaled(t.second);
  return m;
}

RingMatrix ring_matrix_product(const FiniteGroup& g, const RingMatrix& a, const RingMatrix& b) {
  const std::size_t p = a.size(), q = b.size(), r = q ? b[0].size() : 0;
  RingMatrix out(p, std::vector<GroupRingElement>(r));
  for (std::size_t i = 0; i < p; ++i) {
    if (a[i].size() != q) throw InputError("ring matrix product dimension mismatch");
    for (std::size_t k = 0; k < q; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < r; ++j)
        if (!b[k][j].is_zero()) out[i][j] = out[i][j] + a[i][k].multiply(g, b[k][j]);
    }
  }
  return out;
}

// --------------------------------------------------------------- Resolution

Resolution::Resolution(GroupPtr group, std::vector<std::size_t> ranks,
                       std::vector<RingMatrix> boundaries, std::string name)
    : group_(std::move(group)),
      ranks_(std::move(ranks)),
      boundaries_(std::move(boundaries)),
      name_(std::move(name)) {
  if (ranks_.empty()) throw InputError("resolution needs at least P_0");
  if (boundaries_.size() + 1 != ranks_.size())
    throw InputError("resolution needs one boundary map per positive degree");
  for (std::size_t n = 1; n < ranks_.size(); ++n) {
    const auto& d = boundaries_[n - 1];
    if (d.size() != ranks_[n]) throw InputError("boundary d_" + std::to_string(n) + " has wrong row count");
    for (const auto& row : d) {
      if (row.size() != ranks_[n - 1])
        throw InputError("boundary d_" + std::to_string(n) + " has wrong column count");
      for (const auto& e : row)
        for (const auto& t : e.terms())
          if (t.first >= group_->order()) throw InputError("group ring entry refers to unknown element");
    }
  }
}

IntMatrix Resolution::integral_boundary(std::size_t n) const {
  const std::size_t g = group_->order();
  const auto& d = boundary(n);
  IntMatrix m(g * ranks_[n - 1], g * ranks_[n]);
  for (std::size_t j = 0; j < ranks_[n]; ++j)
    for (std::size_t i = 0; i < ranks_[n - 1]; ++i)
      for (const auto& [h, c] : d[j][i].terms())
        for (Element x = 0; x < g; ++x) m(i * g + group_->mul(x, h), j * g + x) += c;
  return m;
}

ResolutionDiagnosis validate_resolution(const Resolution& r) {
  const auto& g = *r.group();
  if (r.rank(0) != 1) return {false, 0, "P_0 must have rank 1"};
  if (r.length() == 0) return {};
  for (std::size_t j = 0; j < r.rank(1); ++j)
    if (r.boundary(1)[j][0].augmentation() != 0)
      return {false, 1, "augmentation does not vanish on the image of d_1"};
  for (std::size_t n = 2; n <= r.length(); ++n) {
    RingMatrix p = ring_matrix_product(g, r.boundary(n), r.boundary(n - 1));
    for (const auto& row : p)
      for (const auto& e : row)
        if (!e.is_zero()) return {false, n, "d_" + std::to_string(n - 1) + " d_" + std::to_string(n) + " != 0"};
  }
  std::vector<std::unique_ptr<SmithForm>> snf(r.length() + 1);
  for (std::size_t n = 1; n <= r.length(); ++n) snf[n] = std::make_unique<SmithForm>(r.integral_boundary(n));
  if (snf[1]->rank() + 1 != g.order() || !snf[1]->image_saturated())
    return {false, 0, "not exact at P_0"};
  for (std::size_t n = 1; n < r.length(); ++n)
    if (snf[n]->rank() + snf[n + 1]->rank() != g.order() * r.rank(n) || !snf[n + 1]->image_saturated())
      return {false, n, "not exact at P_" + std::to_string(n)};
  return {};
}

ResolutionPtr bar_resolution(GroupPtr group, std::size_t length, std::size_t budget) {
  const std::size_t n = group->order();
  double size = 1;
  for (std::size_t k = 0; k <= length; ++k) size *= static_cast<double>(n);
  if (size > static_cast<double>(budget))
    throw BudgetError("bar resolution of a group of order " + std::to_string(n) + " to degree " +
                      std::to_string(length) + " exceeds the budget");
  const std::size_t m = n - 1;
  std::vector<std::size_t> ranks{1};
  for (std::size_t k = 1; k <= length; ++k) ranks.push_back(ranks.back() * m);
  auto encode = [&](const std::vector<Element>& t) {
    std::size_t idx = 0;
    for (Element e : t) idx = idx * m + (e - 1);
    return idx;
  };
  std::vector<RingMatrix> boundaries;
  for (std::size_t k = 1; k <= length; ++k) {
    RingMatrix d(ranks[k], std::vector<GroupRingElement>(ranks[k - 1]));
    std::vector<Element> t(k);
    for (std::size_t idx = 0; idx < ranks[k]; ++idx) {
      std::size_t rest = idx;
      for (std::size_t p = k; p-- > 0;) {
        t[p] = rest % m + 1;
        rest /= m;
      }
      std::map<std::size_t, std::vector<std::pair<Element, Int>>> terms;
      terms[encode(std::vector<Element>(t.begin() + 1, t.end()))].emplace_back(t[0], 1);
      for (std::size_t i = 0; i + 1 < k; ++i) {
        Element prod = group->mul(t[i], t[i + 1]);
        if (prod == 0) continue;
        std::vector<Element> face(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i));
        face.push_back(prod);
        face.insert(face.end(), t.begin() + static_cast<std::ptrdiff_t>(i) + 2, t.end());
        terms[encode(face)].emplace_back(0, (i + 1) % 2 ? -1 : 1);
      }
      terms[encode(std::vector<Element>(t.begin(), t.end() - 1))].emplace_back(0, k % 2 ? -1 : 1);
      for (auto& [col, ts] : terms) d[idx][col] = d[idx][col] + GroupRingElement(std::move(ts));
    }
    boundaries.push_back(std::move(d));
  }
  return std::make_shared<Resolution>(group, std::move(ranks), std::move(boundaries), "bar");
}

namespace {

IntVector translate(const FiniteGroup& g, const IntVector& v, Element x) {
  const std::size_t n = g.order();
  IntVector out(v.size());
  for (std::size_t idx = 0; idx < v.size(); ++idx)
    if (v[idx] != 0) out[(idx / n) * n + g.mul(x, idx % n)] = v[idx];
  return out;
}

std::size_t support(const IntVector& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](const Int& x) { return x != 0; }));
}

// Z-basis of ker d_1 from the fundamental cycles of the Cayley graph.
std::vector<IntVector> fundamental_cycles(const FiniteGroup& g, const std::vector<Element>& gens) {
  const std::size_t n = g.order(), s = gens.size();
  std::vector<std::pair<Element, std::size_t>> parent(n, {n, 0});
  std::vector<bool> seen(n);
  std::vector<std::vector<bool>> tree(n, std::vector<bool>(s));
  seen[0] = true;
  std::vector<Element> queue{0};
  for (std::size_t cur = 0; cur < queue.size(); ++cur)
    for (std::size_t j = 0; j < s; ++j) {
      Element next = g.mul(queue[cur], gens[j]);
      if (seen[next]) continue;
      seen[next] = true;
      parent[next] = {queue[cur], j};
      tree[queue[cur]][j] = true;
      queue.push_back(next);
    }
  auto path = [&](Element x) {
    IntVector v(n * s);
    while (x != 0) {
      auto [p, j] = parent[x];
      v[j * n + p] += 1;
      x = p;
    }
    return v;
  };
  std::vector<IntVector> cycles;
  for (Element x = 0; x < n; ++x)
    for (std::size_t j = 0; j < s; ++j) {
      if (tree[x][j]) continue;
      IntVector v = path(x);
      v[j * n + x] += 1;
      IntVector back = path(g.mul(x, gens[j]));
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= back[i];
      if (support(v)) cycles.push_back(std::move(v));
    }
  return cycles;
}

// Z-basis of ker d_{k-1} from an echelon form of the rows (d e_c, e_c): rows
// with zero image part span the kernel.
std::vector<IntVector> kernel_candidates(const GroupPtr& group, const std::vector<std::size_t>& ranks,
                                         const std::vector<RingMatrix>& boundaries, std::size_t k) {
  Resolution partial(group, ranks, boundaries, "partial");
  IntMatrix bd = partial.integral_boundary(k - 1);
  const std::size_t m = bd.rows(), cols = bd.cols();
  LatticeBasis echelon(m + cols);
  IntVector v(m + cols);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < m; ++r) v[r] = bd(r, c);
    for (std::size_t r = 0; r < cols; ++r) v[m + r] = r == c ? 1 : 0;
    echelon.add(v);
  }
  std::vector<IntVector> candidates;
  IntMatrix b = echelon.basis();
  for (std::size_t r = 0; r < b.rows(); ++r) {
    IntVector row = b.row(r);
    if (std::any_of(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(m), [](const Int& x) { return x != 0; }))
      continue;
    candidates.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(m), row.end());
  }
  return candidates;
}

// Adds G-orbits of candidates, sparsest first, until they span the kernel.
void append_degree(const FiniteGroup& g, std::vector<std::size_t>& ranks, std::vector<RingMatrix>& boundaries,
                   std::vector<IntVector> candidates) {
  const std::size_t n = g.order(), prev = ranks.back();
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const IntVector& a, const IntVector& b) { return support(a) < support(b); });
  LatticeBasis span(n * prev);
  RingMatrix d;
  for (const auto& cand : candidates) {
    if (span.contains(cand)) continue;
    for (Element x = 0; x < n; ++x) span.add(translate(g, cand, x));
    std::vector<GroupRingElement> row(prev);
    for (std::size_t i = 0; i < prev; ++i) {
      std::vector<std::pair<Element, Int>> terms;
      for (Element h = 0; h < n; ++h)
        if (cand[i * n + h] != 0) terms.emplace_back(h, cand[i * n + h]);
      row[i] = GroupRingElement(std::move(terms));
    }
    d.push_back(std::move(row));
  }
  ranks.push_back(d.size());
  boundaries.push_back(std::move(d));
}

}  // namespace

ResolutionPtr free_resolution(GroupPtr group, std::size_t length) {
  const auto& g = *group;
  std::vector<Element> gens;
  for (Element s : g.generators())
    if (s != 0 && std::find(gens.begin(), gens.end(), s) == gens.end()) gens.push_back(s);
  std::vector<std::size_t> ranks{1};
  std::vector<RingMatrix> boundaries;
  if (length >= 1) {
    RingMatrix d1;
    for (Element s : gens) d1.push_back({GroupRingElement({{0, 1}, {s, -1}})});
    ranks.push_back(gens.size());
    boundaries.push_back(std::move(d1));
  }
  for (std::size_t k = 2; k <= length; ++k) {
    std::vector<IntVector> candidates;
    if (ranks[k - 1] == 0) {
      // nothing to resolve
    } else if (k == 2) {
      candidates = fundamental_cycles(g, gens);
    } else {
      candidates = kernel_candidates(group, ranks, boundaries, k);
    }
    append_degree(g, ranks, boundaries, std::move(candidates));
  }
  return std::make_shared<Resolution>(group, std::move(ranks), std::move(boundaries), "greedy");
}

ResolutionPtr extend_resolution(ResolutionPtr r, std::size_t length) {
  if (r->length() >= length) return r;
  if (r->length() == 0) throw InputError("cannot extend a resolution without P_1");
  const GroupPtr& group = r->group();
  std::vector<std::size_t> ranks;
  std::vector<RingMatrix> boundaries;
  for (std::size_t n = 0; n <= r->length(); ++n) ranks.push_back(r->rank(n));
  for (std::size_t n = 1; n <= r->length(); ++n) boundaries.push_back(r->boundary(n));
  for (std::size_t k = r->length() + 1; k <= length; ++k) {
    std::vector<IntVector> candidates;
    if (ranks[k - 1] != 0) candidates = kernel_candidates(group, ranks, boundaries, k);
    append_degree(*group, ranks, boundaries, std::move(candidates));
  }
  return std::make_shared<Resolution>(group, std::move(ranks), std::move(boundaries), r->name() + "+greedy");
}

ResolutionPtr default_resolution(GroupPtr g, std::size_t length, std::size_t budget) {
  double size = 1;
  for (std::size_t k = 0; k <= length; ++k) size *= static_cast<double>(g->order());
  if (size <= static_cast<double>(budget)) return bar_resolution(std::move(g), length, budget);
  return free_resolution(std::move(g), length);
}

}  // namespace equitor
