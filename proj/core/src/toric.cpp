#include "equitor/toric.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "equitor/error.hpp"

namespace equitor {

namespace {

IntMatrix ray_rows(const Fan& fan, const Cone& cone) {
  IntMatrix m(cone.size(), fan.dimension);
  for (std::size_t k = 0; k < cone.size(); ++k) m.set_row(k, fan.rays[cone[k]]);
  return m;
}

IntMatrix ray_columns(const Fan& fan, const Cone& cone) { return ray_rows(fan, cone).transpose(); }

std::size_t rank_of(const IntMatrix& m) {
  if (m.empty()) return 0;
  return SmithForm(m).rank();
}

int sign(const Int& x) { return sgn(x); }

bool contains_all(const Cone& big, const Cone& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

struct Facet {
  Cone rays;
  IntVector normal;  // nonnegative on the cone, zero exactly on the facet
};

// Facets of a cone relative to its linear span.
std::vector<Facet> cone_facets(const Fan& fan, const Cone& cone) {
  const std::size_t s = rank_of(ray_rows(fan, cone));
  std::vector<Facet> out;
  if (s == 0) return out;
  std::set<Cone> seen;
  std::vector<bool> pick(cone.size());
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(s - 1), true);
  do {
    Cone sub;
    for (std::size_t k = 0; k < cone.size(); ++k)
      if (pick[k]) sub.push_back(cone[k]);
    IntMatrix rows = sub.empty() ? IntMatrix(0, fan.dimension) : ray_rows(fan, sub);
    if (rank_of(rows) != s - 1) continue;
    IntMatrix ker = sub.empty() ? IntMatrix::identity(fan.dimension) : kernel_basis(rows);
    for (std::size_t c = 0; c < ker.cols(); ++c) {
      IntVector u = ker.column(c);
      bool pos = false, neg = false;
      for (std::size_t r : cone) {
        int sg = sign(dot(u, fan.rays[r]));
        pos = pos || sg > 0;
        neg = neg || sg < 0;
      }
      if (!pos && !neg) continue;
      if (!(pos && neg)) {
        if (neg)
          for (auto& x : u) x = -x;
        Facet f;
        for (std::size_t r : cone)
          if (dot(u, fan.rays[r]) == 0) f.rays.push_back(r);
        if (seen.insert(f.rays).second) {
          f.normal = std::move(u);
          out.push_back(std::move(f));
        }
      }
      break;
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

bool in_relative_interior(const Fan& fan, const Cone& cone, const IntVector& v) {
  IntMatrix rows = ray_rows(fan, cone);
  const std::size_t s = rank_of(rows);
  if (s == 0) return false;
  IntMatrix with = vstack(rows, IntMatrix::from_rows({v}, fan.dimension));
  if (rank_of(with) != s) return false;
  for (const auto& f : cone_facets(fan, cone))
    if (dot(f.normal, v) <= 0) return false;
  return true;
}

Permutation inverse(const Permutation& p) {
  Permutation q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = i;
  return q;
}

std::map<IntVector, std::size_t> ray_index(const Fan& fan) {
  std::map<IntVector, std::size_t> idx;
  for (std::size_t i = 0; i < fan.rays.size(); ++i) idx.emplace(fan.rays[i], i);
  return idx;
}

// Per max cone the inverse of its ray matrix, rays as columns.
std::vector<IntMatrix> cone_inverses(const Fan& fan) {
  std::vector<IntMatrix> inv;
  for (const auto& c : fan.max_cones) {
    if (c.size() != fan.dimension) throw InputError("fan has a max cone that is not full dimensional");
    inv.push_back(unimodular_inverse(ray_columns(fan, c)));
  }
  return inv;
}

// Row over all rays of the constraint h_j - sum a_i h_i >= 1 for cone c.
IntVector support_row(const Fan& fan, const Cone& c, const IntMatrix& inv, std::size_t j) {
  IntVector a = inv * fan.rays[j];
  IntVector row(fan.rays.size());
  row[j] = 1;
  for (std::size_t k = 0; k < c.size(); ++k) row[c[k]] -= a[k];
  return row;
}

// Exact revised simplex with Bland's rule on
//   max sum y  s.t.  sum_j y_j c_j = 0,  sum y + s = 1,  y, s >= 0,
// whose dual is  min t  s.t.  <c_j, h> + t >= 1. Returns h with t = 0 when the
// optimum is 0, i.e. when <c_j, h> >= 1 is feasible.
class SeparationLP {
 public:
  SeparationLP(const std::vector<IntVector>& rows, std::size_t nvars)
      : rows_(rows), nv_(nvars), m_(nvars + 1), k_(rows.size()) {}

  std::optional<RationalVector> solve(std::size_t& pivots, std::size_t pivot_budget) {
    binv_.assign(m_, RationalVector(m_));
    for (std::size_t i = 0; i < m_; ++i) binv_[i][i] = 1;
    x_.assign(m_, 0);
    x_[m_ - 1] = 1;
    basis_.resize(m_);
    for (std::size_t r = 0; r < nv_; ++r) basis_[r] = k_ + 1 + r;
    basis_[m_ - 1] = k_;
    std::vector<bool> in_basis(k_ + 1, false);
    in_basis[k_] = true;
    // Degenerate pivots replace artificials; a row that stays artificial is redundant.
    for (std::size_t r = 0; r < nv_; ++r) {
      for (std::size_t j = 0; j <= k_; ++j) {
        if (in_basis[j]) continue;
        RationalVector d = ftran(j);
        if (d[r] == 0) continue;
        pivot(r, j, d);
        in_basis[j] = true;
        ++pivots;
        break;
      }
    }
    for (;;) {
      if (pivots > pivot_budget) throw BudgetError("projectivity LP exceeded its pivot budget");
      RationalVector pi = prices();
      std::size_t enter = k_ + 1;
      for (std::size_t j = 0; j <= k_ && enter > k_; ++j) {
        if (j < k_ && in_basis[j]) continue;
        if (j == k_ && in_basis[k_]) continue;
        Rational rc = (j < k_ ? Rational(1) : Rational(0)) - dot_column(pi, j);
        if (rc > 0) enter = j;
      }
      if (enter > k_) break;
      RationalVector d = ftran(enter);
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (d[i] <= 0 || basis_[i] > k_) continue;
        Rational ratio = x_[i] / d[i];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) throw SelfCheckError("projectivity LP is unbounded despite normalisation");
      in_basis[basis_[leave]] = false;
      pivot(leave, enter, d);
      in_basis[enter] = true;
      ++pivots;
    }
    Rational value = 0;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < k_) value += x_[i];
    if (value > 0) return std::nullopt;
    RationalVector pi = prices();
    return RationalVector(pi.begin(), pi.begin() + static_cast<std::ptrdiff_t>(nv_));
  }

 private:
  Rational column_entry(std::size_t j, std::size_t i) const {
    if (j < k_) return i < nv_ ? Rational(rows_[j][i]) : Rational(1);
    if (j == k_) return i == m_ - 1 ? 1 : 0;
    return i == j - k_ - 1 ? 1 : 0;
  }

  RationalVector ftran(std::size_t j) const {
    RationalVector col(m_);
    for (std::size_t i = 0; i < m_; ++i) col[i] = column_entry(j, i);
    RationalVector d(m_);
    for (std::size_t r = 0; r < m_; ++r)
      for (std::size_t i = 0; i < m_; ++i)
        if (col[i] != 0 && binv_[r][i] != 0) d[r] += binv_[r][i] * col[i];
    return d;
  }

  RationalVector prices() const {
    RationalVector pi(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] >= k_) continue;
      for (std::size_t i = 0; i < m_; ++i) pi[i] += binv_[r][i];
    }
    return pi;
  }

  Rational dot_column(const RationalVector& pi, std::size_t j) const {
    if (j == k_) return pi[m_ - 1];
    Rational s = pi[m_ - 1];
    for (std::size_t i = 0; i < nv_; ++i)
      if (rows_[j][i] != 0) s += pi[i] * rows_[j][i];
    return s;
  }

  void pivot(std::size_t r, std::size_t j, const RationalVector& d) {
    const Rational p = d[r];
    for (auto& v : binv_[r]) v /= p;
    x_[r] /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || d[i] == 0) continue;
      for (std::size_t c = 0; c < m_; ++c)
        if (binv_[r][c] != 0) binv_[i][c] -= d[i] * binv_[r][c];
      x_[i] -= d[i] * x_[r];
    }
    basis_[r] = j;
  }

  const std::vector<IntVector>& rows_;
  std::size_t nv_, m_, k_;
  std::vector<RationalVector> binv_;
  RationalVector x_;
  std::vector<std::size_t> basis_;
};

}  // namespace

// ---------------------------------------------------------------- validation

FanDiagnosis diagnose_fan(const Fan& fan) {
  const std::size_t d = fan.dimension;
  std::set<IntVector> distinct;
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    const auto& r = fan.rays[i];
    if (r.size() != d) return {false, "ray " + std::to_string(i) + " has the wrong dimension"};
    Int g = 0;
    for (const auto& x : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0) return {false, "ray " + std::to_string(i) + " is zero"};
    if (g != 1) return {false, "ray " + std::to_string(i) + " is not primitive"};
    if (!distinct.insert(r).second) return {false, "ray " + std::to_string(i) + " is repeated"};
  }
  if (fan.max_cones.empty()) return {false, "fan has no cones"};
  std::set<Cone> cones;
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    const auto& cone = fan.max_cones[c];
    const std::string name = "cone " + std::to_string(c);
    for (std::size_t k = 0; k < cone.size(); ++k) {
      if (cone[k] >= fan.rays.size()) return {false, name + " refers to a missing ray"};
      if (k && cone[k] <= cone[k - 1]) return {false, name + " is not a sorted set of rays"};
    }
    if (!cones.insert(cone).second) return {false, name + " is repeated"};
    if (cone.empty()) continue;
    SmithForm s(ray_rows(fan, cone));
    if (s.rank() != cone.size()) return {false, name + " is not simplicial"};
    if (!s.image_saturated()) {
      Int index = 1;
      for (const auto& x : s.diagonal()) index *= x;
      return {false, name + " is singular (index " + to_string(index) + ")"};
    }
  }
  return {};
}

void validate_fan(const Fan& fan) {
  auto diag = diagnose_fan(fan);
  if (!diag.ok) throw ValidationError("fan", diag.message);
}

bool is_complete(const Fan& fan) {
  const std::size_t d = fan.dimension;
  for (const auto& c : fan.max_cones)
    if (c.size() != d) return false;
  if (d == 0) return fan.max_cones.size() == 1;
  std::map<Cone, std::vector<std::pair<std::size_t, std::size_t>>> facets;
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c)
    for (std::size_t k = 0; k < d; ++k) {
      Cone f = fan.max_cones[c];
      std::size_t dropped = f[k];
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(k));
      facets[f].emplace_back(c, dropped);
    }
  std::vector<IntVector> normals;
  for (const auto& [f, owners] : facets) {
    if (owners.size() != 2) return false;
    IntMatrix ker = f.empty() ? IntMatrix::identity(d) : kernel_basis(ray_rows(fan, f));
    if (ker.cols() != 1) return false;
    IntVector u = ker.column(0);
    if (sign(dot(u, fan.rays[owners[0].second])) * sign(dot(u, fan.rays[owners[1].second])) >= 0)
      return false;
    normals.push_back(std::move(u));
  }
  // A generic point off every wall must lie in exactly one cone.
  IntVector v(d);
  for (long q = 1009;; q += 2) {
    Int p = 1;
    for (std::size_t i = 0; i < d; ++i) {
      v[i] = p;
      p *= q;
    }
    bool generic = true;
    for (const auto& u : normals)
      if (dot(u, v) == 0) generic = false;
    if (generic) break;
  }
  std::size_t hits = 0;
  for (const auto& inv : cone_inverses(fan)) {
    IntVector a = inv * v;
    if (std::all_of(a.begin(), a.end(), [](const Int& x) { return x > 0; })) ++hits;
  }
  return hits == 1;
}

// -------------------------------------------------------------- projectivity

bool verify_support_function(const Fan& fan, const RationalVector& h) {
  if (h.size() != fan.rays.size()) return false;
  auto inv = cone_inverses(fan);
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    const auto& cone = fan.max_cones[c];
    for (std::size_t j = 0; j < fan.rays.size(); ++j) {
      if (std::binary_search(cone.begin(), cone.end(), j)) continue;
      IntVector row = support_row(fan, cone, inv[c], j);
      Rational s = 0;
      for (std::size_t i = 0; i < row.size(); ++i) s += h[i] * row[i];
      if (s < 1) return false;
    }
  }
  return true;
}

ProjectivityResult is_projective(const Fan& fan, std::size_t budget) {
  ProjectivityResult result;
  const std::size_t n = fan.rays.size(), d = fan.dimension;
  auto inv = cone_inverses(fan);
  if (n == d) {
    // Only possible for the point or degenerate input; a complete fan has more rays.
    result.status = d == 0 ? ProjectivityResult::Status::Projective : ProjectivityResult::Status::NotProjective;
    result.support.assign(n, 0);
    return result;
  }
  std::vector<IntVector> rows;
  std::set<IntVector> have;
  auto add_row = [&](IntVector r) {
    if (have.insert(r).second) rows.push_back(std::move(r));
  };
  std::map<Cone, std::pair<std::size_t, std::size_t>> first;
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c)
    for (std::size_t k = 0; k < d; ++k) {
      Cone f = fan.max_cones[c];
      std::size_t dropped = f[k];
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(k));
      auto [it, fresh] = first.emplace(f, std::make_pair(c, dropped));
      if (!fresh) add_row(support_row(fan, fan.max_cones[it->second.first], inv[it->second.first], dropped));
    }
  // Rays of the first cone carry h = 0; linear functions span the rest.
  const Cone& base = fan.max_cones[0];
  std::vector<std::size_t> free_vars;
  for (std::size_t i = 0; i < n; ++i)
    if (!std::binary_search(base.begin(), base.end(), i)) free_vars.push_back(i);
  for (;;) {
    result.constraints = rows.size();
    if (rows.size() > budget) {
      result.status = ProjectivityResult::Status::BudgetExceeded;
      return result;
    }
    std::vector<IntVector> reduced;
    for (const auto& r : rows) {
      IntVector x;
      for (std::size_t i : free_vars) x.push_back(r[i]);
      reduced.push_back(std::move(x));
    }
    SeparationLP lp(reduced, free_vars.size());
    auto sol = lp.solve(result.pivots, 200000);
    if (!sol) {
      result.status = ProjectivityResult::Status::NotProjective;
      return result;
    }
    RationalVector h(n);
    for (std::size_t k = 0; k < free_vars.size(); ++k) h[free_vars[k]] = (*sol)[k];
    Rational worst;
    bool any = false;
    std::vector<IntVector> violated;
    for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
      const auto& cone = fan.max_cones[c];
      for (std::size_t j = 0; j < n; ++j) {
        if (std::binary_search(cone.begin(), cone.end(), j)) continue;
        IntVector row = support_row(fan, cone, inv[c], j);
        Rational s = 0;
        for (std::size_t i = 0; i < n; ++i)
          if (row[i] != 0) s += h[i] * row[i];
        if (s <= 0) violated.push_back(std::move(row));
        else if (!any || s < worst) {
          worst = s;
          any = true;
        }
      }
    }
    if (violated.empty()) {
      if (any && worst < 1)
        for (auto& x : h) x /= worst;
      if (!verify_support_function(fan, h)) throw SelfCheckError("support function certificate failed");
      result.status = ProjectivityResult::Status::Projective;
      result.support = std::move(h);
      return result;
    }
    std::size_t before = rows.size();
    for (auto& r : violated) add_row(std::move(r));
    if (rows.size() == before) throw SelfCheckError("projectivity LP made no progress");
  }
}

// ------------------------------------------------------------------ symmetry

Permutation induced_ray_permutation(const Fan& fan, const IntMatrix& a) {
  const std::size_t d = fan.dimension;
  if (a.rows() != d || a.cols() != d) throw InputError("action matrix has the wrong size");
  Int det = determinant(a);
  if (det != 1 && det != -1) throw ValidationError("action", "matrix is not unimodular");
  IntMatrix on_n = a.transpose();
  auto idx = ray_index(fan);
  Permutation p(fan.rays.size());
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    auto it = idx.find(on_n * fan.rays[i]);
    if (it == idx.end())
      throw ValidationError("fan invariance", "ray " + std::to_string(i) + " is mapped outside the fan");
    p[i] = it->second;
  }
  std::set<Cone> cones(fan.max_cones.begin(), fan.max_cones.end());
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c)
    if (!cones.count(permute_cone(fan.max_cones[c], p)))
      throw ValidationError("fan invariance", "cone " + std::to_string(c) + " is not mapped to a cone");
  return p;
}

Cone permute_cone(const Cone& cone, const Permutation& perm) {
  Cone out;
  for (std::size_t i : cone) out.push_back(perm.at(i));
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Permutation> negation_permutation(const Fan& fan) {
  auto idx = ray_index(fan);
  Permutation p(fan.rays.size());
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    IntVector neg = fan.rays[i];
    for (auto& x : neg) x = -x;
    auto it = idx.find(neg);
    if (it == idx.end()) return std::nullopt;
    p[i] = it->second;
  }
  return p;
}

ConeOrbitReport cone_orbits(const Fan& fan, const std::vector<Permutation>& generators,
                            bool include_minus_one) {
  std::vector<Permutation> gens = generators;
  if (include_minus_one) {
    auto neg = negation_permutation(fan);
    if (!neg) throw ValidationError("fan invariance", "ray set is not symmetric under -1");
    gens.push_back(*neg);
  }
  std::set<Cone> cones(fan.max_cones.begin(), fan.max_cones.end());
  for (const auto& p : gens)
    for (const auto& c : fan.max_cones)
      if (!cones.count(permute_cone(c, p)))
        throw ValidationError("fan invariance", "a max cone is not mapped to a max cone");
  ConeOrbitReport rep;
  rep.with_minus_one = include_minus_one;
  Permutation id(fan.rays.size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
  std::set<Permutation> group{id};
  std::vector<Permutation> queue{id};
  for (std::size_t cur = 0; cur < queue.size(); ++cur)
    for (const auto& g : gens) {
      Permutation next(id.size());
      for (std::size_t i = 0; i < id.size(); ++i) next[i] = g[queue[cur][i]];
      if (group.insert(next).second) queue.push_back(std::move(next));
    }
  rep.group_order = group.size();
  std::set<Cone> done;
  for (const auto& start : cones) {
    if (done.count(start)) continue;
    std::vector<Cone> orbit = expand_orbits({start}, gens);
    for (const auto& c : orbit) done.insert(c);
    rep.representatives.push_back(orbit.front());
    rep.sizes.push_back(orbit.size());
    rep.total += orbit.size();
  }
  return rep;
}

std::vector<Cone> expand_orbits(const std::vector<Cone>& representatives,
                                const std::vector<Permutation>& generators) {
  std::set<Cone> seen;
  std::vector<Cone> queue;
  for (const auto& r : representatives) {
    Cone c = r;
    std::sort(c.begin(), c.end());
    if (seen.insert(c).second) queue.push_back(std::move(c));
  }
  for (std::size_t cur = 0; cur < queue.size(); ++cur)
    for (const auto& g : generators) {
      Cone next = permute_cone(queue[cur], g);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  return std::vector<Cone>(seen.begin(), seen.end());
}

// -------------------------------------------------------------- subdivision

Fan stellar_subdivide(const Fan& fan, const Cone& cone, const IntVector& ray) {
  if (ray.size() != fan.dimension) throw InputError("subdivision ray has the wrong dimension");
  Cone tau = cone;
  std::sort(tau.begin(), tau.end());
  for (std::size_t i : tau)
    if (i >= fan.rays.size()) throw InputError("subdivided cone refers to a missing ray");
  if (ray_index(fan).count(ray)) throw ValidationError("subdivision", "ray is already in the fan");
  if (!in_relative_interior(fan, tau, ray))
    throw ValidationError("subdivision", "ray is not in the relative interior of cone " + cone_to_string(tau));
  Fan out = fan;
  out.rays.push_back(ray);
  const std::size_t fresh = fan.rays.size();
  out.max_cones.clear();
  bool touched = false;
  for (const auto& sigma : fan.max_cones) {
    if (!contains_all(sigma, tau)) {
      out.max_cones.push_back(sigma);
      continue;
    }
    touched = true;
    for (const auto& f : cone_facets(fan, sigma)) {
      if (contains_all(f.rays, tau)) continue;
      Cone c = f.rays;
      c.push_back(fresh);
      out.max_cones.push_back(std::move(c));
    }
  }
  if (!touched) throw ValidationError("subdivision", "no max cone contains " + cone_to_string(tau));
  std::sort(out.max_cones.begin(), out.max_cones.end());
  return out;
}

// --------------------------------------------------------------------- cones

std::vector<Cone> all_cones(const Fan& fan) {
  std::set<Cone> out;
  for (const auto& c : fan.max_cones) {
    const std::size_t k = c.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      Cone f;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1) f.push_back(c[i]);
      out.insert(std::move(f));
    }
  }
  std::vector<Cone> v(out.begin(), out.end());
  std::stable_sort(v.begin(), v.end(), [](const Cone& a, const Cone& b) { return a.size() < b.size(); });
  return v;
}

std::vector<Cone> stable_cones(const Fan& fan, const std::vector<Permutation>& perms) {
  std::vector<Cone> out;
  for (auto& c : all_cones(fan)) {
    bool stable = true;
    for (const auto& p : perms)
      if (permute_cone(c, p) != c) {
        stable = false;
        break;
      }
    if (stable) out.push_back(std::move(c));
  }
  return out;
}

Fan product_fan(const Fan& a, const Fan& b) {
  Fan p;
  p.dimension = a.dimension + b.dimension;
  for (const auto& r : a.rays) {
    IntVector v = r;
    v.resize(p.dimension);
    p.rays.push_back(std::move(v));
  }
  for (const auto& r : b.rays) {
    IntVector v(a.dimension);
    v.insert(v.end(), r.begin(), r.end());
    p.rays.push_back(std::move(v));
  }
  for (const auto& ca : a.max_cones)
    for (const auto& cb : b.max_cones) {
      Cone c = ca;
      for (std::size_t i : cb) c.push_back(a.rays.size() + i);
      p.max_cones.push_back(std::move(c));
    }
  return p;
}

// ---------------------------------------------------------- divisor sequence

std::vector<Permutation> ray_permutations(const Fan& fan, const GLattice& m) {
  if (m.rank() != fan.dimension) throw InputError("character lattice rank differs from the fan dimension");
  std::vector<Permutation> out;
  for (Element g = 0; g < m.group()->order(); ++g) out.push_back(induced_ray_permutation(fan, m.action(g)));
  return out;
}

ShortExactSeq divisor_sequence(const Fan& fan, const GLattice& m) {
  const std::size_t n = fan.rays.size(), d = fan.dimension;
  std::vector<Permutation> sigma;
  for (const auto& p : ray_permutations(fan, m)) sigma.push_back(inverse(p));
  GLattice p = GLattice::permutation(m.group(), sigma, "P");
  IntMatrix f(n, d);
  for (std::size_t i = 0; i < n; ++i) f.set_row(i, fan.rays[i]);
  SmithForm s(f);
  if (s.rank() != d) throw ValidationError("divisor sequence", "rays do not span N");
  if (!s.image_saturated()) throw ValidationError("divisor sequence", "Pic has torsion");
  IntMatrix u = s.U(), uinv = s.U_inverse();
  IntMatrix proj = u.submatrix(d, 0, n - d, n);
  IntMatrix sect = uinv.submatrix(0, d, n, n - d);
  std::vector<IntMatrix> pic_action;
  for (Element g = 0; g < m.group()->order(); ++g) pic_action.push_back(proj * p.action(g) * sect);
  GLattice pic(m.group(), std::move(pic_action), "Pic");
  return ShortExactSeq(GModuleMap(m, p, f), GModuleMap(p, pic, proj));
}

std::string cone_to_string(const Cone& cone, std::size_t base) {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < cone.size(); ++k) os << (k ? " " : "") << cone[k] + base;
  os << ']';
  return os.str();
}

}  // namespace equitor
