#include "support.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace equitor::test {

namespace {

std::vector<long> to_longs(const IntVector& v) {
  std::vector<long> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

IntMatrix block_sum(const std::vector<IntMatrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  IntMatrix m(n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return m;
}

// Candidate representations of one block, as matrices per group generator.
std::vector<std::vector<IntMatrix>> block_options(const FiniteGroup& g, std::size_t size) {
  const std::size_t gens = g.generators().size();
  std::vector<std::vector<IntMatrix>> out;
  if (gens == 0) {
    out.push_back({});
    return out;
  }
  const IntMatrix one{{1}}, minus{{-1}};
  const IntMatrix i2 = IntMatrix::identity(2), swap{{0, 1}, {1, 0}}, skew{{1, 1}, {0, -1}};
  if (gens == 2) {
    if (size == 1)
      for (const auto& a : {one, minus})
        for (const auto& b : {one, minus}) out.push_back({a, b});
    if (size == 2) {
      out.push_back({swap, i2});
      out.push_back({swap, -i2});
      out.push_back({i2, swap});
      out.push_back({-i2, swap});
      out.push_back({swap, swap});
      out.push_back({skew, i2});
    }
    return out;
  }
  const std::size_t n = g.element_order(g.generators()[0]);
  if (size == 1) {
    out.push_back({one});
    if (n % 2 == 0) out.push_back({minus});
  }
  if (size == 2) {
    if (n == 2) {
      out.push_back({swap});
      out.push_back({skew});
      out.push_back({-i2});
    }
    if (n == 3) out.push_back({IntMatrix{{0, -1}, {1, -1}}});
    if (n == 4) {
      out.push_back({IntMatrix{{0, -1}, {1, 0}}});
      out.push_back({swap});
    }
  }
  if (size == 3 && n == 3) out.push_back({IntMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}});
  return out;
}

std::size_t long_lcm(std::size_t a, std::size_t b) { return a / std::gcd(a, b) * b; }

bool is_coordinate_fan(const Fan& f) {
  for (const auto& r : f.rays) {
    std::size_t nonzero = 0;
    for (const auto& x : r) {
      if (x == 0) continue;
      if (x != 1 && x != -1) return false;
      ++nonzero;
    }
    if (nonzero != 1) return false;
  }
  return true;
}

// Searches theta in ((1/N)Z/Z)^S with A_g|S^T theta + lambda_g|S = theta for g in h.
bool fixed_torsion_point(const AffineTorusAction& act, const Subgroup& h, const std::vector<std::size_t>& coords) {
  if (coords.empty()) return true;
  std::size_t den = 1;
  for (Element g : h.elements)
    for (std::size_t i : coords) den = long_lcm(den, act.assignment[g].lambda[i].get_den().get_ui());
  const std::size_t n = den * h.order();
  const std::size_t k = coords.size();
  std::vector<std::size_t> a(k, 0);
  for (;;) {
    bool fixed = true;
    for (Element g : h.elements) {
      const auto& map = act.assignment[g];
      for (std::size_t r = 0; r < k && fixed; ++r) {
        Rational v = map.lambda[coords[r]] - fraction(a[r], n);
        for (std::size_t c = 0; c < k; ++c) v += fraction(map.matrix(coords[c], coords[r]) * Int(a[c]), n);
        fixed = is_integral(v);
      }
      if (!fixed) break;
    }
    if (fixed) return true;
    std::size_t p = 0;
    while (p < k && ++a[p] == n) a[p++] = 0;
    if (p == k) return false;
  }
}

IntVector combination(const std::string& text) {
  const auto& names = worked::q8_divisors();
  IntVector v(names.size());
  std::istringstream in(text);
  std::string tok;
  int sign = 1;
  while (in >> tok) {
    if (tok == "+") sign = 1;
    else if (tok == "-") sign = -1;
    else {
      auto it = std::find(names.begin(), names.end(), tok);
      if (it == names.end()) throw std::logic_error("unknown divisor " + tok);
      v[static_cast<std::size_t>(it - names.begin())] += sign;
      sign = 1;
    }
  }
  return v;
}

}  // namespace

std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(EQUITOR_FIXTURE_DIR) / (name + ".json");
}

Problem load_fixture(const std::string& name) { return load_problem(fixture(name)); }

AffineTorusAction fixture_action(const std::string& name) {
  Problem p = load_fixture(name);
  return validate_action(p.group, p.assignment, p.fan, p.resolution);
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"q8_dim3", "d4_dim5", "d8_dim5", "p1_c2", "p1_klein", "p1xp1_klein2"};
  return names;
}

GroupPtr cyclic_group(std::size_t n) {
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  if (n == 1) return std::make_shared<FiniteGroup>(t, std::vector<Element>{}, std::vector<std::string>{});
  return std::make_shared<FiniteGroup>(t, std::vector<Element>{1}, std::vector<std::string>{"x"});
}

GroupPtr klein_group() {
  std::vector<std::vector<Element>> t(4, std::vector<Element>(4));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) t[a][b] = a ^ b;
  return std::make_shared<FiniteGroup>(t, std::vector<Element>{1, 2}, std::vector<std::string>{"x", "y"});
}

std::vector<GroupPtr> small_groups() {
  return {cyclic_group(1), cyclic_group(2), cyclic_group(3), cyclic_group(4), klein_group()};
}

Rational fraction(const Int& num, const Int& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

IntMatrix random_matrix(std::size_t rows, std::size_t cols, long lo, long hi, Rng& rng) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, lo, hi);
  return m;
}

IntMatrix random_unimodular(std::size_t n, Rng& rng, int steps) {
  IntMatrix u = IntMatrix::identity(n);
  if (n == 0) return u;
  for (int s = 0; s < steps; ++s) {
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    const auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    if (i == j) {
      for (std::size_t c = 0; c < n; ++c) u(i, c) = -u(i, c);
      continue;
    }
    const long q = uniform(rng, -2, 2);
    for (std::size_t c = 0; c < n; ++c) u(i, c) += q * u(j, c);
  }
  return u;
}

GLattice random_lattice(const GroupPtr& g, std::size_t rank, Rng& rng) {
  const std::size_t gens = g->generators().size();
  std::vector<std::vector<IntMatrix>> blocks(gens);
  std::size_t left = rank;
  while (left > 0) {
    const auto s = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(std::min<std::size_t>(left, 3))));
    auto options = block_options(*g, s);
    if (options.empty()) continue;
    const auto& pick = options[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(options.size()) - 1))];
    for (std::size_t k = 0; k < gens; ++k) blocks[k].push_back(pick[k]);
    left -= s;
  }
  if (gens == 0) return GLattice::trivial(g, rank);
  IntMatrix u = random_unimodular(rank, rng);
  IntMatrix ui = unimodular_inverse(u);
  std::vector<IntMatrix> mats;
  for (std::size_t k = 0; k < gens; ++k) mats.push_back(u * block_sum(blocks[k]) * ui);
  return GLattice::from_generators(g, mats);
}

RandomExtension random_extension(const GroupPtr& g, std::size_t rank_a, std::size_t rank_c, Rng& rng,
                                 std::size_t bar_length) {
  GLattice a = random_lattice(g, rank_a, rng);
  GLattice c = random_lattice(g, rank_c, rng);
  return random_extension(a, c, rng, bar_length);
}

RandomExtension random_extension(const GLattice& a, const GLattice& c, Rng& rng, std::size_t bar_length) {
  const GroupPtr& g = a.group();
  GLattice hom = hom_module(c, a);
  ResolutionPtr bar = bar_resolution(g, bar_length);
  CochainComplex cx(bar, hom, Coefficients::Integral);
  CohomologyGroup h1 = cx.cohomology(1);
  Cochain phi = cx.zero(1);
  for (const auto& gen : h1.generators()) phi = phi + gen.scaled(uniform(rng, 0, 3));
  RationalVector x(hom.rank());
  for (auto& v : x) v = uniform(rng, -2, 2);
  if (bar->length() >= 1 && g->order() > 1) phi = phi + cx.coboundary(cx.make(0, x));

  const std::size_t n = g->order(), ra = a.rank(), rc = c.rank();
  std::vector<IntMatrix> action;
  for (Element e = 0; e < n; ++e) {
    IntMatrix m(ra + rc, ra + rc);
    for (std::size_t i = 0; i < ra; ++i)
      for (std::size_t j = 0; j < ra; ++j) m(i, j) = a.action(e)(i, j);
    for (std::size_t i = 0; i < rc; ++i)
      for (std::size_t j = 0; j < rc; ++j) m(ra + i, ra + j) = c.action(e)(i, j);
    if (e != 0) {
      IntMatrix f(ra, rc);
      RationalVector block = phi.block(e - 1, ra * rc);
      for (std::size_t i = 0; i < rc; ++i)
        for (std::size_t j = 0; j < ra; ++j) f(j, i) = to_integral({block[i * ra + j]})[0];
      IntMatrix psi = f * c.action(e);
      for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t j = 0; j < rc; ++j) m(i, ra + j) = psi(i, j);
    }
    action.push_back(std::move(m));
  }
  IntMatrix u = random_unimodular(ra + rc, rng);
  IntMatrix ui = unimodular_inverse(u);
  for (auto& m : action) m = u * m * ui;
  GLattice b(g, action, "B");
  IntMatrix inc(ra + rc, ra), proj(rc, ra + rc);
  for (std::size_t i = 0; i < ra; ++i) inc(i, i) = 1;
  for (std::size_t i = 0; i < rc; ++i) proj(i, ra + i) = 1;
  GModuleMap f(a, b, u * inc);
  GModuleMap q(b, c, proj * ui);
  return {ShortExactSeq(f, q), bar, phi};
}

ShortExactSeq hom_from(const GLattice& x, const ShortExactSeq& s) {
  IntMatrix id = IntMatrix::identity(x.rank());
  GLattice ha = hom_module(x, s.A()), hb = hom_module(x, s.B()), hc = hom_module(x, s.C());
  return ShortExactSeq(GModuleMap(ha, hb, kronecker(id, s.f().matrix)),
                       GModuleMap(hb, hc, kronecker(id, s.g().matrix)));
}

ShortExactSeq hom_into(const ShortExactSeq& s, const GLattice& y) {
  IntMatrix id = IntMatrix::identity(y.rank());
  GLattice hc = hom_module(s.C(), y), hb = hom_module(s.B(), y), ha = hom_module(s.A(), y);
  return ShortExactSeq(GModuleMap(hc, hb, kronecker(s.g().matrix.transpose(), id)),
                       GModuleMap(hb, ha, kronecker(s.f().matrix.transpose(), id)));
}

Cochain identity_cochain(const GLattice& l) {
  const std::size_t r = l.rank();
  RationalVector v(r * r);
  for (std::size_t i = 0; i < r; ++i) v[i * r + i] = 1;
  return Cochain(0, Coefficients::Integral, v);
}

Cochain map_cochain(const IntMatrix& m, const Cochain& z) {
  const std::size_t blocks = z.values.size() / m.cols();
  RationalVector out;
  out.reserve(blocks * m.rows());
  for (std::size_t j = 0; j < blocks; ++j) {
    RationalVector b = z.block(j, m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Rational v = 0;
      for (std::size_t k = 0; k < m.cols(); ++k) v += Rational(m(i, k)) * b[k];
      out.push_back(v);
    }
  }
  return Cochain(z.degree, z.kind, std::move(out));
}

std::optional<bool> brute_force_coboundary(const CochainComplex& cx, const Cochain& z, std::size_t budget) {
  if (cx.kind() != Coefficients::QmodZ || z.degree == 0) return std::nullopt;
  const IntMatrix& d = cx.coboundary_matrix(z.degree - 1);
  std::size_t den = 1;
  for (const auto& v : z.values) den = long_lcm(den, v.get_den().get_ui());
  const std::size_t n = den * cx.resolution().group()->order();
  const std::size_t k = d.cols();
  double space = 1;
  for (std::size_t i = 0; i < k; ++i) space *= static_cast<double>(n);
  if (space > static_cast<double>(budget)) return std::nullopt;
  std::vector<long> target;
  for (const auto& v : z.values) {
    Rational t = frac(v) * static_cast<long>(n);
    target.push_back(t.get_num().get_si());
  }
  std::vector<std::vector<long>> rows;
  for (std::size_t i = 0; i < d.rows(); ++i) rows.push_back(to_longs(d.row(i)));
  const long nl = static_cast<long>(n);
  std::vector<long> a(k, 0);
  for (;;) {
    bool hit = true;
    for (std::size_t i = 0; i < rows.size() && hit; ++i) {
      long s = 0;
      for (std::size_t c = 0; c < k; ++c) s += rows[i][c] * a[c];
      hit = ((s - target[i]) % nl + nl) % nl == 0;
    }
    if (hit) return true;
    std::size_t p = 0;
    while (p < k && ++a[p] == nl) a[p++] = 0;
    if (p == k) return false;
  }
}

std::optional<std::string> smith_violation(const IntMatrix& a) {
  SmithDecomposition s = smith_normal_form(a);
  if (s.U * a * s.V != s.D) return "U A V != D";
  Int du = determinant(s.U), dv = determinant(s.V);
  if (du != 1 && du != -1) return "U is not unimodular";
  if (dv != 1 && dv != -1) return "V is not unimodular";
  bool zero_seen = false;
  Int prev = 1;
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j) {
      const Int& x = s.D(i, j);
      if (i != j) {
        if (x != 0) return "D has an off-diagonal entry";
        continue;
      }
      if (x < 0) return "negative invariant factor";
      if (x == 0) {
        zero_seen = true;
        continue;
      }
      if (zero_seen) return "nonzero invariant factor after a zero";
      if (x % prev != 0) return "divisibility chain broken";
      prev = x;
    }
  SmithForm f(a);
  std::size_t rank = 0;
  for (const auto& x : f.diagonal()) rank += x != 0;
  if (rank != f.rank()) return "rank disagrees with the diagonal";
  if (!(f.V_inverse() * f.V()).is_identity()) return "V inverse is wrong";
  if (!(f.U_inverse() * f.U()).is_identity()) return "U inverse is wrong";
  return std::nullopt;
}

std::optional<std::string> completeness_disagreement(const Fan& fan, Rng& rng, std::size_t samples) {
  Coverage cov = monte_carlo_coverage(fan, samples, rng);
  const bool oracle = cov.uncovered == 0 && cov.multiply_covered == 0;
  if (oracle != is_complete(fan))
    return std::string("full fan: is_complete ") + (oracle ? "false" : "true") + " but the oracle disagrees";
  const auto busiest = static_cast<std::size_t>(std::max_element(cov.hits.begin(), cov.hits.end()) - cov.hits.begin());
  Fan cut = fan;
  cut.max_cones.erase(cut.max_cones.begin() + static_cast<std::ptrdiff_t>(busiest));
  Coverage cut_cov = monte_carlo_coverage(fan, samples, rng, busiest);
  const bool cut_oracle = cut_cov.uncovered == 0 && cut_cov.multiply_covered == 0;
  if (cut_oracle != is_complete(cut))
    return std::string("fan without cone ") + std::to_string(busiest) + ": is_complete " +
           (cut_oracle ? "false" : "true") + " but the oracle disagrees";
  return std::nullopt;
}

Coverage monte_carlo_coverage(const Fan& fan, std::size_t samples, Rng& rng, std::optional<std::size_t> skip_cone) {
  const std::size_t d = fan.dimension;
  std::vector<std::vector<std::vector<long>>> inverses;
  std::vector<std::size_t> index;
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    const auto& cone = fan.max_cones[c];
    if (cone.size() != d || (skip_cone && *skip_cone == c)) continue;
    std::vector<IntVector> cols;
    for (auto r : cone) cols.push_back(fan.rays[r]);
    IntMatrix inv = unimodular_inverse(IntMatrix::from_columns(cols, d));
    std::vector<std::vector<long>> rows;
    for (std::size_t i = 0; i < d; ++i) rows.push_back(to_longs(inv.row(i)));
    inverses.push_back(std::move(rows));
    index.push_back(c);
  }
  Coverage cov;
  cov.hits.assign(fan.max_cones.size(), 0);
  std::vector<long> v(d);
  for (std::size_t s = 0; s < samples; ++s) {
    bool nonzero = false;
    for (auto& x : v) {
      x = uniform(rng, -1000, 1000);
      nonzero = nonzero || x != 0;
    }
    if (!nonzero) continue;
    ++cov.samples;
    bool covered = false;
    std::size_t interior = 0;
    for (std::size_t c = 0; c < inverses.size(); ++c) {
      bool inside = true, strict = true;
      for (std::size_t i = 0; i < d && inside; ++i) {
        long a = 0;
        for (std::size_t j = 0; j < d; ++j) a += inverses[c][i][j] * v[j];
        inside = a >= 0;
        strict = strict && a > 0;
      }
      if (!inside) continue;
      covered = true;
      if (strict) {
        ++interior;
        ++cov.hits[index[c]];
      }
    }
    if (!covered) ++cov.uncovered;
    if (interior > 1) ++cov.multiply_covered;
  }
  return cov;
}

bool has_fixed_point_brute_force(const AffineTorusAction& act, const Subgroup& h) {
  if (!is_coordinate_fan(act.fan)) throw std::logic_error("fixed point oracle needs rays +-e_i");
  for (const auto& tau : all_cones(act.fan)) {
    bool stable = true;
    for (Element g : h.elements) stable = stable && permute_cone(tau, act.ray_perms[g]) == tau;
    if (!stable) continue;
    std::vector<bool> used(act.fan.dimension, false);
    for (auto r : tau)
      for (std::size_t i = 0; i < act.fan.dimension; ++i)
        if (act.fan.rays[r][i] != 0) used[i] = true;
    std::vector<std::size_t> coords;
    for (std::size_t i = 0; i < act.fan.dimension; ++i)
      if (!used[i]) coords.push_back(i);
    if (fixed_torsion_point(act, h, coords)) return true;
  }
  return false;
}

bool torus_has_fixed_point(const AffineTorusAction& act, const Subgroup& h) {
  std::vector<std::size_t> coords(act.fan.dimension);
  std::iota(coords.begin(), coords.end(), 0);
  return fixed_torsion_point(act, h, coords);
}

RandomToric random_toric_action(std::size_t dimension, Rng& rng, std::size_t max_order) {
  const std::size_t d = dimension;
  for (;;) {
    // (P^1)^d, P^d, or for d = 2 the hexagon of the degree 6 del Pezzo surface.
    enum class Shape { Cube, Simplex, Hexagon };
    const long pick = uniform(rng, 0, d == 2 ? 2 : 1);
    const Shape shape = pick == 0 ? Shape::Cube : pick == 1 ? Shape::Simplex : Shape::Hexagon;
    Fan fan;
    fan.dimension = d;
    auto unit = [&](std::size_t i, long s) {
      IntVector v(d);
      v[i] = s;
      return v;
    };
    if (shape == Shape::Cube) {
      for (std::size_t i = 0; i < d; ++i) fan.rays.push_back(unit(i, 1));
      for (std::size_t i = 0; i < d; ++i) fan.rays.push_back(unit(i, -1));
      for (std::size_t mask = 0; mask < (1u << d); ++mask) {
        Cone c;
        for (std::size_t i = 0; i < d; ++i) c.push_back((mask >> i) & 1 ? i + d : i);
        std::sort(c.begin(), c.end());
        fan.max_cones.push_back(c);
      }
    } else if (shape == Shape::Simplex) {
      for (std::size_t i = 0; i < d; ++i) fan.rays.push_back(unit(i, 1));
      fan.rays.push_back(IntVector(d, -1));
      for (std::size_t skip = 0; skip <= d; ++skip) {
        Cone c;
        for (std::size_t i = 0; i <= d; ++i)
          if (i != skip) c.push_back(i);
        fan.max_cones.push_back(c);
      }
    } else {
      fan.rays = {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}};
      for (std::size_t i = 0; i < 6; ++i) fan.max_cones.push_back(i < 5 ? Cone{i, i + 1} : Cone{0, 5});
    }
    auto random_symmetry = [&]() {
      IntMatrix n_action(d, d);
      if (shape == Shape::Cube) {
        std::vector<std::size_t> p(d);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        for (std::size_t i = 0; i < d; ++i) n_action(p[i], i) = uniform(rng, 0, 1) ? 1 : -1;
      } else if (shape == Shape::Simplex) {
        std::vector<std::size_t> p(d + 1);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        for (std::size_t i = 0; i < d; ++i) n_action.set_column(i, fan.rays[p[i]]);
      } else {
        // Rotation by one ray, possibly followed by the swap of the coordinates.
        const IntMatrix rotation{{1, -1}, {1, 0}}, swap{{0, 1}, {1, 0}};
        n_action = IntMatrix::identity(2);
        for (long k = uniform(rng, 0, 5); k > 0; --k) n_action = rotation * n_action;
        if (uniform(rng, 0, 1)) n_action = swap * n_action;
      }
      return AffineMap{n_action.transpose(), QmodZVector(d)};
    };
    std::vector<AffineMap> gens{random_symmetry()};
    if (uniform(rng, 0, 1)) gens.push_back(random_symmetry());
    std::vector<std::string> names{"a", "b"};
    names.resize(gens.size());
    AffineGroup ag;
    try {
      ag = affine_group_closure(gens, names, 48);
    } catch (const BudgetError&) {
      continue;
    }
    if (ag.group->order() > max_order) continue;
    const long rounds = d >= 2 ? uniform(rng, 0, 2) : 0;
    for (long r = 0; r < rounds; ++r) {
      std::vector<Cone> candidates;
      for (const auto& c : all_cones(fan))
        if (c.size() >= 2) candidates.push_back(c);
      const Cone tau = candidates[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(candidates.size()) - 1))];
      std::set<Cone> orbit;
      for (const auto& a : ag.assignment) orbit.insert(permute_cone(tau, induced_ray_permutation(fan, a.matrix)));
      // Subdividing cones of one orbit that share a face depends on the order,
      // so the round is undone when the result is not invariant.
      const Fan before = fan;
      for (const auto& c : orbit) {
        auto cones = all_cones(fan);
        if (!std::binary_search(cones.begin(), cones.end(), c,
                                [](const Cone& x, const Cone& y) {
                                  return x.size() != y.size() ? x.size() < y.size() : x < y;
                                }))
          continue;
        IntVector ray(d);
        for (auto i : c)
          for (std::size_t k = 0; k < d; ++k) ray[k] += fan.rays[i][k];
        fan = stellar_subdivide(fan, c, ray);
      }
      try {
        for (const auto& a : ag.assignment) induced_ray_permutation(fan, a.matrix);
      } catch (const ValidationError&) {
        fan = before;
      }
    }
    return {ag.group, ag.assignment, fan};
  }
}

std::vector<AffineMap> shift_translations(const std::vector<AffineMap>& assignment, const QmodZVector& theta) {
  std::vector<AffineMap> out = assignment;
  for (auto& a : out) a.lambda = a.lambda + a.matrix.transpose() * theta - theta;
  return out;
}

std::string invariant_summary(const ObstructionReport& r) {
  std::ostringstream o;
  o << "order " << r.group_order << " pic " << r.pic.to_string() << " h1t " << r.h1_translation.to_string()
    << " rho " << r.rho.trivial << '/' << r.rho.order << " partial " << r.partial.trivial << '/' << r.partial.order
    << " shifted " << r.shifted.trivial << '/' << r.shifted.order << " unirational " << r.unirational
    << " witness " << r.witness.has_value() << " h1pic " << r.h1_pic.to_string() << " am2 " << r.am2.to_string()
    << " am3 " << r.am3.to_string() << "\n";
  for (const auto& s : r.subgroups)
    o << "  " << s.label << ' ' << s.order << ' ' << s.h1_pic.to_string() << ' ' << s.am2.to_string() << ' '
      << s.am3.to_string() << "\n";
  if (r.condition_a)
    for (const auto& e : *r.condition_a) {
      o << "  A " << e.label << ' ' << e.satisfied;
      if (e.witness) o << " witness " << cone_to_string(*e.witness);
      for (const auto& [cone, order] : e.failures) o << " fail " << cone_to_string(cone) << ':' << order;
      o << "\n";
    }
  if (r.pu) {
    o << "  pu " << r.pu->projectively_unirational << ' ' << r.pu->classes_tried << ' ' << r.pu->schur.to_string()
      << ' ' << r.pu->gamma_order << ' ' << r.pu->extension_order;
    if (r.pu->gamma)
      for (const auto& x : *r.pu->gamma) o << ' ' << x;
    o << "\n";
  }
  return o.str();
}

namespace worked {

const std::vector<std::string>& q8_divisors() {
  static const std::vector<std::string> names{"D1",   "D2",   "D3",   "^D1",   "^D2",   "^D3",
                                              "D21",  "D12",  "D31",  "D13",   "D32",   "D23",
                                              "D123", "D132", "D231", "^D123", "^D132", "^D231"};
  return names;
}

std::vector<IntVector> q8_relations() {
  return {combination("D1 - ^D1 - D21 + D12 - D31 + D13 + D123 + D132 - D231 - ^D123 - ^D132 + ^D231"),
          combination("D2 - ^D2 + D21 - D12 - D32 + D23 + D123 - D132 + D231 - ^D123 + ^D132 - ^D231"),
          combination("D3 - ^D3 + D31 - D13 + D32 - D23 - D123 + D132 + D231 + ^D123 - ^D132 - ^D231")};
}

IntVector q8_h1_pic_second() { return combination("- D1 + D31 - D13 + D32 - D123 + ^D123"); }

IntVector q8_h2_m_class() { return {0, 0, 0, 1, 1, 0}; }

IntVector d4_rho() { return {0, 0, 1, 2, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1}; }

IntVector d4_e() {
  IntVector e(4 * 42);
  auto put = [&](std::size_t block, std::size_t ray, long c) { e[block * 42 + ray - 1] += c; };
  put(0, 7, 2);
  put(0, 9, -2);
  put(0, 19, 1);
  put(0, 20, -1);
  put(1, 7, 2);
  put(1, 15, 2);
  put(1, 19, -1);
  put(1, 20, -1);
  put(1, 21, -2);
  return e;
}

IntVector d4_w() {
  IntVector w(42);
  w[7 - 1] = 3;
  w[9 - 1] = -1;
  w[15 - 1] = 1;
  w[17 - 1] = 1;
  w[20 - 1] = -2;
  w[21 - 1] = -2;
  return w;
}

}  // namespace worked

}  // namespace equitor::test
