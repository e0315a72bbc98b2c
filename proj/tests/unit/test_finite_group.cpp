#include <functional>

#include "doctest.h"
#include "support.hpp"

using namespace equitor;
using namespace equitor::test;

namespace {

std::size_t count_of_order(const FiniteGroup& g, std::size_t k) {
  std::size_t n = 0;
  for (Element a = 0; a < g.order(); ++a) n += g.element_order(a) == k;
  return n;
}

bool is_cyclic(const FiniteGroup& g, const Subgroup& h) {
  for (Element a : h.elements)
    if (g.element_order(a) == h.order()) return true;
  return false;
}

std::vector<std::vector<Int>> klein_cocycle(const std::function<int(int, int, int, int)>& form) {
  std::vector<std::vector<Int>> c(4, std::vector<Int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) c[a][b] = form(a & 1, a >> 1, b & 1, b >> 1) % 2;
  return c;
}

}  // namespace

TEST_SUITE("finite_group") {

TEST_CASE("Q8 from the affine action") {
  Problem p = load_fixture("q8_dim3");
  const FiniteGroup& g = *p.group;
  CHECK(g.order() == 8);
  CHECK_FALSE(g.is_abelian());
  CHECK(count_of_order(g, 2) == 1);
  CHECK(count_of_order(g, 4) == 6);
  CHECK(subgroups(g).size() == 6);
  auto ab = subgroups(g, SubgroupFilter::Abelian);
  CHECK(ab.size() == 5);
  for (const auto& h : ab) CHECK(is_cyclic(g, h));
  CHECK(subgroups(g, SubgroupFilter::Cyclic).size() == 5);
  validate_affine_assignment(g, p.assignment);
}

TEST_CASE("D4 subgroups include both Klein four-groups and the rotations") {
  Problem p = load_fixture("d4_dim5");
  const FiniteGroup& g = *p.group;
  CHECK(g.order() == 8);
  CHECK(count_of_order(g, 2) == 5);
  CHECK(subgroups(g).size() == 10);
  auto ab = subgroups(g, SubgroupFilter::Abelian);
  CHECK(ab.size() == 9);
  std::size_t klein = 0, c4 = 0;
  for (const auto& h : ab) {
    if (h.order() != 4) continue;
    if (is_cyclic(g, h)) {
      ++c4;
      CHECK(h == generated_subgroup(g, {g.element_from_word("x")}));
    } else {
      ++klein;
    }
  }
  CHECK(klein == 2);
  CHECK(c4 == 1);
}

TEST_CASE("words, powers and inverses") {
  Problem p = load_fixture("d4_dim5");
  const FiniteGroup& g = *p.group;
  Element x = g.element_from_word("x"), y = g.element_from_word("y");
  CHECK(g.power(x, 4) == g.identity());
  CHECK(g.element_from_word("x^3*y") == g.mul(g.power(x, 3), y));
  CHECK(g.element_from_word("xxxy") == g.element_from_word("x^3*y"));
  CHECK(g.mul(y, g.mul(x, y)) == g.inv(x));
  for (Element a = 0; a < g.order(); ++a) CHECK(g.element_from_word(g.label(a)) == a);
  CHECK_THROWS_AS(g.element_from_word("z"), InputError);
}

TEST_CASE("table validation") {
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {1, 1}}, {1}), ValidationError);
  CHECK_THROWS_AS(FiniteGroup({{1, 0}, {0, 1}}, {1}), ValidationError);
  // Latin square that is not associative.
  std::vector<std::vector<Element>> t{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(FiniteGroup(t, {1}), ValidationError);
}

TEST_CASE("central extensions of the Klein four-group") {
  GroupPtr k = klein_group();
  auto ext = [&](const std::function<int(int, int, int, int)>& form) {
    return central_cyclic_extension(*k, klein_cocycle(form), 2);
  };
  CentralExtension split = ext([](int, int, int, int) { return 0; });
  CHECK(split.total->order() == 8);
  CHECK(split.total->is_abelian());
  CHECK(count_of_order(*split.total, 2) == 7);

  CentralExtension c4c2 = ext([](int a1, int, int b1, int) { return a1 * b1; });
  CHECK(c4c2.total->is_abelian());
  CHECK(count_of_order(*c4c2.total, 4) == 4);

  CentralExtension dihedral = ext([](int a1, int, int, int b2) { return a1 * b2; });
  CHECK_FALSE(dihedral.total->is_abelian());
  CHECK(count_of_order(*dihedral.total, 2) == 5);

  CentralExtension quaternion = ext([](int a1, int a2, int b1, int b2) { return a1 * b1 + a1 * b2 + a2 * b2; });
  CHECK_FALSE(quaternion.total->is_abelian());
  CHECK(count_of_order(*quaternion.total, 2) == 1);

  for (const auto* e : {&split, &c4c2, &dihedral, &quaternion}) {
    const FiniteGroup& t = *e->total;
    // The projection is a homomorphism onto G with central kernel of order ell.
    for (Element a = 0; a < t.order(); ++a)
      for (Element b = 0; b < t.order(); ++b)
        CHECK(e->projection[t.mul(a, b)] == k->mul(e->projection[a], e->projection[b]));
    std::size_t kernel = 0;
    for (Element a = 0; a < t.order(); ++a) {
      if (e->projection[a] != 0) continue;
      ++kernel;
      for (Element b = 0; b < t.order(); ++b) CHECK(t.mul(a, b) == t.mul(b, a));
    }
    CHECK(kernel == 2);
  }
  CHECK_FALSE(find_isomorphism(*dihedral.total, *quaternion.total).has_value());
  CHECK_FALSE(find_isomorphism(*split.total, *c4c2.total).has_value());
  CHECK(find_isomorphism(*quaternion.total, *quaternion.total).has_value());
}

TEST_CASE("cohomologous cocycles give isomorphic extensions") {
  Rng rng(6);
  for (GroupPtr g : {cyclic_group(4), klein_group(), cyclic_group(3)}) {
    const std::size_t n = g->order();
    for (long ell : {2L, 3L, 4L}) {
      if (n * static_cast<std::size_t>(ell) > 16) continue;
      // Integral 2-cocycles of the bar complex read mod ell.
      ResolutionPtr bar = bar_resolution(g, 3);
      CochainComplex cx(bar, GLattice::trivial(g, 1), Coefficients::Integral);
      CohomologyGroup h2 = cx.cohomology(2);
      for (int trial = 0; trial < 4; ++trial) {
        Cochain c = cx.zero(2);
        for (const auto& gen : h2.generators()) c = c + gen.scaled(uniform(rng, 0, 3));
        auto table = [&](const Cochain& z) {
          std::vector<std::vector<Int>> t(n, std::vector<Int>(n));
          for (Element a = 1; a < n; ++a)
            for (Element b = 1; b < n; ++b) {
              Int v = z.values[(a - 1) * (n - 1) + (b - 1)].get_num() % ell;
              t[a][b] = v < 0 ? Int(v + ell) : v;
            }
          return t;
        };
        RationalVector f(n - 1);
        for (auto& v : f) v = uniform(rng, -3, 3);
        Cochain c2 = c + cx.coboundary(cx.make(1, f));
        CentralExtension e1 = central_cyclic_extension(*g, table(c), ell);
        CentralExtension e2 = central_cyclic_extension(*g, table(c2), ell);
        CHECK(e1.total->order() == n * static_cast<std::size_t>(ell));
        CHECK(find_isomorphism(*e1.total, *e2.total).has_value());
      }
    }
  }
}

TEST_CASE("affine maps compose as pullbacks") {
  Rng rng(7);
  auto random_map = [&]() {
    AffineMap m{random_unimodular(3, rng), QmodZVector(3)};
    for (std::size_t i = 0; i < 3; ++i) m.lambda.set(i, fraction(uniform(rng, 0, 11), 12));
    return m;
  };
  for (int trial = 0; trial < 50; ++trial) {
    AffineMap a = random_map(), b = random_map(), c = random_map();
    AffineMap ab = a * b;
    CHECK(ab.matrix == a.matrix * b.matrix);
    CHECK(ab.lambda == b.lambda + b.matrix.transpose() * a.lambda);
    CHECK((a * b) * c == a * (b * c));
    CHECK(AffineMap::identity(3) * a == a);
  }
}

TEST_CASE("closure and assignment validation") {
  AffineMap x{IntMatrix{{-1}}, QmodZVector({Rational(1, 2)})};
  AffineGroup ag = affine_group_closure({x}, {"x"});
  CHECK(ag.group->order() == 2);
  CHECK_THROWS_AS(affine_group_closure({AffineMap{IntMatrix{{2}}, QmodZVector(1)}}, {"x"}), ValidationError);
  AffineMap t{IntMatrix{{1}}, QmodZVector({Rational(1, 100)})};
  CHECK_THROWS_AS(affine_group_closure({t}, {"t"}, 64), BudgetError);
  std::vector<AffineMap> wrong = ag.assignment;
  // (1, 1/3) squares to (1, 2/3), not the identity.
  wrong[1] = AffineMap{IntMatrix{{1}}, QmodZVector({Rational(1, 3)})};
  CHECK_THROWS_AS(validate_affine_assignment(*ag.group, wrong), ValidationError);
}

}
