#include "properties.hpp"

#include <sstream>

namespace equitor::test {

void Tally::fail(std::string what) { failures.push_back(std::move(what)); }

std::string Tally::summary() const {
  std::ostringstream o;
  o << instances << " instances, " << nontrivial << " nontrivial";
  if (skipped) o << ", " << skipped << " skipped";
  if (!failures.empty()) o << ", " << failures.size() << " failures (first: " << failures.front() << ")";
  return o.str();
}

namespace {

Cochain random_class(const CochainComplex& cx, std::size_t degree, Rng& rng) {
  CohomologyGroup h = cx.cohomology(degree);
  Cochain z = cx.zero(degree);
  for (const auto& gen : h.generators()) z = z + gen.scaled(uniform(rng, -2, 3));
  if (degree > 0) {
    RationalVector x(cx.dimension(degree - 1));
    for (auto& v : x) v = uniform(rng, -2, 2);
    z = z + cx.coboundary(cx.make(degree - 1, x));
  }
  return z;
}

Cochain connect(const ShortExactSeq& s, const ResolutionPtr& r, const Cochain& z) {
  return connecting_hom(s, CochainComplex(r, s.B(), z.kind), z);
}

std::string group_name(const FiniteGroup& g) {
  return (g.generators().size() == 2 ? "C2xC2" : "C" + std::to_string(g.order()));
}

RationalVector random_fractions(std::size_t n, long max_den, Rng& rng) {
  RationalVector v(n);
  for (auto& x : v) {
    const long d = uniform(rng, 1, max_den);
    x = frac(fraction(uniform(rng, 0, d - 1), d));
  }
  return v;
}

}  // namespace

Tally identity_images(std::size_t instances, Rng& rng) {
  Tally t;
  const auto groups = small_groups();
  for (std::size_t k = 0; k < instances; ++k) {
    GroupPtr g = groups[k % groups.size()];
    const auto ra = static_cast<std::size_t>(uniform(rng, 1, 2));
    const auto rc = static_cast<std::size_t>(uniform(rng, 1, 3 - static_cast<long>(ra)));
    RandomExtension e = random_extension(g, ra, rc, rng, 2);
    CochainComplex hom(e.bar, hom_module(e.seq.C(), e.seq.A()), Coefficients::Integral);
    Cochain from_a = connect(hom_into(e.seq, e.seq.A()), e.bar, identity_cochain(e.seq.A()));
    Cochain from_c = connect(hom_from(e.seq.C(), e.seq), e.bar, identity_cochain(e.seq.C()));
    ++t.instances;
    if (!hom.is_coboundary(e.phi)) ++t.nontrivial;
    const std::string where = group_name(*g) + " ranks " + std::to_string(ra) + "," + std::to_string(rc);
    if (!hom.is_coboundary(from_a + e.phi)) t.fail(where + ": 1_A does not map to -[phi]");
    if (!hom.is_coboundary(from_c - e.phi)) t.fail(where + ": 1_C does not map to [phi]");
  }
  return t;
}

Tally anticommuting_connecting_maps(std::size_t instances, Rng& rng) {
  Tally t;
  const auto groups = small_groups();
  for (std::size_t k = 0; k < instances; ++k) {
    GroupPtr g = groups[k % groups.size()];
    // Every third instance runs a second nonsplit sequence backwards between
    // the same end terms and starts from the identity of C, so the composite
    // is a Yoneda square and often nonzero.
    const bool backwards = k % 3 == 2;
    const std::size_t degree = backwards ? 0 : k % 2;
    auto ranks = [&]() {
      const auto a = static_cast<std::size_t>(uniform(rng, 1, 2));
      return std::pair{a, static_cast<std::size_t>(uniform(rng, 1, 3 - static_cast<long>(a)))};
    };
    auto [ra, rc] = ranks();
    auto [ra2, rc2] = ranks();
    auto nonsplit = [](const RandomExtension& e) {
      return !CochainComplex(e.bar, hom_module(e.seq.C(), e.seq.A()), Coefficients::Integral).is_coboundary(e.phi);
    };
    RandomExtension e1 = random_extension(g, ra, rc, rng, 3);
    RandomExtension e2 = random_extension(g, ra2, rc2, rng, 3);
    for (int attempt = 0; backwards && attempt < 20; ++attempt) {
      e2 = random_extension(e1.seq.C(), e1.seq.A(), rng, 3);
      if ((nonsplit(e1) && nonsplit(e2)) || attempt == 19) break;
      e1 = random_extension(g, ra, rc, rng, 3);
    }
    const ShortExactSeq& s = e1.seq;   // 0 -> A -> B -> C -> 0
    const ShortExactSeq& s2 = e2.seq;  // 0 -> A' -> B' -> C' -> 0
    const ResolutionPtr& r = e1.bar;
    CochainComplex start(r, hom_module(s2.A(), s.C()), Coefficients::Integral);
    CochainComplex end(r, hom_module(s2.C(), s.A()), Coefficients::Integral);
    Cochain z = backwards ? identity_cochain(s.C()) : random_class(start, degree, rng);
    Cochain one = connect(hom_into(s2, s.A()), r, connect(hom_from(s2.A(), s), r, z));
    Cochain two = connect(hom_from(s2.C(), s), r, connect(hom_into(s2, s.C()), r, z));
    ++t.instances;
    if (!end.is_coboundary(one)) ++t.nontrivial;
    if (!end.is_coboundary(one + two))
      t.fail(group_name(*g) + " degree " + std::to_string(degree) + ": composites do not cancel");
  }
  return t;
}

Tally coboundaries_vs_brute_force(Rng& rng) {
  Tally t;
  for (std::size_t n : {2, 3, 4}) {
    GroupPtr g = cyclic_group(n);
    for (int lattice = 0; lattice < 8; ++lattice) {
      GLattice l = random_lattice(g, static_cast<std::size_t>(1 + lattice % 2), rng);
      const std::vector<std::pair<ResolutionPtr, std::size_t>> setups{
          {free_resolution(g, 3), 1}, {free_resolution(g, 3), 2}, {bar_resolution(g, 2), 1}};
      for (const auto& [res, degree] : setups) {
        CochainComplex cx(res, l, Coefficients::QmodZ);
        CohomologyGroup h = cx.cohomology(degree);
        for (int trial = 0; trial < 12; ++trial) {
          Cochain z = cx.zero(degree);
          const int kind = trial % 4;
          if (kind != 3)
            for (const auto& gen : h.generators()) z = z + gen.scaled(uniform(rng, 0, 5));
          if (kind >= 1) z = z + cx.coboundary(cx.make(degree - 1, random_fractions(cx.dimension(degree - 1), 2 * static_cast<long>(n), rng)));
          if (kind == 3 && trial % 8 == 3) z = z + cx.make(degree, random_fractions(cx.dimension(degree), 4, rng));
          auto oracle = brute_force_coboundary(cx, z);
          if (!oracle) {
            ++t.skipped;
            continue;
          }
          ++t.instances;
          const bool detected = cx.is_coboundary(z);
          if (!*oracle && cx.is_cocycle(z)) ++t.nontrivial;
          if (detected != *oracle)
            t.fail("C" + std::to_string(n) + " degree " + std::to_string(degree) + " on " + res->name() +
                   ": detector " + (detected ? "yes" : "no") + ", search " + (*oracle ? "yes" : "no"));
          if (detected) {
            auto w = cx.coboundary_witness(z);
            if (!w || !(cx.coboundary(*w) - z).is_zero()) t.fail("witness does not reproduce the cochain");
          }
        }
      }
    }
  }
  return t;
}

Tally shift_orders(Rng& rng) {
  Tally t;
  for (GroupPtr g : small_groups()) {
    if (g->order() == 1) continue;
    ResolutionPtr res = bar_resolution(g, 4);
    for (int lattice = 0; lattice < 4; ++lattice) {
      GLattice l = random_lattice(g, static_cast<std::size_t>(uniform(rng, 1, 3)), rng);
      CochainComplex z_cx(res, l, Coefficients::Integral);
      CochainComplex q_cx(res, l, Coefficients::QmodZ);
      for (std::size_t j : {1, 2}) {
        for (int trial = 0; trial < 3; ++trial) {
          Cochain z = random_class(q_cx, j, rng);
          Cochain y = shift_iso(z_cx, z);
          ++t.instances;
          if (q_cx.class_order(z) > 1) ++t.nontrivial;
          if (q_cx.class_order(z) != z_cx.class_order(y)) t.fail("shift changes the order in degree " + std::to_string(j));
          if (!q_cx.is_coboundary(shift_inverse(z_cx, y) - z)) t.fail("shift_inverse does not undo shift_iso");

          Cochain y2 = random_class(z_cx, j + 1, rng);
          Cochain z2 = shift_inverse(z_cx, y2);
          ++t.instances;
          if (z_cx.class_order(y2) > 1) ++t.nontrivial;
          if (z_cx.class_order(y2) != q_cx.class_order(z2))
            t.fail("shift_inverse changes the order in degree " + std::to_string(j + 1));
          if (!z_cx.is_coboundary(shift_iso(z_cx, z2) - y2)) t.fail("shift_iso does not undo shift_inverse");
        }
      }
    }
  }
  return t;
}

Tally resolution_independence(const std::string& fixture_name, std::size_t full_degree, std::size_t lattice_degree) {
  Tally t;
  AffineTorusAction act = fixture_action(fixture_name);
  // Degrees beyond the given resolution only fix the image of the last
  // boundary, so H^n of the given complex is computed on a greedy extension.
  ResolutionPtr own = extend_resolution(act.resolution, full_degree + 1);
  ResolutionPtr bar = bar_resolution(act.group, std::max<std::size_t>(full_degree + 1, 3));
  ShortExactSeq seq = divisor_sequence(act);
  const std::vector<std::pair<GLattice, std::size_t>> lattices{
      {GLattice::trivial(act.group, 1), full_degree}, {act.m, full_degree}, {act.m.dual(), full_degree},
      {seq.C(), lattice_degree}, {seq.C().dual(), lattice_degree}};
  const char* names[] = {"Z", "M", "M^", "Pic", "Pic^"};
  for (std::size_t li = 0; li < lattices.size(); ++li) {
    const auto& [l, top] = lattices[li];
    CochainComplex a(own, l, Coefficients::Integral), b(bar, l, Coefficients::Integral);
    for (std::size_t n = 1; n <= top; ++n) {
      ++t.instances;
      CohomologyGroup ha = a.cohomology(n), hb = b.cohomology(n);
      if (!ha.group().is_trivial()) ++t.nontrivial;
      if (ha.group() != hb.group())
        t.fail(std::string(names[li]) + " H^" + std::to_string(n) + ": " + ha.group().to_string() + " vs " +
               hb.group().to_string());
      for (const auto& gen : ha.generators())
        if (a.class_order(gen) != b.class_order(transport_class(own, bar, l, gen)))
          t.fail(std::string(names[li]) + " H^" + std::to_string(n) + ": order changes on transport to bar");
      for (const auto& gen : hb.generators())
        if (b.class_order(gen) != a.class_order(transport_class(bar, own, l, gen)))
          t.fail(std::string(names[li]) + " H^" + std::to_string(n) + ": order changes on transport from bar");
    }
  }
  // Degree 3 classes: the shifted obstruction and the delta_3 images.
  ObstructionClass ob = obstruction_class(act);
  GLattice pic_dual = seq.C().dual();
  CochainComplex a3(own, pic_dual, Coefficients::Integral), b3(bar, pic_dual, Coefficients::Integral);
  ++t.instances;
  if (!ob.trivial) ++t.nontrivial;
  if (a3.class_order(ob.shifted) != b3.class_order(transport_class(own, bar, pic_dual, ob.shifted)))
    t.fail("the shifted obstruction changes order on transport");
  GLattice z1 = GLattice::trivial(act.group, 1);
  CochainComplex q_own(own, z1, Coefficients::QmodZ), q_bar(bar, z1, Coefficients::QmodZ);
  for (const auto& c : amitsur_images(act, 3)) {
    ++t.instances;
    if (!q_own.is_coboundary(c)) ++t.nontrivial;
    if (q_own.class_order(c) != q_bar.class_order(transport_class(own, bar, z1, c)))
      t.fail("a delta_3 image changes order on transport");
  }
  return t;
}

Tally fixed_point_vanishing(std::size_t instances, Rng& rng, const std::vector<std::string>& linear_parts_of) {
  Tally t;
  for (std::size_t k = 0; k < instances; ++k) {
    const std::size_t d = 1 + k % 3;
    RandomToric rt = random_toric_action(d, rng);
    AffineTorusAction act = validate_action(rt.group, rt.assignment, rt.fan);
    ++t.instances;
    if (!h1_pic(act).is_trivial()) ++t.nontrivial;
    const std::string where = "dimension " + std::to_string(d) + ", order " + std::to_string(rt.group->order()) +
                              ", " + std::to_string(rt.fan.rays.size()) + " rays";
    if (!obstruction_class(act).trivial) t.fail(where + ": obstruction is nonzero");
    if (!amitsur(act, 2).is_trivial()) t.fail(where + ": Am2 is nonzero");
    if (!amitsur(act, 3).is_trivial()) t.fail(where + ": Am3 is nonzero");
  }
  // Random fans of dimension at most 3 rarely have H^1(G, Pic) != 0, the fixtures do.
  for (const auto& name : linear_parts_of) {
    Problem p = load_fixture(name);
    for (auto& a : p.assignment) a.lambda = QmodZVector(a.lambda.size());
    AffineTorusAction act = validate_action(p.group, p.assignment, p.fan, p.resolution);
    ++t.instances;
    if (!h1_pic(act).is_trivial()) ++t.nontrivial;
    if (!obstruction_class(act).trivial) t.fail(name + " without translations: obstruction is nonzero");
    if (!amitsur(act, 2).is_trivial()) t.fail(name + " without translations: Am2 is nonzero");
    if (!amitsur(act, 3).is_trivial()) t.fail(name + " without translations: Am3 is nonzero");
  }
  return t;
}

Tally coboundary_invariance(const std::vector<std::string>& fixtures, const AnalysisOptions& options, Rng& rng) {
  Tally t;
  for (const auto& name : fixtures) {
    Problem p = load_fixture(name);
    AffineTorusAction act = validate_action(p.group, p.assignment, p.fan, p.resolution);
    const std::string before = invariant_summary(analyze(act, options));
    QmodZVector theta(act.m.rank());
    for (std::size_t i = 0; i < theta.size(); ++i) theta.set(i, fraction(uniform(rng, 0, 11), 12));
    std::vector<AffineMap> shifted = shift_translations(p.assignment, theta);
    ++t.instances;
    if (shifted != p.assignment) ++t.nontrivial;
    AffineTorusAction moved = validate_action(p.group, shifted, p.fan, p.resolution);
    const std::string after = invariant_summary(analyze(moved, options));
    if (before != after) t.fail(name + ": report changed\n" + before + "vs\n" + after);
  }
  return t;
}

Tally product_formula(const std::string& fixture_name) {
  Tally t;
  AffineTorusAction act = fixture_action(fixture_name);
  const std::size_t d = act.m.rank();
  const Fan p1{1, {{1}, {-1}}, {{0}, {1}}};
  for (std::size_t k = 0; k < d; ++k) {
    IntVector e(d), f(d);
    e[k] = 1;
    f[k] = -1;
    if (act.fan.rays.size() != 2 * d || act.fan.rays[2 * k] != e || act.fan.rays[2 * k + 1] != f) {
      t.fail("rays are not ordered as +-e_1, +-e_2, ...");
      return t;
    }
  }
  ObstructionClass whole = obstruction_class(act);
  ShortExactSeq whole_dual = divisor_sequence(act).dual();
  Cochain partial_p = map_cochain(whole_dual.f().matrix, whole.partial);
  Cochain shifted_p = map_cochain(whole_dual.f().matrix, whole.shifted);
  Int order = 1;
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<AffineMap> factor;
    for (const auto& a : act.assignment) {
      for (std::size_t j = 0; j < d; ++j)
        if (j != k && (a.matrix(k, j) != 0 || a.matrix(j, k) != 0)) t.fail("matrices are not diagonal");
      IntMatrix m(1, 1);
      m(0, 0) = a.matrix(k, k);
      factor.push_back(AffineMap{m, QmodZVector({a.lambda[k]})});
    }
    AffineTorusAction part = validate_action(act.group, factor, p1, act.resolution);
    ObstructionClass ob = obstruction_class(part);
    ShortExactSeq part_dual = divisor_sequence(part).dual();
    IntMatrix select(2, 2 * d);
    select(0, 2 * k) = 1;
    select(1, 2 * k + 1) = 1;
    const std::string where = "factor " + std::to_string(k + 1);
    ++t.instances;
    if (!ob.trivial) ++t.nontrivial;
    order = lcm(order, ob.order);
    const std::pair<const Cochain*, const Cochain*> pairs[] = {{&partial_p, &ob.partial}, {&shifted_p, &ob.shifted}};
    for (const auto& [whole_p, own] : pairs) {
      Cochain component = map_cochain(select, *whole_p);
      Cochain pulled = map_cochain(part_dual.retraction(), component);
      if (map_cochain(part_dual.f().matrix, pulled).values != component.values)
        t.fail(where + ": component of degree " + std::to_string(own->degree) + " is not in the image of Pic^dual");
      CochainComplex cx(act.resolution, part_dual.A(), own->kind);
      const bool closed = own->degree >= act.resolution->length() || cx.is_cocycle(pulled);
      if (!closed || !cx.is_coboundary(pulled - *own))
        t.fail(where + ": component of degree " + std::to_string(own->degree) + " differs from the factor class");
    }
  }
  if (order != whole.order) t.fail("order of the product class is not the lcm of the factor orders");
  return t;
}

}  // namespace equitor::test
