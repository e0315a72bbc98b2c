#include "equitor/pipeline.hpp"

#include <algorithm>
#include <sstream>

#include "equitor/error.hpp"

namespace equitor {

namespace {

constexpr std::size_t kBarBudget = std::size_t{1} << 22;

// Bar resolutions are used for subgroups while their degree 3 cochains stay small.
ResolutionPtr working_resolution(GroupPtr h, std::size_t coefficient_rank) {
  const std::size_t n = h->order();
  std::size_t dim = coefficient_rank;
  for (int k = 0; k < 3; ++k) dim *= n - 1;
  if (n <= 8 && dim <= 1000) return bar_resolution(std::move(h), 3, kBarBudget);
  return free_resolution(std::move(h), 3);
}

Cochain map_blocks(const IntMatrix& m, const Cochain& z) {
  const std::size_t in = m.cols();
  const std::size_t blocks = in ? z.values.size() / in : 0;
  RationalVector out;
  for (std::size_t j = 0; j < blocks; ++j) {
    RationalVector img = m * z.block(j, in);
    out.insert(out.end(), img.begin(), img.end());
  }
  return Cochain(z.degree, z.kind, std::move(out));
}

Int element_order(const IntVector& coords, const IntVector& moduli) {
  Int order = 1;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    Int g;
    mpz_gcd(g.get_mpz_t(), coords[k].get_mpz_t(), moduli[k].get_mpz_t());
    Int part = moduli[k] / g;
    mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), part.get_mpz_t());
  }
  return order;
}

IntMatrix cone_rows(const Fan& fan, const Cone& tau) {
  IntMatrix rows(tau.size(), fan.dimension);
  for (std::size_t k = 0; k < tau.size(); ++k) rows.set_row(k, fan.rays[tau[k]]);
  return rows;
}

}  // namespace

std::vector<AffineMap> extend_assignment(const FiniteGroup& g, const std::vector<AffineMap>& pairs) {
  if (pairs.size() != g.generators().size()) throw InputError("need one pair per group generator");
  if (pairs.empty()) throw InputError("cannot infer the torus dimension without generators");
  const std::size_t d = pairs[0].matrix.rows();
  std::vector<AffineMap> out(g.order());
  std::vector<bool> seen(g.order());
  out[0] = AffineMap::identity(d);
  seen[0] = true;
  std::vector<Element> queue{0};
  for (std::size_t cur = 0; cur < queue.size(); ++cur)
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      Element next = g.mul(queue[cur], g.generators()[i]);
      if (seen[next]) continue;
      seen[next] = true;
      out[next] = out[queue[cur]] * pairs[i];
      queue.push_back(next);
    }
  return out;
}

AffineTorusAction validate_action(GroupPtr group, std::vector<AffineMap> assignment, Fan fan,
                                  ResolutionPtr resolution, std::size_t length) {
  if (!group) throw InputError("action without a group");
  const auto& g = *group;
  if (assignment.size() != g.order()) throw InputError("assignment must list every group element");
  validate_fan(fan);
  const std::size_t d = fan.dimension;
  for (Element x = 0; x < g.order(); ++x) {
    const auto& a = assignment[x];
    if (a.matrix.rows() != d || a.matrix.cols() != d || a.lambda.size() != d)
      throw InputError("pair of " + g.label(x) + " does not match the fan dimension");
    Int det = d ? determinant(a.matrix) : Int(1);
    if (det != 1 && det != -1)
      throw ValidationError("action", "matrix of " + g.label(x) + " is not invertible over Z");
  }
  if (!assignment[0].matrix.is_identity() && d)
    throw ValidationError("action", "identity acts by a nontrivial matrix");
  if (!assignment[0].lambda.is_zero()) throw ValidationError("action", "identity has a nonzero translation");
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b) {
      const auto& pa = assignment[a];
      const auto& pb = assignment[b];
      const auto& pab = assignment[g.mul(a, b)];
      if (!(pa.matrix * pb.matrix == pab.matrix))
        throw ValidationError("action", "matrices are not a homomorphism at (" + g.label(a) + ", " +
                                            g.label(b) + ")");
      if (!(pb.lambda + pb.matrix.transpose() * pa.lambda == pab.lambda))
        throw ValidationError("action", "translation cocycle condition fails at (" + g.label(a) + ", " +
                                            g.label(b) + ")");
    }
  if (!is_complete(fan)) throw ValidationError("fan", "fan is not complete");
  AffineTorusAction act;
  act.group = group;
  std::vector<IntMatrix> matrices;
  for (const auto& a : assignment) matrices.push_back(a.matrix);
  act.m = GLattice(group, std::move(matrices), "M");
  act.ray_perms = ray_permutations(fan, act.m);
  for (Element x = 1; x < g.order(); ++x)
    if (assignment[x] == AffineMap::identity(d)) {
      act.warnings.push_back("action is not faithful: " + g.label(x) + " acts trivially");
      break;
    }
  if (resolution) {
    if (resolution->group() != group) throw InputError("resolution belongs to a different group");
    auto diag = validate_resolution(*resolution);
    if (!diag.ok) throw ValidationError("resolution", diag.message);
    if (resolution->length() < 3) throw ValidationError("resolution", "degree 3 is required");
    act.resolution = std::move(resolution);
  } else {
    act.resolution = free_resolution(group, std::max<std::size_t>(length, 3));
  }
  act.assignment = std::move(assignment);
  act.fan = std::move(fan);
  return act;
}

AffineTorusAction restrict_action(const AffineTorusAction& act, const Subgroup& h) {
  if (h.order() == act.group->order()) return act;
  SubgroupEmbedding emb = subgroup_as_group(*act.group, h);
  AffineTorusAction r;
  r.group = emb.group;
  for (Element e : emb.inclusion) {
    r.assignment.push_back(act.assignment[e]);
    r.ray_perms.push_back(act.ray_perms[e]);
  }
  r.fan = act.fan;
  r.m = act.m.restrict_to(emb);
  r.resolution = working_resolution(emb.group, act.fan.rays.size());
  return r;
}

AffineTorusAction pullback_action(const AffineTorusAction& act, GroupPtr h, const std::vector<Element>& phi) {
  std::vector<AffineMap> assignment;
  for (Element e : phi) assignment.push_back(act.assignment.at(e));
  return validate_action(std::move(h), std::move(assignment), act.fan);
}

TwistedUnitsModule units_module(const AffineTorusAction& act) {
  std::vector<QmodZVector> twist;
  for (const auto& a : act.assignment) twist.push_back(a.lambda);
  return TwistedUnitsModule(act.m, std::move(twist));
}

ShortExactSeq divisor_sequence(const AffineTorusAction& act) { return divisor_sequence(act.fan, act.m); }

// ------------------------------------------------------------------ classes

Cochain translation_class(const AffineTorusAction& act) {
  const auto& g = *act.group;
  GLattice mdual = act.m.dual();
  TwistedUnitsModule units = units_module(act);
  auto bar = bar_resolution(act.group, 1, kBarBudget);
  RationalVector values;
  for (Element x = 1; x < g.order(); ++x) {
    RationalVector mu = act.m.action(g.inv(x)).transpose() * act.assignment[x].lambda.values();
    values.insert(values.end(), mu.begin(), mu.end());
  }
  Cochain on_bar(1, Coefficients::QmodZ, std::move(values));
  CochainComplex bx(bar, mdual, Coefficients::QmodZ);
  if (!bx.is_coboundary(on_bar - extension_class(units, *bar)))
    throw SelfCheckError("translation class disagrees with the extension class of the units module");
  if (act.resolution->name() == "bar") return on_bar;
  // The same extension class, computed directly on the working resolution.
  return extension_class(units, *act.resolution);
}

ObstructionClass obstruction_class(const AffineTorusAction& act) {
  ShortExactSeq dual = divisor_sequence(act).dual();
  CochainComplex p_q(act.resolution, dual.B(), Coefficients::QmodZ);
  CochainComplex pic_q(act.resolution, dual.A(), Coefficients::QmodZ);
  CochainComplex pic_z(act.resolution, dual.A(), Coefficients::Integral);
  ObstructionClass ob;
  ob.rho = translation_class(act);
  ob.sigma = connecting_hom(dual, p_q, ob.rho);
  ob.partial = -ob.sigma;
  ob.shifted = shift_iso(pic_z, ob.partial);
  ob.sigma_witness = pic_q.coboundary_witness(ob.sigma);
  const bool trivial_z = pic_z.is_coboundary(ob.shifted);
  if (ob.sigma_witness.has_value() != trivial_z)
    throw SelfCheckError("obstruction triviality differs between Q/Z and shifted integral coefficients");
  ob.trivial = trivial_z;
  ob.order = pic_q.class_order(ob.partial);
  if (ob.order != pic_z.class_order(ob.shifted))
    throw SelfCheckError("obstruction order differs between Q/Z and shifted integral coefficients");
  return ob;
}

bool verify_lift(const AffineTorusAction& act, const Cochain& rho, const Cochain& lift) {
  ShortExactSeq dual = divisor_sequence(act).dual();
  CochainComplex p_q(act.resolution, dual.B(), Coefficients::QmodZ);
  if (lift.degree != 1 || lift.kind != Coefficients::QmodZ || lift.values.size() != p_q.dimension(1))
    return false;
  if (!p_q.is_cocycle(lift)) return false;
  return (map_blocks(dual.g().matrix, lift) - rho).is_zero();
}

Verdict unirationality_verdict(const AffineTorusAction& act) {
  Verdict v;
  v.obstruction = obstruction_class(act);
  v.unirational = v.obstruction.trivial;
  if (v.unirational) {
    ShortExactSeq dual = divisor_sequence(act).dual();
    Cochain lift = map_blocks(dual.section(), v.obstruction.rho) - map_blocks(dual.f().matrix, *v.obstruction.sigma_witness);
    if (!verify_lift(act, v.obstruction.rho, lift)) throw SelfCheckError("lift certificate failed verification");
    v.lift = std::move(lift);
  }
  return v;
}

std::vector<Cochain> amitsur_images(const AffineTorusAction& act, int level) {
  ShortExactSeq seq = divisor_sequence(act);
  TwistedUnitsModule units = units_module(act);
  CochainComplex p_z(act.resolution, seq.B(), Coefficients::Integral);
  std::vector<Cochain> out;
  if (level == 2) {
    IntMatrix inv = invariants(seq.C());
    for (std::size_t c = 0; c < inv.cols(); ++c) {
      Cochain z(0, Coefficients::Integral, to_rational(inv.column(c)));
      out.push_back(twisted_connecting(units, *act.resolution, connecting_hom(seq, p_z, z)));
    }
  } else if (level == 3) {
    CochainComplex pic_z(act.resolution, seq.C(), Coefficients::Integral);
    CohomologyGroup h1 = pic_z.cohomology(1);
    for (const auto& gen : h1.generators())
      out.push_back(twisted_connecting(units, *act.resolution, connecting_hom(seq, p_z, gen)));
  } else {
    throw InputError("Amitsur level must be 2 or 3");
  }
  return out;
}

FinAbGroup amitsur(const AffineTorusAction& act, int level) {
  auto images = amitsur_images(act, level);
  CochainComplex q(act.resolution, GLattice::trivial(act.group, 1), Coefficients::QmodZ);
  return image_subgroup(q, images);
}

FinAbGroup h1_pic(const AffineTorusAction& act) {
  CochainComplex pic_z(act.resolution, divisor_sequence(act).C(), Coefficients::Integral);
  return pic_z.cohomology(1).group();
}

// -------------------------------------------------------------- condition A

Int orbit_class_order(const AffineTorusAction& act, const Subgroup& h, const Cone& tau) {
  const std::size_t d = act.fan.dimension;
  if (tau.size() == d) return 1;
  SubgroupEmbedding emb = subgroup_as_group(*act.group, h);
  IntMatrix k = tau.empty() ? IntMatrix::identity(d) : kernel_basis(cone_rows(act.fan, tau));
  IntMatrix kl = left_inverse(k);
  std::vector<IntMatrix> actions;
  std::vector<QmodZVector> twist;
  for (Element e : emb.inclusion) {
    const auto& a = act.assignment[e];
    actions.push_back(kl * a.matrix * k);
    twist.push_back(k.transpose() * a.lambda);
  }
  GLattice mt(emb.group, std::move(actions), "M_tau");
  TwistedUnitsModule u(mt, std::move(twist));
  auto bar = bar_resolution(emb.group, 1, kBarBudget);
  CochainComplex cx(bar, mt.dual(), Coefficients::QmodZ);
  return cx.class_order(extension_class(u, *bar));
}

std::vector<ConditionAEntry> condition_A(const AffineTorusAction& act) {
  std::vector<ConditionAEntry> out;
  for (const auto& h : subgroups(*act.group, SubgroupFilter::Abelian, act.group->order())) {
    ConditionAEntry entry;
    entry.subgroup = h;
    entry.label = subgroup_label(*act.group, h);
    std::vector<Permutation> perms;
    for (Element e : h.elements) perms.push_back(act.ray_perms[e]);
    std::vector<Cone> stable = stable_cones(act.fan, perms);
    std::stable_sort(stable.begin(), stable.end(),
                     [](const Cone& a, const Cone& b) { return a.size() > b.size(); });
    for (const auto& tau : stable) {
      Int order = orbit_class_order(act, h, tau);
      if (order == 1) {
        entry.satisfied = true;
        entry.witness = tau;
        entry.failures.clear();
        break;
      }
      entry.failures.emplace_back(tau, order);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

// ---------------------------------------------------------------------- PU

PUResult pu_test(const AffineTorusAction& act, std::size_t max_extension_order) {
  const auto& g = *act.group;
  const std::size_t n = g.order();
  GLattice z1 = GLattice::trivial(act.group, 1);
  CochainComplex hq(act.resolution, z1, Coefficients::QmodZ);
  CohomologyGroup h2 = hq.cohomology(2);
  PUResult result;
  result.schur = h2.group();
  const IntVector& moduli = h2.group().torsion;
  std::vector<std::pair<Int, IntVector>> classes;
  for (auto& c : h2.all_elements()) {
    Int o = element_order(c, moduli);
    classes.emplace_back(o, std::move(c));
  }
  std::sort(classes.begin(), classes.end());
  ResolutionPtr bar;
  std::unique_ptr<CochainComplex> bq;
  std::optional<ChainMap> to_bar;
  for (const auto& [order, coords] : classes) {
    ++result.classes_tried;
    Verdict v;
    std::size_t ext_order = n;
    if (order == 1) {
      v = unirationality_verdict(act);
    } else {
      if (!bar) {
        bar = bar_resolution(act.group, 2, kBarBudget);
        bq = std::make_unique<CochainComplex>(bar, z1, Coefficients::QmodZ);
        std::vector<Element> id(n);
        for (Element e = 0; e < n; ++e) id[e] = e;
        to_bar = comparison_map(bar, act.resolution, std::move(id), 2);
      }
      Cochain c = pull_back(*to_bar, z1, h2.element(coords));
      auto b = bq->coboundary_witness(c.scaled(order));
      if (!b) throw SelfCheckError("class order does not kill the transported cocycle");
      RationalVector bk = b->values;
      for (auto& x : bk) x /= order;
      Cochain reduced = c - bq->coboundary(Cochain(1, Coefficients::QmodZ, std::move(bk)));
      std::vector<std::vector<Int>> table(n, std::vector<Int>(n));
      for (Element x = 1; x < n; ++x)
        for (Element y = 1; y < n; ++y) {
          Rational v2 = reduced.values[(x - 1) * (n - 1) + (y - 1)] * order;
          v2.canonicalize();
          if (!is_integral(v2)) throw SelfCheckError("reduced cocycle has the wrong denominator");
          table[x][y] = v2.get_num();
        }
      CentralExtension ext = central_cyclic_extension(g, table, order, max_extension_order);
      ext_order = ext.total->order();
      v = unirationality_verdict(pullback_action(act, ext.total, ext.projection));
    }
    if (v.unirational) {
      result.projectively_unirational = true;
      result.gamma = coords;
      result.gamma_order = order;
      result.extension_order = ext_order;
      result.verdict = std::move(v);
      return result;
    }
  }
  return result;
}

std::string subgroup_label(const FiniteGroup& g, const Subgroup& h) {
  auto gens = greedy_generators(g, h);
  if (gens.empty()) return "<1>";
  std::string s = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? ", " : "") + g.label(gens[i]);
  return s + ">";
}

// ----------------------------------------------------------------- analysis

ObstructionReport analyze(const AffineTorusAction& act, const AnalysisOptions& options) {
  const auto& g = *act.group;
  ObstructionReport r;
  std::string gens;
  for (std::size_t i = 0; i < g.generators().size(); ++i)
    gens += (i ? ", " : "") + g.label(g.generators()[i]);
  r.group = "<" + gens + ">";
  r.group_order = g.order();
  r.resolution = act.resolution->name();
  for (std::size_t k = 0; k <= act.resolution->length(); ++k) r.resolution_ranks.push_back(act.resolution->rank(k));
  r.dimension = act.fan.dimension;
  r.rays = act.fan.rays.size();
  r.max_cones = act.fan.max_cones.size();
  r.smooth = true;
  r.complete = true;
  r.warnings = act.warnings;
  if (options.check_projectivity) {
    try {
      auto p = is_projective(act.fan);
      switch (p.status) {
        case ProjectivityResult::Status::Projective: r.projective = "yes"; break;
        case ProjectivityResult::Status::NotProjective:
          r.projective = "no";
          r.warnings.push_back("fan is not projective");
          break;
        case ProjectivityResult::Status::BudgetExceeded:
          r.projective = "unverified";
          r.warnings.push_back("projectivity unverified: LP exceeds the constraint budget");
          break;
      }
    } catch (const BudgetError& e) {
      r.projective = "unverified";
      r.warnings.push_back(std::string("projectivity unverified: ") + e.what());
    }
  } else {
    r.warnings.push_back("projectivity not checked");
  }
  ShortExactSeq seq = divisor_sequence(act);
  r.pic.free_rank = seq.C().rank();
  CochainComplex mq(act.resolution, act.m.dual(), Coefficients::QmodZ);
  r.h1_translation = mq.cohomology(1).group();

  Verdict v = unirationality_verdict(act);
  const auto& ob = v.obstruction;
  r.rho = {mq.is_coboundary(ob.rho), mq.class_order(ob.rho), ob.rho.to_string(act.m.rank())};
  r.partial = {ob.trivial, ob.order, ob.partial.to_string(seq.C().rank())};
  r.shifted = {ob.trivial, ob.order, ob.shifted.to_string(seq.C().rank())};
  r.unirational = v.unirational;
  if (v.lift) r.witness = v.lift->to_string(seq.B().rank());
  r.h1_pic = h1_pic(act);
  r.am2 = amitsur(act, 2);
  r.am3 = amitsur(act, 3);
  if (r.unirational && (!r.am2.is_trivial() || !r.am3.is_trivial()))
    throw SelfCheckError("unirational verdict with a nonzero Amitsur group");

  if (options.subgroups != SubgroupScope::None) {
    auto filter = options.subgroups == SubgroupScope::All ? SubgroupFilter::All : SubgroupFilter::Abelian;
    for (const auto& h : subgroups(g, filter, g.order())) {
      AffineTorusAction rh = restrict_action(act, h);
      SubgroupSummary s{subgroup_label(g, h), h.order(), h1_pic(rh), amitsur(rh, 2), amitsur(rh, 3)};
      if (r.unirational && (!s.am2.is_trivial() || !s.am3.is_trivial()))
        throw SelfCheckError("unirational verdict with a nonzero Amitsur group on " + s.label);
      r.subgroups.push_back(std::move(s));
    }
  }
  if (options.condition_a) {
    r.condition_a = condition_A(act);
    if (r.unirational)
      for (const auto& e : *r.condition_a)
        if (!e.satisfied) throw SelfCheckError("unirational verdict but Condition (A) fails on " + e.label);
  }
  if (options.pu) r.pu = pu_test(act);
  return r;
}

}  // namespace equitor
