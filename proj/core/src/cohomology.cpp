#include "equitor/cohomology.hpp"

#include <sstream>

namespace equitor {

namespace {

void reduce_if(RationalVector& v, Coefficients kind) {
  if (kind == Coefficients::QmodZ)
    for (auto& x : v) x = frac(x);
}

SolveMode mode_of(Coefficients kind) {
  return kind == Coefficients::QmodZ ? SolveMode::ModOne : SolveMode::Integer;
}

Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

// ------------------------------------------------------------------ Cochain

Cochain::Cochain(std::size_t d, Coefficients k, RationalVector v)
    : degree(d), kind(k), values(std::move(v)) {
  reduce_if(values, kind);
}

bool Cochain::is_zero() const {
  for (const auto& v : values)
    if (v != 0) return false;
  return true;
}

Cochain Cochain::operator+(const Cochain& other) const {
  if (degree != other.degree || kind != other.kind || values.size() != other.values.size())
    throw InputError("adding incompatible cochains");
  RationalVector v = values;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += other.values[i];
  return Cochain(degree, kind, std::move(v));
}

Cochain Cochain::operator-(const Cochain& other) const { return *this + (-other); }

Cochain Cochain::operator-() const { return scaled(-1); }

Cochain Cochain::scaled(const Int& c) const {
  RationalVector v = values;
  for (auto& x : v) x *= c;
  return Cochain(degree, kind, std::move(v));
}

RationalVector Cochain::block(std::size_t j, std::size_t rank) const {
  return RationalVector(values.begin() + static_cast<std::ptrdiff_t>(j * rank),
                        values.begin() + static_cast<std::ptrdiff_t>((j + 1) * rank));
}

std::string Cochain::to_string(std::size_t rank) const {
  std::ostringstream os;
  os << '(';
  const std::size_t blocks = rank ? values.size() / rank : 0;
  for (std::size_t j = 0; j < blocks; ++j) {
    os << (j ? ", " : "") << '(';
    for (std::size_t i = 0; i < rank; ++i) os << (i ? ", " : "") << values[j * rank + i].get_str();
    os << ')';
  }
  os << ')';
  return os.str();
}

// ----------------------------------------------------------- CochainComplex

CochainComplex::CochainComplex(ResolutionPtr resolution, GLattice coefficients, Coefficients kind)
    : resolution_(std::move(resolution)), coefficients_(std::move(coefficients)), kind_(kind) {
  if (resolution_->group() != coefficients_.group())
    throw InputError("resolution and coefficients are over different groups");
  coboundary_cache_.resize(resolution_->length() + 1);
  smith_cache_.resize(resolution_->length() + 1);
}

std::size_t CochainComplex::dimension(std::size_t n) const {
  return resolution_->rank(n) * coefficients_.rank();
}

Cochain CochainComplex::zero(std::size_t n) const {
  return Cochain(n, kind_, RationalVector(dimension(n)));
}

Cochain CochainComplex::make(std::size_t n, RationalVector values) const {
  if (values.size() != dimension(n)) throw InputError("cochain has wrong length");
  return Cochain(n, kind_, std::move(values));
}

void CochainComplex::check(const Cochain& z) const {
  if (z.kind != kind_) throw InputError("cochain coefficients do not match the complex");
  if (z.degree > resolution_->length())
    throw InputError("resolution too short for degree " + std::to_string(z.degree));
  if (z.values.size() != dimension(z.degree)) throw InputError("cochain has wrong length");
}

const IntMatrix& CochainComplex::coboundary_matrix(std::size_t n) const {
  if (n + 1 > resolution_->length())
    throw InputError("coboundary d^" + std::to_string(n) + " needs P_" + std::to_string(n + 1) +
                     " but the resolution stops at " + std::to_string(resolution_->length()));
  if (!coboundary_cache_[n]) {
    const std::size_t r = coefficients_.rank();
    const auto& d = resolution_->boundary(n + 1);
    IntMatrix m(resolution_->rank(n + 1) * r, resolution_->rank(n) * r);
    for (std::size_t j = 0; j < resolution_->rank(n + 1); ++j)
      for (std::size_t i = 0; i < resolution_->rank(n); ++i) {
        if (d[j][i].is_zero()) continue;
        IntMatrix block = d[j][i].act(coefficients_);
        for (std::size_t a = 0; a < r; ++a)
          for (std::size_t b = 0; b < r; ++b) m(j * r + a, i * r + b) = block(a, b);
      }
    coboundary_cache_[n] = std::make_unique<IntMatrix>(std::move(m));
  }
  return *coboundary_cache_[n];
}

const SmithForm& CochainComplex::boundary_smith(std::size_t n) const {
  if (n > resolution_->length()) throw InputError("resolution too short");
  if (!smith_cache_[n]) {
    IntMatrix d = n == 0 ? IntMatrix(dimension(0), 0) : coboundary_matrix(n - 1);
    smith_cache_[n] = std::make_unique<SmithForm>(d);
  }
  return *smith_cache_[n];
}

Cochain CochainComplex::coboundary(const Cochain& z) const {
  check(z);
  return Cochain(z.degree + 1, kind_, coboundary_matrix(z.degree) * z.values);
}

bool CochainComplex::is_cocycle(const Cochain& z) const { return coboundary(z).is_zero(); }

std::optional<RationalVector> CochainComplex::solve_coboundary(const Cochain& z, SolveMode mode) const {
  check(z);
  if (z.degree == 0) {
    if (z.is_zero()) return RationalVector{};
    return std::nullopt;
  }
  return solve_linear(boundary_smith(z.degree), z.values, mode);
}

bool CochainComplex::is_coboundary(const Cochain& z) const {
  return solve_coboundary(z, mode_of(kind_)).has_value();
}

std::optional<Cochain> CochainComplex::coboundary_witness(const Cochain& z) const {
  auto x = solve_coboundary(z, mode_of(kind_));
  if (!x) return std::nullopt;
  if (z.degree == 0) return Cochain();
  return Cochain(z.degree - 1, kind_, std::move(*x));
}

Int CochainComplex::class_order(const Cochain& z) const {
  check(z);
  const SmithForm& s = boundary_smith(z.degree);
  RationalVector c = z.values;
  s.apply_U(c);
  Int order = 1;
  if (kind_ == Coefficients::QmodZ) {
    for (std::size_t i = s.rank(); i < c.size(); ++i)
      mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), c[i].get_den_mpz_t());
    return order;
  }
  for (std::size_t i = s.rank(); i < c.size(); ++i)
    if (c[i] != 0) return 0;
  for (std::size_t i = 0; i < s.rank(); ++i) {
    const Int& d = s.diagonal()[i];
    Int g;
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), c[i].get_num_mpz_t());
    Int part = d / g;
    mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), part.get_mpz_t());
  }
  return order;
}

RationalVector CochainComplex::class_key(const Cochain& z) const {
  check(z);
  const SmithForm& s = boundary_smith(z.degree);
  RationalVector c = z.values;
  s.apply_U(c);
  RationalVector key;
  if (kind_ == Coefficients::QmodZ) {
    for (std::size_t i = s.rank(); i < c.size(); ++i) key.push_back(frac(c[i]));
    return key;
  }
  for (std::size_t i = 0; i < s.rank(); ++i)
    if (s.diagonal()[i] != 1) key.push_back(Rational(mod(c[i].get_num(), s.diagonal()[i])));
  for (std::size_t i = s.rank(); i < c.size(); ++i) key.push_back(c[i]);
  return key;
}

FinAbGroup CochainComplex::generated_subgroup(const std::vector<Cochain>& classes) const {
  if (classes.empty()) return {};
  const std::size_t n = classes[0].degree;
  const SmithForm& s = boundary_smith(n);
  if (kind_ == Coefficients::QmodZ) {
    std::vector<QmodZVector> elems;
    for (const auto& z : classes) {
      check(z);
      if (z.degree != n) throw InputError("classes of different degrees");
      RationalVector c = z.values;
      s.apply_U(c);
      elems.emplace_back(RationalVector(c.begin() + static_cast<std::ptrdiff_t>(s.rank()), c.end()));
    }
    return subgroup_structure(elems);
  }
  IntVector moduli;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < s.rank(); ++i)
    if (s.diagonal()[i] != 1) {
      idx.push_back(i);
      moduli.push_back(s.diagonal()[i]);
    }
  for (std::size_t i = s.rank(); i < dimension(n); ++i) {
    idx.push_back(i);
    moduli.push_back(0);
  }
  std::vector<IntVector> elems;
  for (const auto& z : classes) {
    check(z);
    if (z.degree != n) throw InputError("classes of different degrees");
    RationalVector c = z.values;
    s.apply_U(c);
    IntVector e;
    for (std::size_t i : idx) e.push_back(c[i].get_num());
    elems.push_back(std::move(e));
  }
  return subgroup_structure(elems, moduli);
}

// ---------------------------------------------------------- CohomologyGroup

struct CohomologyGroup::Data {
  FinAbGroup group;
  std::size_t degree = 0;
  Coefficients kind = Coefficients::Integral;
  std::vector<Cochain> generators;
  IntVector moduli;               // per generator; 0 = free
  std::vector<std::size_t> keep;  // SNF coordinates retained
  // Integral: coordinates via kernel retraction then SNF of the restricted boundary.
  IntMatrix kernel_retraction;
  std::shared_ptr<SmithForm> quotient;
  // Q/Z: coordinates via the boundary SNF then the kernel SNF.
  std::shared_ptr<SmithForm> boundary;
  IntMatrix kernel_v_inverse;
  IntVector kernel_diagonal;
};

const FinAbGroup& CohomologyGroup::group() const { return data_->group; }
std::size_t CohomologyGroup::degree() const { return data_->degree; }
const std::vector<Cochain>& CohomologyGroup::generators() const { return data_->generators; }

IntVector CohomologyGroup::coordinates(const Cochain& z) const {
  const Data& d = *data_;
  if (z.degree != d.degree || z.kind != d.kind) throw InputError("cochain does not belong to this group");
  IntVector out;
  if (d.kind == Coefficients::Integral) {
    IntVector w = d.kernel_retraction * to_integral(z.values);
    d.quotient->apply_U(w);
    for (std::size_t k = 0; k < d.keep.size(); ++k) {
      const Int& c = w[d.keep[k]];
      out.push_back(d.moduli[k] == 0 ? c : mod(c, d.moduli[k]));
    }
    return out;
  }
  RationalVector c = z.values;
  d.boundary->apply_U(c);
  RationalVector w(c.begin() + static_cast<std::ptrdiff_t>(d.boundary->rank()), c.end());
  RationalVector u = d.kernel_v_inverse * w;
  for (std::size_t k = 0; k < d.keep.size(); ++k) {
    Rational v = u[d.keep[k]] * d.kernel_diagonal[d.keep[k]];
    v.canonicalize();
    if (!is_integral(v)) throw InputError("cochain is not a cocycle");
    out.push_back(mod(v.get_num(), d.moduli[k]));
  }
  return out;
}

Cochain CohomologyGroup::element(const IntVector& coords) const {
  const Data& d = *data_;
  if (coords.size() != d.generators.size()) throw InputError("wrong number of coordinates");
  Cochain z(d.degree, d.kind, RationalVector(d.generators.empty() ? 0 : d.generators[0].values.size()));
  if (d.generators.empty()) return z;
  for (std::size_t i = 0; i < coords.size(); ++i) z = z + d.generators[i].scaled(coords[i]);
  return z;
}

std::vector<IntVector> CohomologyGroup::all_elements(std::size_t limit) const {
  const Data& d = *data_;
  if (!d.group.is_finite()) throw InputError("cannot enumerate an infinite group");
  if (d.group.order() > limit) throw BudgetError("cohomology group too large to enumerate");
  std::vector<IntVector> out{IntVector(d.moduli.size())};
  for (std::size_t k = d.moduli.size(); k-- > 0;) {
    std::vector<IntVector> next;
    for (const auto& base : out)
      for (Int a = 0; a < d.moduli[k]; ++a) {
        IntVector v = base;
        v[k] = a;
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CohomologyGroup CochainComplex::cohomology(std::size_t n) const {
  auto data = std::make_shared<CohomologyGroup::Data>();
  data->degree = n;
  data->kind = kind_;
  const IntMatrix& e = coboundary_matrix(n);
  const std::size_t m = dimension(n);
  if (kind_ == Coefficients::Integral) {
    SmithForm se(e);
    std::vector<std::size_t> kcols, krows;
    for (std::size_t i = se.rank(); i < m; ++i) {
      kcols.push_back(i);
      krows.push_back(i);
    }
    IntMatrix kernel = se.V().select_columns(kcols);
    data->kernel_retraction = se.V_inverse().select_rows(krows);
    IntMatrix dq = n == 0 ? IntMatrix(kcols.size(), 0) : data->kernel_retraction * coboundary_matrix(n - 1);
    data->quotient = std::make_shared<SmithForm>(dq);
    const SmithForm& q = *data->quotient;
    for (std::size_t i = 0; i < q.rank(); ++i)
      if (q.diagonal()[i] != 1) {
        data->keep.push_back(i);
        data->moduli.push_back(q.diagonal()[i]);
        data->group.torsion.push_back(q.diagonal()[i]);
      }
    for (std::size_t i = q.rank(); i < kcols.size(); ++i) {
      data->keep.push_back(i);
      data->moduli.push_back(0);
      ++data->group.free_rank;
    }
    for (std::size_t i : data->keep) {
      IntVector w(kcols.size());
      w[i] = 1;
      q.apply_U_inverse(w);
      data->generators.emplace_back(n, kind_, to_rational(kernel * w));
    }
  } else {
    const SmithForm& sb = boundary_smith(n);
    data->boundary = std::make_shared<SmithForm>(sb);
    const std::size_t rd = sb.rank(), q = m - rd;
    IntMatrix ep(e.rows(), q);
    for (std::size_t i = 0; i < q; ++i) {
      IntVector col(m);
      col[rd + i] = 1;
      sb.apply_U_inverse(col);
      ep.set_column(i, e * col);
    }
    SmithForm sk(ep);
    if (sk.rank() < q)
      throw InputError("H^" + std::to_string(n) + " with Q/Z coefficients is not finite");
    data->kernel_v_inverse = sk.V_inverse();
    data->kernel_diagonal = sk.diagonal();
    for (std::size_t i = 0; i < q; ++i)
      if (sk.diagonal()[i] != 1) {
        data->keep.push_back(i);
        data->moduli.push_back(sk.diagonal()[i]);
        data->group.torsion.push_back(sk.diagonal()[i]);
        RationalVector y(q);
        for (std::size_t r = 0; r < q; ++r) y[r] = Rational(sk.V()(r, i), sk.diagonal()[i]);
        RationalVector full(m);
        for (std::size_t r = 0; r < q; ++r) full[rd + r] = y[r];
        for (auto& x : full) x.canonicalize();
        sb.apply_U_inverse(full);
        data->generators.emplace_back(n, kind_, std::move(full));
      }
  }
  CohomologyGroup g;
  g.data_ = std::move(data);
  return g;
}

// ------------------------------------------------------ connecting morphisms

namespace {

RationalVector apply_blocks(const IntMatrix& m, const RationalVector& v, std::size_t blocks) {
  const std::size_t in = m.cols();
  RationalVector out;
  out.reserve(blocks * m.rows());
  for (std::size_t j = 0; j < blocks; ++j) {
    RationalVector part(v.begin() + static_cast<std::ptrdiff_t>(j * in),
                        v.begin() + static_cast<std::ptrdiff_t>((j + 1) * in));
    RationalVector img = m * part;
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

bool vanishes(const RationalVector& v, Coefficients kind) {
  for (const auto& x : v)
    if (kind == Coefficients::QmodZ ? !is_integral(x) : x != 0) return false;
  return true;
}

}  // namespace

Cochain connecting_hom(const ShortExactSeq& seq, const CochainComplex& middle, const Cochain& z) {
  if (middle.coefficients().rank() != seq.B().rank()) throw InputError("middle complex does not match sequence");
  if (z.kind != middle.kind()) throw InputError("cochain kind does not match the complex");
  const auto& res = middle.resolution();
  const std::size_t n = z.degree;
  if (z.values.size() != res.rank(n) * seq.C().rank()) throw InputError("cochain has wrong length");
  Cochain lift(n, z.kind, apply_blocks(seq.section(), z.values, res.rank(n)));
  Cochain w = middle.coboundary(lift);
  const std::size_t blocks = res.rank(n + 1);
  if (!vanishes(apply_blocks(seq.g().matrix, w.values, blocks), z.kind))
    throw SelfCheckError("connecting map: input is not a cocycle");
  RationalVector y = apply_blocks(seq.retraction(), w.values, blocks);
  RationalVector back = apply_blocks(seq.f().matrix, y, blocks);
  for (std::size_t i = 0; i < back.size(); ++i) back[i] -= w.values[i];
  if (!vanishes(back, z.kind)) throw SelfCheckError("connecting map: lift does not come from A");
  return Cochain(n + 1, z.kind, std::move(y));
}

Cochain twisted_connecting(const TwistedUnitsModule& u, const Resolution& r, const Cochain& z) {
  const std::size_t n = z.degree, d = u.base.rank();
  if (z.kind != Coefficients::Integral) throw InputError("twisted connecting map takes integral cochains");
  if (z.values.size() != r.rank(n) * d) throw InputError("cochain has wrong length");
  if (n + 1 > r.length()) throw InputError("resolution too short for the connecting map");
  const auto& bd = r.boundary(n + 1);
  RationalVector out(r.rank(n + 1));
  for (std::size_t k = 0; k < r.rank(n + 1); ++k) {
    IntVector lattice_part(d);
    for (std::size_t j = 0; j < r.rank(n); ++j) {
      IntVector zj = to_integral(z.block(j, d));
      for (const auto& [h, c] : bd[k][j].terms()) {
        out[k] += c * dot(u.twist[h].values(), zj);
        IntVector img = u.base.action(h) * zj;
        for (std::size_t i = 0; i < d; ++i) lattice_part[i] += c * img[i];
      }
    }
    for (const auto& x : lattice_part)
      if (x != 0) throw SelfCheckError("twisted connecting map: input is not a cocycle");
  }
  return Cochain(n + 1, Coefficients::QmodZ, std::move(out));
}

Cochain extension_class(const TwistedUnitsModule& u, const Resolution& r) {
  const auto& g = *u.base.group();
  const std::size_t d = u.base.rank();
  if (r.length() < 1) throw InputError("resolution too short for the extension class");
  RationalVector out;
  for (std::size_t k = 0; k < r.rank(1); ++k) {
    const auto& a = r.boundary(1)[k][0];
    if (a.augmentation() != 0) throw SelfCheckError("d_1 does not land in the augmentation ideal");
    RationalVector v(d);
    for (const auto& [h, c] : a.terms()) {
      RationalVector mu = u.base.action(g.inv(h)).transpose() * u.twist[h].values();
      for (std::size_t i = 0; i < d; ++i) v[i] += c * mu[i];
    }
    out.insert(out.end(), v.begin(), v.end());
  }
  return Cochain(1, Coefficients::QmodZ, std::move(out));
}

Cochain shift_iso(const CochainComplex& integral, const Cochain& z) {
  if (integral.kind() != Coefficients::Integral || z.kind != Coefficients::QmodZ)
    throw InputError("shift takes a Q/Z cochain and an integral complex");
  RationalVector y = integral.coboundary_matrix(z.degree) * z.values;
  for (const auto& v : y)
    if (!is_integral(v)) throw SelfCheckError("shift: input is not a cocycle");
  return Cochain(z.degree + 1, Coefficients::Integral, std::move(y));
}

Cochain shift_inverse(const CochainComplex& integral, const Cochain& y) {
  if (integral.kind() != Coefficients::Integral || y.kind != Coefficients::Integral || y.degree == 0)
    throw InputError("inverse shift takes an integral cochain of positive degree");
  auto x = integral.solve_coboundary(y, SolveMode::Rational);
  if (!x) throw InputError("class is not torsion");
  return Cochain(y.degree - 1, Coefficients::QmodZ, std::move(*x));
}

// --------------------------------------------------------------- chain maps

ChainMap comparison_map(ResolutionPtr source, ResolutionPtr target, std::vector<Element> inclusion,
                        std::size_t degree) {
  const auto& tg = *target->group();
  if (source->length() < degree || target->length() < degree)
    throw InputError("resolutions too short for a chain map to degree " + std::to_string(degree));
  if (source->rank(0) != 1 || target->rank(0) != 1) throw InputError("P_0 must have rank 1");
  if (inclusion.size() != source->group()->order()) throw InputError("inclusion has wrong size");
  ChainMap map{source, target, inclusion, {}};
  map.components.push_back({{GroupRingElement::unit(0)}});
  const std::size_t g = tg.order();
  for (std::size_t n = 1; n <= degree; ++n) {
    SmithForm s(target->integral_boundary(n));
    const auto& prev = map.components[n - 1];
    const std::size_t rt_prev = target->rank(n - 1), rt = target->rank(n);
    RingMatrix comp;
    for (std::size_t j = 0; j < source->rank(n); ++j) {
      std::vector<GroupRingElement> y(rt_prev);
      for (std::size_t i = 0; i < source->rank(n - 1); ++i) {
        GroupRingElement a = source->boundary(n)[j][i].mapped(inclusion);
        if (a.is_zero()) continue;
        for (std::size_t k = 0; k < rt_prev; ++k)
          if (!prev[i][k].is_zero()) y[k] = y[k] + a.multiply(tg, prev[i][k]);
      }
      RationalVector rhs(g * rt_prev);
      for (std::size_t k = 0; k < rt_prev; ++k)
        for (const auto& [h, c] : y[k].terms()) rhs[k * g + h] = c;
      auto x = solve_linear(s, rhs, SolveMode::Integer);
      if (!x) throw SelfCheckError("chain map lift failed in degree " + std::to_string(n));
      std::vector<GroupRingElement> row(rt);
      for (std::size_t k = 0; k < rt; ++k) {
        std::vector<std::pair<Element, Int>> terms;
        for (Element h = 0; h < g; ++h)
          if ((*x)[k * g + h] != 0) terms.emplace_back(h, (*x)[k * g + h].get_num());
        row[k] = GroupRingElement(std::move(terms));
      }
      comp.push_back(std::move(row));
    }
    map.components.push_back(std::move(comp));
  }
  return map;
}

Cochain pull_back(const ChainMap& map, const GLattice& coeffs, const Cochain& z) {
  const std::size_t n = z.degree, r = coeffs.rank();
  if (n >= map.components.size()) throw InputError("chain map too short for this degree");
  if (z.values.size() != map.target->rank(n) * r) throw InputError("cochain has wrong length");
  const auto& comp = map.components[n];
  RationalVector out;
  for (std::size_t j = 0; j < map.source->rank(n); ++j) {
    RationalVector v(r);
    for (std::size_t k = 0; k < map.target->rank(n); ++k) {
      if (comp[j][k].is_zero()) continue;
      RationalVector img = comp[j][k].act(coeffs) * z.block(k, r);
      for (std::size_t i = 0; i < r; ++i) v[i] += img[i];
    }
    out.insert(out.end(), v.begin(), v.end());
  }
  return Cochain(n, z.kind, std::move(out));
}

Cochain transport_class(ResolutionPtr from, ResolutionPtr to, const GLattice& coeffs, const Cochain& z) {
  std::vector<Element> id(from->group()->order());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
  ChainMap map = comparison_map(std::move(to), std::move(from), std::move(id), z.degree);
  return pull_back(map, coeffs, z);
}

Cochain restriction(const Cochain& z, ResolutionPtr g_resolution, const GLattice& coeffs,
                    const SubgroupEmbedding& h, ResolutionPtr h_resolution) {
  ChainMap map = comparison_map(std::move(h_resolution), std::move(g_resolution), h.inclusion, z.degree);
  return pull_back(map, coeffs, z);
}

FinAbGroup image_subgroup(const CochainComplex& complex, const std::vector<Cochain>& classes) {
  return complex.generated_subgroup(classes);
}

}  // namespace equitor
