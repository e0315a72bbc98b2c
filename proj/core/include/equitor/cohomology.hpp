#pragma once

// Group cohomology through explicit free Z[G]-resolutions.
//
// A resolution is stored by its boundary maps d_n : P_n -> P_{n-1} with
// P_n = Z[G]^{r_n}; row j of d_n lists the coefficients of d_n(e_j) in the
// basis of P_{n-1}, so d_n(e_j) = sum_i d_n[j][i] e_i. A cochain of degree n
// with coefficients in a lattice L is the list of values on e_0..e_{r_n - 1},
// stored as one flat vector of length r_n * rank(L). The coboundary d^n sends
// z to (sum_i d_{n+1}[j][i] . z_i)_j; no sign is attached to d^n.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "equitor/exact_linear.hpp"
#include "equitor/finite_group.hpp"
#include "equitor/g_module.hpp"

namespace equitor {

// Element of Z[G] as sorted (element, coefficient) terms without zeros.
class GroupRingElement {
 public:
  GroupRingElement() = default;
  explicit GroupRingElement(std::vector<std::pair<Element, Int>> terms);
  static GroupRingElement unit(Element g, const Int& coefficient = 1);

  const std::vector<std::pair<Element, Int>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Int augmentation() const;
  GroupRingElement operator+(const GroupRingElement& other) const;
  GroupRingElement operator-(const GroupRingElement& other) const;
  GroupRingElement scaled(const Int& c) const;
  GroupRingElement multiply(const FiniteGroup& g, const GroupRingElement& other) const;
  // Image under a group homomorphism given elementwise.
  GroupRingElement mapped(const std::vector<Element>& phi) const;
  // Sum of coefficient * action(element).
  IntMatrix act(const GLattice& l) const;
  bool operator==(const GroupRingElement& other) const = default;

 private:
  std::vector<std::pair<Element, Int>> terms_;
};

using RingMatrix = std::vector<std::vector<GroupRingElement>>;

RingMatrix ring_matrix_product(const FiniteGroup& g, const RingMatrix& a, const RingMatrix& b);

class Resolution {
 public:
  // boundaries[n - 1] is d_n, of shape ranks[n] x ranks[n - 1].
  Resolution(GroupPtr group, std::vector<std::size_t> ranks, std::vector<RingMatrix> boundaries,
             std::string name);

  const GroupPtr& group() const { return group_; }
  // Highest degree n for which P_n is present.
  std::size_t length() const { return ranks_.size() - 1; }
  std::size_t rank(std::size_t n) const { return ranks_.at(n); }
  const RingMatrix& boundary(std::size_t n) const { return boundaries_.at(n - 1); }
  // Z-matrix of d_n on Z-bases; coordinate j * |G| + g is g . e_j.
  IntMatrix integral_boundary(std::size_t n) const;
  const std::string& name() const { return name_; }

 private:
  GroupPtr group_;
  std::vector<std::size_t> ranks_;
  std::vector<RingMatrix> boundaries_;
  std::string name_;
};

using ResolutionPtr = std::shared_ptr<const Resolution>;

struct ResolutionDiagnosis {
  bool ok = true;
  std::size_t degree = 0;
  std::string message;
};

// Checks d d = 0, the augmentation, and exactness at P_0..P_{length-1}.
ResolutionDiagnosis validate_resolution(const Resolution& r);

// Normalised bar resolution; throws BudgetError when |G|^(length+1) > budget.
ResolutionPtr bar_resolution(GroupPtr g, std::size_t length, std::size_t budget = 32768);
// Free resolution whose generators in each degree are chosen greedily: G-orbits
// of kernel vectors are added until their Z-span is the whole kernel.
ResolutionPtr free_resolution(GroupPtr g, std::size_t length);
// The same resolution with greedily chosen degrees appended up to length.
ResolutionPtr extend_resolution(ResolutionPtr r, std::size_t length);
// Bar resolution within budget, otherwise the greedy resolution.
ResolutionPtr default_resolution(GroupPtr g, std::size_t length, std::size_t budget = 32768);

enum class Coefficients { Integral, QmodZ };

struct Cochain {
  std::size_t degree = 0;
  Coefficients kind = Coefficients::Integral;
  RationalVector values;  // QmodZ values are kept in [0, 1)

  Cochain() = default;
  Cochain(std::size_t degree, Coefficients kind, RationalVector values);
  bool is_zero() const;
  Cochain operator+(const Cochain& other) const;
  Cochain operator-(const Cochain& other) const;
  Cochain operator-() const;
  Cochain scaled(const Int& c) const;
  // Value on generator e_j as a vector of length rank.
  RationalVector block(std::size_t j, std::size_t rank) const;
  std::string to_string(std::size_t rank) const;
};

class CohomologyGroup;

// Hom_G(P_*, L) or Hom_G(P_*, L (x) Q/Z).
class CochainComplex {
 public:
  CochainComplex(ResolutionPtr resolution, GLattice coefficients, Coefficients kind);

  const Resolution& resolution() const { return *resolution_; }
  const ResolutionPtr& resolution_ptr() const { return resolution_; }
  const GLattice& coefficients() const { return coefficients_; }
  Coefficients kind() const { return kind_; }
  std::size_t dimension(std::size_t n) const;
  Cochain zero(std::size_t n) const;
  Cochain make(std::size_t n, RationalVector values) const;

  // d^n : C^n -> C^{n+1}; requires P_{n+1}.
  const IntMatrix& coboundary_matrix(std::size_t n) const;
  Cochain coboundary(const Cochain& z) const;
  bool is_cocycle(const Cochain& z) const;

  // Class operations on degree n need P_n only.
  bool is_coboundary(const Cochain& z) const;
  std::optional<Cochain> coboundary_witness(const Cochain& z) const;
  // Solves d^{n-1} x = z for z of degree n >= 1 in the given mode.
  std::optional<RationalVector> solve_coboundary(const Cochain& z, SolveMode mode) const;
  // 0 when the class has infinite order.
  Int class_order(const Cochain& z) const;
  // Canonical coordinates of the class of z in C^n / B^n; equal iff cohomologous.
  RationalVector class_key(const Cochain& z) const;
  FinAbGroup generated_subgroup(const std::vector<Cochain>& classes) const;

  // Full group H^n; requires P_{n+1} and exactness at P_n.
  CohomologyGroup cohomology(std::size_t n) const;

 private:
  const SmithForm& boundary_smith(std::size_t n) const;
  void check(const Cochain& z) const;

  ResolutionPtr resolution_;
  GLattice coefficients_;
  Coefficients kind_;
  // Per-complex memo; a complex is not meant to be shared across threads.
  mutable std::vector<std::unique_ptr<IntMatrix>> coboundary_cache_;
  mutable std::vector<std::unique_ptr<SmithForm>> smith_cache_;
};

class CohomologyGroup {
 public:
  const FinAbGroup& group() const;
  std::size_t degree() const;
  // One cocycle per cyclic factor, torsion factors first.
  const std::vector<Cochain>& generators() const;
  // Coordinates of the class of a cocycle; torsion coordinates reduced.
  IntVector coordinates(const Cochain& z) const;
  Cochain element(const IntVector& coordinates) const;
  // Every element of a finite group, ordered by coordinates.
  std::vector<IntVector> all_elements(std::size_t limit = 4096) const;

 private:
  friend class CochainComplex;
  struct Data;
  std::shared_ptr<const Data> data_;
};

// Connecting map H^n(C) -> H^{n+1}(A) of 0 -> A -> B -> C -> 0 at cochain
// level: lift with the section, apply d in B, pull back with the retraction.
// middle is the complex of B; z has the kind of that complex.
Cochain connecting_hom(const ShortExactSeq& seq, const CochainComplex& middle, const Cochain& z);

// Connecting map H^n(M) -> H^{n+1}(Q/Z) of 0 -> Q/Z -> U -> M -> 0.
Cochain twisted_connecting(const TwistedUnitsModule& u, const Resolution& r, const Cochain& z);

// Image of 1_M under H^0(M^dual (x) M) -> H^1(M^dual (x) Q/Z) for the
// extension U, computed from the section m -> (0, m).
Cochain extension_class(const TwistedUnitsModule& u, const Resolution& r);

// Connecting map of 0 -> L -> L (x) Q -> L (x) Q/Z -> 0, from degree n Q/Z
// cochains of integral to degree n + 1 integral cochains, and its inverse.
Cochain shift_iso(const CochainComplex& integral, const Cochain& z);
Cochain shift_inverse(const CochainComplex& integral, const Cochain& y);

// Equivariant chain map between resolutions lifting the identity on Z, along
// an injective homomorphism inclusion : source group -> target group.
struct ChainMap {
  ResolutionPtr source;
  ResolutionPtr target;
  std::vector<Element> inclusion;
  // components[n][j][k]: coefficient of e_k in the image of e_j, in Z[target group].
  std::vector<RingMatrix> components;
};

ChainMap comparison_map(ResolutionPtr source, ResolutionPtr target, std::vector<Element> inclusion,
                        std::size_t degree);
// Cochain on the target resolution pulled back to the source resolution.
Cochain pull_back(const ChainMap& map, const GLattice& target_coefficients, const Cochain& z);
// The same class expressed over another resolution of the same group.
Cochain transport_class(ResolutionPtr from, ResolutionPtr to, const GLattice& coefficients,
                        const Cochain& z);
// Restriction to a subgroup, expressed over the given resolution of the subgroup.
Cochain restriction(const Cochain& z, ResolutionPtr g_resolution, const GLattice& coefficients,
                    const SubgroupEmbedding& h, ResolutionPtr h_resolution);

FinAbGroup image_subgroup(const CochainComplex& complex, const std::vector<Cochain>& classes);

}  // namespace equitor
