#pragma once

// Fans in N = Z^d, their validation, symmetry and the divisor sequence
// 0 -> M -> P -> Pic -> 0 of the associated toric variety.
//
// A torus automorphism with pullback matrix A on M acts on N by A^T; its ray
// permutation pi satisfies A^T n_i = n_{pi(i)}.

#include <optional>
#include <string>
#include <vector>

#include "equitor/exact_linear.hpp"
#include "equitor/g_module.hpp"

namespace equitor {

// Sorted ray indices.
using Cone = std::vector<std::size_t>;
using Permutation = std::vector<std::size_t>;

struct Fan {
  std::size_t dimension = 0;
  std::vector<IntVector> rays;
  std::vector<Cone> max_cones;
};

struct FanDiagnosis {
  bool ok = true;
  std::string message;
};

// Primitive distinct rays, well formed cones with independent rays, and
// smoothness. Cones with dependent rays are reported as not simplicial.
FanDiagnosis diagnose_fan(const Fan& fan);
// Throws ValidationError("fan", ...) on the first failure.
void validate_fan(const Fan& fan);

// Every max cone is full dimensional, every facet lies in exactly two max
// cones on opposite sides, and a generic point lies in exactly one max cone.
bool is_complete(const Fan& fan);

struct ProjectivityResult {
  enum class Status { Projective, NotProjective, BudgetExceeded };
  Status status = Status::BudgetExceeded;
  // Support function values h(n_i) with h_j - sum a_i h_i >= 1 across every
  // cone, where n_j = sum a_i n_i over the rays of the cone.
  RationalVector support;
  std::size_t constraints = 0;
  std::size_t pivots = 0;
};

ProjectivityResult is_projective(const Fan& fan, std::size_t constraint_budget = 50000);
// Checks a support function certificate against every cone.
bool verify_support_function(const Fan& fan, const RationalVector& h);

// Throws ValidationError when the fan is not invariant.
Permutation induced_ray_permutation(const Fan& fan, const IntMatrix& m_action);
// Image of a cone under a ray permutation, sorted.
Cone permute_cone(const Cone& cone, const Permutation& perm);
// The permutation of -1 when the ray set is centrally symmetric.
std::optional<Permutation> negation_permutation(const Fan& fan);

struct ConeOrbitReport {
  std::vector<Cone> representatives;
  std::vector<std::size_t> sizes;
  std::size_t total = 0;
  std::size_t group_order = 0;
  bool with_minus_one = false;
};

// Orbits of max cones under the group generated by the given ray permutations.
ConeOrbitReport cone_orbits(const Fan& fan, const std::vector<Permutation>& generators,
                            bool include_minus_one);
// Max cones generated from orbit representatives.
std::vector<Cone> expand_orbits(const std::vector<Cone>& representatives,
                                const std::vector<Permutation>& generators);

// Star subdivision of every max cone containing the cone at a new ray, which
// must lie in the relative interior of that cone. The new ray is appended.
Fan stellar_subdivide(const Fan& fan, const Cone& cone, const IntVector& ray);

// All cones of the fan, including the zero cone, sorted by size then lexicographically.
std::vector<Cone> all_cones(const Fan& fan);
// Cones mapped to themselves by every given permutation.
std::vector<Cone> stable_cones(const Fan& fan, const std::vector<Permutation>& perms);

Fan product_fan(const Fan& a, const Fan& b);

// 0 -> M -> P -> Pic -> 0 with M -> P the map chi -> (<chi, n_i>)_i, P the
// permutation module g . D_j = D_{pi_g^{-1}(j)} and Pic the cokernel in the
// basis given by the Smith form of M -> P. m is the character lattice with
// the pullback action.
ShortExactSeq divisor_sequence(const Fan& fan, const GLattice& m);
// Ray permutation of every group element.
std::vector<Permutation> ray_permutations(const Fan& fan, const GLattice& m);

std::string cone_to_string(const Cone& cone, std::size_t index_base = 0);

}  // namespace equitor
