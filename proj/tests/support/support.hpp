#pragma once

// Shared fixtures, random instance generators and brute-force oracles for the
// unit tests and the acceptance program.

#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "equitor/io.hpp"

namespace equitor::test {

using Rng = std::mt19937_64;

std::filesystem::path fixture(const std::string& name);
Problem load_fixture(const std::string& name);
// The fixture's action over its own resolution (greedy when none is given).
AffineTorusAction fixture_action(const std::string& name);
const std::vector<std::string>& fixture_names();

GroupPtr cyclic_group(std::size_t n);
GroupPtr klein_group();
// C1, C2, C3, C4 and C2 x C2.
std::vector<GroupPtr> small_groups();

long uniform(Rng& rng, long lo, long hi);
// num / den in lowest terms; mpq_class(num, den) alone does not canonicalize.
Rational fraction(const Int& num, const Int& den);
IntMatrix random_matrix(std::size_t rows, std::size_t cols, long lo, long hi, Rng& rng);
IntMatrix random_unimodular(std::size_t n, Rng& rng, int steps = 6);
// Block sum of small integral representations of a group from small_groups(),
// written in a random basis.
GLattice random_lattice(const GroupPtr& g, std::size_t rank, Rng& rng);

// 0 -> A -> B -> C -> 0 with B = A + C, the action on B twisted by a random
// 1-cocycle phi of G in Hom(C, A), and B written in a random basis.
struct RandomExtension {
  ShortExactSeq seq;
  ResolutionPtr bar;
  Cochain phi;  // degree 1 on the bar resolution, values in Hom(C, A)
};
RandomExtension random_extension(const GroupPtr& g, std::size_t rank_a, std::size_t rank_c, Rng& rng,
                                 std::size_t bar_length = 3);
RandomExtension random_extension(const GLattice& a, const GLattice& c, Rng& rng, std::size_t bar_length = 3);

// 0 -> Hom(X, A) -> Hom(X, B) -> Hom(X, C) -> 0.
ShortExactSeq hom_from(const GLattice& x, const ShortExactSeq& s);
// 0 -> Hom(C, Y) -> Hom(B, Y) -> Hom(A, Y) -> 0.
ShortExactSeq hom_into(const ShortExactSeq& s, const GLattice& y);
// The identity of L as a degree 0 cochain in Hom(L, L) over a resolution with rank(P_0) = 1.
Cochain identity_cochain(const GLattice& l);

// Applies a lattice map blockwise to a cochain whose values lie in Z^source_rank.
Cochain map_cochain(const IntMatrix& m, const Cochain& z);

// Searches x of degree n - 1 with d x = z among all cochains with entries in
// (1/(|G| D))Z/Z, D the common denominator of z; this bound is enough for
// Q/Z coefficients. Returns nullopt when the search space exceeds the budget.
std::optional<bool> brute_force_coboundary(const CochainComplex& cx, const Cochain& z,
                                           std::size_t budget = 1u << 20);

// Checks U A V = D, unimodularity of U and V, the diagonal shape and the
// divisibility chain; returns the first violation.
std::optional<std::string> smith_violation(const IntMatrix& a);

struct Coverage {
  std::size_t samples = 0;
  std::size_t uncovered = 0;
  std::size_t multiply_covered = 0;  // interior points in more than one cone
  std::vector<std::size_t> hits;     // interior hits per max cone
};
// Random integer points in the box [-1000, 1000]^d tested against every max
// cone of a smooth fan, optionally ignoring one cone.
Coverage monte_carlo_coverage(const Fan& fan, std::size_t samples, Rng& rng,
                              std::optional<std::size_t> skip_cone = std::nullopt);

// Compares is_complete with the Monte Carlo oracle on the fan and on the fan
// with its most frequently hit cone removed; returns the first disagreement.
std::optional<std::string> completeness_disagreement(const Fan& fan, Rng& rng, std::size_t samples);

// Fixed points of a subgroup on a toric variety whose rays are all +-e_i:
// searches every stable orbit O(tau) for a torsion point with bounded
// denominators fixed by the subgroup.
bool has_fixed_point_brute_force(const AffineTorusAction& act, const Subgroup& h);
// Same search on the open torus only; true iff rho restricts to zero on h.
bool torus_has_fixed_point(const AffineTorusAction& act, const Subgroup& h);

// Toric action (lambda = 0) of a random finite group on a random smooth
// complete invariant fan: (P^1)^d or P^d with invariant stellar subdivisions.
struct RandomToric {
  GroupPtr group;
  std::vector<AffineMap> assignment;
  Fan fan;
};
RandomToric random_toric_action(std::size_t dimension, Rng& rng, std::size_t max_order = 16);

// lambda_g + A_g^T theta - theta for every element.
std::vector<AffineMap> shift_translations(const std::vector<AffineMap>& assignment, const QmodZVector& theta);

// Every group, class order, verdict and status in a report, without the
// chosen cochain representatives.
std::string invariant_summary(const ObstructionReport& r);

// Data transcribed from the worked examples (rays, relations, cochains).
namespace worked {

// Names of the Q8 toric divisors in ray order.
const std::vector<std::string>& q8_divisors();
// The three relations of Pic for Q8 as coefficients on the divisors.
std::vector<IntVector> q8_relations();
// Divisor combination representing the nonzero class of H^1(Q8, Pic), second component.
IntVector q8_h1_pic_second();
// (0, e1 + e2) in M^2.
IntVector q8_h2_m_class();

// rho in (M^dual)^3 for D4.
IntVector d4_rho();
// The element of (P^dual)^4, 42 rays.
IntVector d4_e();
// The cochain w of the 2-torsion certificate.
IntVector d4_w();

}  // namespace worked

}  // namespace equitor::test
