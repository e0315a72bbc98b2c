#pragma once

// Torus-preserving actions of finite groups on smooth complete toric
// varieties: the translation class rho, the obstruction d(1_Pic) = -sigma,
// Amitsur groups, H^1(G, Pic), Condition (A) and the projective
// unirationality search over central cyclic extensions.
//
// Classes are reported with the unsigned cochain differential of
// cohomology.hpp; the stored representative of rho is (A_g^{-T} lambda_g)_g
// on the bar resolution, transported to the working resolution.

#include <optional>
#include <string>
#include <vector>

#include "equitor/cohomology.hpp"
#include "equitor/finite_group.hpp"
#include "equitor/g_module.hpp"
#include "equitor/toric.hpp"

namespace equitor {

struct AffineTorusAction {
  GroupPtr group;
  std::vector<AffineMap> assignment;  // per element
  Fan fan;
  ResolutionPtr resolution;
  GLattice m;                          // character lattice, g acts by A_g
  std::vector<Permutation> ray_perms;  // pi_g per element
  std::vector<std::string> warnings;
};

// Extends generator pairs along the group's words without checking consistency.
std::vector<AffineMap> extend_assignment(const FiniteGroup& g, const std::vector<AffineMap>& generator_pairs);

// Checks the homomorphism property of g -> A_g, the cocycle condition
// lambda_{gh} = lambda_h + A_h^T lambda_g, smoothness, completeness and
// invariance of the fan, and the resolution. Without a resolution the greedy
// resolution of the given length is used. Throws ValidationError.
AffineTorusAction validate_action(GroupPtr group, std::vector<AffineMap> assignment, Fan fan,
                                  ResolutionPtr resolution = nullptr, std::size_t resolution_length = 3);

// The action restricted to a subgroup; the subgroup resolution is bar when
// small enough, greedy otherwise, and the given one for the whole group.
AffineTorusAction restrict_action(const AffineTorusAction& act, const Subgroup& h);
// The action of a group acting through phi : H -> G.
AffineTorusAction pullback_action(const AffineTorusAction& act, GroupPtr h, const std::vector<Element>& phi);

TwistedUnitsModule units_module(const AffineTorusAction& act);
// 0 -> M -> P -> Pic -> 0 and its dual 0 -> Pic^dual -> P^dual -> M^dual -> 0.
ShortExactSeq divisor_sequence(const AffineTorusAction& act);

// rho in H^1(G, M^dual (x) Q/Z) over the action's resolution; checked against
// the extension class of the units module.
Cochain translation_class(const AffineTorusAction& act);

struct ObstructionClass {
  Cochain rho;       // degree 1, M^dual (x) Q/Z
  Cochain sigma;     // degree 2, Pic^dual (x) Q/Z
  Cochain partial;   // -sigma
  Cochain shifted;   // degree 3, Pic^dual, the shift of partial
  bool trivial = false;
  Int order = 1;
  std::optional<Cochain> sigma_witness;  // c with d c = sigma when trivial
};

// Triviality and order are decided over Q/Z in degree 2 and over Z in
// degree 3; disagreement throws SelfCheckError.
ObstructionClass obstruction_class(const AffineTorusAction& act);

struct Verdict {
  bool unirational = false;
  ObstructionClass obstruction;
  // Degree 1 cocycle in P^dual (x) Q/Z mapping onto rho.
  std::optional<Cochain> lift;
};

Verdict unirationality_verdict(const AffineTorusAction& act);
// Re-checks that a lift is a cocycle mapping onto rho.
bool verify_lift(const AffineTorusAction& act, const Cochain& rho, const Cochain& lift);

// Images of delta_2 (level 2) and delta_3 (level 3) for the whole group of the action.
FinAbGroup amitsur(const AffineTorusAction& act, int level);
// The delta_2 or delta_3 images of generators, as Q/Z cochains of degree level.
std::vector<Cochain> amitsur_images(const AffineTorusAction& act, int level);
FinAbGroup h1_pic(const AffineTorusAction& act);

struct ConditionAEntry {
  Subgroup subgroup;
  std::string label;
  bool satisfied = false;
  std::optional<Cone> witness;
  // Stable cones whose restricted class is nonzero, with the class order.
  std::vector<std::pair<Cone, Int>> failures;
};

// The class of the action on the orbit of a stable cone tau restricted to h,
// in H^1(h, (M cap tau^perp)^dual (x) Q/Z); returns its order.
Int orbit_class_order(const AffineTorusAction& act, const Subgroup& h, const Cone& tau);
std::vector<ConditionAEntry> condition_A(const AffineTorusAction& act);

struct PUResult {
  bool projectively_unirational = false;
  std::size_t classes_tried = 0;
  FinAbGroup schur;  // H^2(G, Q/Z)
  std::optional<IntVector> gamma;  // coordinates of the first succeeding class
  Int gamma_order = 0;
  std::size_t extension_order = 0;
  std::optional<Verdict> verdict;  // for the extension
};

PUResult pu_test(const AffineTorusAction& act, std::size_t max_extension_order = 64);

std::string subgroup_label(const FiniteGroup& g, const Subgroup& h);

// --------------------------------------------------------------- reporting

enum class SubgroupScope { None, Abelian, All };

struct AnalysisOptions {
  SubgroupScope subgroups = SubgroupScope::None;
  bool condition_a = false;
  bool pu = false;
  bool check_projectivity = false;
};

struct ClassSummary {
  bool trivial = true;
  Int order = 1;
  std::string representative;
};

struct SubgroupSummary {
  std::string label;
  std::size_t order = 0;
  FinAbGroup h1_pic;
  FinAbGroup am2;
  FinAbGroup am3;
};

struct ObstructionReport {
  std::string group;
  std::size_t group_order = 0;
  std::string resolution;
  std::vector<std::size_t> resolution_ranks;
  std::size_t dimension = 0;
  std::size_t rays = 0;
  std::size_t max_cones = 0;
  bool smooth = false;
  bool complete = false;
  std::string projective = "not checked";
  FinAbGroup pic;
  FinAbGroup h1_translation;  // H^1(G, M^dual (x) Q/Z)
  ClassSummary rho;
  ClassSummary partial;
  ClassSummary shifted;
  bool unirational = false;
  std::optional<std::string> witness;
  FinAbGroup h1_pic;
  FinAbGroup am2;
  FinAbGroup am3;
  std::vector<SubgroupSummary> subgroups;
  std::optional<std::vector<ConditionAEntry>> condition_a;
  std::optional<PUResult> pu;
  std::vector<std::string> warnings;
};

ObstructionReport analyze(const AffineTorusAction& act, const AnalysisOptions& options);

}  // namespace equitor
