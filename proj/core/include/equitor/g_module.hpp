#pragma once

// G-lattices: free Z-modules of finite rank with a left action of a finite
// group by integer matrices, maps between them and short exact sequences.

#include <optional>
#include <string>
#include <vector>

#include "equitor/exact_linear.hpp"
#include "equitor/finite_group.hpp"

namespace equitor {

class GLattice {
 public:
  GLattice() = default;
  // action[g] is the matrix of element g; validated as a homomorphism.
  GLattice(GroupPtr group, std::vector<IntMatrix> action, std::string label = "");
  // Matrices for the group's generators only; extended along the group's words.
  static GLattice from_generators(GroupPtr group, const std::vector<IntMatrix>& generator_action,
                                  std::string label = "");
  static GLattice trivial(GroupPtr group, std::size_t rank, std::string label = "Z");
  // Left permutation action g . e_j = e_{perm[g][j]}.
  static GLattice permutation(GroupPtr group, const std::vector<std::vector<std::size_t>>& perm,
                              std::string label = "");

  const GroupPtr& group() const { return group_; }
  std::size_t rank() const { return rank_; }
  const IntMatrix& action(Element g) const { return action_[g]; }
  const std::vector<IntMatrix>& actions() const { return action_; }
  const std::string& label() const { return label_; }

  // Hom(L, Z) with g acting by the inverse transpose.
  GLattice dual() const;
  GLattice restrict_to(const SubgroupEmbedding& h) const;
  // Same lattice viewed through a homomorphism phi: H -> G (phi[h] in G).
  GLattice pullback(GroupPtr h, const std::vector<Element>& phi) const;

 private:
  GroupPtr group_;
  std::size_t rank_ = 0;
  std::vector<IntMatrix> action_;
  std::string label_;
};

// Hom(A, B) = A^dual (x) B; basis index i * rank(B) + j is a_i^dual (x) b_j.
GLattice hom_module(const GLattice& a, const GLattice& b);
GLattice tensor(const GLattice& a, const GLattice& b);
GLattice direct_sum(const GLattice& a, const GLattice& b);
// Columns form a basis of the invariant sublattice.
IntMatrix invariants(const GLattice& l);

struct GModuleMap {
  GLattice source;
  GLattice target;
  IntMatrix matrix;  // rank(target) x rank(source)

  // Throws ValidationError if the matrix does not commute with the action.
  GModuleMap(GLattice source, GLattice target, IntMatrix matrix);
  bool is_equivariant() const;
};

// 0 -> A -f-> B -g-> C -> 0 with Z-splittings: retraction t (t f = I) and
// section s (g s = I) chosen so that f t + s g = I.
class ShortExactSeq {
 public:
  // Throws ValidationError naming the failing condition.
  ShortExactSeq(GModuleMap f, GModuleMap g);
  // Returns a description of the first failing condition, or nullopt when exact.
  static std::optional<std::string> diagnose(const GModuleMap& f, const GModuleMap& g);

  const GModuleMap& f() const { return f_; }
  const GModuleMap& g() const { return g_; }
  const GLattice& A() const { return f_.source; }
  const GLattice& B() const { return f_.target; }
  const GLattice& C() const { return g_.target; }
  const IntMatrix& retraction() const { return t_; }
  const IntMatrix& section() const { return s_; }
  // 0 -> C^dual -> B^dual -> A^dual -> 0.
  ShortExactSeq dual() const;
  ShortExactSeq restrict_to(const SubgroupEmbedding& h) const;

 private:
  GModuleMap f_;
  GModuleMap g_;
  IntMatrix t_;
  IntMatrix s_;
};

// (Q/Z) + M with g.(q, m) = (q + <lambda_g, m>, A_g m); twist[g] = lambda_g.
// This is the character module of the units of the coordinate ring of the
// torus under the pulled-back affine action.
struct TwistedUnitsModule {
  GLattice base;
  std::vector<QmodZVector> twist;

  // Checks twist is a crossed homomorphism: lambda_{gh} = lambda_h + A_h^T lambda_g.
  TwistedUnitsModule(GLattice base, std::vector<QmodZVector> twist);
  TwistedUnitsModule restrict_to(const SubgroupEmbedding& h) const;
};

}  // namespace equitor
