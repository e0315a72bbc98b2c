#include "equitor/g_module.hpp"

#include <utility>

namespace equitor {

GLattice::GLattice(GroupPtr group, std::vector<IntMatrix> action, std::string label)
    : group_(std::move(group)), action_(std::move(action)), label_(std::move(label)) {
  if (!group_) throw InputError("lattice without a group");
  if (action_.size() != group_->order()) throw InputError("lattice action must list every element");
  rank_ = action_[0].rows();
  for (const auto& m : action_)
    if (m.rows() != rank_ || m.cols() != rank_) throw InputError("lattice action matrices have wrong size");
  if (!action_[0].is_identity()) throw ValidationError("lattice", "identity does not act trivially");
  for (Element g = 0; g < group_->order(); ++g)
    for (Element s : group_->generators())
      if (!(action_[group_->mul(g, s)] == action_[g] * action_[s]))
        throw ValidationError("lattice", "action is not a homomorphism at (" + group_->label(g) +
                                             ", " + group_->label(s) + ")");
}

GLattice GLattice::from_generators(GroupPtr group, const std::vector<IntMatrix>& generator_action,
                                   std::string label) {
  if (generator_action.size() != group->generators().size())
    throw InputError("need one matrix per group generator");
  if (generator_action.empty()) throw InputError("cannot infer lattice rank without generators");
  const std::size_t r = generator_action[0].rows();
  std::vector<IntMatrix> action(group->order());
  std::vector<bool> seen(group->order());
  action[0] = IntMatrix::identity(r);
  seen[0] = true;
  std::vector<Element> queue{0};
  for (std::size_t cur = 0; cur < queue.size(); ++cur)
    for (std::size_t i = 0; i < generator_action.size(); ++i) {
      Element next = group->mul(queue[cur], group->generators()[i]);
      if (seen[next]) continue;
      seen[next] = true;
      action[next] = action[queue[cur]] * generator_action[i];
      queue.push_back(next);
    }
  return GLattice(std::move(group), std::move(action), std::move(label));
}

GLattice GLattice::trivial(GroupPtr group, std::size_t rank, std::string label) {
  std::vector<IntMatrix> action(group->order(), IntMatrix::identity(rank));
  return GLattice(std::move(group), std::move(action), std::move(label));
}

GLattice GLattice::permutation(GroupPtr group, const std::vector<std::vector<std::size_t>>& perm,
                               std::string label) {
  if (perm.size() != group->order()) throw InputError("permutation action must list every element");
  const std::size_t n = perm[0].size();
  std::vector<IntMatrix> action;
  for (const auto& p : perm) {
    if (p.size() != n) throw InputError("permutations have different lengths");
    IntMatrix m(n, n);
    std::vector<bool> hit(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (p[j] >= n || hit[p[j]]) throw InputError("not a permutation");
      hit[p[j]] = true;
      m(p[j], j) = 1;
    }
    action.push_back(std::move(m));
  }
  return GLattice(std::move(group), std::move(action), std::move(label));
}

GLattice GLattice::dual() const {
  std::vector<IntMatrix> action;
  for (Element g = 0; g < group_->order(); ++g) action.push_back(action_[group_->inv(g)].transpose());
  return GLattice(group_, std::move(action), label_.empty() ? "" : label_ + "^dual");
}

GLattice GLattice::restrict_to(const SubgroupEmbedding& h) const {
  return pullback(h.group, h.inclusion);
}

GLattice GLattice::pullback(GroupPtr h, const std::vector<Element>& phi) const {
  std::vector<IntMatrix> action;
  for (Element e : phi) action.push_back(action_.at(e));
  return GLattice(std::move(h), std::move(action), label_);
}

GLattice hom_module(const GLattice& a, const GLattice& b) {
  if (a.group() != b.group()) throw InputError("lattices over different groups");
  const auto& g = *a.group();
  std::vector<IntMatrix> action;
  for (Element x = 0; x < g.order(); ++x)
    action.push_back(kronecker(a.action(g.inv(x)).transpose(), b.action(x)));
  return GLattice(a.group(), std::move(action), "Hom(" + a.label() + ", " + b.label() + ")");
}

GLattice tensor(const GLattice& a, const GLattice& b) {
  if (a.group() != b.group()) throw InputError("lattices over different groups");
  std::vector<IntMatrix> action;
  for (Element x = 0; x < a.group()->order(); ++x) action.push_back(kronecker(a.action(x), b.action(x)));
  return GLattice(a.group(), std::move(action), a.label() + " (x) " + b.label());
}

GLattice direct_sum(const GLattice& a, const GLattice& b) {
  if (a.group() != b.group()) throw InputError("lattices over different groups");
  std::vector<IntMatrix> action;
  for (Element x = 0; x < a.group()->order(); ++x) {
    IntMatrix m(a.rank() + b.rank(), a.rank() + b.rank());
    for (std::size_t i = 0; i < a.rank(); ++i)
      for (std::size_t j = 0; j < a.rank(); ++j) m(i, j) = a.action(x)(i, j);
    for (std::size_t i = 0; i < b.rank(); ++i)
      for (std::size_t j = 0; j < b.rank(); ++j) m(a.rank() + i, a.rank() + j) = b.action(x)(i, j);
    action.push_back(std::move(m));
  }
  return GLattice(a.group(), std::move(action), a.label() + " + " + b.label());
}

IntMatrix invariants(const GLattice& l) {
  const auto& gens = l.group()->generators();
  if (gens.empty()) return IntMatrix::identity(l.rank());
  IntMatrix stacked(0, l.rank());
  for (Element s : gens) stacked = vstack(stacked, l.action(s) - IntMatrix::identity(l.rank()));
  return kernel_basis(stacked);
}

GModuleMap::GModuleMap(GLattice src, GLattice tgt, IntMatrix m)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
  if (source.group() != target.group()) throw InputError("map between lattices over different groups");
  if (matrix.rows() != target.rank() || matrix.cols() != source.rank())
    throw InputError("map matrix has wrong shape");
  if (!is_equivariant()) throw ValidationError("module map", "map is not equivariant");
}

bool GModuleMap::is_equivariant() const {
  for (Element s : source.group()->generators())
    if (!(matrix * source.action(s) == target.action(s) * matrix)) return false;
  return true;
}

std::optional<std::string> ShortExactSeq::diagnose(const GModuleMap& f, const GModuleMap& g) {
  if (f.target.group() != g.source.group() || f.target.rank() != g.source.rank())
    return "maps are not composable";
  if (!(g.matrix * f.matrix).is_zero()) return "composite g f is not zero";
  SmithForm sf(f.matrix);
  if (sf.rank() != f.source.rank()) return "f is not injective";
  if (!sf.image_saturated()) return "image of f is not saturated";
  SmithForm sg(g.matrix);
  if (sg.rank() != g.target.rank() || !sg.image_saturated()) return "g is not surjective";
  if (sf.rank() + sg.rank() != f.target.rank()) return "sequence is not exact in the middle";
  return std::nullopt;
}

ShortExactSeq::ShortExactSeq(GModuleMap f, GModuleMap g) : f_(std::move(f)), g_(std::move(g)) {
  if (auto why = diagnose(f_, g_)) throw ValidationError("short exact sequence", *why);
  s_ = right_inverse(g_.matrix);
  IntMatrix fl = left_inverse(f_.matrix);
  t_ = fl * (IntMatrix::identity(B().rank()) - s_ * g_.matrix);
}

ShortExactSeq ShortExactSeq::dual() const {
  GLattice a = A().dual(), b = B().dual(), c = C().dual();
  return ShortExactSeq(GModuleMap(c, b, g_.matrix.transpose()), GModuleMap(b, a, f_.matrix.transpose()));
}

ShortExactSeq ShortExactSeq::restrict_to(const SubgroupEmbedding& h) const {
  GLattice a = A().restrict_to(h), b = B().restrict_to(h), c = C().restrict_to(h);
  return ShortExactSeq(GModuleMap(a, b, f_.matrix), GModuleMap(b, c, g_.matrix));
}

TwistedUnitsModule::TwistedUnitsModule(GLattice b, std::vector<QmodZVector> t)
    : base(std::move(b)), twist(std::move(t)) {
  const auto& g = *base.group();
  if (twist.size() != g.order()) throw InputError("twist must list every element");
  for (const auto& l : twist)
    if (l.size() != base.rank()) throw InputError("twist vector has wrong length");
  if (!twist[0].is_zero()) throw ValidationError("twisted units", "identity has nonzero twist");
  for (Element x = 0; x < g.order(); ++x)
    for (Element s : g.generators())
      if (!(twist[g.mul(x, s)] == twist[s] + base.action(s).transpose() * twist[x]))
        throw ValidationError("twisted units", "twist is not a crossed homomorphism");
}

TwistedUnitsModule TwistedUnitsModule::restrict_to(const SubgroupEmbedding& h) const {
  std::vector<QmodZVector> t;
  for (Element e : h.inclusion) t.push_back(twist[e]);
  return TwistedUnitsModule(base.restrict_to(h), std::move(t));
}

}  // namespace equitor
