#pragma once

// Bialgebras over an entwined pair: the bimodule axioms tying an action and a
// coaction together through the law, primitive subspaces as exact equalizers,
// the comparison construction putting the canonical coaction on a free
// algebra, the reconstruction morphism from the free algebra on the
// primitives, its triangular structure, and the full free-and-cofree
// reconstruction verdict.

#include <cstddef>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entwine/entwine.hpp"
#include "entwine/matrix.hpp"
#include "entwine/monoidal.hpp"
#include "entwine/opcore.hpp"
#include "entwine/schur.hpp"
#include "entwine/sequence.hpp"

namespace entwine {

// A stated precondition of a construction does not hold.
class HypothesisError : public std::runtime_error {
 public:
  explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

// A graded space carrying both an action of the operad side and a coaction of
// the cooperad side of one entwining.
struct Bialgebra {
  Entwining ent;
  std::vector<std::size_t> space;          // graded dimensions of the carrier W
  std::shared_ptr<const GradedEval> a_eval;  // F_A(W)
  std::shared_ptr<const GradedEval> c_eval;  // F_C(W)
  TotalMap action;                         // F_A(W) -> W
  TotalMap coaction;                       // W -> F_C(W)
};

// The canonical coaction W -> F_C(W) induced by the splitting of the counit:
// everything lands in the single-slot part.
inline TotalMap grouplike_coaction(const CooperadStructure& co, const GradedEval& c_eval) {
  const SeqMorphism g = canonical_grouplike(co);
  const GradedEval unit_eval(g.source(), c_eval.slot_dims(), c_eval.truncation());
  return from_graded(evaluate_map(g, unit_eval, c_eval));
}

// Action and coaction are compatible through the law: acting first and then
// coacting equals pushing the coaction through the action slotwise and
// exchanging.  Includes both single-structure axiom suites.
inline CheckReport check_bimodule(const Bialgebra& b, PlethCache& cache) {
  CheckReport report;
  for (auto& entry : check_algebra(b.ent.op, AlgebraObject{b.space, b.a_eval, b.action}, cache)
                         .entries)
    report.entries.push_back(std::move(entry));
  for (auto& entry :
       check_coalgebra(b.ent.co, CoalgebraObject{b.space, b.c_eval, b.coaction}, cache).entries)
    report.entries.push_back(std::move(entry));

  const std::size_t trunc = b.a_eval->truncation();
  const SeqPtr& a = b.ent.op.carrier;
  const SeqPtr& c = b.ent.co.carrier;
  const TotalMap lhs = tcompose(b.coaction, b.action);
  const TotalMap law = evaluated_law(b.ent, b.space, trunc, cache);
  const GradedEval fa_fcw(a, b.c_eval->dims(), trunc);
  const TotalMap mapped_coaction =
      teval_map(SeqMorphism::identity(a), *b.a_eval, fa_fcw, b.coaction);
  const GradedEval fc_faw(c, b.a_eval->dims(), trunc);
  const TotalMap mapped_action =
      teval_map(SeqMorphism::identity(c), fc_faw, *b.c_eval, b.action);
  const TotalMap rhs = tcompose(mapped_action, tcompose(law, mapped_coaction));

  std::size_t col0 = 0;
  for (std::size_t n = 1; n <= trunc; ++n) {
    CheckEntry entry{"bimodule", n, true, ""};
    for (std::size_t j = 0; j < b.a_eval->dim(n) && entry.ok; ++j)
      for (std::size_t i = 0; i < lhs.mat.rows() && entry.ok; ++i)
        if (!(lhs.mat(i, col0 + j) == rhs.mat(i, col0 + j))) {
          entry.ok = false;
          entry.witness = describe(b.a_eval->basis_label(n, j));
        }
    col0 += b.a_eval->dim(n);
    report.entries.push_back(std::move(entry));
  }
  return report;
}

// The subspace on which the coaction is the canonical one.
struct PrimitiveSubspace {
  Matrix inclusion;               // columns span the subspace of the total space
  std::vector<std::size_t> dims;  // graded dimensions
  std::size_t dimension = 0;
};

namespace detail {

inline PrimitiveSubspace primitive_kernel(const Bialgebra& b, const TotalMap& canonical) {
  const Matrix diff = b.coaction.mat - canonical.mat;
  PrimitiveSubspace p;
  p.inclusion = kernel_basis(diff);
  p.dimension = p.inclusion.cols();
  p.dims.assign(b.space.size(), 0);
  for (std::size_t col = 0; col < p.inclusion.cols(); ++col) {
    std::size_t grade = 0;
    for (std::size_t row = 0; row < p.inclusion.rows(); ++row) {
      if (p.inclusion(row, col) == Rational(0)) continue;
      std::size_t g = 0, offset = 0;
      while (g < b.space.size() && offset + b.space[g] <= row) offset += b.space[g++];
      if (grade == 0)
        grade = g + 1;
      else if (grade != g + 1)
        throw SequenceError("primitives: kernel vector crosses grades");
    }
    if (grade == 0) throw SequenceError("primitives: zero kernel vector");
    ++p.dims[grade - 1];
  }
  return p;
}

}  // namespace detail

// Exact equalizer of the coaction and the canonical coaction.
inline PrimitiveSubspace primitives(const Bialgebra& b, PlethCache& cache) {
  if (!check_bimodule(b, cache).ok())
    throw HypothesisError("primitives: the bialgebra axioms fail");
  return detail::primitive_kernel(b, grouplike_coaction(b.ent.co, *b.c_eval));
}

// The canonical coaction on the free algebra over a graded space: insert the
// counit splitting into every slot, then exchange through the law.
inline TotalMap comparison_coaction(const Entwining& e, const std::vector<std::size_t>& v_dims,
                                    std::size_t trunc, PlethCache& cache) {
  const SeqPtr& a = e.op.carrier;
  const GradedEval fav(a, v_dims, trunc);
  const GradedEval fcv(e.co.carrier, v_dims, trunc);
  const TotalMap split = grouplike_coaction(e.co, fcv);
  const GradedEval fa_fcv(a, fcv.dims(), trunc);
  const TotalMap mapped_split = teval_map(SeqMorphism::identity(a), fav, fa_fcv, split);
  return tcompose(evaluated_law(e, v_dims, trunc, cache), mapped_split);
}

// The free algebra on a graded space V with its canonical coaction — the
// object part of the comparison construction.
inline Bialgebra comparison_K(const Entwining& e, const std::vector<std::size_t>& v_dims,
                              std::size_t trunc, PlethCache& cache) {
  if (!check_entwining(e, cache).ok())
    throw HypothesisError("comparison: the exchange diagrams fail");
  if (!split_unit_check(e.op))
    throw HypothesisError("comparison: the operad unit is not invertible in arity 1");
  if (!check_grouplike(e.co, canonical_grouplike(e.co), cache))
    throw HypothesisError("comparison: the canonical counit splitting is not grouplike");
  auto alg = free_algebra_graded(e.op, v_dims, trunc, cache);
  auto c_eval = std::make_shared<const GradedEval>(e.co.carrier, alg.space, trunc);
  TotalMap coaction = comparison_coaction(e, v_dims, trunc, cache);
  return Bialgebra{e,           alg.space,        std::move(alg.eval),
                   std::move(c_eval), std::move(alg.action), std::move(coaction)};
}

inline Bialgebra comparison_K(const Entwining& e, std::size_t d, std::size_t trunc,
                              PlethCache& cache) {
  std::vector<std::size_t> v(trunc, 0);
  if (!v.empty()) v[0] = d;
  return comparison_K(e, v, trunc, cache);
}

// The reconstruction comparison on a bialgebra: insert the counit splitting
// into every slot, exchange, and act — a map F_A(W) -> F_C(W).
inline TotalMap t_morphism(const Bialgebra& b, PlethCache& cache) {
  const std::size_t trunc = b.a_eval->truncation();
  const SeqPtr& a = b.ent.op.carrier;
  const SeqPtr& c = b.ent.co.carrier;
  const TotalMap split = grouplike_coaction(b.ent.co, *b.c_eval);
  const GradedEval fa_fcw(a, b.c_eval->dims(), trunc);
  const TotalMap mapped_split = teval_map(SeqMorphism::identity(a), *b.a_eval, fa_fcw, split);
  const TotalMap law = evaluated_law(b.ent, b.space, trunc, cache);
  const GradedEval fc_faw(c, b.a_eval->dims(), trunc);
  const TotalMap mapped_action = teval_map(SeqMorphism::identity(c), fc_faw, *b.c_eval, b.action);
  return tcompose(mapped_action, tcompose(law, mapped_split));
}

// The species-level comparison A -> C: insert the counit splitting on the
// inside, exchange, and collapse the operad factor by its augmentation.
inline SeqMorphism phi_map(const Entwining& e, PlethCache& cache) {
  const SeqPtr& a = e.op.carrier;
  const SeqPtr& c = e.co.carrier;
  const SeqMorphism eps = canonical_augmentation(e.op);
  const SeqMorphism g = canonical_grouplike(e.co);
  const PlethysmIndex& ac = cache.of(a, c);
  const PlethysmIndex& ca = cache.of(c, a);
  const PlethysmIndex& au = cache.of(a, g.source());
  const PlethysmIndex& cu = cache.of(c, eps.target());
  const auto insert =
      compose(hcompose(SeqMorphism::identity(a), g, au, ac), invert(right_unitor(au)));
  const auto collapse =
      compose(right_unitor(cu), hcompose(SeqMorphism::identity(c), eps, ca, cu));
  return compose(collapse, compose(e.lambda, insert));
}

// Every arity component of the comparison is invertible.
inline bool check_H2iso(const Entwining& e, PlethCache& cache) {
  const SeqMorphism phi = phi_map(e, cache);
  for (std::size_t n = 1; n <= e.op.carrier->max_arity(); ++n)
    if (!is_isomorphism(phi.block(n))) return false;
  return true;
}

// Triangular structure of the reconstruction comparison in the slot-count
// filtration: blocks raising the slot count vanish, and slot-count-preserving
// blocks are the species comparison tensored with the identity on the slots.
inline CheckReport check_t_triangular(const Bialgebra& b, PlethCache& cache) {
  CheckReport report;
  const TotalMap t = t_morphism(b, cache);
  const SeqMorphism phi = phi_map(b.ent, cache);
  const std::size_t trunc = b.a_eval->truncation();
  for (std::size_t n = 1; n <= trunc; ++n) {
    const Matrix block = t.block(n, n);
    CheckEntry upper{"triangularity", n, true, ""};
    CheckEntry diag{"diagonal", n, true, ""};
    for (std::size_t j = 0; j < b.a_eval->dim(n); ++j) {
      const SlotLabel& src = b.a_eval->basis_label(n, j);
      for (std::size_t i = 0; i < b.c_eval->dim(n); ++i) {
        const SlotLabel& tgt = b.c_eval->basis_label(n, i);
        if (tgt.k > src.k) {
          if (upper.ok && !(block(i, j) == Rational(0))) {
            upper.ok = false;
            upper.witness = describe(src) + " -> " + describe(tgt);
          }
        } else if (tgt.k == src.k) {
          const bool same_slots = tgt.comp == src.comp && tgt.slots == src.slots;
          const Rational expected =
              same_slots ? phi.block(src.k)(tgt.m_idx, src.m_idx) : Rational(0);
          if (diag.ok && !(block(i, j) == expected)) {
            diag.ok = false;
            diag.witness = describe(src) + " -> " + describe(tgt);
          }
        }
      }
    }
    report.entries.push_back(std::move(upper));
    report.entries.push_back(std::move(diag));
  }
  return report;
}

// Structured verdict of the free-and-cofree reconstruction.
struct RigidityReport {
  bool entwining_ok = false;   // the exchange diagrams hold
  bool unit_split = false;     // the operad unit is invertible in arity 1
  bool grouplike_ok = false;   // the counit splitting is grouplike
  bool component_iso = false;  // every component of the species comparison is invertible
  bool bimodule_ok = false;    // the bialgebra axioms hold

  std::size_t prim_dim = 0;
  std::vector<std::size_t> prim_dims;

  std::size_t source_dim = 0;  // total dimension of the rebuilt free algebra
  std::size_t target_dim = 0;  // total dimension of the bialgebra's space
  bool morphism_action = false;
  bool morphism_coaction = false;
  bool reconstruction_invertible = false;
  std::size_t checked_arity = 0;
  bool unit_direction = false;  // primitives of the rebuilt object are its generators

  bool hypotheses_ok() const {
    return entwining_ok && unit_split && grouplike_ok && component_iso && bimodule_ok;
  }
  bool ok() const {
    return hypotheses_ok() && morphism_action && morphism_coaction &&
           reconstruction_invertible && unit_direction;
  }
};

// Full reconstruction verdict: hypotheses, primitive part, the extension of
// the primitive inclusion to the free algebra, its morphism and isomorphism
// properties, and the generators-from-primitives direction.
inline RigidityReport rigidity_verify(const Bialgebra& b, PlethCache& cache) {
  RigidityReport report;
  const std::size_t trunc = b.a_eval->truncation();
  report.checked_arity = trunc;
  report.entwining_ok = check_entwining(b.ent, cache).ok();
  report.unit_split = split_unit_check(b.ent.op);
  try {
    report.grouplike_ok = check_grouplike(b.ent.co, canonical_grouplike(b.ent.co), cache);
  } catch (const SequenceError&) {
    report.grouplike_ok = false;
  }
  try {
    report.component_iso = check_H2iso(b.ent, cache);
  } catch (const SequenceError&) {
    report.component_iso = false;
  }
  report.bimodule_ok = check_bimodule(b, cache).ok();
  if (!report.hypotheses_ok()) return report;

  const SeqPtr& a = b.ent.op.carrier;
  const SeqPtr& c = b.ent.co.carrier;
  const PrimitiveSubspace prim =
      detail::primitive_kernel(b, grouplike_coaction(b.ent.co, *b.c_eval));
  report.prim_dim = prim.dimension;
  report.prim_dims = prim.dims;

  const auto free_p = free_algebra_graded(b.ent.op, prim.dims, trunc, cache);
  const GradedEval fa_p(a, prim.dims, trunc);
  const TotalMap inclusion{prim.dims, b.space, prim.inclusion};
  const TotalMap mapped_inclusion =
      teval_map(SeqMorphism::identity(a), fa_p, *b.a_eval, inclusion);
  const TotalMap rebuilt = tcompose(b.action, mapped_inclusion);  // F_A(P) -> W
  for (std::size_t d : free_p.space) report.source_dim += d;
  for (std::size_t d : b.space) report.target_dim += d;

  const GradedEval fa_fap(a, free_p.space, trunc);
  const TotalMap mapped_rebuilt = teval_map(SeqMorphism::identity(a), fa_fap, *b.a_eval, rebuilt);
  report.morphism_action =
      tcompose(rebuilt, free_p.action).mat == tcompose(b.action, mapped_rebuilt).mat;

  const TotalMap alpha_p = comparison_coaction(b.ent, prim.dims, trunc, cache);
  const GradedEval fc_fap(c, free_p.space, trunc);
  const TotalMap comapped_rebuilt =
      teval_map(SeqMorphism::identity(c), fc_fap, *b.c_eval, rebuilt);
  report.morphism_coaction =
      tcompose(b.coaction, rebuilt).mat == tcompose(comapped_rebuilt, alpha_p).mat;

  report.reconstruction_invertible = is_isomorphism(rebuilt.mat);

  // Generators-from-primitives: on the rebuilt free object, the primitives
  // are exactly the image of the inserted generators.
  auto c_eval_p = std::make_shared<const GradedEval>(c, free_p.space, trunc);
  const Bialgebra rebuilt_obj{b.ent,          free_p.space, free_p.eval,
                              c_eval_p,       free_p.action, alpha_p};
  const PrimitiveSubspace prim_p =
      detail::primitive_kernel(rebuilt_obj, grouplike_coaction(b.ent.co, *c_eval_p));
  const TotalMap unit_p = evaluated_unit(b.ent.op, fa_p);
  const std::size_t r1 = rank(prim_p.inclusion);
  const std::size_t r2 = rank(unit_p.mat);
  const std::size_t r3 = rank(hstack(prim_p.inclusion, unit_p.mat));
  report.unit_direction = r1 == r2 && r2 == r3;
  return report;
}

}  // namespace entwine
