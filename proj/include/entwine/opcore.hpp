#pragma once

// Operads and cooperads as (co)monoids in symmetric sequences, their axiom
// checkers, and the derived constructions on evaluated spaces: free algebras,
// cofree conilpotent coalgebras, canonical unit/counit transforms, and the
// augmentation / grouplike conditions.

#include <cstddef>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "entwine/monoidal.hpp"
#include "entwine/schur.hpp"

namespace entwine {

struct CheckEntry {
  std::string axiom;
  std::size_t arity = 0;
  bool ok = true;
  std::string witness;  // basis label of a failing column, empty when ok
};

struct CheckReport {
  std::vector<CheckEntry> entries;

  bool ok() const {
    for (const auto& e : entries)
      if (!e.ok) return false;
    return true;
  }
  std::vector<CheckEntry> failures() const {
    std::vector<CheckEntry> out;
    for (const auto& e : entries)
      if (!e.ok) out.push_back(e);
    return out;
  }
};

inline std::string describe(const PlethLabel& lab) {
  std::ostringstream os;
  os << "k=" << lab.k << " parts=(";
  for (std::size_t j = 0; j < lab.comp.size(); ++j) os << (j ? "," : "") << lab.comp[j];
  os << ") m=" << lab.m_idx << " n=(";
  for (std::size_t j = 0; j < lab.n_idxs.size(); ++j) os << (j ? "," : "") << lab.n_idxs[j];
  os << ") blocks=";
  for (std::size_t j = 0; j < lab.blocks.size(); ++j) {
    os << (j ? "|" : "") << "{";
    for (std::size_t t = 0; t < lab.blocks[j].size(); ++t)
      os << (t ? "," : "") << lab.blocks[j][t];
    os << "}";
  }
  return os.str();
}

inline std::string describe(const SlotLabel& lab) {
  std::ostringstream os;
  os << "k=" << lab.k << " grades=(";
  for (std::size_t j = 0; j < lab.comp.size(); ++j) os << (j ? "," : "") << lab.comp[j];
  os << ") m=" << lab.m_idx << " slots=(";
  for (std::size_t j = 0; j < lab.slots.size(); ++j) os << (j ? "," : "") << lab.slots[j];
  os << ")";
  return os.str();
}

namespace detail {

// Compare two parallel morphisms arity by arity; on mismatch name the first
// differing column by the given label provider.
template <typename LabelFn>
void compare_blocks(CheckReport& report, const std::string& axiom, const SeqMorphism& lhs,
                    const SeqMorphism& rhs, LabelFn&& label_of) {
  const std::size_t max = lhs.source()->max_arity();
  for (std::size_t n = 1; n <= max; ++n) {
    const Matrix &a = lhs.block(n), &b = rhs.block(n);
    CheckEntry entry{axiom, n, true, ""};
    for (std::size_t j = 0; j < a.cols() && entry.ok; ++j)
      for (std::size_t i = 0; i < a.rows() && entry.ok; ++i)
        if (!(a(i, j) == b(i, j))) {
          entry.ok = false;
          entry.witness = label_of(n, j);
        }
    report.entries.push_back(std::move(entry));
  }
}

inline void check_morphism_equivariance(CheckReport& report, const std::string& axiom,
                                        const SeqMorphism& f) {
  if (f.source()->mode() != Mode::symmetric) return;
  const EquivarianceReport eq = check_equivariant(f);
  CheckEntry entry{axiom, eq.ok ? 0 : eq.arity, eq.ok, ""};
  if (!eq.ok) {
    std::ostringstream os;
    os << "generator s_" << eq.generator;
    entry.witness = os.str();
  }
  report.entries.push_back(std::move(entry));
}

}  // namespace detail

struct OperadStructure {
  SeqPtr carrier;
  SeqMorphism mult;  // (carrier∘carrier) -> carrier, in the canonical basis
  SeqMorphism unit;  // unit sequence -> carrier

  OperadStructure(SeqPtr a, SeqMorphism m, SeqMorphism e)
      : carrier(std::move(a)), mult(std::move(m)), unit(std::move(e)) {
    if (!(*mult.target() == *carrier) || !(*unit.target() == *carrier))
      throw SequenceError("OperadStructure: morphisms must land in the carrier");
    if (!(*unit.source() == SymmetricSequence::unit(carrier->max_arity(), carrier->mode())))
      throw SequenceError("OperadStructure: unit must start from the unit sequence");
  }
};

struct CooperadStructure {
  SeqPtr carrier;
  SeqMorphism comult;  // carrier -> (carrier∘carrier)
  SeqMorphism counit;  // carrier -> unit sequence

  CooperadStructure(SeqPtr c, SeqMorphism d, SeqMorphism e)
      : carrier(std::move(c)), comult(std::move(d)), counit(std::move(e)) {
    if (!(*comult.source() == *carrier) || !(*counit.source() == *carrier))
      throw SequenceError("CooperadStructure: morphisms must start from the carrier");
    if (!(*counit.target() == SymmetricSequence::unit(carrier->max_arity(), carrier->mode())))
      throw SequenceError("CooperadStructure: counit must land in the unit sequence");
  }
};

// Assemble the monoid multiplication from full composition maps.  gamma(k,
// parts) must return the matrix of A(k)⊗A(i_1)⊗…⊗A(i_k) -> A(n) with column
// order m-major then the inner indices in sequence; block arrangements are
// filled in by equivariance.
template <typename GammaFn>
SeqMorphism assemble_mult(const SeqPtr& carrier, const PlethysmIndex& aa, GammaFn&& gamma) {
  const std::size_t max = carrier->max_arity();
  const bool symmetric = carrier->mode() == Mode::symmetric;
  std::vector<Matrix> blocks;
  for (std::size_t n = 1; n <= max; ++n) {
    Matrix block(carrier->dim(n), aa.sequence()->dim(n));
    const Matrix& inc = aa.inclusion(n);
    for (std::size_t col = 0; col < block.cols(); ++col) {
      for (std::size_t li = 0; li < aa.ordered_dim(n); ++li) {
        Rational alpha = inc(li, col);
        if (alpha == Rational(0)) continue;
        const PlethLabel& lab = aa.labels(n)[li];
        if (symmetric) {
          // The image basis spans each arrangement orbit by its plain sum,
          // while the canonical splitting normalises by the orbit size, so
          // composing a basis vector means averaging over its arrangements.
          BigInt orbit(1);
          for (std::size_t j = 2; j <= lab.k; ++j) orbit *= BigInt(j);
          alpha = alpha / Rational(orbit);
        }
        Matrix g = gamma(lab.k, lab.comp);
        std::size_t gcol = lab.m_idx;
        for (std::size_t j = 0; j < lab.k; ++j)
          gcol = gcol * carrier->dim(lab.comp[j]) + lab.n_idxs[j];
        // Relabel the standard interval arrangement onto the label's blocks.
        std::vector<std::size_t> line;
        for (const auto& blk : lab.blocks) line.insert(line.end(), blk.begin(), blk.end());
        const Matrix rho = carrier->action(n, Permutation::from_one_line(std::move(line)));
        for (std::size_t r = 0; r < block.rows(); ++r) {
          Rational sum(0);
          for (std::size_t t = 0; t < g.rows(); ++t) {
            if (g(t, gcol) == Rational(0)) continue;
            sum += rho(r, t) * g(t, gcol);
          }
          block(r, col) += alpha * sum;
        }
      }
    }
    blocks.push_back(std::move(block));
  }
  return SeqMorphism(aa.sequence(), carrier, std::move(blocks));
}

inline CheckReport check_operad(const OperadStructure& op, PlethCache& cache) {
  CheckReport report;
  detail::check_morphism_equivariance(report, "equivariance(m)", op.mult);
  detail::check_morphism_equivariance(report, "equivariance(e)", op.unit);

  const SeqPtr& a = op.carrier;
  const auto id_a = SeqMorphism::identity(a);
  const PlethysmIndex& aa = cache.of(a, a);
  const PlethysmIndex& aa_a = cache.of(aa.sequence(), a);
  const PlethysmIndex& a_aa = cache.of(a, aa.sequence());
  const auto label_of = [&](std::size_t n, std::size_t j) {
    return describe(aa_a.labels(n)[aa_a.image_labels(n)[j]]);
  };

  const auto assoc = associator(aa, aa_a, aa, a_aa);
  const auto lhs = compose(op.mult, hcompose(op.mult, id_a, aa_a, aa));
  const auto rhs = compose(op.mult, compose(hcompose(id_a, op.mult, a_aa, aa), assoc));
  detail::compare_blocks(report, "associativity", lhs, rhs, label_of);

  const PlethysmIndex& ua = cache.of(op.unit.source(), a);
  const PlethysmIndex& au = cache.of(a, op.unit.source());
  detail::compare_blocks(report, "left-unit",
                         compose(op.mult, hcompose(op.unit, id_a, ua, aa)), left_unitor(ua),
                         [&](std::size_t n, std::size_t j) {
                           return describe(ua.labels(n)[ua.image_labels(n)[j]]);
                         });
  detail::compare_blocks(report, "right-unit",
                         compose(op.mult, hcompose(id_a, op.unit, au, aa)), right_unitor(au),
                         [&](std::size_t n, std::size_t j) {
                           return describe(au.labels(n)[au.image_labels(n)[j]]);
                         });
  return report;
}

inline CheckReport check_cooperad(const CooperadStructure& co, PlethCache& cache) {
  CheckReport report;
  detail::check_morphism_equivariance(report, "equivariance(delta)", co.comult);
  detail::check_morphism_equivariance(report, "equivariance(eps)", co.counit);

  const SeqPtr& c = co.carrier;
  const auto id_c = SeqMorphism::identity(c);
  const PlethysmIndex& cc = cache.of(c, c);
  const PlethysmIndex& cc_c = cache.of(cc.sequence(), c);
  const PlethysmIndex& c_cc = cache.of(c, cc.sequence());
  const auto carrier_label = [&](std::size_t n, std::size_t j) {
    std::ostringstream os;
    os << "basis " << j << " of arity " << n;
    return os.str();
  };

  const auto assoc = associator(cc, cc_c, cc, c_cc);
  const auto lhs = compose(assoc, compose(hcompose(co.comult, id_c, cc, cc_c), co.comult));
  const auto rhs = compose(hcompose(id_c, co.comult, cc, c_cc), co.comult);
  detail::compare_blocks(report, "coassociativity", lhs, rhs, carrier_label);

  const PlethysmIndex& uc = cache.of(co.counit.target(), c);
  const PlethysmIndex& cu = cache.of(c, co.counit.target());
  detail::compare_blocks(report, "left-counit",
                         compose(left_unitor(uc), compose(hcompose(co.counit, id_c, cc, uc),
                                                          co.comult)),
                         id_c, carrier_label);
  detail::compare_blocks(report, "right-counit",
                         compose(right_unitor(cu), compose(hcompose(id_c, co.counit, cc, cu),
                                                           co.comult)),
                         id_c, carrier_label);
  return report;
}

// Canonical projection A -> 1 (inverse of the unit in arity 1, zero above).
inline SeqMorphism canonical_augmentation(const OperadStructure& op) {
  const std::size_t max = op.carrier->max_arity();
  std::vector<Matrix> blocks;
  auto inv = inverse(op.unit.block(1));
  if (!inv) throw SequenceError("augmentation: unit is not split in arity 1");
  blocks.push_back(std::move(*inv));
  for (std::size_t n = 2; n <= max; ++n) blocks.emplace_back(0, op.carrier->dim(n));
  return SeqMorphism(op.carrier, op.unit.source(), std::move(blocks));
}

// Canonical splitting 1 -> C of the counit.
inline SeqMorphism canonical_grouplike(const CooperadStructure& co) {
  const std::size_t max = co.carrier->max_arity();
  std::vector<Matrix> blocks;
  auto inv = inverse(co.counit.block(1));
  if (!inv) throw SequenceError("grouplike: counit is not split in arity 1");
  blocks.push_back(std::move(*inv));
  for (std::size_t n = 2; n <= max; ++n) blocks.emplace_back(co.carrier->dim(n), 0);
  return SeqMorphism(co.counit.target(), co.carrier, std::move(blocks));
}

// eps is an augmentation when it is a monoid map to the unit sequence:
// eps·m agrees with collapsing the inner factor first, and eps splits e.
inline bool check_augmentation(const OperadStructure& op, const SeqMorphism& eps,
                               PlethCache& cache) {
  if (!(*eps.source() == *op.carrier) || !(*eps.target() == *op.unit.source())) return false;
  if (!check_equivariant(eps).ok) return false;
  const PlethysmIndex& aa = cache.of(op.carrier, op.carrier);
  const PlethysmIndex& au = cache.of(op.carrier, eps.target());
  const auto id_a = SeqMorphism::identity(op.carrier);
  const auto lhs = compose(eps, op.mult);
  const auto rhs = compose(eps, compose(right_unitor(au), hcompose(id_a, eps, aa, au)));
  if (!(lhs == rhs)) return false;
  return compose(eps, op.unit) == SeqMorphism::identity(op.unit.source());
}

inline bool check_augmentation(const OperadStructure& op, PlethCache& cache) {
  return check_augmentation(op, canonical_augmentation(op), cache);
}

// g: 1 -> C is grouplike when the counit retracts it and δ duplicates it.
inline bool check_grouplike(const CooperadStructure& co, const SeqMorphism& g, PlethCache& cache) {
  if (!(*g.source() == *co.counit.target()) || !(*g.target() == *co.carrier)) return false;
  if (!check_equivariant(g).ok) return false;
  if (!(compose(co.counit, g) == SeqMorphism::identity(g.source()))) return false;
  const PlethysmIndex& uu = cache.of(g.source(), g.source());
  const PlethysmIndex& cc = cache.of(co.carrier, co.carrier);
  const auto dup = compose(hcompose(g, g, uu, cc), invert(left_unitor(uu)));
  return compose(co.comult, g) == dup;
}

inline bool split_unit_check(const OperadStructure& op) {
  return is_isomorphism(op.unit.block(1));
}

// Canonical transforms on an evaluated space: the inclusion of and the
// projection onto the single-slot summand.
inline GradedMap unit_transform(const GradedEval& em) {
  GradedMap out;
  for (std::size_t n = 1; n <= em.truncation(); ++n) {
    Matrix ordered(em.ordered_dim(n), em.slot_dims()[n - 1]);
    for (std::size_t a = 0; a < ordered.cols(); ++a)
      ordered(em.label_index(n, SlotLabel{1, {n}, 0, {a}}), a) = Rational(1);
    out.blocks.push_back(em.projection(n) * ordered);
  }
  return out;
}

inline GradedMap counit_transform(const GradedEval& em) {
  GradedMap out;
  for (std::size_t n = 1; n <= em.truncation(); ++n) {
    Matrix ordered(em.slot_dims()[n - 1], em.ordered_dim(n));
    for (std::size_t a = 0; a < ordered.rows(); ++a)
      ordered(a, em.label_index(n, SlotLabel{1, {n}, 0, {a}})) = Rational(1);
    out.blocks.push_back(ordered * em.inclusion(n));
  }
  return out;
}

// A module over the evaluated monad: a graded space with an action of F_A.
struct AlgebraObject {
  std::vector<std::size_t> space;          // graded dimensions of the carrier
  std::shared_ptr<const GradedEval> eval;  // F_A(space), truncated
  TotalMap action;                         // F_A(space) -> space
};

struct CoalgebraObject {
  std::vector<std::size_t> space;
  std::shared_ptr<const GradedEval> eval;  // F_C(space), truncated
  TotalMap coaction;                       // space -> F_C(space); finite by truncation
};

// Evaluated unit V -> F_A(V) and counit F_C(V) -> V for the given structures.
inline TotalMap evaluated_unit(const OperadStructure& op, const GradedEval& eval) {
  const GradedEval source(op.unit.source(), eval.slot_dims(), eval.truncation());
  return from_graded(evaluate_map(op.unit, source, eval));
}

inline TotalMap evaluated_counit(const CooperadStructure& co, const GradedEval& eval) {
  const GradedEval target(co.counit.target(), eval.slot_dims(), eval.truncation());
  return from_graded(evaluate_map(co.counit, eval, target));
}

inline CheckReport check_algebra(const OperadStructure& op, const AlgebraObject& alg,
                                 PlethCache& cache) {
  CheckReport report;
  const std::size_t trunc = alg.eval->truncation();

  const TotalMap unit_comp = tcompose(alg.action, evaluated_unit(op, *alg.eval));
  const TotalMap want = tidentity(alg.space);
  for (std::size_t n = 1; n <= trunc; ++n) {
    CheckEntry entry{"unit", n, unit_comp.block(n, n) == want.block(n, n), ""};
    // Off-diagonal leakage counts against the same axiom.
    for (std::size_t i = 1; i <= trunc && entry.ok; ++i)
      if (i != n) entry.ok = unit_comp.block(i, n).is_zero();
    report.entries.push_back(std::move(entry));
  }

  const PlethysmIndex& aa = cache.of(op.carrier, op.carrier);
  const GradedEval composite(aa.sequence(), alg.space, trunc);
  const GradedEval outer(op.carrier, alg.eval->dims(), trunc);
  const auto iso = eval_compose_iso(aa, composite, *alg.eval, outer);

  const TotalMap via_mult =
      tcompose(alg.action, from_graded(evaluate_map(op.mult, composite, *alg.eval)));
  const TotalMap f_of_h =
      teval_map(SeqMorphism::identity(op.carrier), outer, *alg.eval, alg.action);
  const TotalMap via_lift = tcompose(alg.action, tcompose(f_of_h, from_graded(iso)));

  std::size_t col0 = 0;
  for (std::size_t n = 1; n <= trunc; ++n) {
    CheckEntry entry{"associativity", n, true, ""};
    for (std::size_t j = 0; j < composite.dim(n) && entry.ok; ++j)
      for (std::size_t i = 0; i < via_mult.mat.rows() && entry.ok; ++i)
        if (!(via_mult.mat(i, col0 + j) == via_lift.mat(i, col0 + j))) {
          entry.ok = false;
          entry.witness = describe(composite.basis_label(n, j));
        }
    col0 += composite.dim(n);
    report.entries.push_back(std::move(entry));
  }
  return report;
}

inline CheckReport check_coalgebra(const CooperadStructure& co, const CoalgebraObject& coalg,
                                   PlethCache& cache) {
  CheckReport report;
  const std::size_t trunc = coalg.eval->truncation();

  const TotalMap counit_comp = tcompose(evaluated_counit(co, *coalg.eval), coalg.coaction);
  const TotalMap want = tidentity(coalg.space);
  for (std::size_t n = 1; n <= trunc; ++n) {
    CheckEntry entry{"counit", n, counit_comp.block(n, n) == want.block(n, n), ""};
    for (std::size_t i = 1; i <= trunc && entry.ok; ++i)
      if (i != n) entry.ok = counit_comp.block(i, n).is_zero();
    report.entries.push_back(std::move(entry));
  }

  const PlethysmIndex& cc = cache.of(co.carrier, co.carrier);
  const GradedEval composite(cc.sequence(), coalg.space, trunc);
  const GradedEval outer(co.carrier, coalg.eval->dims(), trunc);
  const auto iso = eval_compose_iso(cc, composite, *coalg.eval, outer);

  const TotalMap via_comult = tcompose(
      from_graded(iso),
      tcompose(from_graded(evaluate_map(co.comult, *coalg.eval, composite)), coalg.coaction));
  const TotalMap f_of_theta =
      teval_map(SeqMorphism::identity(co.carrier), *coalg.eval, outer, coalg.coaction);
  const TotalMap via_lift = tcompose(f_of_theta, coalg.coaction);

  std::size_t col0 = 0;
  for (std::size_t n = 1; n <= trunc; ++n) {
    CheckEntry entry{"coassociativity", n, true, ""};
    for (std::size_t j = 0; j < coalg.space[n - 1] && entry.ok; ++j)
      for (std::size_t i = 0; i < via_comult.mat.rows() && entry.ok; ++i)
        if (!(via_comult.mat(i, col0 + j) == via_lift.mat(i, col0 + j))) {
          entry.ok = false;
          std::ostringstream os;
          os << "grade " << n << " basis " << j;
          entry.witness = os.str();
        }
    col0 += coalg.space[n - 1];
    report.entries.push_back(std::move(entry));
  }
  return report;
}

// The free algebra on a graded space V: carrier F_A(V) with the evaluated
// multiplication F_A(F_A V) ≅ F_{A∘A}(V) -> F_A(V) pulled back along the
// regrouping.
inline AlgebraObject free_algebra_graded(const OperadStructure& op,
                                         const std::vector<std::size_t>& v_dims,
                                         std::size_t trunc, PlethCache& cache) {
  const GradedEval base(op.carrier, v_dims, trunc);
  const auto eval = std::make_shared<const GradedEval>(op.carrier, base.dims(), trunc);
  const PlethysmIndex& aa = cache.of(op.carrier, op.carrier);
  const GradedEval composite(aa.sequence(), v_dims, trunc);
  const auto iso = eval_compose_iso(aa, composite, base, *eval);
  const auto mult_eval = from_graded(evaluate_map(op.mult, composite, base));
  TotalMap action = tcompose(mult_eval, from_graded(ginverse(iso)));
  return AlgebraObject{base.dims(), eval, std::move(action)};
}

inline AlgebraObject free_algebra(const OperadStructure& op, std::size_t d, std::size_t trunc,
                                  PlethCache& cache) {
  std::vector<std::size_t> v(trunc, 0);
  if (!v.empty()) v[0] = d;
  return free_algebra_graded(op, v, trunc, cache);
}

inline CoalgebraObject cofree_coalgebra(const CooperadStructure& co, std::size_t d,
                                        std::size_t trunc, PlethCache& cache) {
  const auto base = schur_evaluate(co.carrier, d, trunc);
  const auto eval = std::make_shared<const GradedEval>(co.carrier, base.dims(), trunc);
  const PlethysmIndex& cc = cache.of(co.carrier, co.carrier);
  const auto composite = schur_evaluate(cc.sequence(), d, trunc);
  const auto iso = eval_compose_iso(cc, composite, base, *eval);
  const auto comult_eval = from_graded(evaluate_map(co.comult, base, composite));
  TotalMap coaction = tcompose(from_graded(iso), comult_eval);
  return CoalgebraObject{base.dims(), eval, std::move(coaction)};
}

}  // namespace entwine
