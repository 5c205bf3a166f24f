#pragma once

// Ready-made structures on one-dimensional carriers: the word operad
// (concatenation), the deconcatenation cooperad, the commutative operad, the
// identity structures on the unit sequence, and the distributive laws
// entwining them.

#include <cstddef>
#include <vector>

#include "entwine/entwine.hpp"
#include "entwine/opcore.hpp"

namespace entwine::builtin {

// One basis word shape in every arity, no symmetry.
inline SeqPtr word_sequence(std::size_t max_arity) {
  return share(
      SymmetricSequence::nonsymmetric(max_arity, std::vector<std::size_t>(max_arity, 1)));
}

// One basis element in every arity, fixed by every permutation.
inline SeqPtr bag_sequence(std::size_t max_arity) {
  return share(
      SymmetricSequence::with_trivial_action(max_arity, std::vector<std::size_t>(max_arity, 1)));
}

inline SeqPtr unit_sequence(std::size_t max_arity, Mode mode) {
  return share(SymmetricSequence::unit(max_arity, mode));
}

namespace detail {

// Unit morphism for a carrier with a one-dimensional arity-1 part.
inline SeqMorphism one_dim_unit(const SeqPtr& carrier, const SeqPtr& unit_seq) {
  std::vector<Matrix> blocks;
  Matrix first(carrier->dim(1), 1);
  first(0, 0) = Rational(1);
  blocks.push_back(std::move(first));
  for (std::size_t n = 2; n <= carrier->max_arity(); ++n)
    blocks.emplace_back(carrier->dim(n), 0);
  return SeqMorphism(unit_seq, carrier, std::move(blocks));
}

inline SeqMorphism one_dim_unit(const SeqPtr& carrier) {
  return one_dim_unit(carrier,
                      share(SymmetricSequence::unit(carrier->max_arity(), carrier->mode())));
}

// Counit morphism onto the unit sequence for such a carrier.
inline SeqMorphism one_dim_counit(const SeqPtr& carrier, const SeqPtr& unit_seq) {
  std::vector<Matrix> blocks;
  Matrix first(1, carrier->dim(1));
  first(0, 0) = Rational(1);
  blocks.push_back(std::move(first));
  for (std::size_t n = 2; n <= carrier->max_arity(); ++n)
    blocks.emplace_back(0, carrier->dim(n));
  return SeqMorphism(carrier, unit_seq, std::move(blocks));
}

inline SeqMorphism one_dim_counit(const SeqPtr& carrier) {
  return one_dim_counit(carrier,
                        share(SymmetricSequence::unit(carrier->max_arity(), carrier->mode())));
}

// Composition rule collapsing every composite shape onto the single basis
// element of the total arity.
inline Matrix collapse_rule(std::size_t, const std::vector<std::size_t>&) {
  Matrix g(1, 1);
  g(0, 0) = Rational(1);
  return g;
}

}  // namespace detail

// Word concatenation: composing word shapes yields the single shape of the
// total arity.
inline OperadStructure concat_operad(std::size_t max_arity, PlethCache& cache) {
  const SeqPtr a = word_sequence(max_arity);
  auto mult = assemble_mult(a, cache.of(a, a), detail::collapse_rule);
  return OperadStructure(a, std::move(mult), detail::one_dim_unit(a));
}

// Word deconcatenation: every splitting of a word appears once.
inline CooperadStructure deconcat_cooperad(std::size_t max_arity, PlethCache& cache) {
  const SeqPtr c = word_sequence(max_arity);
  const PlethysmIndex& cc = cache.of(c, c);
  std::vector<Matrix> blocks;
  for (std::size_t n = 1; n <= max_arity; ++n) {
    Matrix d(cc.sequence()->dim(n), 1);
    for (std::size_t r = 0; r < d.rows(); ++r) d(r, 0) = Rational(1);
    blocks.push_back(std::move(d));
  }
  SeqMorphism comult(c, cc.sequence(), std::move(blocks));
  return CooperadStructure(c, std::move(comult), detail::one_dim_counit(c));
}

// Fully commutative merge: the unique product of the total arity.
inline OperadStructure commutative_operad(std::size_t max_arity, PlethCache& cache) {
  const SeqPtr a = bag_sequence(max_arity);
  auto mult = assemble_mult(a, cache.of(a, a), detail::collapse_rule);
  return OperadStructure(a, std::move(mult), detail::one_dim_unit(a));
}

// The unit sequence as an operad: multiplication is the unit relabeling.
inline OperadStructure identity_operad(std::size_t max_arity, Mode mode, PlethCache& cache) {
  const SeqPtr u = unit_sequence(max_arity, mode);
  return OperadStructure(u, left_unitor(cache.of(u, u)), SeqMorphism::identity(u));
}

inline CooperadStructure identity_cooperad(std::size_t max_arity, Mode mode, PlethCache& cache) {
  const SeqPtr u = unit_sequence(max_arity, mode);
  return CooperadStructure(u, invert(left_unitor(cache.of(u, u))), SeqMorphism::identity(u));
}

namespace detail {

// Separator reading of a composite basis shape on a one-dimensional carrier:
// position p (between letters p+1 and p+2, zero-based) lies inside a block
// exactly when it is not a boundary of the outer grouping.
inline std::vector<bool> inner_positions(std::size_t n, const PlethLabel& lab) {
  std::vector<bool> inner(n > 0 ? n - 1 : 0, true);
  std::size_t p = 0;
  for (std::size_t j = 0; j + 1 < lab.comp.size(); ++j) {
    p += lab.comp[j];
    inner[p - 1] = false;
  }
  return inner;
}

}  // namespace detail

// The identity law on the unit carrier: both structures are the identity
// structures and the law is the identity on the composite.
inline Entwining identity_triple(std::size_t max_arity, Mode mode, PlethCache& cache) {
  const SeqPtr u = unit_sequence(max_arity, mode);
  const PlethysmIndex& uu = cache.of(u, u);
  OperadStructure op(u, left_unitor(uu), SeqMorphism::identity(u));
  CooperadStructure co(u, invert(left_unitor(uu)), SeqMorphism::identity(u));
  SeqMorphism lambda = SeqMorphism::identity(uu.sequence());
  return Entwining(std::move(op), std::move(co), std::move(lambda), cache);
}

// Concatenation and deconcatenation on the word carrier, entwined by the
// separator-exchange law: a source shape with outer boundaries S maps to the
// sum of all target shapes whose inner (within-block) positions avoid the
// inner positions of the source.  Outer separators split either way; inner
// separators always become outer boundaries on the other side.
inline Entwining infinitesimal_triple(std::size_t max_arity, PlethCache& cache) {
  const SeqPtr h = word_sequence(max_arity);
  const SeqPtr u = unit_sequence(max_arity, Mode::nonsymmetric);
  const PlethysmIndex& hh = cache.of(h, h);

  OperadStructure op(h, assemble_mult(h, hh, detail::collapse_rule),
                     detail::one_dim_unit(h, u));

  std::vector<Matrix> dblocks;
  for (std::size_t n = 1; n <= max_arity; ++n) {
    Matrix d(hh.sequence()->dim(n), 1);
    for (std::size_t r = 0; r < d.rows(); ++r) d(r, 0) = Rational(1);
    dblocks.push_back(std::move(d));
  }
  CooperadStructure co(h, SeqMorphism(h, hh.sequence(), std::move(dblocks)),
                       detail::one_dim_counit(h, u));

  std::vector<Matrix> lblocks;
  for (std::size_t n = 1; n <= max_arity; ++n) {
    const auto& labels = hh.labels(n);
    std::vector<std::vector<bool>> inner;
    inner.reserve(labels.size());
    for (const PlethLabel& lab : labels) inner.push_back(detail::inner_positions(n, lab));
    Matrix lam(labels.size(), labels.size());
    for (std::size_t s = 0; s < labels.size(); ++s)
      for (std::size_t t = 0; t < labels.size(); ++t) {
        bool ok = true;
        for (std::size_t p = 0; p + 1 < n && ok; ++p)
          if (inner[t][p] && inner[s][p]) ok = false;
        if (ok) lam(t, s) = Rational(1);
      }
    lblocks.push_back(std::move(lam));
  }
  SeqMorphism lambda(hh.sequence(), hh.sequence(), std::move(lblocks));
  return Entwining(std::move(op), std::move(co), std::move(lambda), cache);
}

// Contract aliases under the names the external interface documents.
inline Entwining build_infinitesimal(std::size_t max_arity, PlethCache& cache) {
  return infinitesimal_triple(max_arity, cache);
}

inline Entwining build_identity_triple(std::size_t max_arity, PlethCache& cache,
                                       Mode mode = Mode::nonsymmetric) {
  return identity_triple(max_arity, mode, cache);
}

inline OperadStructure build_As_operad(std::size_t max_arity, PlethCache& cache) {
  return concat_operad(max_arity, cache);
}

inline CooperadStructure build_deconcat_cooperad(std::size_t max_arity, PlethCache& cache) {
  return deconcat_cooperad(max_arity, cache);
}

}  // namespace entwine::builtin
