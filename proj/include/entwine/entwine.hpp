#pragma once

// Distributive laws exchanging an operad past a cooperad: the four exchange
// diagrams, compatibility with the pair of structures on a shared carrier,
// the two absorption laws, bimonad recognition, laws evaluated on graded
// spaces, lifted algebras and coalgebras, convolution antipodes, and a suite
// of implications between all these properties.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "entwine/matrix.hpp"
#include "entwine/monoidal.hpp"
#include "entwine/opcore.hpp"
#include "entwine/schur.hpp"
#include "entwine/sequence.hpp"

namespace entwine {

// A law λ: A∘C -> C∘A moving the operad carrier past the cooperad carrier.
struct Entwining {
  OperadStructure op;
  CooperadStructure co;
  SeqMorphism lambda;

  Entwining(OperadStructure op_, CooperadStructure co_, SeqMorphism lambda_, PlethCache& cache)
      : op(std::move(op_)), co(std::move(co_)), lambda(std::move(lambda_)) {
    if (op.carrier->mode() != co.carrier->mode() ||
        op.carrier->max_arity() != co.carrier->max_arity())
      throw SequenceError("entwining: carriers must share mode and truncation");
    const PlethysmIndex& ac = cache.of(op.carrier, co.carrier);
    const PlethysmIndex& ca = cache.of(co.carrier, op.carrier);
    if (!(*lambda.source() == *ac.sequence()))
      throw SequenceError("entwining: law source must be the composite A∘C");
    if (!(*lambda.target() == *ca.sequence()))
      throw SequenceError("entwining: law target must be the composite C∘A");
  }
};

// True when both structures live on one shared carrier (up to structural
// equality); several checks only make sense in that situation.
inline bool single_carrier(const Entwining& e) { return *e.op.carrier == *e.co.carrier; }

inline void require_triple(const Entwining& e, const char* what) {
  if (!single_carrier(e))
    throw SequenceError(std::string(what) + ": the operad and cooperad must share a carrier");
}

namespace detail {

// Column label for a morphism out of a composite sequence: the orbit
// representative the basis vector stands for.
inline std::string composite_label(const PlethysmIndex& pleth, std::size_t n, std::size_t j) {
  return describe(pleth.labels(n)[pleth.image_labels(n)[j]]);
}

}  // namespace detail

// The four exchange diagrams for the law: moving a product, a coproduct, the
// unit, or the counit across λ.
inline CheckReport check_entwining(const Entwining& e, PlethCache& cache) {
  CheckReport report;
  detail::check_morphism_equivariance(report, "equivariance(lambda)", e.lambda);

  const SeqPtr& a = e.op.carrier;
  const SeqPtr& c = e.co.carrier;
  const auto id_a = SeqMorphism::identity(a);
  const auto id_c = SeqMorphism::identity(c);

  const PlethysmIndex& aa = cache.of(a, a);
  const PlethysmIndex& ac = cache.of(a, c);
  const PlethysmIndex& ca = cache.of(c, a);
  const PlethysmIndex& cc = cache.of(c, c);
  const SeqPtr& seq_aa = aa.sequence();
  const SeqPtr& seq_ac = ac.sequence();
  const SeqPtr& seq_ca = ca.sequence();
  const SeqPtr& seq_cc = cc.sequence();

  {  // product: λ·(m∘C) equals the two-step exchange followed by C∘m.
    const PlethysmIndex& aa_c = cache.of(seq_aa, c);
    const PlethysmIndex& a_ac = cache.of(a, seq_ac);
    const PlethysmIndex& a_ca = cache.of(a, seq_ca);
    const PlethysmIndex& ac_a = cache.of(seq_ac, a);
    const PlethysmIndex& ca_a = cache.of(seq_ca, a);
    const PlethysmIndex& c_aa = cache.of(c, seq_aa);
    const auto lhs = compose(e.lambda, hcompose(e.op.mult, id_c, aa_c, ac));
    const auto rhs = compose(
        hcompose(id_c, e.op.mult, c_aa, ca),
        compose(associator(ca, ca_a, aa, c_aa),
                compose(hcompose(e.lambda, id_a, ac_a, ca_a),
                        compose(invert(associator(ac, ac_a, ca, a_ca)),
                                compose(hcompose(id_a, e.lambda, a_ac, a_ca),
                                        associator(aa, aa_c, ac, a_ac))))));
    detail::compare_blocks(report, "multiplication", lhs, rhs, [&](std::size_t n, std::size_t j) {
      return detail::composite_label(aa_c, n, j);
    });
  }

  {  // coproduct: (δ∘A)·λ equals the two-step exchange after A∘δ.
    const PlethysmIndex& cc_a = cache.of(seq_cc, a);
    const PlethysmIndex& c_ca = cache.of(c, seq_ca);
    const PlethysmIndex& a_cc = cache.of(a, seq_cc);
    const PlethysmIndex& ac_c = cache.of(seq_ac, c);
    const PlethysmIndex& ca_c = cache.of(seq_ca, c);
    const PlethysmIndex& c_ac = cache.of(c, seq_ac);
    const auto lhs = compose(hcompose(e.co.comult, id_a, ca, cc_a), e.lambda);
    const auto rhs = compose(
        invert(associator(cc, cc_a, ca, c_ca)),
        compose(hcompose(id_c, e.lambda, c_ac, c_ca),
                compose(associator(ca, ca_c, ac, c_ac),
                        compose(hcompose(e.lambda, id_c, ac_c, ca_c),
                                compose(invert(associator(ac, ac_c, cc, a_cc)),
                                        hcompose(id_a, e.co.comult, ac, a_cc))))));
    detail::compare_blocks(report, "comultiplication", lhs, rhs, [&](std::size_t n, std::size_t j) {
      return detail::composite_label(ac, n, j);
    });
  }

  {  // unit: inserting the unit on either side of λ agrees.
    const SeqPtr& u = e.op.unit.source();
    const PlethysmIndex& uc = cache.of(u, c);
    const PlethysmIndex& cu = cache.of(c, u);
    const auto lhs =
        compose(e.lambda, compose(hcompose(e.op.unit, id_c, uc, ac), invert(left_unitor(uc))));
    const auto rhs = compose(hcompose(id_c, e.op.unit, cu, ca), invert(right_unitor(cu)));
    detail::compare_blocks(report, "unit", lhs, rhs, [&](std::size_t n, std::size_t j) {
      std::ostringstream os;
      os << "basis " << j << " of arity " << n;
      return os.str();
    });
  }

  {  // counit: collapsing the cooperad factor on either side of λ agrees.
    const SeqPtr& u = e.co.counit.target();
    const PlethysmIndex& ua = cache.of(u, a);
    const PlethysmIndex& au = cache.of(a, u);
    const auto lhs =
        compose(left_unitor(ua), compose(hcompose(e.co.counit, id_a, ca, ua), e.lambda));
    const auto rhs = compose(right_unitor(au), hcompose(id_a, e.co.counit, ac, au));
    detail::compare_blocks(report, "counit", lhs, rhs, [&](std::size_t n, std::size_t j) {
      return detail::composite_label(ac, n, j);
    });
  }

  return report;
}

// Compatibility on a shared carrier: δ·m factors through the law, i.e. the
// coproduct of a product is computed by exchanging the middle factors.
inline CheckReport check_compatible(const Entwining& e, PlethCache& cache) {
  require_triple(e, "compatibility");
  CheckReport report;
  const SeqPtr& h = e.op.carrier;
  const auto id_h = SeqMorphism::identity(h);
  const PlethysmIndex& hh = cache.of(h, h);
  const PlethysmIndex& h_hh = cache.of(h, hh.sequence());
  const PlethysmIndex& hh_h = cache.of(hh.sequence(), h);

  const auto lhs = compose(e.co.comult, e.op.mult);
  const auto rhs = compose(
      hcompose(id_h, e.op.mult, h_hh, hh),
      compose(associator(hh, hh_h, hh, h_hh),
              compose(hcompose(e.lambda, id_h, hh_h, hh_h),
                      compose(invert(associator(hh, hh_h, hh, h_hh)),
                              hcompose(id_h, e.co.comult, hh, h_hh)))));
  detail::compare_blocks(report, "compatibility", lhs, rhs, [&](std::size_t n, std::size_t j) {
    return detail::composite_label(hh, n, j);
  });
  return report;
}

// δ is recovered by inserting units inside and applying the law.
inline CheckReport check_delta_law(const Entwining& e, PlethCache& cache) {
  require_triple(e, "delta-law");
  CheckReport report;
  const SeqPtr& h = e.op.carrier;
  const PlethysmIndex& hh = cache.of(h, h);
  const PlethysmIndex& hu = cache.of(h, e.op.unit.source());
  const auto id_h = SeqMorphism::identity(h);
  const auto rhs = compose(
      e.lambda, compose(hcompose(id_h, e.op.unit, hu, hh), invert(right_unitor(hu))));
  detail::compare_blocks(report, "delta-law", e.co.comult, rhs,
                         [&](std::size_t n, std::size_t j) {
                           std::ostringstream os;
                           os << "basis " << j << " of arity " << n;
                           return os.str();
                         });
  return report;
}

// m is recovered by applying the law and collapsing the inner factor.
inline CheckReport check_m_law(const Entwining& e, PlethCache& cache) {
  require_triple(e, "m-law");
  CheckReport report;
  const SeqPtr& h = e.op.carrier;
  const PlethysmIndex& hh = cache.of(h, h);
  const PlethysmIndex& hu = cache.of(h, e.co.counit.target());
  const auto id_h = SeqMorphism::identity(h);
  const auto rhs = compose(
      right_unitor(hu), compose(hcompose(id_h, e.co.counit, hh, hu), e.lambda));
  detail::compare_blocks(report, "m-law", e.op.mult, rhs, [&](std::size_t n, std::size_t j) {
    return detail::composite_label(hh, n, j);
  });
  return report;
}

// True when every arity component of f is injective.
inline bool componentwise_mono(const SeqMorphism& f) {
  for (std::size_t n = 1; n <= f.source()->max_arity(); ++n)
    if (kernel_basis(f.block(n)).cols() != 0) return false;
  return true;
}

// True when every arity component of f is surjective.
inline bool componentwise_epi(const SeqMorphism& f) {
  for (std::size_t n = 1; n <= f.source()->max_arity(); ++n)
    if (rank(f.block(n)) != f.block(n).rows()) return false;
  return true;
}

// The full bialgebra condition set on a shared carrier: the counit is a
// monoid map, the unit is grouplike, the counit splits the unit, and the
// product/coproduct exchange through the law.
inline CheckReport check_bimonad(const Entwining& e, PlethCache& cache) {
  require_triple(e, "bimonad");
  CheckReport report;
  const SeqPtr& h = e.op.carrier;
  const auto id_h = SeqMorphism::identity(h);
  const PlethysmIndex& hh = cache.of(h, h);

  {  // counit of a product: collapse inside first, then outside.
    const PlethysmIndex& hu = cache.of(h, e.co.counit.target());
    const auto lhs = compose(e.co.counit, e.op.mult);
    const auto rhs = compose(
        e.co.counit, compose(right_unitor(hu), hcompose(id_h, e.co.counit, hh, hu)));
    detail::compare_blocks(report, "counit-multiplication", lhs, rhs,
                           [&](std::size_t n, std::size_t j) {
                             return detail::composite_label(hh, n, j);
                           });
  }

  {  // coproduct of the unit: the unit arrives doubled.
    const SeqPtr& u = e.op.unit.source();
    const PlethysmIndex& uu = cache.of(u, u);
    const auto lhs = compose(e.co.comult, e.op.unit);
    const auto rhs =
        compose(hcompose(e.op.unit, e.op.unit, uu, hh), invert(left_unitor(uu)));
    detail::compare_blocks(report, "unit-comultiplication", lhs, rhs,
                           [&](std::size_t n, std::size_t j) {
                             std::ostringstream os;
                             os << "basis " << j << " of arity " << n;
                             return os.str();
                           });
  }

  {  // the counit splits the unit.
    const auto lhs = compose(e.co.counit, e.op.unit);
    const auto rhs = SeqMorphism::identity(e.op.unit.source());
    detail::compare_blocks(report, "unit-counit", lhs, rhs, [&](std::size_t n, std::size_t j) {
      std::ostringstream os;
      os << "basis " << j << " of arity " << n;
      return os.str();
    });
  }

  for (auto& entry : check_compatible(e, cache).entries) report.entries.push_back(entry);
  return report;
}

// The law evaluated at a graded space W: the canonical regroupings composed
// around the evaluated λ, giving F_A(F_C W) -> F_C(F_A W).
inline TotalMap evaluated_law(const Entwining& e, const std::vector<std::size_t>& w_dims,
                              std::size_t trunc, PlethCache& cache) {
  const SeqPtr& a = e.op.carrier;
  const SeqPtr& c = e.co.carrier;
  const PlethysmIndex& ac = cache.of(a, c);
  const PlethysmIndex& ca = cache.of(c, a);
  const GradedEval fc(c, w_dims, trunc);
  const GradedEval fa(a, w_dims, trunc);
  const GradedEval outer_src(a, fc.dims(), trunc);
  const GradedEval outer_tgt(c, fa.dims(), trunc);
  const GradedEval comp_src(ac.sequence(), w_dims, trunc);
  const GradedEval comp_tgt(ca.sequence(), w_dims, trunc);
  const auto iso_src = eval_compose_iso(ac, comp_src, fc, outer_src);
  const auto iso_tgt = eval_compose_iso(ca, comp_tgt, fa, outer_tgt);
  const auto lam = evaluate_map(e.lambda, comp_src, comp_tgt);
  return tcompose(from_graded(iso_tgt),
                  tcompose(from_graded(lam), from_graded(ginverse(iso_src))));
}

// Lift an algebra (W, h) over the operad through the law: the induced
// algebra structure on the cooperad-side evaluation F_C(W), with action
// F_A(F_C W) -> F_C(F_A W) -> F_C(W).
inline AlgebraObject lift_comonad(const Entwining& e, const AlgebraObject& alg,
                                  PlethCache& cache) {
  const std::size_t trunc = alg.eval->truncation();
  const SeqPtr& a = e.op.carrier;
  const SeqPtr& c = e.co.carrier;
  const GradedEval fc(c, alg.space, trunc);
  auto eval = std::make_shared<const GradedEval>(a, fc.dims(), trunc);
  const TotalMap law = evaluated_law(e, alg.space, trunc, cache);
  const GradedEval gtw(c, alg.eval->dims(), trunc);
  const TotalMap mapped_action = teval_map(SeqMorphism::identity(c), gtw, fc, alg.action);
  return AlgebraObject{fc.dims(), std::move(eval), tcompose(mapped_action, law)};
}

// Lift a coalgebra (W, θ) over the cooperad through the law: the induced
// coalgebra structure on the operad-side evaluation F_A(W), with coaction
// F_A(W) -> F_A(F_C W) -> F_C(F_A W).
inline CoalgebraObject lift_monad(const Entwining& e, const CoalgebraObject& coalg,
                                  PlethCache& cache) {
  const std::size_t trunc = coalg.eval->truncation();
  const SeqPtr& a = e.op.carrier;
  const SeqPtr& c = e.co.carrier;
  const GradedEval fa(a, coalg.space, trunc);
  auto eval = std::make_shared<const GradedEval>(c, fa.dims(), trunc);
  const TotalMap law = evaluated_law(e, coalg.space, trunc, cache);
  const GradedEval tgw(a, coalg.eval->dims(), trunc);
  const TotalMap mapped_coaction = teval_map(SeqMorphism::identity(a), fa, tgw, coalg.coaction);
  return CoalgebraObject{fa.dims(), std::move(eval), tcompose(law, mapped_coaction)};
}

struct AntipodeResult {
  std::optional<SeqMorphism> antipode;  // present when both identities hold exactly
  std::size_t failed_arity = 0;         // first arity with no solution; 0 when solved
  std::string certificate;              // explanation when no antipode exists
};

// Solve m·(S∘id)·δ = e·ε = m·(id∘S)·δ for S degree by degree.  Block n of
// either convolution depends on S only through arities at most n, and on the
// block S_n affinely, so each arity is one exact linear system (with
// commutation constraints in symmetric mode).  Underdetermined systems take
// the canonical reduced-echelon particular solution.
inline AntipodeResult solve_antipode(const Entwining& e, PlethCache& cache) {
  require_triple(e, "antipode");
  const SeqPtr& h = e.op.carrier;
  const std::size_t max = h->max_arity();
  const PlethysmIndex& hh = cache.of(h, h);
  const auto id_h = SeqMorphism::identity(h);
  const SeqMorphism target = compose(e.op.unit, e.co.counit);

  std::vector<Matrix> s_blocks;
  for (std::size_t n = 1; n <= max; ++n) s_blocks.emplace_back(h->dim(n), h->dim(n));

  const auto convolution = [&](bool s_outer, std::size_t n) {
    const SeqMorphism s(h, h, s_blocks);
    const auto mixed = s_outer ? hcompose(s, id_h, hh, hh) : hcompose(id_h, s, hh, hh);
    return compose(e.op.mult, compose(mixed, e.co.comult)).block(n);
  };

  for (std::size_t n = 1; n <= max; ++n) {
    const std::size_t d = h->dim(n);
    if (d == 0) continue;
    const Matrix l0 = convolution(true, n);
    const Matrix r0 = convolution(false, n);
    const Matrix& want = target.block(n);

    std::vector<Matrix> gens;
    if (h->mode() == Mode::symmetric)
      for (std::size_t i = 1; i < n; ++i) gens.push_back(h->generator(n, i));

    const std::size_t unknowns = d * d;
    Matrix sys(2 * unknowns + gens.size() * unknowns, unknowns);
    Matrix rhs(sys.rows(), 1);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t col = 0; col < d; ++col) {
        const std::size_t u = r * d + col;
        s_blocks[n - 1](r, col) = Rational(1);
        const Matrix lu = convolution(true, n);
        const Matrix ru = convolution(false, n);
        s_blocks[n - 1](r, col) = Rational(0);
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j) {
            sys(i * d + j, u) = lu(i, j) - l0(i, j);
            sys(unknowns + i * d + j, u) = ru(i, j) - r0(i, j);
          }
        for (std::size_t g = 0; g < gens.size(); ++g) {
          const Matrix& rho = gens[g];
          for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
              Rational coeff(0);
              if (j == col) coeff = coeff + rho(i, r);
              if (i == r) coeff = coeff - rho(col, j);
              sys((2 + g) * unknowns + i * d + j, u) = coeff;
            }
        }
      }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        rhs(i * d + j, 0) = want(i, j) - l0(i, j);
        rhs(unknowns + i * d + j, 0) = want(i, j) - r0(i, j);
      }

    const auto sol = solve(sys, rhs);
    if (!sol) {
      AntipodeResult out;
      out.failed_arity = n;
      std::ostringstream os;
      os << "no antipode: the two convolution identities admit no common ";
      if (!gens.empty()) os << "equivariant ";
      os << "solution in arity " << n;
      out.certificate = os.str();
      return out;
    }
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t col = 0; col < d; ++col) s_blocks[n - 1](r, col) = (*sol)(r * d + col, 0);
  }

  SeqMorphism s(h, h, std::move(s_blocks));
  const auto left = compose(e.op.mult, compose(hcompose(s, id_h, hh, hh), e.co.comult));
  const auto right = compose(e.op.mult, compose(hcompose(id_h, s, hh, hh), e.co.comult));
  if (!(left == target) || !(right == target)) {
    AntipodeResult out;
    out.certificate = "no antipode: the degreewise solutions do not satisfy the identities";
    return out;
  }
  return AntipodeResult{std::move(s), 0, ""};
}

// Implications between the properties of an entwined pair on one carrier.
// Every entry asserts premise → conclusion; an entry only fails when its
// premise holds and its conclusion does not.  The shared context premise is
// that the two structures and the law satisfy their own axiom sets.
inline CheckReport implication_suite(const Entwining& e, PlethCache& cache) {
  require_triple(e, "implications");
  const bool context = check_operad(e.op, cache).ok() && check_cooperad(e.co, cache).ok() &&
                       check_entwining(e, cache).ok();
  const bool dl = check_delta_law(e, cache).ok();
  const bool ml = check_m_law(e, cache).ok();
  const bool compat = check_compatible(e, cache).ok();
  const bool mono = componentwise_mono(e.op.unit);
  const bool epi = componentwise_epi(e.co.counit);

  const SeqPtr& h = e.op.carrier;
  const auto id_h = SeqMorphism::identity(h);
  const PlethysmIndex& hh = cache.of(h, h);
  bool duplicated_unit;  // δ·e = (e∘e) up to the unit constraint
  {
    const SeqPtr& u = e.op.unit.source();
    const PlethysmIndex& uu = cache.of(u, u);
    duplicated_unit = compose(e.co.comult, e.op.unit) ==
                      compose(hcompose(e.op.unit, e.op.unit, uu, hh), invert(left_unitor(uu)));
  }
  bool collapsed_counit;  // ε·m = ε·(H∘ε) up to the unit constraint
  {
    const PlethysmIndex& hu = cache.of(h, e.co.counit.target());
    collapsed_counit =
        compose(e.co.counit, e.op.mult) ==
        compose(e.co.counit, compose(right_unitor(hu), hcompose(id_h, e.co.counit, hh, hu)));
  }
  const bool unit_counit =
      compose(e.co.counit, e.op.unit) == SeqMorphism::identity(e.op.unit.source());
  const bool bimonad = check_bimonad(e, cache).ok();

  CheckReport report;
  const auto add = [&](const char* axiom, bool premise, bool conclusion) {
    CheckEntry entry{axiom, 0, !premise || conclusion, ""};
    if (!entry.ok)
      entry.witness = "premise holds but conclusion fails";
    else
      entry.witness = premise ? "premise and conclusion verified" : "vacuous: premise fails";
    report.entries.push_back(std::move(entry));
  };

  add("delta-law-gives-compatibility", context && dl, compat);
  add("delta-law-gives-duplicated-unit", context && dl, duplicated_unit);
  add("compatibility-gives-delta-law", context && compat && duplicated_unit, dl);
  add("m-law-gives-compatibility", context && ml, compat);
  add("m-law-gives-collapsed-counit", context && ml, collapsed_counit);
  add("compatibility-gives-m-law", context && compat && collapsed_counit, ml);
  add("law-and-split-unit-gives-unit-counit", context && (dl || ml) && (mono || epi),
      unit_counit);
  add("laws-give-bimonad", context && dl && ml && (mono || epi), bimonad);
  return report;
}

}  // namespace entwine
