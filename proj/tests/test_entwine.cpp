#include <cstddef>
#include <stdexcept>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "entwine/builtin.hpp"
#include "entwine/entwine.hpp"

using namespace entwine;

namespace {

Matrix ones(std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rational(1);
  return m;
}

std::size_t comp_index(const PlethysmIndex& pleth, std::size_t n,
                       const std::vector<std::size_t>& comp) {
  const auto& labels = pleth.labels(n);
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i].comp == comp) return i;
  throw std::runtime_error("composition not found");
}

bool has_failure(const CheckReport& report, const std::string& axiom) {
  for (const auto& entry : report.failures())
    if (entry.axiom == axiom && !entry.witness.empty()) return true;
  return false;
}

}  // namespace

TEST_CASE("the built-in laws satisfy the exchange diagrams") {
  PlethCache cache;
  CHECK(check_entwining(builtin::identity_triple(4, Mode::nonsymmetric, cache), cache).ok());
  CHECK(check_entwining(builtin::identity_triple(3, Mode::symmetric, cache), cache).ok());
  CHECK(check_entwining(builtin::infinitesimal_triple(4, cache), cache).ok());
}

TEST_CASE("the separator-exchange law has the expected matrices") {
  PlethCache cache;
  const auto e = builtin::infinitesimal_triple(3, cache);
  const PlethysmIndex& hh = cache.of(e.op.carrier, e.op.carrier);

  const std::size_t whole2 = comp_index(hh, 2, {2});
  const std::size_t split2 = comp_index(hh, 2, {1, 1});
  Matrix expected2(2, 2);
  expected2(split2, whole2) = Rational(1);
  expected2(whole2, split2) = Rational(1);
  expected2(split2, split2) = Rational(1);
  CHECK(e.lambda.block(2) == expected2);

  const std::size_t whole3 = comp_index(hh, 3, {3});
  const std::size_t left3 = comp_index(hh, 3, {1, 2});
  const std::size_t right3 = comp_index(hh, 3, {2, 1});
  const std::size_t fine3 = comp_index(hh, 3, {1, 1, 1});
  Matrix expected3(4, 4);
  expected3(fine3, whole3) = Rational(1);
  expected3(right3, left3) = Rational(1);
  expected3(fine3, left3) = Rational(1);
  expected3(left3, right3) = Rational(1);
  expected3(fine3, right3) = Rational(1);
  expected3(whole3, fine3) = Rational(1);
  expected3(left3, fine3) = Rational(1);
  expected3(right3, fine3) = Rational(1);
  expected3(fine3, fine3) = Rational(1);
  CHECK(e.lambda.block(3) == expected3);
}

TEST_CASE("compatibility, both absorption laws, and the bialgebra conditions hold") {
  PlethCache cache;
  for (const auto& e : {builtin::identity_triple(3, Mode::nonsymmetric, cache),
                        builtin::infinitesimal_triple(4, cache)}) {
    CHECK(check_compatible(e, cache).ok());
    CHECK(check_delta_law(e, cache).ok());
    CHECK(check_m_law(e, cache).ok());
    CHECK(check_bimonad(e, cache).ok());
  }
}

TEST_CASE("a corrupted law fails the diagrams with a witness") {
  PlethCache cache;
  const auto e = builtin::infinitesimal_triple(3, cache);
  const PlethysmIndex& hh = cache.of(e.op.carrier, e.op.carrier);
  const std::size_t whole2 = comp_index(hh, 2, {2});
  const std::size_t split2 = comp_index(hh, 2, {1, 1});

  Matrix bad2 = e.lambda.block(2);
  bad2(whole2, split2) = bad2(whole2, split2) + Rational(1);
  const Entwining bad(e.op, e.co, e.lambda.with_block(2, bad2), cache);

  const auto report = check_entwining(bad, cache);
  CHECK_FALSE(report.ok());
  CHECK_FALSE(report.failures().empty());
  CHECK_FALSE(report.failures().front().witness.empty());

  // The corrupted column is the one the coproduct reconstruction reads.
  CHECK(has_failure(check_delta_law(bad, cache), "delta-law"));

  Matrix badrow2 = e.lambda.block(2);
  badrow2(split2, whole2) = Rational(0);
  const Entwining bad_row(e.op, e.co, e.lambda.with_block(2, badrow2), cache);
  CHECK(has_failure(check_m_law(bad_row, cache), "m-law"));
  CHECK_FALSE(check_compatible(bad_row, cache).ok());
}

TEST_CASE("a law against the identity cooperad passes without a shared carrier") {
  PlethCache cache;
  auto op = builtin::concat_operad(3, cache);
  auto co = builtin::identity_cooperad(3, Mode::nonsymmetric, cache);
  const PlethysmIndex& au = cache.of(op.carrier, co.carrier);
  const PlethysmIndex& ua = cache.of(co.carrier, op.carrier);
  SeqMorphism lambda = compose(invert(left_unitor(ua)), right_unitor(au));
  const Entwining e(op, co, std::move(lambda), cache);
  CHECK(check_entwining(e, cache).ok());
  CHECK_THROWS_AS(check_compatible(e, cache), SequenceError);
  CHECK_THROWS_AS(solve_antipode(e, cache), SequenceError);
}

TEST_CASE("mismatched law endpoints are rejected") {
  PlethCache cache;
  const auto e = builtin::infinitesimal_triple(3, cache);
  const auto id_co = builtin::identity_cooperad(3, Mode::nonsymmetric, cache);
  CHECK_THROWS_AS(Entwining(e.op, id_co, e.lambda, cache), SequenceError);
}

TEST_CASE("lifted algebras and coalgebras satisfy their axioms") {
  PlethCache cache;
  const auto e = builtin::infinitesimal_triple(3, cache);

  const auto alg = free_algebra(e.op, 1, 3, cache);
  const auto lifted = lift_comonad(e, alg, cache);
  CHECK(lifted.space == std::vector<std::size_t>{1, 2, 4});
  CHECK(check_algebra(e.op, lifted, cache).ok());

  const auto coalg = cofree_coalgebra(e.co, 1, 3, cache);
  const auto colifted = lift_monad(e, coalg, cache);
  CHECK(colifted.space == std::vector<std::size_t>{1, 2, 4});
  CHECK(check_coalgebra(e.co, colifted, cache).ok());

  const auto idtriple = builtin::identity_triple(3, Mode::nonsymmetric, cache);
  const auto base = free_algebra(idtriple.op, 2, 3, cache);
  const auto idlift = lift_comonad(idtriple, base, cache);
  CHECK(idlift.space == std::vector<std::size_t>{2, 0, 0});
  CHECK(check_algebra(idtriple.op, idlift, cache).ok());
}

TEST_CASE("the evaluated law of the identity structures is the identity") {
  PlethCache cache;
  const auto e = builtin::identity_triple(3, Mode::nonsymmetric, cache);
  const std::vector<std::size_t> w{2, 1, 0};
  const TotalMap law = evaluated_law(e, w, 3, cache);
  CHECK(law.mat == tidentity(w).mat);
}

TEST_CASE("the evaluated separator-exchange law is a graded isomorphism") {
  PlethCache cache;
  const auto e = builtin::infinitesimal_triple(3, cache);
  const TotalMap law = evaluated_law(e, {1, 0, 0}, 3, cache);
  CHECK(law.mat.rows() == 7);
  CHECK(law.mat.cols() == 7);
  CHECK(is_isomorphism(law.mat));
}

TEST_CASE("antipodes of the built-in laws") {
  PlethCache cache;

  const auto id3 = builtin::identity_triple(3, Mode::nonsymmetric, cache);
  const auto idres = solve_antipode(id3, cache);
  REQUIRE(idres.antipode.has_value());
  CHECK(*idres.antipode == SeqMorphism::identity(id3.op.carrier));
  CHECK(idres.certificate.empty());

  const auto e = builtin::infinitesimal_triple(4, cache);
  const auto res = solve_antipode(e, cache);
  REQUIRE(res.antipode.has_value());
  for (std::size_t n = 1; n <= 4; ++n) {
    Matrix expected(1, 1);
    expected(0, 0) = (n % 2 == 1) ? Rational(1) : Rational(-1);
    CHECK(res.antipode->block(n) == expected);
  }

  // Independent check that the two convolution identities hold exactly.
  const SeqPtr& h = e.op.carrier;
  const PlethysmIndex& hh = cache.of(h, h);
  const auto id_h = SeqMorphism::identity(h);
  const auto want = compose(e.op.unit, e.co.counit);
  CHECK(compose(e.op.mult, compose(hcompose(*res.antipode, id_h, hh, hh), e.co.comult)) == want);
  CHECK(compose(e.op.mult, compose(hcompose(id_h, *res.antipode, hh, hh), e.co.comult)) == want);
}

TEST_CASE("an unreachable convolution identity yields a certificate") {
  PlethCache cache;
  const auto e = builtin::infinitesimal_triple(3, cache);
  const PlethysmIndex& hh = cache.of(e.op.carrier, e.op.carrier);

  // Remove the only term that could balance the constant part in arity 2.
  Matrix crippled(1, 2);
  crippled(0, comp_index(hh, 2, {2})) = Rational(1);
  OperadStructure bad_op(e.op.carrier, e.op.mult.with_block(2, crippled), e.op.unit);
  const Entwining bad(bad_op, e.co, e.lambda, cache);

  const auto res = solve_antipode(bad, cache);
  CHECK_FALSE(res.antipode.has_value());
  CHECK(res.failed_arity == 2);
  CHECK_FALSE(res.certificate.empty());
}

TEST_CASE("the implication suite holds for the built-in laws") {
  PlethCache cache;
  for (const auto& e : {builtin::identity_triple(3, Mode::nonsymmetric, cache),
                        builtin::infinitesimal_triple(3, cache)}) {
    const auto report = implication_suite(e, cache);
    CHECK(report.entries.size() == 8);
    CHECK(report.ok());
    // On a full bialgebra every implication is exercised, none vacuously.
    for (const auto& entry : report.entries)
      CHECK(entry.witness == "premise and conclusion verified");
  }
}

TEST_CASE("the implication suite never breaks on corrupted structures") {
  PlethCache cache;
  const auto e = builtin::infinitesimal_triple(3, cache);
  const PlethysmIndex& hh = cache.of(e.op.carrier, e.op.carrier);
  std::vector<Entwining> variants;

  Matrix lam2 = e.lambda.block(2);
  lam2(0, 0) = lam2(0, 0) + Rational(1);
  variants.emplace_back(e.op, e.co, e.lambda.with_block(2, lam2), cache);

  Matrix mult2 = e.op.mult.block(2);
  mult2(0, comp_index(hh, 2, {1, 1})) = Rational(3);
  variants.emplace_back(OperadStructure(e.op.carrier, e.op.mult.with_block(2, mult2), e.op.unit),
                        e.co, e.lambda, cache);

  Matrix delta2 = e.co.comult.block(2);
  delta2(comp_index(hh, 2, {2}), 0) = Rational(0);
  variants.emplace_back(
      e.op, CooperadStructure(e.co.carrier, e.co.comult.with_block(2, delta2), e.co.counit),
      e.lambda, cache);

  Matrix unit1(1, 1);
  unit1(0, 0) = Rational(2);
  variants.emplace_back(OperadStructure(e.op.carrier, e.op.mult, e.op.unit.with_block(1, unit1)),
                        e.co, e.lambda, cache);

  Matrix counit1(1, 1);
  counit1(0, 0) = Rational(-5);
  variants.emplace_back(
      e.op, CooperadStructure(e.co.carrier, e.co.comult, e.co.counit.with_block(1, counit1)),
      e.lambda, cache);

  for (const auto& variant : variants) CHECK(implication_suite(variant, cache).ok());
}

TEST_CASE("canonical coproduct matrices of the entwined word structures") {
  PlethCache cache;
  const auto e = builtin::infinitesimal_triple(3, cache);
  CHECK(e.co.comult.block(3) == ones(4, 1));
  CHECK(e.op.mult.block(3) == ones(1, 4));
}
