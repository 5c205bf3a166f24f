#include <catch2/catch_amalgamated.hpp>

#include "entwine/sequence.hpp"

using entwine::check_equivariant;
using entwine::Matrix;
using entwine::Mode;
using entwine::Permutation;
using entwine::Rational;
using entwine::SeqMorphism;
using entwine::SequenceError;
using entwine::SymmetricSequence;

namespace {

entwine::SeqPtr regular_at_2(std::size_t max_arity) {
  std::vector<std::size_t> dims(max_arity, 1);
  dims[1] = 2;
  std::vector<std::vector<Matrix>> gens(max_arity);
  gens[1] = {Matrix{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}};
  for (std::size_t n = 3; n <= max_arity; ++n)
    gens[n - 1].assign(n - 1, Matrix::identity(1));
  return entwine::share(SymmetricSequence::symmetric(max_arity, dims, gens));
}

}  // namespace

TEST_CASE("sequence construction validates shape and relations", "[sequence]") {
  CHECK_THROWS_AS(SymmetricSequence::nonsymmetric(2, {2, 1}), SequenceError);  // dim(1) != 1
  CHECK_THROWS_AS(SymmetricSequence::nonsymmetric(2, {1}), SequenceError);

  // A non-involution generator is rejected.
  std::vector<std::vector<Matrix>> bad(2);
  bad[1] = {Matrix{{Rational(1), Rational(1)}, {Rational(0), Rational(1)}}};
  CHECK_THROWS_AS(SymmetricSequence::symmetric(2, {1, 2}, bad), SequenceError);

  const auto unit = SymmetricSequence::unit(3, Mode::symmetric);
  CHECK(unit.dim(1) == 1);
  CHECK(unit.dim(2) == 0);
  CHECK(unit.dim(3) == 0);
}

TEST_CASE("actions extend generators multiplicatively", "[sequence]") {
  const auto reg = regular_at_2(4);
  const Matrix swap = reg->generator(2, 1);
  CHECK(reg->action(2, Permutation::transposition(2, 1)) == swap);
  CHECK(reg->action(2, Permutation(2)) == Matrix::identity(2));

  // In S_3 with a trivial representation every action is the identity.
  const auto com = entwine::share(SymmetricSequence::with_trivial_action(3, {1, 1, 1}));
  for (const auto& p : entwine::all_permutations(3))
    CHECK(com->action(3, p) == Matrix::identity(1));

  // Homomorphism property on the regular representation of S_2 and on a
  // 3-arity sign-like check via rebuilt generators.
  const auto s = Permutation::transposition(2, 1);
  CHECK(reg->action(2, s) * reg->action(2, s) == Matrix::identity(2));
}

TEST_CASE("morphism plumbing", "[sequence]") {
  const auto reg = regular_at_2(2);
  const auto id = SeqMorphism::identity(reg);
  CHECK(compose(id, id) == id);
  CHECK(invert(id) == id);

  const SeqMorphism twice(reg, reg, {Matrix{{Rational(2)}}, Matrix::identity(2) * Rational(3)});
  CHECK(compose(twice, invert(twice)) == id);
  CHECK(twice.with_block(1, Matrix{{Rational(5)}}).block(1) == Matrix{{Rational(5)}});

  CHECK_THROWS_AS(SeqMorphism(reg, reg, {Matrix(1, 1)}), SequenceError);
  CHECK_THROWS_AS(SeqMorphism(reg, reg, {Matrix(1, 1), Matrix(1, 2)}), SequenceError);
}

TEST_CASE("equivariance checking with witness", "[sequence]") {
  const auto reg = regular_at_2(2);
  CHECK(check_equivariant(SeqMorphism::identity(reg)).ok);

  // The swap matrix commutes with itself, hence is equivariant.
  const SeqMorphism swap_map(reg, reg, {Matrix::identity(1), reg->generator(2, 1)});
  CHECK(check_equivariant(swap_map).ok);

  // A generic diagonal map does not commute with the swap.
  const SeqMorphism diag(reg, reg,
                         {Matrix::identity(1),
                          Matrix{{Rational(1), Rational(0)}, {Rational(0), Rational(2)}}});
  const auto report = check_equivariant(diag);
  CHECK_FALSE(report.ok);
  CHECK(report.arity == 2);
  CHECK(report.generator == 1);
}
