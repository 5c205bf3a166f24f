#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "entwine/plethysm.hpp"
#include "support/brute_plethysm.hpp"

using entwine::Matrix;
using entwine::Mode;
using entwine::Permutation;
using entwine::PlethysmIndex;
using entwine::Rational;
using entwine::SeqPtr;
using entwine::SymmetricSequence;

namespace {

// Sequence builders and the brute-force model live in tests/support so the
// acceptance suite can reuse them verbatim.
SeqPtr as_seq(std::size_t max_arity) { return oracle::words(max_arity); }
SeqPtr com_seq(std::size_t max_arity) { return oracle::bags(max_arity); }
SeqPtr mixed_seq(std::size_t max_arity) { return oracle::mixed(max_arity); }

using oracle::brute_model;
using oracle::brute_symmetrizer;
using oracle::BruteModel;

}  // namespace

TEST_CASE("composition dims against the brute-force oracle", "[plethysm][oracle]") {
  const std::size_t N = 4;
  struct Pair {
    const char* name;
    SeqPtr M, Nseq;
  };
  const std::vector<Pair> pairs = {
      {"words-in-words", as_seq(N), as_seq(N)},
      {"partitions-in-partitions", com_seq(N), com_seq(N)},
      {"partitions-of-mixed", com_seq(N), mixed_seq(N)},
      {"mixed-of-partitions", mixed_seq(N), com_seq(N)},
      {"mixed-of-mixed", mixed_seq(N), mixed_seq(N)},
  };
  for (const auto& pr : pairs) {
    const bool sym = pr.M->mode() == Mode::symmetric;
    const PlethysmIndex idx(pr.M, pr.Nseq);
    for (std::size_t n = 1; n <= N; ++n) {
      INFO(pr.name << " at arity " << n);
      const BruteModel model = brute_model(pr.M, pr.Nseq, n, sym);
      REQUIRE(model.labels.size() == idx.ordered_dim(n));
      // Same canonical label order.
      for (std::size_t i = 0; i < model.labels.size(); ++i)
        CHECK(model.labels[i].key() == idx.labels(n)[i].key());
      if (!sym) {
        CHECK(idx.sequence()->dim(n) == model.labels.size());
        continue;
      }
      const Matrix p = brute_symmetrizer(model, pr.M, n);
      CHECK(p * p == p);
      CHECK(entwine::rank(p) == idx.sequence()->dim(n));
      // The closed-form splitting reproduces the averaged idempotent exactly.
      CHECK(idx.idempotent(n) == p);
      CHECK(idx.projection(n) * idx.inclusion(n) ==
            Matrix::identity(idx.sequence()->dim(n)));
    }
  }
}

TEST_CASE("frozen composition dimensions", "[plethysm]") {
  const std::size_t N = 4;
  const PlethysmIndex as_as(as_seq(N), as_seq(N));
  CHECK(as_as.sequence()->dims() == std::vector<std::size_t>{1, 2, 4, 8});

  const PlethysmIndex com_com(com_seq(N), com_seq(N));
  CHECK(com_com.sequence()->dims() == std::vector<std::size_t>{1, 2, 5, 15});

  const PlethysmIndex triple(com_com.sequence(), com_seq(N));
  CHECK(triple.sequence()->dims() == std::vector<std::size_t>{1, 3, 12, 60});
}

TEST_CASE("unit laws at the dimension level", "[plethysm]") {
  for (const auto& M : {com_seq(4), mixed_seq(4)}) {
    const auto unit = entwine::share(SymmetricSequence::unit(4, Mode::symmetric));
    CHECK(PlethysmIndex(unit, M).sequence()->dims() == M->dims());
    CHECK(PlethysmIndex(M, unit).sequence()->dims() == M->dims());
  }
  const auto unit_ns = entwine::share(SymmetricSequence::unit(4, Mode::nonsymmetric));
  CHECK(PlethysmIndex(unit_ns, as_seq(4)).sequence()->dims() == as_seq(4)->dims());
  CHECK(PlethysmIndex(as_seq(4), unit_ns).sequence()->dims() == as_seq(4)->dims());
}

TEST_CASE("induced action is valid and stabilizes the image", "[plethysm]") {
  const std::size_t N = 3;
  for (const auto& pair : {std::pair{com_seq(N), mixed_seq(N)},
                           std::pair{mixed_seq(N), com_seq(N)},
                           std::pair{mixed_seq(N), mixed_seq(N)}}) {
    // Construction itself validates involution/braid/commutation relations.
    const PlethysmIndex idx(pair.first, pair.second);
    for (std::size_t n = 2; n <= N; ++n) {
      for (std::size_t i = 1; i < n; ++i) {
        const Matrix moved =
            idx.apply_ordered_action(n, Permutation::transposition(n, i), idx.inclusion(n));
        // The image subspace is stable under the ambient action.
        CHECK(idx.inclusion(n) * (idx.projection(n) * moved) == moved);
        // And the induced generator is exactly the compressed action.
        CHECK(idx.sequence()->generator(n, i) == idx.projection(n) * moved);
      }
    }
  }
}

TEST_CASE("ordered action is a homomorphism", "[plethysm]") {
  const PlethysmIndex idx(mixed_seq(3), com_seq(3));
  const std::size_t n = 3;
  const Matrix id = Matrix::identity(idx.ordered_dim(n));
  for (const auto& a : entwine::all_permutations(n))
    for (const auto& b : entwine::all_permutations(n)) {
      const Matrix lhs = idx.apply_ordered_action(n, a * b, id);
      const Matrix rhs = idx.apply_ordered_action(n, a, idx.apply_ordered_action(n, b, id));
      REQUIRE(lhs == rhs);
    }
}
