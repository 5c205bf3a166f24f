#pragma once
// Arity-graded sequences of finite-dimensional rational spaces, truncated at a
// shared max arity.  In symmetric mode each arity n carries an S_n action given
// by generator matrices for the adjacent transpositions s_1..s_{n-1}; general
// permutations act through reduced words, memoized per sequence.  Arity-1
// components are pinned to dimension 1 throughout the library.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entwine/matrix.hpp"
#include "entwine/permutation.hpp"

namespace entwine {

enum class Mode { nonsymmetric, symmetric };

inline const char* mode_name(Mode m) {
  return m == Mode::symmetric ? "symmetric" : "nonsymmetric";
}

class SequenceError : public std::runtime_error {
 public:
  explicit SequenceError(const std::string& what) : std::runtime_error(what) {}
};

class SymmetricSequence {
 public:
  // Nonsymmetric: dims only.  dims[i] is the dimension at arity i+1.
  static SymmetricSequence nonsymmetric(std::size_t max_arity, std::vector<std::size_t> dims) {
    return SymmetricSequence(Mode::nonsymmetric, max_arity, std::move(dims), {});
  }

  // Symmetric: generators[i] lists the matrices of s_1..s_n-1 at arity i+1
  // (so generators[0] is empty).  Group relations are validated up front.
  static SymmetricSequence symmetric(std::size_t max_arity, std::vector<std::size_t> dims,
                                     std::vector<std::vector<Matrix>> generators) {
    return SymmetricSequence(Mode::symmetric, max_arity, std::move(dims), std::move(generators));
  }

  // The monoidal unit: dimension 1 at arity 1, zero elsewhere.
  static SymmetricSequence unit(std::size_t max_arity, Mode mode) {
    std::vector<std::size_t> dims(max_arity, 0);
    dims[0] = 1;
    if (mode == Mode::nonsymmetric) return nonsymmetric(max_arity, std::move(dims));
    std::vector<std::vector<Matrix>> gens(max_arity);
    for (std::size_t n = 2; n <= max_arity; ++n) gens[n - 1].assign(n - 1, Matrix(0, 0));
    return symmetric(max_arity, std::move(dims), std::move(gens));
  }

  // Trivial S_n actions on given dims (every generator acts as the identity).
  static SymmetricSequence with_trivial_action(std::size_t max_arity,
                                               std::vector<std::size_t> dims) {
    std::vector<std::vector<Matrix>> gens(max_arity);
    for (std::size_t n = 2; n <= max_arity; ++n)
      gens[n - 1].assign(n - 1, Matrix::identity(dims[n - 1]));
    return symmetric(max_arity, std::move(dims), std::move(gens));
  }

  Mode mode() const { return mode_; }
  std::size_t max_arity() const { return max_arity_; }
  std::size_t dim(std::size_t n) const {
    if (n < 1 || n > max_arity_) throw SequenceError("dim: arity out of range");
    return dims_[n - 1];
  }
  const std::vector<std::size_t>& dims() const { return dims_; }

  // Matrix of the adjacent transposition s_i (1-based, swapping slots i, i+1)
  // at arity n.  Identity in nonsymmetric mode.
  Matrix generator(std::size_t n, std::size_t i) const {
    if (i < 1 || i >= n) throw SequenceError("generator: index out of range");
    if (mode_ == Mode::nonsymmetric) return Matrix::identity(dim(n));
    return generators_[n - 1][i - 1];
  }

  // Matrix of an arbitrary permutation at arity n, via a reduced word in the
  // generators.  Left action: action(a * b) == action(a) * action(b).
  Matrix action(std::size_t n, const Permutation& sigma) const {
    if (sigma.size() != n) throw SequenceError("action: permutation size does not match arity");
    if (mode_ == Mode::nonsymmetric || sigma.is_identity()) return Matrix::identity(dim(n));
    const std::lock_guard<std::mutex> lock(cache_->mutex);
    auto [it, inserted] = cache_->memo.try_emplace({n, sigma.one_line()});
    if (inserted) {
      Matrix m = Matrix::identity(dim(n));
      for (std::size_t i : sigma.adjacent_word()) m = m * generators_[n - 1][i - 1];
      it->second = std::move(m);
    }
    return it->second;
  }

  friend bool operator==(const SymmetricSequence& a, const SymmetricSequence& b) {
    return a.mode_ == b.mode_ && a.max_arity_ == b.max_arity_ && a.dims_ == b.dims_ &&
           a.generators_ == b.generators_;
  }

 private:
  SymmetricSequence(Mode mode, std::size_t max_arity, std::vector<std::size_t> dims,
                    std::vector<std::vector<Matrix>> generators)
      : mode_(mode),
        max_arity_(max_arity),
        dims_(std::move(dims)),
        generators_(std::move(generators)),
        cache_(std::make_shared<ActionCache>()) {
    if (max_arity_ < 1) throw SequenceError("max_arity must be at least 1");
    if (dims_.size() != max_arity_) throw SequenceError("dims list does not match max_arity");
    if (dims_[0] != 1) throw SequenceError("arity-1 component must have dimension 1");
    if (mode_ == Mode::nonsymmetric) return;
    if (generators_.size() != max_arity_)
      throw SequenceError("generator table does not match max_arity");
    for (std::size_t n = 1; n <= max_arity_; ++n) validate_arity(n);
  }

  void validate_arity(std::size_t n) {
    const auto& gens = generators_[n - 1];
    if (gens.size() + 1 != n && !(n == 1 && gens.empty()))
      throw SequenceError("arity " + std::to_string(n) + ": expected " + std::to_string(n - 1) +
                          " generators");
    const std::size_t d = dims_[n - 1];
    const Matrix id = Matrix::identity(d);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (gens[i].rows() != d || gens[i].cols() != d)
        throw SequenceError("arity " + std::to_string(n) + ": generator shape mismatch");
      if (!(gens[i] * gens[i] == id))
        throw SequenceError("arity " + std::to_string(n) + ": generator " + std::to_string(i + 1) +
                            " is not an involution");
      for (std::size_t j = i + 2; j < gens.size(); ++j)
        if (!(gens[i] * gens[j] == gens[j] * gens[i]))
          throw SequenceError("arity " + std::to_string(n) + ": distant generators " +
                              std::to_string(i + 1) + "," + std::to_string(j + 1) +
                              " do not commute");
    }
    for (std::size_t i = 0; i + 1 < gens.size(); ++i)
      if (!(gens[i] * gens[i + 1] * gens[i] == gens[i + 1] * gens[i] * gens[i + 1]))
        throw SequenceError("arity " + std::to_string(n) + ": braid relation fails at " +
                            std::to_string(i + 1));
  }

  struct ActionCache {
    std::mutex mutex;
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, Matrix> memo;
  };

  Mode mode_;
  std::size_t max_arity_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<Matrix>> generators_;
  std::shared_ptr<ActionCache> cache_;  // shared by copies; content is value-determined
};

using SeqPtr = std::shared_ptr<const SymmetricSequence>;

inline SeqPtr share(SymmetricSequence seq) {
  return std::make_shared<const SymmetricSequence>(std::move(seq));
}

// A morphism of sequences: one matrix per arity, rows indexed by the target
// basis, columns by the source basis.  Equivariance in symmetric mode is a
// semantic requirement checked by check_equivariant, not enforced here, so
// that deliberately broken candidates can still be represented and reported.
class SeqMorphism {
 public:
  SeqMorphism(SeqPtr source, SeqPtr target, std::vector<Matrix> blocks)
      : source_(std::move(source)), target_(std::move(target)), blocks_(std::move(blocks)) {
    if (!source_ || !target_) throw SequenceError("morphism: null endpoint");
    if (source_->max_arity() != target_->max_arity())
      throw SequenceError("morphism: endpoint truncations differ");
    if (blocks_.size() != source_->max_arity())
      throw SequenceError("morphism: wrong number of arity blocks");
    for (std::size_t n = 1; n <= blocks_.size(); ++n)
      if (blocks_[n - 1].rows() != target_->dim(n) || blocks_[n - 1].cols() != source_->dim(n))
        throw SequenceError("morphism: block shape mismatch at arity " + std::to_string(n));
  }

  static SeqMorphism identity(const SeqPtr& seq) {
    std::vector<Matrix> blocks;
    for (std::size_t n = 1; n <= seq->max_arity(); ++n)
      blocks.push_back(Matrix::identity(seq->dim(n)));
    return SeqMorphism(seq, seq, std::move(blocks));
  }

  const SeqPtr& source() const { return source_; }
  const SeqPtr& target() const { return target_; }
  const Matrix& block(std::size_t n) const { return blocks_[n - 1]; }
  const std::vector<Matrix>& blocks() const { return blocks_; }

  SeqMorphism with_block(std::size_t n, Matrix m) const {
    std::vector<Matrix> blocks = blocks_;
    blocks.at(n - 1) = std::move(m);
    return SeqMorphism(source_, target_, std::move(blocks));
  }

  friend bool operator==(const SeqMorphism& a, const SeqMorphism& b) {
    return a.blocks_ == b.blocks_ && *a.source_ == *b.source_ && *a.target_ == *b.target_;
  }

 private:
  SeqPtr source_, target_;
  std::vector<Matrix> blocks_;
};

// f after g.
inline SeqMorphism compose(const SeqMorphism& f, const SeqMorphism& g) {
  if (!(*g.target() == *f.source())) throw SequenceError("compose: endpoints do not match");
  std::vector<Matrix> blocks;
  for (std::size_t n = 1; n <= f.source()->max_arity(); ++n)
    blocks.push_back(f.block(n) * g.block(n));
  return SeqMorphism(g.source(), f.target(), std::move(blocks));
}

// Exact inverse of an invertible morphism.
inline SeqMorphism invert(const SeqMorphism& f) {
  std::vector<Matrix> blocks;
  for (std::size_t n = 1; n <= f.source()->max_arity(); ++n) {
    auto inv = inverse(f.block(n));
    if (!inv) throw SequenceError("invert: block at arity " + std::to_string(n) + " is singular");
    blocks.push_back(std::move(*inv));
  }
  return SeqMorphism(f.target(), f.source(), std::move(blocks));
}

struct EquivarianceReport {
  bool ok = true;
  std::size_t arity = 0;      // first failing arity, when !ok
  std::size_t generator = 0;  // 1-based index of the failing s_i
};

// f_n . rho_src(s_i) == rho_tgt(s_i) . f_n for all arities and generators.
// Trivially true in nonsymmetric mode.
inline EquivarianceReport check_equivariant(const SeqMorphism& f) {
  if (f.source()->mode() != f.target()->mode())
    throw SequenceError("check_equivariant: mixed modes");
  if (f.source()->mode() == Mode::nonsymmetric) return {};
  for (std::size_t n = 2; n <= f.source()->max_arity(); ++n)
    for (std::size_t i = 1; i < n; ++i)
      if (!(f.block(n) * f.source()->generator(n, i) == f.target()->generator(n, i) * f.block(n)))
        return {false, n, i};
  return {};
}

}  // namespace entwine
