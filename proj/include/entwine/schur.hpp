#pragma once

// Evaluation of symmetric sequences on finite-dimensional graded spaces.
//
// For a sequence M and a graded space W (dimensions per grade 1..N) the
// evaluated space F_M(W) has ordered basis (k; grades n_1..n_k; m; slot
// indices), truncated by total grade.  In symmetric mode the arity-wise
// S_k slot permutation combined with the M-action gives an averaging
// idempotent whose image realizes the coinvariants; in nonsymmetric mode
// the ordered basis is the answer.  Evaluating at a plain vector space
// Q^d is the special case of W concentrated in grade 1.

#include <cstddef>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "entwine/matrix.hpp"
#include "entwine/plethysm.hpp"
#include "entwine/sequence.hpp"

namespace entwine {

struct SlotLabel {
  std::size_t k = 0;
  std::vector<std::size_t> comp;   // grade of each of the k slots, all >= 1
  std::size_t m_idx = 0;           // basis index in M(k)
  std::vector<std::size_t> slots;  // basis index within W at the slot's grade

  std::vector<std::size_t> key() const {
    std::vector<std::size_t> out;
    out.reserve(2 + comp.size() + slots.size());
    out.push_back(k);
    out.insert(out.end(), comp.begin(), comp.end());
    out.push_back(m_idx);
    out.insert(out.end(), slots.begin(), slots.end());
    return out;
  }

  bool operator==(const SlotLabel& o) const {
    return k == o.k && comp == o.comp && m_idx == o.m_idx && slots == o.slots;
  }
};

// F_M(W) truncated by total grade.  Grades run 1..truncation throughout;
// pieces whose total grade exceeds the truncation are counted as dropped
// rather than silently folded into lower grades.
class GradedEval {
 public:
  GradedEval(SeqPtr seq, std::vector<std::size_t> w_dims, std::size_t trunc)
      : seq_(std::move(seq)), w_dims_(std::move(w_dims)), trunc_(trunc) {
    if (trunc_ == 0 || trunc_ > seq_->max_arity())
      throw SequenceError("GradedEval: truncation must be in 1..max_arity");
    if (w_dims_.size() < trunc_) w_dims_.resize(trunc_, 0);
    arities_.resize(trunc_);
    for (std::size_t n = 1; n <= trunc_; ++n) build_arity(n);
    count_dropped();
  }

  const SeqPtr& sequence() const { return seq_; }
  std::size_t truncation() const { return trunc_; }
  const std::vector<std::size_t>& slot_dims() const { return w_dims_; }

  std::size_t ordered_dim(std::size_t n) const { return at(n).labels.size(); }
  std::size_t dim(std::size_t n) const { return at(n).splitting.inclusion.cols(); }
  std::size_t total_dim() const {
    std::size_t t = 0;
    for (std::size_t n = 1; n <= trunc_; ++n) t += dim(n);
    return t;
  }
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out(trunc_);
    for (std::size_t n = 1; n <= trunc_; ++n) out[n - 1] = dim(n);
    return out;
  }

  const Matrix& inclusion(std::size_t n) const { return at(n).splitting.inclusion; }
  const Matrix& projection(std::size_t n) const { return at(n).splitting.projection; }
  const std::vector<SlotLabel>& labels(std::size_t n) const { return at(n).labels; }

  std::size_t label_index(std::size_t n, const SlotLabel& lab) const {
    const auto& ar = at(n);
    const auto it = ar.lookup.find(lab.key());
    if (it == ar.lookup.end()) throw SequenceError("GradedEval: unknown label");
    return it->second;
  }

  // Ordered label naming image basis vector i (its pivot in the ordered model).
  const SlotLabel& basis_label(std::size_t n, std::size_t i) const {
    return at(n).labels.at(at(n).pivots.at(i));
  }

  // Number of ordered basis elements beyond the truncation window.
  std::size_t dropped_ordered() const { return dropped_; }

 private:
  struct Arity {
    std::vector<SlotLabel> labels;
    std::map<std::vector<std::size_t>, std::size_t> lookup;
    std::vector<std::size_t> pivots;
    ImageSplitting splitting;
  };

  const Arity& at(std::size_t n) const {
    if (n < 1 || n > trunc_) throw SequenceError("GradedEval: grade out of range");
    return arities_[n - 1];
  }

  // Enumerate ordered labels of total grade n.  The loops run in canonical
  // key order (k, comp, m, slots), so the resulting list is already sorted.
  std::vector<SlotLabel> enumerate(std::size_t n) const {
    std::vector<SlotLabel> out;
    const std::size_t kmax = std::min(n, seq_->max_arity());
    for (std::size_t k = 1; k <= kmax; ++k) {
      if (seq_->dim(k) == 0) continue;
      for (const auto& comp : detail::compositions(n, k)) {
        bool viable = true;
        for (std::size_t part : comp)
          viable = viable && part <= trunc_ && w_dims_[part - 1] > 0;
        if (!viable) continue;
        for (std::size_t m = 0; m < seq_->dim(k); ++m) {
          std::vector<std::size_t> slots(k, 0);
          const auto advance = [&]() -> bool {
            for (std::size_t j = k; j-- > 0;) {
              if (++slots[j] < w_dims_[comp[j] - 1]) return true;
              slots[j] = 0;
            }
            return false;
          };
          do {
            out.push_back(SlotLabel{k, comp, m, slots});
          } while (advance());
        }
      }
    }
    return out;
  }

  void build_arity(std::size_t n) {
    Arity& ar = arities_[n - 1];
    ar.labels = enumerate(n);
    for (std::size_t i = 0; i < ar.labels.size(); ++i) ar.lookup.emplace(ar.labels[i].key(), i);
    const std::size_t dim = ar.labels.size();

    if (seq_->mode() == Mode::nonsymmetric) {
      ar.splitting = {Matrix::identity(dim), Matrix::identity(dim)};
      ar.pivots.resize(dim);
      std::iota(ar.pivots.begin(), ar.pivots.end(), std::size_t{0});
      return;
    }

    // Averaging idempotent: block-diagonal over k, each block averaging the
    // slot permutation tensored with the M(k)-action over all of S_k.
    Matrix p(dim, dim);
    for (std::size_t li = 0; li < dim; ++li) {
      const SlotLabel& lab = ar.labels[li];
      const Rational weight(BigInt(1), factorial(lab.k));
      for (const auto& tau : all_permutations(lab.k)) {
        const Matrix rho = seq_->action(lab.k, tau);
        SlotLabel tgt = lab;
        for (std::size_t j = 0; j < lab.k; ++j) {
          tgt.comp[tau(j)] = lab.comp[j];
          tgt.slots[tau(j)] = lab.slots[j];
        }
        for (std::size_t m2 = 0; m2 < seq_->dim(lab.k); ++m2) {
          if (rho(m2, lab.m_idx) == Rational(0)) continue;
          tgt.m_idx = m2;
          p(ar.lookup.at(tgt.key()), li) += rho(m2, lab.m_idx) * weight;
        }
      }
    }
    RrefResult red = rref(p);
    ar.pivots = red.pivots;
    ar.splitting = idempotent_image(p);
  }

  void count_dropped() {
    dropped_ = 0;
    // Total grade is bounded by k slots of grade <= truncation each.
    for (std::size_t n = trunc_ + 1; n <= trunc_ * seq_->max_arity(); ++n) {
      const std::size_t kmax = seq_->max_arity();
      for (std::size_t k = 1; k <= kmax; ++k) {
        if (seq_->dim(k) == 0 || n < k) continue;
        for (const auto& comp : detail::compositions(n, k)) {
          std::size_t count = seq_->dim(k);
          for (std::size_t part : comp)
            count *= (part <= trunc_) ? w_dims_[part - 1] : 0;
          dropped_ += count;
        }
      }
    }
  }

  static BigInt factorial(std::size_t k) {
    BigInt f = 1;
    for (std::size_t i = 2; i <= k; ++i) f *= BigInt(i);
    return f;
  }

  SeqPtr seq_;
  std::vector<std::size_t> w_dims_;
  std::size_t trunc_;
  std::vector<Arity> arities_;
  std::size_t dropped_ = 0;
};

// F_M(Q^d): the graded space with all inputs in grade 1.
inline GradedEval schur_evaluate(SeqPtr seq, std::size_t d, std::size_t trunc) {
  std::vector<std::size_t> w(trunc, 0);
  if (!w.empty()) w[0] = d;
  return GradedEval(std::move(seq), std::move(w), trunc);
}

// A grade-preserving linear map between graded spaces, one block per grade.
struct GradedMap {
  std::vector<Matrix> blocks;  // grade n stored at index n-1

  GradedMap() = default;
  explicit GradedMap(std::vector<Matrix> b) : blocks(std::move(b)) {}

  std::size_t grades() const { return blocks.size(); }
  const Matrix& block(std::size_t n) const {
    if (n < 1 || n > blocks.size()) throw ShapeError("GradedMap: grade out of range");
    return blocks[n - 1];
  }

  bool operator==(const GradedMap& o) const { return blocks == o.blocks; }
  bool operator!=(const GradedMap& o) const { return !(*this == o); }
};

inline GradedMap gidentity(const std::vector<std::size_t>& dims) {
  GradedMap out;
  out.blocks.reserve(dims.size());
  for (std::size_t d : dims) out.blocks.push_back(Matrix::identity(d));
  return out;
}

inline GradedMap gcompose(const GradedMap& f, const GradedMap& g) {
  if (f.grades() != g.grades()) throw ShapeError("gcompose: grade count mismatch");
  GradedMap out;
  out.blocks.reserve(f.grades());
  for (std::size_t n = 1; n <= f.grades(); ++n) out.blocks.push_back(f.block(n) * g.block(n));
  return out;
}

inline bool gis_isomorphism(const GradedMap& f) {
  for (const Matrix& b : f.blocks)
    if (!is_isomorphism(b)) return false;
  return true;
}

inline GradedMap ginverse(const GradedMap& f) {
  GradedMap out;
  out.blocks.reserve(f.grades());
  for (const Matrix& b : f.blocks) {
    auto inv = inverse(b);
    if (!inv) throw ShapeError("ginverse: block is singular");
    out.blocks.push_back(std::move(*inv));
  }
  return out;
}

// A linear map between graded spaces that may mix grades, stored as one
// matrix over the concatenated (grade-ordered) bases.  Algebra actions
// collapse grades, coalgebra coactions spread them, so unlike GradedMap
// this carries the grade dimensions of both sides explicitly.
struct TotalMap {
  std::vector<std::size_t> src_dims, tgt_dims;
  Matrix mat;

  TotalMap() = default;
  TotalMap(std::vector<std::size_t> src, std::vector<std::size_t> tgt, Matrix m)
      : src_dims(std::move(src)), tgt_dims(std::move(tgt)), mat(std::move(m)) {
    if (mat.rows() != total(tgt_dims) || mat.cols() != total(src_dims))
      throw ShapeError("TotalMap: matrix does not match the graded dimensions");
  }

  static std::size_t total(const std::vector<std::size_t>& dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{0});
  }
  static std::size_t offset(const std::vector<std::size_t>& dims, std::size_t grade) {
    return std::accumulate(dims.begin(), dims.begin() + (grade - 1), std::size_t{0});
  }

  // The grade-(i,j) block, rows from tgt grade i and columns from src grade j.
  Matrix block(std::size_t i, std::size_t j) const {
    Matrix out(tgt_dims.at(i - 1), src_dims.at(j - 1));
    const std::size_t r0 = offset(tgt_dims, i), c0 = offset(src_dims, j);
    for (std::size_t r = 0; r < out.rows(); ++r)
      for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = mat(r0 + r, c0 + c);
    return out;
  }

  bool operator==(const TotalMap& o) const {
    return src_dims == o.src_dims && tgt_dims == o.tgt_dims && mat == o.mat;
  }
  bool operator!=(const TotalMap& o) const { return !(*this == o); }
};

inline TotalMap tidentity(const std::vector<std::size_t>& dims) {
  return TotalMap(dims, dims, Matrix::identity(TotalMap::total(dims)));
}

inline TotalMap tcompose(const TotalMap& f, const TotalMap& g) {
  if (f.src_dims != g.tgt_dims) throw ShapeError("tcompose: grade dimensions do not match");
  return TotalMap(g.src_dims, f.tgt_dims, f.mat * g.mat);
}

inline TotalMap from_graded(const GradedMap& f) {
  std::vector<std::size_t> src, tgt;
  std::size_t total_src = 0, total_tgt = 0;
  for (const Matrix& b : f.blocks) {
    src.push_back(b.cols());
    tgt.push_back(b.rows());
    total_src += b.cols();
    total_tgt += b.rows();
  }
  Matrix m(total_tgt, total_src);
  std::size_t r0 = 0, c0 = 0;
  for (const Matrix& b : f.blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) m(r0 + r, c0 + c) = b(r, c);
    r0 += b.rows();
    c0 += b.cols();
  }
  return TotalMap(std::move(src), std::move(tgt), std::move(m));
}

// Functorial action on evaluated spaces: a sequence morphism f: M -> M'
// applied at the outer position together with a graded map g on the slots,
// giving F_f(g): F_M(W) -> F_M'(W').  Both specialize to identities.
inline GradedMap geval_map(const SeqMorphism& f, const GradedEval& src, const GradedEval& tgt,
                           const GradedMap& on_slots) {
  if (src.truncation() != tgt.truncation())
    throw SequenceError("geval_map: truncation mismatch");
  const std::size_t trunc = src.truncation();
  GradedMap out;
  out.blocks.reserve(trunc);
  for (std::size_t n = 1; n <= trunc; ++n) {
    Matrix acc(tgt.ordered_dim(n), src.dim(n));
    const Matrix& inc = src.inclusion(n);
    for (std::size_t col = 0; col < src.dim(n); ++col) {
      for (std::size_t li = 0; li < src.ordered_dim(n); ++li) {
        const Rational& alpha = inc(li, col);
        if (alpha == Rational(0)) continue;
        const SlotLabel& lab = src.labels(n)[li];
        const Matrix& fk = f.block(lab.k);
        SlotLabel tgt_lab = lab;
        for (std::size_t m2 = 0; m2 < fk.rows(); ++m2) {
          if (fk(m2, lab.m_idx) == Rational(0)) continue;
          tgt_lab.m_idx = m2;
          // Spread over target slot indices with the product of block entries.
          std::vector<std::size_t> chosen(lab.k, 0);
          const auto emit = [&](auto&& self, std::size_t j, const Rational& coeff) -> void {
            if (coeff == Rational(0)) return;
            if (j == lab.k) {
              tgt_lab.slots = chosen;
              acc(tgt.label_index(n, tgt_lab), col) += alpha * fk(m2, lab.m_idx) * coeff;
              return;
            }
            const Matrix& gb = on_slots.block(lab.comp[j]);
            for (std::size_t b = 0; b < gb.rows(); ++b) {
              if (gb(b, lab.slots[j]) == Rational(0)) continue;
              chosen[j] = b;
              self(self, j + 1, coeff * gb(b, lab.slots[j]));
            }
          };
          emit(emit, 0, Rational(1));
        }
      }
    }
    out.blocks.push_back(tgt.projection(n) * acc);
  }
  return out;
}

// Evaluated sequence morphism F_f: F_M(W) -> F_M'(W), slots untouched.
inline GradedMap evaluate_map(const SeqMorphism& f, const GradedEval& src, const GradedEval& tgt) {
  std::vector<std::size_t> grade_dims(src.truncation());
  for (std::size_t n = 1; n <= src.truncation(); ++n) grade_dims[n - 1] = src.slot_dims()[n - 1];
  return geval_map(f, src, tgt, gidentity(grade_dims));
}

// The canonical regrouping isomorphism F_{M∘N}(W) -> F_M(F_N(W)).
//
// `composite` evaluates pleth.sequence() on W, `inner` evaluates N on W, and
// `outer` evaluates M on the graded space F_N(W) (its slot dims must equal
// inner.dims()).  An ordered composite label pairs a plethysm label with a
// distribution of W-slots over the leaves; sending each outer slot the
// sub-collection of W-slots in its block collapses the block arrangement,
// so in symmetric mode the multinomial fiber size divides the coefficient.
inline GradedMap eval_compose_iso(const PlethysmIndex& pleth, const GradedEval& composite,
                                  const GradedEval& inner, const GradedEval& outer) {
  if (composite.sequence() != pleth.sequence())
    throw SequenceError("eval_compose_iso: composite space does not evaluate the plethysm");
  if (outer.slot_dims() != inner.dims())
    throw SequenceError("eval_compose_iso: outer slots must be the evaluated inner space");
  const std::size_t trunc = composite.truncation();
  const bool sym = pleth.sequence()->mode() == Mode::symmetric;

  GradedMap out;
  out.blocks.reserve(trunc);
  for (std::size_t n = 1; n <= trunc; ++n) {
    Matrix acc(outer.ordered_dim(n), composite.dim(n));
    const Matrix& inc = composite.inclusion(n);
    for (std::size_t col = 0; col < composite.dim(n); ++col) {
      for (std::size_t li = 0; li < composite.ordered_dim(n); ++li) {
        const Rational& alpha = inc(li, col);
        if (alpha == Rational(0)) continue;
        const SlotLabel& big = composite.labels(n)[li];
        // big.m_idx indexes (M∘N)(big.k); open it up into plethysm labels.
        const Matrix& pinc = pleth.inclusion(big.k);
        for (std::size_t pi = 0; pi < pleth.ordered_dim(big.k); ++pi) {
          const Rational& beta = pinc(pi, big.m_idx);
          if (beta == Rational(0)) continue;
          const PlethLabel& plab = pleth.labels(big.k)[pi];
          Rational coeff = alpha * beta;
          if (sym) {
            // Collapsing the block arrangement identifies multinomial-many
            // ordered preimages; average over them.
            BigInt fiber = 1;
            std::size_t used = 0;
            for (std::size_t part : plab.comp)
              for (std::size_t t = 0; t < part; ++t) fiber = fiber * BigInt(++used) / BigInt(t + 1);
            coeff /= Rational(std::move(fiber));
          }

          // Each outer slot j receives the W-slots sitting in its block,
          // forming an ordered inner label whose grade is their total.
          SlotLabel outer_lab;
          outer_lab.k = plab.k;
          outer_lab.m_idx = plab.m_idx;
          outer_lab.comp.resize(plab.k);
          outer_lab.slots.resize(plab.k);
          std::vector<std::vector<Rational>> slot_cols(plab.k);
          bool dead = false;
          for (std::size_t j = 0; j < plab.k && !dead; ++j) {
            SlotLabel sub;
            sub.k = plab.comp[j];
            sub.m_idx = plab.n_idxs[j];
            for (std::size_t t : plab.blocks[j]) {
              sub.comp.push_back(big.comp[t]);
              sub.slots.push_back(big.slots[t]);
            }
            const std::size_t grade =
                std::accumulate(sub.comp.begin(), sub.comp.end(), std::size_t{0});
            if (grade > trunc) {
              dead = true;  // cannot happen for grade-preserving data; guard anyway
              break;
            }
            outer_lab.comp[j] = grade;
            const std::size_t sub_idx = inner.label_index(grade, sub);
            const Matrix& pr = inner.projection(grade);
            slot_cols[j].resize(pr.rows());
            for (std::size_t b = 0; b < pr.rows(); ++b) slot_cols[j][b] = pr(b, sub_idx);
          }
          if (dead) continue;

          std::vector<std::size_t> chosen(plab.k, 0);
          const auto emit = [&](auto&& self, std::size_t j, const Rational& c) -> void {
            if (c == Rational(0)) return;
            if (j == plab.k) {
              outer_lab.slots = chosen;
              acc(outer.label_index(n, outer_lab), col) += c;
              return;
            }
            for (std::size_t b = 0; b < slot_cols[j].size(); ++b) {
              if (slot_cols[j][b] == Rational(0)) continue;
              chosen[j] = b;
              self(self, j + 1, c * slot_cols[j][b]);
            }
          };
          emit(emit, 0, coeff);
        }
      }
    }
    out.blocks.push_back(outer.projection(n) * acc);
  }
  return out;
}

// Full functorial evaluation with a grade-mixing slot map t: W -> W'.
// A source label of total grade n can land in any grade once its slots are
// pushed through t; targets beyond the truncation are counted in *dropped
// (never folded back), matching the truncation policy of GradedEval.
inline TotalMap teval_map(const SeqMorphism& f, const GradedEval& src, const GradedEval& tgt,
                          const TotalMap& t, std::size_t* dropped = nullptr) {
  if (src.truncation() != tgt.truncation())
    throw SequenceError("teval_map: truncation mismatch");
  const std::size_t trunc = src.truncation();
  if (t.src_dims.size() != trunc || t.tgt_dims.size() != trunc ||
      !std::equal(t.src_dims.begin(), t.src_dims.end(), src.slot_dims().begin()) ||
      !std::equal(t.tgt_dims.begin(), t.tgt_dims.end(), tgt.slot_dims().begin()))
    throw SequenceError("teval_map: slot map does not match the slot spaces");
  if (dropped) *dropped = 0;

  const std::size_t src_total = TotalMap::total(src.dims());
  const std::size_t tgt_total = TotalMap::total(tgt.dims());
  Matrix out(tgt_total, src_total);
  std::size_t col0 = 0;
  for (std::size_t n = 1; n <= trunc; ++n) {
    // Ordered accumulators per target grade, compressed once per column.
    const Matrix& inc = src.inclusion(n);
    for (std::size_t col = 0; col < src.dim(n); ++col) {
      std::vector<std::vector<Rational>> acc(trunc);
      for (std::size_t g = 1; g <= trunc; ++g) acc[g - 1].assign(tgt.ordered_dim(g), Rational(0));
      for (std::size_t li = 0; li < src.ordered_dim(n); ++li) {
        const Rational& alpha = inc(li, col);
        if (alpha == Rational(0)) continue;
        const SlotLabel& lab = src.labels(n)[li];
        const Matrix& fk = f.block(lab.k);
        for (std::size_t m2 = 0; m2 < fk.rows(); ++m2) {
          if (fk(m2, lab.m_idx) == Rational(0)) continue;
          SlotLabel tgt_lab;
          tgt_lab.k = lab.k;
          tgt_lab.m_idx = m2;
          tgt_lab.comp.resize(lab.k);
          tgt_lab.slots.resize(lab.k);
          const auto emit = [&](auto&& self, std::size_t j, std::size_t grade_so_far,
                                const Rational& coeff) -> void {
            if (coeff == Rational(0)) return;
            if (grade_so_far > trunc) {
              if (dropped) ++*dropped;
              return;
            }
            if (j == lab.k) {
              acc[grade_so_far - 1][tgt.label_index(grade_so_far, tgt_lab)] += coeff;
              return;
            }
            // Column of t at the slot's (grade, index), spread over targets.
            const std::size_t c = TotalMap::offset(t.src_dims, lab.comp[j]) + lab.slots[j];
            for (std::size_t g = 1; g <= trunc; ++g) {
              const std::size_t r0 = TotalMap::offset(t.tgt_dims, g);
              for (std::size_t b = 0; b < t.tgt_dims[g - 1]; ++b) {
                if (t.mat(r0 + b, c) == Rational(0)) continue;
                tgt_lab.comp[j] = g;
                tgt_lab.slots[j] = b;
                self(self, j + 1, grade_so_far + g, coeff * t.mat(r0 + b, c));
              }
            }
          };
          emit(emit, 0, 0, alpha * fk(m2, lab.m_idx));
        }
      }
      for (std::size_t g = 1; g <= trunc; ++g) {
        const Matrix& pr = tgt.projection(g);
        const std::size_t r0 = TotalMap::offset(tgt.dims(), g);
        for (std::size_t r = 0; r < pr.rows(); ++r) {
          Rational sum(0);
          for (std::size_t c = 0; c < pr.cols(); ++c) {
            if (acc[g - 1][c] == Rational(0)) continue;
            sum += pr(r, c) * acc[g - 1][c];
          }
          out(r0 + r, col0 + col) = sum;
        }
      }
    }
    col0 += src.dim(n);
  }
  return TotalMap(src.dims(), tgt.dims(), std::move(out));
}

}  // namespace entwine
