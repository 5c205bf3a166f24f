#pragma once
// Composition of arity-graded sequences.  The arity-n component of M . N is
// modeled on an ordered expansion with basis labels
//     (k; composition (i_1..i_k) of n; M(k) index; N(i_j) indices; blocks),
// where blocks is an ordered set partition of {0..n-1} with |block j| = i_j
// (consecutive intervals in nonsymmetric mode).  In symmetric mode the true
// component is the image of the block-symmetrization idempotent; because the
// factor-permutation action on (composition, blocks) pairs is free, the image
// has one basis vector per orbit and the inclusion/projection pair is written
// down in closed form — no row reduction happens here.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entwine/matrix.hpp"
#include "entwine/permutation.hpp"
#include "entwine/sequence.hpp"

namespace entwine {

struct PlethLabel {
  std::size_t k = 0;
  std::vector<std::size_t> comp;                  // i_1..i_k, summing to the arity
  std::size_t m_idx = 0;                          // basis index in M(k)
  std::vector<std::size_t> n_idxs;                // basis index in N(i_j), per factor
  std::vector<std::vector<std::size_t>> blocks;   // ordered set partition, each block sorted

  // Flat encoding; lexicographic order on keys is the canonical label order
  // (k, then composition, then indices, then partition).
  std::vector<std::size_t> key() const {
    std::vector<std::size_t> out;
    out.reserve(2 + 2 * k + (blocks.empty() ? 0 : blocks.front().size() * blocks.size()));
    out.push_back(k);
    out.insert(out.end(), comp.begin(), comp.end());
    out.push_back(m_idx);
    out.insert(out.end(), n_idxs.begin(), n_idxs.end());
    for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
    return out;
  }
};

namespace detail {

// All compositions (i_1..i_k) of n into k positive parts, lexicographically.
inline void compositions_rec(std::size_t n, std::size_t k, std::vector<std::size_t>& acc,
                             std::vector<std::vector<std::size_t>>& out) {
  if (k == 1) {
    acc.push_back(n);
    out.push_back(acc);
    acc.pop_back();
    return;
  }
  for (std::size_t first = 1; first + (k - 1) <= n; ++first) {
    acc.push_back(first);
    compositions_rec(n - first, k - 1, acc, out);
    acc.pop_back();
  }
}

inline std::vector<std::vector<std::size_t>> compositions(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k == 0 || k > n) return out;
  std::vector<std::size_t> acc;
  compositions_rec(n, k, acc, out);
  return out;
}

// All ordered set partitions of `pool` (sorted) with the given block sizes,
// blocks listed in lexicographic order of their sorted contents.
inline void partitions_rec(const std::vector<std::size_t>& pool,
                           const std::vector<std::size_t>& sizes, std::size_t at,
                           std::vector<std::vector<std::size_t>>& acc,
                           std::vector<std::vector<std::vector<std::size_t>>>& out) {
  if (at == sizes.size()) {
    out.push_back(acc);
    return;
  }
  const std::size_t want = sizes[at];
  std::vector<std::size_t> pick(want);
  std::vector<bool> mask(pool.size(), false);
  // Choose `want` indices out of pool in lex order of chosen content.
  std::vector<std::size_t> idx(want);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    for (std::size_t t = 0; t < want; ++t) pick[t] = pool[idx[t]];
    std::vector<std::size_t> rest;
    rest.reserve(pool.size() - want);
    std::fill(mask.begin(), mask.end(), false);
    for (std::size_t t : idx) mask[t] = true;
    for (std::size_t t = 0; t < pool.size(); ++t)
      if (!mask[t]) rest.push_back(pool[t]);
    acc.push_back(pick);
    // Tail recursion over the remaining pool.
    std::vector<std::vector<std::size_t>> sub_sizes_acc;
    partitions_rec(rest, sizes, at + 1, acc, out);
    acc.pop_back();
    // Next combination.
    std::size_t t = want;
    while (t > 0 && idx[t - 1] == pool.size() - want + (t - 1)) --t;
    if (t == 0) break;
    ++idx[t - 1];
    for (std::size_t u = t; u < want; ++u) idx[u] = idx[u - 1] + 1;
  }
}

inline std::vector<std::vector<std::vector<std::size_t>>> ordered_set_partitions(
    std::size_t n, const std::vector<std::size_t>& sizes) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<std::vector<std::vector<std::size_t>>> out;
  std::vector<std::vector<std::size_t>> acc;
  partitions_rec(pool, sizes, 0, acc, out);
  return out;
}

// Blocks reordered canonically (by size, then content): the representative of
// the factor-permutation orbit.
inline std::vector<std::vector<std::size_t>> orbit_rep(
    const std::vector<std::vector<std::size_t>>& blocks) {
  std::vector<std::vector<std::size_t>> rep = blocks;
  std::sort(rep.begin(), rep.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return rep;
}

}  // namespace detail

// The full plethysm bookkeeping for a pair of sequences: per arity, the
// ordered label list, the inclusion/projection of the symmetrized component,
// and the resulting sequence with its induced action.
class PlethysmIndex {
 public:
  struct Arity {
    std::vector<PlethLabel> labels;                       // canonical order
    std::map<std::vector<std::size_t>, std::size_t> lookup;
    std::vector<std::size_t> image_labels;                // orbit-minimal label positions
    std::map<std::size_t, std::size_t> image_position;    // label position -> image column
    Matrix inclusion;                                     // ordered_dim x image_dim
    Matrix projection;                                    // image_dim x ordered_dim
  };

  PlethysmIndex(SeqPtr outer, SeqPtr inner) : outer_(std::move(outer)), inner_(std::move(inner)) {
    if (outer_->mode() != inner_->mode())
      throw SequenceError("plethysm: operands have different modes");
    if (outer_->max_arity() != inner_->max_arity())
      throw SequenceError("plethysm: operands have different truncations");
    const std::size_t max = outer_->max_arity();
    arities_.resize(max);
    std::vector<std::size_t> dims(max);
    for (std::size_t n = 1; n <= max; ++n) {
      build_labels(n);
      build_splitting(n);
      dims[n - 1] = arities_[n - 1].inclusion.cols();
    }
    if (outer_->mode() == Mode::nonsymmetric) {
      result_ = share(SymmetricSequence::nonsymmetric(max, std::move(dims)));
    } else {
      std::vector<std::vector<Matrix>> gens(max);
      for (std::size_t n = 2; n <= max; ++n) {
        gens[n - 1].reserve(n - 1);
        for (std::size_t i = 1; i < n; ++i) {
          const Matrix moved = apply_ordered_action(n, Permutation::transposition(n, i),
                                                    arities_[n - 1].inclusion);
          gens[n - 1].push_back(arities_[n - 1].projection * moved);
        }
      }
      // The sequence constructor re-validates the group relations, so a wrong
      // induced action cannot slip through silently.
      result_ = share(SymmetricSequence::symmetric(max, std::move(dims), std::move(gens)));
    }
  }

  const SeqPtr& outer() const { return outer_; }
  const SeqPtr& inner() const { return inner_; }
  const SeqPtr& sequence() const { return result_; }

  std::size_t ordered_dim(std::size_t n) const { return at(n).labels.size(); }
  const std::vector<PlethLabel>& labels(std::size_t n) const { return at(n).labels; }
  const Matrix& inclusion(std::size_t n) const { return at(n).inclusion; }
  const Matrix& projection(std::size_t n) const { return at(n).projection; }
  Matrix idempotent(std::size_t n) const { return at(n).inclusion * at(n).projection; }
  const std::vector<std::size_t>& image_labels(std::size_t n) const { return at(n).image_labels; }

  std::size_t label_index(std::size_t n, const PlethLabel& label) const {
    const auto& lk = at(n).lookup;
    const auto it = lk.find(label.key());
    if (it == lk.end()) throw SequenceError("plethysm: unknown label at arity " + std::to_string(n));
    return it->second;
  }

  // Action of an arbitrary permutation on the ordered model, applied to the
  // columns of `cols` (ordered_dim rows).  The permutation moves blocks as
  // sets; the residual block-preserving part acts through the inner sequence.
  Matrix apply_ordered_action(std::size_t n, const Permutation& pi, const Matrix& cols) const {
    if (outer_->mode() == Mode::nonsymmetric)
      throw SequenceError("apply_ordered_action: nonsymmetric mode has no ordered action");
    const Arity& ar = at(n);
    if (cols.rows() != ar.labels.size())
      throw ShapeError("apply_ordered_action: row count does not match the ordered model");
    Matrix out(cols.rows(), cols.cols());
    struct Moved {
      std::vector<std::vector<std::size_t>> blocks;
      std::vector<Matrix> factor_action;  // one per factor, in source factor order
    };
    std::map<std::vector<std::size_t>, Moved> memo;  // keyed by flattened source blocks
    for (std::size_t li = 0; li < ar.labels.size(); ++li) {
      bool live = false;
      for (std::size_t c = 0; c < cols.cols() && !live; ++c) live = !(cols(li, c) == Rational(0));
      if (!live) continue;
      const PlethLabel& lab = ar.labels[li];
      // Key must determine the block structure, so sizes come first.
      std::vector<std::size_t> memo_key = lab.comp;
      for (const auto& b : lab.blocks) memo_key.insert(memo_key.end(), b.begin(), b.end());
      auto [mit, fresh] = memo.try_emplace(std::move(memo_key));
      if (fresh) {
        std::vector<std::size_t> line;
        line.reserve(n);
        for (const auto& b : lab.blocks) line.insert(line.end(), b.begin(), b.end());
        const Permutation sigma = Permutation::from_one_line(std::move(line));
        const BlockFactorization f = block_factorize(pi * sigma, lab.comp);
        Moved moved;
        const std::vector<std::size_t> starts = block_starts(lab.comp);
        for (std::size_t j = 0; j < lab.k; ++j) {
          const std::size_t len = lab.comp[j];
          std::vector<std::size_t> blk(len), local(len);
          for (std::size_t t = 0; t < len; ++t) {
            blk[t] = f.coset_rep(starts[j] + t);
            local[t] = f.block_part(starts[j] + t) - starts[j];
          }
          moved.blocks.push_back(std::move(blk));
          moved.factor_action.push_back(
              inner_->action(lab.comp[j], Permutation::from_one_line(std::move(local))));
        }
        mit->second = std::move(moved);
      }
      const Moved& mv = mit->second;
      // Spread over target inner indices with the product of factor entries.
      PlethLabel tgt;
      tgt.k = lab.k;
      tgt.comp = lab.comp;
      tgt.m_idx = lab.m_idx;
      tgt.blocks = mv.blocks;
      tgt.n_idxs.assign(lab.k, 0);
      std::vector<std::size_t> cursor(lab.k, 0);
      const auto emit = [&](auto&& self, std::size_t j, const Rational& coeff) -> void {
        if (coeff == Rational(0)) return;
        if (j == lab.k) {
          const std::size_t target = ar.lookup.at(tgt.key());
          for (std::size_t c = 0; c < cols.cols(); ++c)
            if (!(cols(li, c) == Rational(0))) out(target, c) += coeff * cols(li, c);
          return;
        }
        const Matrix& act = mv.factor_action[j];
        for (std::size_t row = 0; row < act.rows(); ++row) {
          const Rational& entry = act(row, lab.n_idxs[j]);
          if (entry == Rational(0)) continue;
          tgt.n_idxs[j] = row;
          self(self, j + 1, coeff * entry);
        }
      };
      emit(emit, 0, Rational(1));
    }
    return out;
  }

 private:
  const Arity& at(std::size_t n) const {
    if (n < 1 || n > arities_.size()) throw SequenceError("plethysm: arity out of range");
    return arities_[n - 1];
  }

  void build_labels(std::size_t n) {
    Arity& ar = arities_[n - 1];
    const bool sym = outer_->mode() == Mode::symmetric;
    for (std::size_t k = 1; k <= n; ++k) {
      if (outer_->dim(k) == 0) continue;
      for (const auto& comp : detail::compositions(n, k)) {
        bool viable = true;
        for (std::size_t part : comp) viable = viable && inner_->dim(part) > 0;
        if (!viable) continue;
        std::vector<std::vector<std::vector<std::size_t>>> partitions;
        if (sym) {
          partitions = detail::ordered_set_partitions(n, comp);
        } else {
          // The single consecutive partition.
          std::vector<std::vector<std::size_t>> consec;
          std::size_t next = 0;
          for (std::size_t part : comp) {
            std::vector<std::size_t> blk(part);
            std::iota(blk.begin(), blk.end(), next);
            next += part;
            consec.push_back(std::move(blk));
          }
          partitions.push_back(std::move(consec));
        }
        // Canonical order: indices before partition, so enumerate index tuples
        // in the outer loops and partitions innermost... but key order sorts
        // labels anyway; generate in key order directly.
        for (std::size_t m = 0; m < outer_->dim(k); ++m) {
          std::vector<std::size_t> ns(k, 0);
          const auto advance = [&]() {
            for (std::size_t j = k; j-- > 0;) {
              if (++ns[j] < inner_->dim(comp[j])) return true;
              ns[j] = 0;
            }
            return false;
          };
          do {
            for (const auto& part : partitions) {
              PlethLabel lab;
              lab.k = k;
              lab.comp = comp;
              lab.m_idx = m;
              lab.n_idxs = ns;
              lab.blocks = part;
              ar.labels.push_back(std::move(lab));
            }
          } while (advance());
        }
      }
    }
    std::sort(ar.labels.begin(), ar.labels.end(),
              [](const PlethLabel& a, const PlethLabel& b) { return a.key() < b.key(); });
    for (std::size_t i = 0; i < ar.labels.size(); ++i) ar.lookup.emplace(ar.labels[i].key(), i);
  }

  void build_splitting(std::size_t n) {
    Arity& ar = arities_[n - 1];
    const std::size_t dim = ar.labels.size();
    if (outer_->mode() == Mode::nonsymmetric) {
      ar.inclusion = Matrix::identity(dim);
      ar.projection = Matrix::identity(dim);
      ar.image_labels.resize(dim);
      std::iota(ar.image_labels.begin(), ar.image_labels.end(), 0);
      for (std::size_t i = 0; i < dim; ++i) ar.image_position.emplace(i, i);
      return;
    }
    for (std::size_t li = 0; li < dim; ++li)
      if (detail::orbit_rep(ar.labels[li].blocks) == ar.labels[li].blocks) {
        ar.image_position.emplace(li, ar.image_labels.size());
        ar.image_labels.push_back(li);
      }
    const std::size_t image_dim = ar.image_labels.size();
    ar.inclusion = Matrix(dim, image_dim);
    ar.projection = Matrix(image_dim, dim);

    // Inclusion: column for the orbit representative (s0, m, ns) sums the
    // factor-permutation translates B(tau) of its basis vector over tau.
    for (std::size_t c = 0; c < image_dim; ++c) {
      const PlethLabel& rep = ar.labels[ar.image_labels[c]];
      for (const auto& tau : all_permutations(rep.k)) {
        const Permutation tau_inv = tau.inverse();
        PlethLabel tgt;
        tgt.k = rep.k;
        tgt.comp.resize(rep.k);
        tgt.n_idxs.resize(rep.k);
        tgt.blocks.resize(rep.k);
        for (std::size_t j = 0; j < rep.k; ++j) {
          tgt.comp[j] = rep.comp[tau_inv(j)];
          tgt.n_idxs[j] = rep.n_idxs[tau_inv(j)];
          tgt.blocks[j] = rep.blocks[tau_inv(j)];
        }
        const Matrix rho = outer_->action(rep.k, tau);
        for (std::size_t m2 = 0; m2 < outer_->dim(rep.k); ++m2) {
          if (rho(m2, rep.m_idx) == Rational(0)) continue;
          tgt.m_idx = m2;
          ar.inclusion(ar.lookup.at(tgt.key()), c) += rho(m2, rep.m_idx);
        }
      }
    }

    // Projection: column for a label (s, m', ns') reads off, at the orbit
    // representative, the inverse of the translate that produced s, scaled by
    // 1/k!.  Then projection . inclusion = id and inclusion . projection is
    // the symmetrization idempotent.
    for (std::size_t li = 0; li < dim; ++li) {
      const PlethLabel& lab = ar.labels[li];
      const auto rep_blocks = detail::orbit_rep(lab.blocks);
      // tau_s maps representative factor positions to label factor positions.
      std::vector<std::size_t> tau_line(lab.k);
      for (std::size_t i = 0; i < lab.k; ++i) {
        for (std::size_t j = 0; j < lab.k; ++j)
          if (lab.blocks[j] == rep_blocks[i]) {
            tau_line[i] = j;
            break;
          }
      }
      const Permutation tau_s = Permutation::from_one_line(std::move(tau_line));
      PlethLabel rep;
      rep.k = lab.k;
      rep.blocks = rep_blocks;
      rep.comp.resize(lab.k);
      rep.n_idxs.resize(lab.k);
      for (std::size_t i = 0; i < lab.k; ++i) {
        rep.comp[i] = lab.comp[tau_s(i)];
        rep.n_idxs[i] = lab.n_idxs[tau_s(i)];
      }
      const Matrix rho_inv = outer_->action(lab.k, tau_s.inverse());
      Rational norm(1);
      for (std::size_t t = 2; t <= lab.k; ++t) norm *= Rational(static_cast<std::int64_t>(t));
      norm = norm.inverse();
      for (std::size_t m = 0; m < outer_->dim(lab.k); ++m) {
        if (rho_inv(m, lab.m_idx) == Rational(0)) continue;
        rep.m_idx = m;
        const std::size_t row = ar.image_position.at(ar.lookup.at(rep.key()));
        ar.projection(row, li) += norm * rho_inv(m, lab.m_idx);
      }
    }
  }

  SeqPtr outer_, inner_;
  SeqPtr result_;
  std::vector<Arity> arities_;
};

using PlethPtr = std::shared_ptr<const PlethysmIndex>;

inline PlethPtr plethysm(SeqPtr outer, SeqPtr inner) {
  return std::make_shared<const PlethysmIndex>(std::move(outer), std::move(inner));
}

}  // namespace entwine
