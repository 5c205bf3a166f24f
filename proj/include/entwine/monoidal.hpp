#pragma once
// The monoidal structure on composed sequences: horizontal composition of
// morphisms, the unit isomorphisms 1.M -> M and M.1 -> M, and the associator
// (A.B).C -> A.(B.C).  The associator works on a fully flattened two-level
// model: a left flat label is regrouped into the unique right-hand tree it
// describes, and the fiber of that regrouping (the interleavings of the inner
// block lists) is averaged, which is what makes the map descend to the
// symmetrized components and compose coherently.

#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <utility>
#include <vector>

#include "entwine/matrix.hpp"
#include "entwine/plethysm.hpp"
#include "entwine/sequence.hpp"

namespace entwine {

// f: M -> M' and g: N -> N' induce M.N -> M'.N' blockwise on ordered labels
// (f on the outer index, g on every inner index), compressed through the
// splittings on both sides.
inline SeqMorphism hcompose(const SeqMorphism& f, const SeqMorphism& g, const PlethysmIndex& src,
                            const PlethysmIndex& tgt) {
  if (!(*src.outer() == *f.source()) || !(*src.inner() == *g.source()) ||
      !(*tgt.outer() == *f.target()) || !(*tgt.inner() == *g.target()))
    throw SequenceError("hcompose: morphisms do not match the given compositions");
  const std::size_t max = src.outer()->max_arity();
  std::vector<Matrix> blocks;
  for (std::size_t n = 1; n <= max; ++n) {
    const Matrix& inc = src.inclusion(n);
    Matrix moved(tgt.ordered_dim(n), inc.cols());
    const auto& labels = src.labels(n);
    for (std::size_t li = 0; li < labels.size(); ++li) {
      bool live = false;
      for (std::size_t c = 0; c < inc.cols() && !live; ++c) live = !(inc(li, c) == Rational(0));
      if (!live) continue;
      const PlethLabel& lab = labels[li];
      PlethLabel out = lab;
      const Matrix& fk = f.block(lab.k);
      // Spread over target outer/inner indices with coefficient
      // f[m',m] * prod_j g[i_j][n'_j, n_j].
      const auto emit = [&](auto&& self, std::size_t j, const Rational& coeff) -> void {
        if (j == lab.k) {
          const std::size_t target = tgt.label_index(n, out);
          for (std::size_t c = 0; c < inc.cols(); ++c)
            if (!(inc(li, c) == Rational(0))) moved(target, c) += coeff * inc(li, c);
          return;
        }
        const Matrix& gj = g.block(lab.comp[j]);
        for (std::size_t row = 0; row < gj.rows(); ++row) {
          const Rational& entry = gj(row, lab.n_idxs[j]);
          if (entry == Rational(0)) continue;
          out.n_idxs[j] = row;
          self(self, j + 1, coeff * entry);
        }
      };
      for (std::size_t m2 = 0; m2 < fk.rows(); ++m2) {
        if (fk(m2, lab.m_idx) == Rational(0)) continue;
        out.m_idx = m2;
        emit(emit, 0, fk(m2, lab.m_idx));
      }
    }
    blocks.push_back(tgt.projection(n) * moved);
  }
  return SeqMorphism(src.sequence(), tgt.sequence(), std::move(blocks));
}

// 1.M -> M.  Every label has a single factor carrying the whole arity, so the
// map reads off the inner index.
inline SeqMorphism left_unitor(const PlethysmIndex& unit_m) {
  const SeqPtr& m = unit_m.inner();
  const std::size_t max = m->max_arity();
  std::vector<Matrix> blocks;
  for (std::size_t n = 1; n <= max; ++n) {
    const auto& image = unit_m.image_labels(n);
    Matrix b(m->dim(n), image.size());
    for (std::size_t c = 0; c < image.size(); ++c)
      b(unit_m.labels(n)[image[c]].n_idxs[0], c) = Rational(1);
    blocks.push_back(std::move(b));
  }
  return SeqMorphism(unit_m.sequence(), m, std::move(blocks));
}

// M.1 -> M.  A label is a partition of the arity into singletons, i.e. a
// permutation; the map sends it through the outer action of that permutation
// and averages over the inclusion, landing on the identity for orbit
// representatives.
inline SeqMorphism right_unitor(const PlethysmIndex& m_unit) {
  const SeqPtr& m = m_unit.outer();
  const std::size_t max = m->max_arity();
  std::vector<Matrix> blocks;
  for (std::size_t n = 1; n <= max; ++n) {
    const Matrix& inc = m_unit.inclusion(n);
    Matrix b(m->dim(n), inc.cols());
    Rational norm(1);
    if (m->mode() == Mode::symmetric)
      for (std::size_t t = 2; t <= n; ++t) norm *= Rational(static_cast<std::int64_t>(t));
    norm = norm.inverse();
    const auto& labels = m_unit.labels(n);
    for (std::size_t li = 0; li < labels.size(); ++li) {
      bool live = false;
      for (std::size_t c = 0; c < inc.cols() && !live; ++c) live = !(inc(li, c) == Rational(0));
      if (!live) continue;
      std::vector<std::size_t> line;
      line.reserve(n);
      for (const auto& blk : labels[li].blocks) line.push_back(blk[0]);
      const Matrix rho = m->action(n, Permutation::from_one_line(std::move(line)));
      for (std::size_t r = 0; r < rho.rows(); ++r) {
        if (rho(r, labels[li].m_idx) == Rational(0)) continue;
        for (std::size_t c = 0; c < inc.cols(); ++c)
          if (!(inc(li, c) == Rational(0))) b(r, c) += norm * rho(r, labels[li].m_idx) * inc(li, c);
      }
    }
    blocks.push_back(std::move(b));
  }
  return SeqMorphism(m_unit.sequence(), m, std::move(blocks));
}

// (A.B).C -> A.(B.C), built per arity by flattening the left side down to
// A/B/C indices, regrouping each flat label into the tree it describes, and
// recompressing on the right.  ab/bc are the inner compositions, ab_c/a_bc
// the outer ones.
inline SeqMorphism associator(const PlethysmIndex& ab, const PlethysmIndex& ab_c,
                              const PlethysmIndex& bc, const PlethysmIndex& a_bc) {
  if (!(*ab_c.outer() == *ab.sequence()) || !(*a_bc.inner() == *bc.sequence()) ||
      !(*ab.outer() == *a_bc.outer()) || !(*ab.inner() == *bc.outer()) ||
      !(*ab_c.inner() == *bc.inner()))
    throw SequenceError("associator: compositions do not share operands");
  const bool sym = ab.outer()->mode() == Mode::symmetric;
  const std::size_t max = ab.outer()->max_arity();

  struct Tree {
    PlethLabel outer;                    // a_bc ordered label with n_idxs unset
    std::vector<PlethLabel> slots;       // one bc ordered label per outer factor
  };

  std::vector<Matrix> blocks;
  for (std::size_t n = 1; n <= max; ++n) {
    const Matrix& inc = ab_c.inclusion(n);
    Matrix out(a_bc.sequence()->dim(n), inc.cols());
    for (std::size_t col = 0; col < inc.cols(); ++col) {
      // Accumulated flat right-hand coordinates for this column.
      std::map<std::vector<std::size_t>, std::pair<Rational, Tree>> flat;
      const auto& labels1 = ab_c.labels(n);
      for (std::size_t l1 = 0; l1 < labels1.size(); ++l1) {
        const Rational& alpha = inc(l1, col);
        if (alpha == Rational(0)) continue;
        const PlethLabel& lab1 = labels1[l1];  // (k; jcomp; x; c's; S-blocks)
        const std::size_t k = lab1.k;
        const Matrix& expand = ab.inclusion(k);
        const auto& labels2 = ab.labels(k);
        for (std::size_t l2 = 0; l2 < labels2.size(); ++l2) {
          const Rational& beta = expand(l2, lab1.m_idx);
          if (beta == Rational(0)) continue;
          const PlethLabel& lab2 = labels2[l2];  // (l; icomp; a; b's; T-blocks)
          const std::size_t l = lab2.k;
          // Regroup: child r of the root collects the level-1 factors listed
          // in T_r (in increasing order), each carrying its leaf block.
          Tree tree;
          tree.outer.k = l;
          tree.outer.m_idx = lab2.m_idx;
          tree.outer.comp.resize(l);
          tree.outer.blocks.resize(l);
          tree.outer.n_idxs.assign(l, 0);  // filled during recompression
          tree.slots.resize(l);
          Rational fiber(1);
          for (std::size_t r = 0; r < l; ++r) {
            const auto& tr = lab2.blocks[r];
            PlethLabel& slot = tree.slots[r];
            slot.k = lab2.comp[r];
            slot.m_idx = lab2.n_idxs[r];
            std::vector<std::size_t> leaves;
            for (std::size_t t : tr) leaves.insert(leaves.end(), lab1.blocks[t].begin(),
                                                   lab1.blocks[t].end());
            std::sort(leaves.begin(), leaves.end());
            tree.outer.blocks[r] = leaves;
            tree.outer.comp[r] = leaves.size();
            // Local positions of each leaf inside the sorted union.
            std::map<std::size_t, std::size_t> local;
            for (std::size_t p = 0; p < leaves.size(); ++p) local.emplace(leaves[p], p);
            slot.comp.resize(tr.size());
            slot.n_idxs.resize(tr.size());
            slot.blocks.resize(tr.size());
            for (std::size_t s = 0; s < tr.size(); ++s) {
              const std::size_t t = tr[s];
              slot.comp[s] = lab1.comp[t];
              slot.n_idxs[s] = lab1.n_idxs[t];
              auto& blk = slot.blocks[s];
              blk.resize(lab1.blocks[t].size());
              for (std::size_t p = 0; p < blk.size(); ++p) blk[p] = local.at(lab1.blocks[t][p]);
            }
          }
          if (sym) {
            // Interleavings of the inner block lists: k! / prod(i_r!).
            BigInt num = 1, den = 1;
            for (std::size_t t = 2; t <= k; ++t) num *= t;
            for (std::size_t r = 0; r < l; ++r)
              for (std::size_t t = 2; t <= lab2.comp[r]; ++t) den *= t;
            fiber = Rational(std::move(num), std::move(den));
          }
          // Key: outer partial label plus each slot label, length-prefixed.
          std::vector<std::size_t> key = tree.outer.key();
          for (const auto& slot : tree.slots) {
            const auto sk = slot.key();
            key.push_back(sk.size());
            key.insert(key.end(), sk.begin(), sk.end());
          }
          auto [it, fresh] = flat.try_emplace(std::move(key), Rational(0), Tree{});
          if (fresh) it->second.second = std::move(tree);
          it->second.first += alpha * beta * fiber.inverse();
        }
      }
      // Recompress: project every slot through bc, then the outer layer
      // through a_bc.
      for (auto& [key, entry] : flat) {
        const Rational& gamma = entry.first;
        if (gamma == Rational(0)) continue;
        Tree& tree = entry.second;
        const std::size_t l = tree.outer.k;
        std::vector<std::size_t> slot_index(l);
        for (std::size_t r = 0; r < l; ++r)
          slot_index[r] = bc.label_index(tree.outer.comp[r], tree.slots[r]);
        const auto emit = [&](auto&& self, std::size_t r, const Rational& coeff) -> void {
          if (r == l) {
            const std::size_t li = a_bc.label_index(n, tree.outer);
            const Matrix& proj = a_bc.projection(n);
            for (std::size_t row = 0; row < proj.rows(); ++row)
              if (!(proj(row, li) == Rational(0))) out(row, col) += coeff * proj(row, li);
            return;
          }
          const Matrix& proj = bc.projection(tree.outer.comp[r]);
          for (std::size_t y = 0; y < proj.rows(); ++y) {
            const Rational& entry2 = proj(y, slot_index[r]);
            if (entry2 == Rational(0)) continue;
            tree.outer.n_idxs[r] = y;
            self(self, r + 1, coeff * entry2);
          }
        };
        emit(emit, 0, gamma);
      }
    }
    blocks.push_back(std::move(out));
  }
  return SeqMorphism(ab_c.sequence(), a_bc.sequence(), std::move(blocks));
}

// Lazily built compositions keyed by operand identity, so repeatedly composed
// species share their label models.
class PlethCache {
 public:
  const PlethysmIndex& of(const SeqPtr& outer, const SeqPtr& inner) {
    const auto key = std::make_pair(outer.get(), inner.get());
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(key, std::make_shared<const PlethysmIndex>(outer, inner)).first;
    return *it->second;
  }

 private:
  std::map<std::pair<const SymmetricSequence*, const SymmetricSequence*>, PlethPtr> cache_;
};

}  // namespace entwine
