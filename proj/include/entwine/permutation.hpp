#pragma once
// Permutations in one-line notation (0-based internally), with the two
// decompositions the symmetric-group machinery needs:
//  - words in adjacent transpositions, so a representation given by generator
//    matrices extends to arbitrary group elements, and
//  - factorizations along a composition, sigma = coset_rep . block_part,
//    where block_part preserves the consecutive blocks and coset_rep is the
//    minimal (blockwise increasing) representative of the left coset.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace entwine {

class PermutationError : public std::runtime_error {
 public:
  explicit PermutationError(const std::string& what) : std::runtime_error(what) {}
};

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t n) : img_(n) { std::iota(img_.begin(), img_.end(), 0); }

  // One-line notation: img[i] is the image of i.  Must be a bijection.
  static Permutation from_one_line(std::vector<std::size_t> img) {
    std::vector<bool> seen(img.size(), false);
    for (std::size_t v : img) {
      if (v >= img.size() || seen[v]) throw PermutationError("not a permutation");
      seen[v] = true;
    }
    Permutation p;
    p.img_ = std::move(img);
    return p;
  }

  // The adjacent transposition s_i (1-based: swaps 0-based slots i-1 and i),
  // matching the generator numbering s_1..s_{n-1} used for group actions.
  static Permutation transposition(std::size_t n, std::size_t i) {
    if (i < 1 || i >= n) throw PermutationError("transposition index out of range");
    Permutation p(n);
    std::swap(p.img_[i - 1], p.img_[i]);
    return p;
  }

  std::size_t size() const { return img_.size(); }
  std::size_t operator()(std::size_t i) const { return img_[i]; }
  const std::vector<std::size_t>& one_line() const { return img_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  // (a * b)(i) = a(b(i)): b acts first.
  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw PermutationError("composing permutations of different sizes");
    Permutation c;
    c.img_.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c.img_[i] = a.img_[b.img_[i]];
    return c;
  }

  Permutation inverse() const {
    Permutation p;
    p.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) p.img_[img_[i]] = i;
    return p;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.img_ < b.img_; }

  // Writes *this as a product of adjacent transpositions, returned as 1-based
  // generator indices in product order: *this == s[w[0]] * ... * s[w.back()].
  // Empty for the identity.  Length is the inversion count (reduced word).
  std::vector<std::size_t> adjacent_word() const {
    std::vector<std::size_t> line = img_;
    std::vector<std::size_t> swaps;  // right-multiplications applied to sort the line
    bool moved = true;
    while (moved) {
      moved = false;
      for (std::size_t i = 0; i + 1 < line.size(); ++i) {
        if (line[i] > line[i + 1]) {
          std::swap(line[i], line[i + 1]);
          swaps.push_back(i + 1);
          moved = true;
        }
      }
    }
    // this * s[p1] * ... * s[pm] == id and each s is an involution, so
    // this == s[pm] * ... * s[p1].
    std::reverse(swaps.begin(), swaps.end());
    return swaps;
  }

  int sign() const { return adjacent_word().size() % 2 == 0 ? 1 : -1; }

  friend std::ostream& operator<<(std::ostream& os, const Permutation& p) {
    os << "[";
    for (std::size_t i = 0; i < p.img_.size(); ++i) os << (i ? " " : "") << p.img_[i];
    return os << "]";
  }

 private:
  std::vector<std::size_t> img_;
};

// All of S_n in lexicographic one-line order.  Only sensible for small n.
inline std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<std::size_t> line(n);
  std::iota(line.begin(), line.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_one_line(line));
  } while (std::next_permutation(line.begin(), line.end()));
  return out;
}

// Start offsets of the consecutive blocks cut out by a composition.
inline std::vector<std::size_t> block_starts(const std::vector<std::size_t>& composition) {
  std::vector<std::size_t> starts(composition.size());
  std::size_t acc = 0;
  for (std::size_t j = 0; j < composition.size(); ++j) {
    starts[j] = acc;
    acc += composition[j];
  }
  return starts;
}

struct BlockFactorization {
  Permutation coset_rep;   // increasing on every block
  Permutation block_part;  // preserves every block setwise
};

// Unique factorization sigma == coset_rep * block_part relative to the
// consecutive blocks of the composition.  block_part sorts each block by
// sigma-value; coset_rep carries the sorted values.
inline BlockFactorization block_factorize(const Permutation& sigma,
                                          const std::vector<std::size_t>& composition) {
  const std::size_t n = sigma.size();
  if (std::accumulate(composition.begin(), composition.end(), std::size_t{0}) != n)
    throw PermutationError("block_factorize: composition does not sum to the degree");
  std::vector<std::size_t> rep_line(n), block_line(n);
  const std::vector<std::size_t> starts = block_starts(composition);
  for (std::size_t j = 0; j < composition.size(); ++j) {
    const std::size_t b = starts[j], len = composition[j];
    std::vector<std::size_t> order(len);  // positions within the block, sorted by image
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return sigma(b + x) < sigma(b + y); });
    for (std::size_t t = 0; t < len; ++t) {
      rep_line[b + t] = sigma(b + order[t]);  // increasing across t
      block_line[b + order[t]] = b + t;       // block_part(b + order[t]) = b + t
    }
  }
  BlockFactorization f{Permutation::from_one_line(std::move(rep_line)),
                       Permutation::from_one_line(std::move(block_line))};
  return f;
}

}  // namespace entwine
