#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace jetorbit {

/// Exponent tuple of a monomial: alpha[i] is the power of variable i.
using MultiIndex = std::vector<int>;

inline int degree(const MultiIndex& a) {
  int d = 0;
  for (int e : a) d += e;
  return d;
}

/// Exact binomial coefficient; every intermediate quotient is an integer.
inline std::int64_t binomial(int a, int b) {
  if (b < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  std::int64_t num = 1;
  for (int i = 1; i <= b; ++i) num = num * (a - b + i) / i;
  return num;
}

/// Number of monomials in n variables of total degree <= r.
inline std::int64_t coeff_count(int n, int r) { return binomial(n + r, n); }

/// Dimension of the space of order-r jets of maps R^n -> R^d.
inline std::int64_t fiber_dimension(int n, int r, int d) {
  return static_cast<std::int64_t>(d) * coeff_count(n, r);
}

/// All multi-indices with |alpha| <= r in graded lexicographic order: sorted
/// by total degree, ties broken by descending first differing exponent, e.g.
/// n=2: (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...
inline std::vector<MultiIndex> enumerate_indices(int n, int r) {
  if (n < 1) throw std::invalid_argument("enumerate_indices: need n >= 1");
  if (r < 0) throw std::invalid_argument("enumerate_indices: need r >= 0");
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(coeff_count(n, r)));
  MultiIndex cur(n, 0);
  // Emit all compositions of d into n parts, first part descending.
  auto emit = [&](auto&& self, int pos, int rem) -> void {
    if (pos == n - 1) {
      cur[pos] = rem;
      out.push_back(cur);
      return;
    }
    for (int e = rem; e >= 0; --e) {
      cur[pos] = e;
      self(self, pos + 1, rem - e);
    }
  };
  for (int d = 0; d <= r; ++d) emit(emit, 0, d);
  return out;
}

/// Shared lookup table for one (n, r) pair: the graded-lex index list, degree
/// block boundaries, position lookup, and (for small sizes) a precomputed
/// product-position table used by truncated multiplication.
class IndexTable {
 public:
  IndexTable(int n, int r) : n_(n), r_(r), idx_(enumerate_indices(n, r)) {
    if (n > 8) throw std::invalid_argument("IndexTable: n > 8 unsupported");
    if (r > 255) throw std::invalid_argument("IndexTable: r > 255 unsupported");
    deg_.resize(idx_.size());
    // block_[d] = first position of degree d; degree blocks are contiguous
    // and non-empty, so truncation to a lower order is a prefix copy.
    block_.assign(static_cast<std::size_t>(r) + 2, idx_.size());
    pos_.reserve(idx_.size() * 2);
    for (std::size_t t = idx_.size(); t-- > 0;) {
      deg_[t] = degree(idx_[t]);
      block_[static_cast<std::size_t>(deg_[t])] = t;
      pos_.emplace(pack(idx_[t]), t);
    }
    if (idx_.size() <= 2048) {
      prod_.assign(idx_.size() * idx_.size(), -1);
      for (std::size_t i = 0; i < idx_.size(); ++i)
        for (std::size_t j = 0; j < idx_.size(); ++j) {
          if (deg_[i] + deg_[j] > r_) continue;
          MultiIndex sum = idx_[i];
          for (int v = 0; v < n_; ++v) sum[v] += idx_[j][v];
          prod_[i * idx_.size() + j] = static_cast<std::int32_t>(position(sum));
        }
    }
  }

  int vars() const { return n_; }
  int order() const { return r_; }
  std::size_t size() const { return idx_.size(); }
  const MultiIndex& index(std::size_t t) const { return idx_[t]; }
  int degree_at(std::size_t t) const { return deg_[t]; }

  /// First position with total degree d (== size() when d > r).
  std::size_t block_begin(int d) const {
    if (d < 0) throw std::invalid_argument("block_begin: negative degree");
    const auto ud = static_cast<std::size_t>(d);
    return ud < block_.size() ? block_[ud] : idx_.size();
  }

  std::size_t position(const MultiIndex& a) const {
    const auto it = pos_.find(pack(a));
    if (it == pos_.end()) throw std::out_of_range("IndexTable: index outside table");
    return it->second;
  }

  /// Position of idx(i) + idx(j), or npos when the sum exceeds the order.
  std::size_t prod_position(std::size_t i, std::size_t j) const {
    if (!prod_.empty()) return static_cast<std::size_t>(prod_[i * idx_.size() + j]);
    if (deg_[i] + deg_[j] > r_) return static_cast<std::size_t>(-1);
    MultiIndex sum = idx_[i];
    for (int v = 0; v < n_; ++v) sum[v] += idx_[j][v];
    return position(sum);
  }

 private:
  static std::uint64_t pack(const MultiIndex& a) {
    std::uint64_t key = 0;
    for (int e : a) key = (key << 8) | static_cast<std::uint64_t>(e & 0xff);
    return key;
  }

  int n_, r_;
  std::vector<MultiIndex> idx_;
  std::vector<int> deg_;
  std::vector<std::size_t> block_;
  std::vector<std::int32_t> prod_;
  std::unordered_map<std::uint64_t, std::size_t> pos_;
};

/// Process-wide table cache; references stay valid for the program lifetime.
inline const IndexTable& index_table(int n, int r) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<IndexTable>> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find({n, r});
  if (it == cache.end())
    it = cache.emplace(std::make_pair(n, r), std::make_unique<IndexTable>(n, r)).first;
  return *it->second;
}

}  // namespace jetorbit
