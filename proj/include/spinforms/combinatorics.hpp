#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "scalar.hpp"

namespace spinforms {

inline constexpr int kMaxDim = 8;

/// Axis-set bitmask; bit i set means axis i (0-based position) is present.
using Mask = std::uint16_t;

/// Index labelling convention. Positions are always 0-based internally; the
/// printed label of position p is p + label_base(n). Dimension 8 uses labels
/// 0..7 (e^0 distinguished), every smaller dimension uses 1..n. The embedding
/// of R^7 into R^8 as span{e_1..e_7} therefore preserves labels.
constexpr int label_base(int dim) { return dim == 8 ? 0 : 1; }

constexpr int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Parity of the permutation that sorts `seq` (distinct entries), computed by
/// counting inversions during a merge sort. Returns +1 or -1.
inline int permutation_sign(std::span<const int> seq) {
  std::vector<int> a(seq.begin(), seq.end()), tmp(a.size());
  long inversions = 0;
  for (std::size_t width = 1; width < a.size(); width *= 2) {
    for (std::size_t lo = 0; lo < a.size(); lo += 2 * width) {
      std::size_t mid = std::min(lo + width, a.size());
      std::size_t hi = std::min(lo + 2 * width, a.size());
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (a[j] < a[i]) {
          inversions += static_cast<long>(mid - i);
          tmp[k++] = a[j++];
        } else {
          tmp[k++] = a[i++];
        }
      }
      while (i < mid) tmp[k++] = a[i++];
      while (j < hi) tmp[k++] = a[j++];
    }
    std::swap(a, tmp);
  }
  return inversions % 2 == 0 ? 1 : -1;
}

/// Sign of e^A ^ e^B -> e^{A|B} for disjoint increasing index sets: the parity
/// of merging the two sorted runs, i.e. the number of pairs (a in A, b in B)
/// with a > b.
constexpr int merge_sign(Mask a, Mask b) {
  int swaps = 0;
  for (Mask rest = b; rest != 0; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    swaps += std::popcount(static_cast<unsigned>(a >> (j + 1)));
  }
  return swaps % 2 == 0 ? 1 : -1;
}

/// Lexicographic enumeration of the k-subsets of {0..n-1} and the inverse
/// lookup from mask to rank.
class IndexTable {
public:
  static const IndexTable &get(int dim, int grade) {
    static const auto tables = [] {
      std::array<std::array<IndexTable, kMaxDim + 1>, kMaxDim + 1> t{};
      for (int n = 0; n <= kMaxDim; ++n)
        for (int k = 0; k <= n; ++k) t[n][k] = IndexTable(n, k);
      return t;
    }();
    require(dim >= 0 && dim <= kMaxDim && grade >= 0 && grade <= dim,
            "index table: dimension or grade out of range");
    return tables[dim][grade];
  }

  [[nodiscard]] int size() const { return static_cast<int>(masks_.size()); }
  [[nodiscard]] Mask mask(int rank) const { return masks_[rank]; }
  [[nodiscard]] int rank(Mask m) const { return ranks_[m]; }
  [[nodiscard]] std::span<const Mask> masks() const { return masks_; }

  IndexTable() = default;

private:
  IndexTable(int n, int k) {
    ranks_.fill(-1);
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      Mask m = 0;
      for (int i : idx) m = static_cast<Mask>(m | (1u << i));
      ranks_[m] = static_cast<int>(masks_.size());
      masks_.push_back(m);
      int i = k - 1;
      while (i >= 0 && idx[i] == n - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

  std::vector<Mask> masks_;
  std::array<int, 1u << kMaxDim> ranks_{};
};

inline std::vector<int> mask_positions(Mask m) {
  std::vector<int> out;
  for (Mask rest = m; rest != 0; rest &= rest - 1)
    out.push_back(std::countr_zero(rest));
  return out;
}

/// Precomputed (rank_a, rank_b) -> (rank_out, sign) entries for the wedge of
/// grade-ka and grade-kb basis forms in dimension n.
struct WedgeEntry {
  int a, b, out, sign;
};

inline const std::vector<WedgeEntry> &wedge_table(int n, int ka, int kb) {
  static const auto tables = [] {
    std::vector<std::vector<WedgeEntry>> t((kMaxDim + 1) * (kMaxDim + 1) * (kMaxDim + 1));
    for (int dim = 0; dim <= kMaxDim; ++dim)
      for (int p = 0; p <= dim; ++p)
        for (int q = 0; p + q <= dim; ++q) {
          auto &dst = t[(dim * (kMaxDim + 1) + p) * (kMaxDim + 1) + q];
          const auto &ta = IndexTable::get(dim, p);
          const auto &tb = IndexTable::get(dim, q);
          const auto &to = IndexTable::get(dim, p + q);
          for (int i = 0; i < ta.size(); ++i)
            for (int j = 0; j < tb.size(); ++j) {
              Mask ma = ta.mask(i), mb = tb.mask(j);
              if (ma & mb) continue;
              dst.push_back({i, j, to.rank(static_cast<Mask>(ma | mb)), merge_sign(ma, mb)});
            }
        }
    return t;
  }();
  require(ka + kb <= n, "wedge table: grade exceeds dimension");
  return tables[(n * (kMaxDim + 1) + ka) * (kMaxDim + 1) + kb];
}

} // namespace spinforms
