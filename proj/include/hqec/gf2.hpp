#pragma once
// Packed GF(2) vectors and elimination with combination tracking.
#include <cstdint>
#include <cassert>
#include <optional>
#include <vector>

namespace hqec::gf2 {

struct BitVec {
  int n = 0;
  std::vector<std::uint64_t> w;

  BitVec() = default;
  explicit BitVec(int bits) : n(bits), w((bits + 63) / 64, 0) {}

  bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
  void set(int i, bool v) {
    std::uint64_t m = std::uint64_t(1) << (i & 63);
    if (v) w[i >> 6] |= m; else w[i >> 6] &= ~m;
  }
  void flip(int i) { w[i >> 6] ^= std::uint64_t(1) << (i & 63); }

  BitVec& operator^=(const BitVec& o) {
    assert(n == o.n);
    for (size_t k = 0; k < w.size(); ++k) w[k] ^= o.w[k];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { a ^= b; return a; }

  bool any() const {
    for (auto x : w) if (x) return true;
    return false;
  }
  int popcount() const {
    int c = 0;
    for (auto x : w) c += __builtin_popcountll(x);
    return c;
  }
  int lowest_set() const {  // -1 if zero
    for (size_t k = 0; k < w.size(); ++k)
      if (w[k]) return int(k) * 64 + __builtin_ctzll(w[k]);
    return -1;
  }
  bool operator==(const BitVec& o) const { return n == o.n && w == o.w; }
  std::uint64_t word0() const { return w.empty() ? 0 : w[0]; }
};

inline BitVec from_word(int n, std::uint64_t word) {
  assert(n >= 64 || (word >> n) == 0);
  BitVec v(n);
  if (!v.w.empty()) v.w[0] = word;
  return v;
}

inline bool dot(const BitVec& a, const BitVec& b) {
  assert(a.n == b.n);
  std::uint64_t acc = 0;
  for (size_t k = 0; k < a.w.size(); ++k) acc ^= a.w[k] & b.w[k];
  return __builtin_popcountll(acc) & 1;
}

// Row space under incremental elimination. Tracks, for every reduced basis
// vector, the combination of inserted generators producing it, so targets can
// be expressed in terms of the original generators and kernel vectors read off.
class Span {
 public:
  Span(int n, int max_gens, const std::vector<int>* pivot_priority = nullptr)
      : n_(n), max_gens_(max_gens) {
    if (pivot_priority) prio_ = *pivot_priority;
    else { prio_.resize(n); for (int i = 0; i < n; ++i) prio_[i] = i; }
  }

  // Returns the kernel combination if v was dependent, nullopt otherwise.
  std::optional<BitVec> add(BitVec v) {
    assert(count_ < max_gens_);
    BitVec c(max_gens_);
    c.set(count_, true);
    ++count_;
    reduce_inplace(v, c);
    if (!v.any()) return c;
    int p = pivot_of(v);
    // keep reduced form: clear p from existing rows
    for (size_t r = 0; r < rows_.size(); ++r)
      if (rows_[r].get(p)) { rows_[r] ^= v; combos_[r] ^= c; }
    rows_.push_back(std::move(v));
    combos_.push_back(std::move(c));
    pivots_.push_back(p);
    return std::nullopt;
  }

  int rank() const { return int(rows_.size()); }
  int generators_added() const { return count_; }

  bool contains(BitVec v) const {
    BitVec c(max_gens_);
    reduce_inplace(v, c);
    return !v.any();
  }
  // Combination of generators reproducing target, if in the span.
  std::optional<BitVec> express(BitVec target) const {
    BitVec c(max_gens_);
    reduce_inplace(target, c);
    if (target.any()) return std::nullopt;
    return c;
  }

  const std::vector<BitVec>& basis() const { return rows_; }
  const std::vector<BitVec>& basis_combos() const { return combos_; }
  const std::vector<int>& pivots() const { return pivots_; }

 private:
  int pivot_of(const BitVec& v) const {
    for (int i : prio_) if (v.get(i)) return i;
    return -1;
  }
  void reduce_inplace(BitVec& v, BitVec& c) const {
    for (size_t r = 0; r < rows_.size(); ++r)
      if (v.get(pivots_[r])) { v ^= rows_[r]; c ^= combos_[r]; }
  }

  int n_, max_gens_, count_ = 0;
  std::vector<int> prio_;
  std::vector<BitVec> rows_, combos_;
  std::vector<int> pivots_;
};

inline int rank_of(const std::vector<BitVec>& gens, int n) {
  Span s(n, int(gens.size()));
  for (const auto& g : gens) s.add(g);
  return s.rank();
}

// Basis of {v in span(gens) : support(v) inside allowed}, with the
// generator combinations producing each basis vector.
struct InsideBasis {
  std::vector<BitVec> rows;
  std::vector<BitVec> combos;
};

inline InsideBasis span_inside_tracked(const std::vector<BitVec>& gens, int n,
                                       const BitVec& allowed) {
  std::vector<int> prio;
  prio.reserve(n);
  for (int i = 0; i < n; ++i) if (!allowed.get(i)) prio.push_back(i);
  for (int i = 0; i < n; ++i) if (allowed.get(i)) prio.push_back(i);
  Span s(n, int(gens.size()), &prio);
  for (const auto& g : gens) s.add(g);
  InsideBasis out;
  for (size_t r = 0; r < s.basis().size(); ++r) {
    const BitVec& row = s.basis()[r];
    bool inside = true;
    for (int i = 0; i < n && inside; ++i)
      if (row.get(i) && !allowed.get(i)) inside = false;
    if (inside) {
      out.rows.push_back(row);
      out.combos.push_back(s.basis_combos()[r]);
    }
  }
  return out;
}

inline std::vector<BitVec> span_inside(const std::vector<BitVec>& gens, int n,
                                       const BitVec& allowed) {
  return span_inside_tracked(gens, n, allowed).rows;
}

}  // namespace hqec::gf2
