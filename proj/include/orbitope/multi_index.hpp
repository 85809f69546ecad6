#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

namespace orbitope {

/// Exponent tuple of a monomial x_1^{e_1} ... x_n^{e_n}. Fixed length n.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exps) : e_(std::move(exps)) {
    for (int v : e_)
      if (v < 0) throw std::invalid_argument("MultiIndex with negative exponent");
  }
  MultiIndex(std::initializer_list<int> exps) : MultiIndex(std::vector<int>(exps)) {}
  static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(n, 0)); }
  static MultiIndex unit(int n, int i, int power = 1) {
    std::vector<int> e(n, 0);
    e[i] = power;
    return MultiIndex(std::move(e));
  }

  int size() const { return static_cast<int>(e_.size()); }
  int degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }
  int operator[](int i) const { return e_[i]; }
  const std::vector<int>& exps() const { return e_; }

  MultiIndex operator+(const MultiIndex& o) const {
    std::vector<int> r(e_);
    for (int i = 0; i < size(); ++i) r[i] += o.e_[i];
    return MultiIndex(std::move(r));
  }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e_ == b.e_; }
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) { return a.e_ < b.e_; }

 private:
  std::vector<int> e_;
};

/// All multi-indices of length n and total degree m, in lexicographically
/// decreasing exponent order ((m,0,...), (m-1,1,0,...), ..., (0,...,0,m)).
/// This is the deterministic monomial ordering used throughout.
inline std::vector<MultiIndex> monomials_of_degree(int n, int m) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(n, 0);
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == n - 1) {
      cur[pos] = rem;
      out.emplace_back(cur);
      return;
    }
    for (int e = rem; e >= 0; --e) {
      cur[pos] = e;
      self(self, pos + 1, rem - e);
    }
  };
  if (n >= 1) rec(rec, 0, m);
  return out;
}

}  // namespace orbitope
