#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "series.hpp"

namespace knotfermion {

/// Integer partition with weakly decreasing positive parts.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_)
      if (p <= 0) throw InvalidArgument("partition parts must be positive");
    std::sort(parts_.begin(), parts_.end(), std::greater<int>());
  }

  const std::vector<int>& parts() const { return parts_; }
  int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  /// Multiplicity m_i of the part i.
  int multiplicity(int i) const { return static_cast<int>(std::count(parts_.begin(), parts_.end(), i)); }

  Partition transpose() const {
    std::vector<int> t;
    if (parts_.empty()) return Partition();
    for (int j = 1; j <= parts_[0]; ++j) {
      int c = 0;
      for (int p : parts_)
        if (p >= j) ++c;
      t.push_back(c);
    }
    return Partition(t);
  }

  /// Multiplies every part by q.
  Partition scaled(int q) const {
    std::vector<int> v = parts_;
    for (int& p : v) p *= q;
    return Partition(v);
  }

  /// Multiset union of parts.
  friend Partition operator+(const Partition& a, const Partition& b) {
    std::vector<int> v = a.parts_;
    v.insert(v.end(), b.parts_.begin(), b.parts_.end());
    return Partition(v);
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
  friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ < b.parts_; }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
    return s + ")";
  }

 private:
  std::vector<int> parts_;
};

/// All partitions of n in increasing lexicographic order of their part lists.
inline std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  if (n < 0) return out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int maxp) {
    if (rest == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(rest, maxp); p >= 1; --p) {
      cur.push_back(p);
      rec(rest - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  std::sort(out.begin(), out.end());
  return out;
}

/// z_sigma = prod_i i^{m_i} m_i!.
inline Rational z_factor(const Partition& s) {
  Rational z = 1;
  std::map<int, int> m;
  for (int p : s.parts()) ++m[p];
  for (auto [i, mi] : m) z *= Rational(i).pow(mi) * factorial(mi);
  return z;
}

/// Content sum over cells (row r, column c) of (c - r).
inline long kappa(const Partition& r) {
  long k = 0;
  for (int i = 0; i < r.length(); ++i)
    for (int j = 0; j < r.parts()[static_cast<std::size_t>(i)]; ++j) k += j - i;
  return k;
}

namespace detail {

inline std::vector<int> beta_set(const std::vector<int>& lambda) {
  int l = static_cast<int>(lambda.size());
  std::vector<int> b(lambda.size());
  for (int i = 0; i < l; ++i) b[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(i)] + (l - 1 - i);
  return b;  // strictly decreasing
}

inline std::vector<int> from_beta(std::vector<int> b) {
  std::sort(b.begin(), b.end(), std::greater<int>());
  int l = static_cast<int>(b.size());
  std::vector<int> lam;
  for (int i = 0; i < l; ++i) {
    int p = b[static_cast<std::size_t>(i)] - (l - 1 - i);
    if (p > 0) lam.push_back(p);
  }
  return lam;
}

inline long mn_rec(const std::vector<int>& lambda, const std::vector<int>& sigma, std::size_t pos,
                   std::map<std::pair<std::vector<int>, std::vector<int>>, long>& memo) {
  if (pos == sigma.size()) return lambda.empty() ? 1 : 0;
  std::vector<int> rest(sigma.begin() + static_cast<long>(pos), sigma.end());
  auto key = std::make_pair(lambda, rest);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  int r = sigma[pos];
  std::vector<int> b = beta_set(lambda);
  std::set<int> bs(b.begin(), b.end());
  long total = 0;
  for (int x : b) {
    int y = x - r;
    if (y < 0 || bs.count(y)) continue;
    int between = 0;
    for (int z : b)
      if (z > y && z < x) ++between;
    std::vector<int> nb = b;
    std::replace(nb.begin(), nb.end(), x, y);
    long v = mn_rec(from_beta(nb), sigma, pos + 1, memo);
    total += (between % 2 ? -v : v);
  }
  memo.emplace(key, total);
  return total;
}

struct CharacterCache {
  std::mutex mu;
  std::map<std::pair<std::vector<int>, std::vector<int>>, long> memo;
};
inline CharacterCache& character_cache() {
  static CharacterCache c;
  return c;
}

}  // namespace detail

/// Irreducible character chi^lambda evaluated on the class of cycle type sigma (Murnaghan-Nakayama).
inline long mn_character(const Partition& lambda, const Partition& sigma) {
  if (lambda.weight() != sigma.weight())
    throw WeightMismatch("|" + lambda.str() + "| != |" + sigma.str() + "|");
  auto& cache = detail::character_cache();
  std::lock_guard<std::mutex> lock(cache.mu);
  return detail::mn_rec(lambda.parts(), sigma.parts(), 0, cache.memo);
}

/// Polynomial in the power sums p_1, p_2, ...: map from monomial p_sigma to coefficient.
template <class C>
using PowerSumPoly = std::map<Partition, C>;

template <class C>
void add_term(PowerSumPoly<C>& f, const Partition& s, const C& c) {
  if (is_zero(c)) return;
  auto it = f.find(s);
  if (it == f.end()) {
    f.emplace(s, c);
    return;
  }
  it->second += c;
  if (is_zero(it->second)) f.erase(it);
}

/// s_R = sum_sigma chi^R_sigma p_sigma / z_sigma.
inline PowerSumPoly<Rational> schur_in_power_sums(const Partition& r) {
  PowerSumPoly<Rational> f;
  for (const auto& s : partitions_of(r.weight())) add_term(f, s, Rational(mn_character(r, s)) / z_factor(s));
  return f;
}

/// Adams coefficients: s_R(p_j -> p_{jQ}) = sum_{R1} c^{R1}_R s_{R1}.
inline std::map<Partition, long> adams_coefficients(const Partition& r, int q) {
  if (q < 1) throw InvalidArgument("Adams operation needs Q >= 1");
  std::map<Partition, long> out;
  auto sig = partitions_of(r.weight());
  for (const auto& r1 : partitions_of(q * r.weight())) {
    Rational c = 0;
    for (const auto& s : sig) {
      long a = mn_character(r, s);
      if (a == 0) continue;
      c += Rational(a * mn_character(r1, s.scaled(q))) / z_factor(s);
    }
    if (!c.is_integer()) throw Error("non-integral Adams coefficient for " + r.str() + " -> " + r1.str());
    if (!c.is_zero()) out.emplace(r1, c.to_long());
  }
  return out;
}

/// Second cut-and-join operator W2 = 1/2 sum_{a,b} ((a+b) p_a p_b d/dp_{a+b} + ab p_{a+b} d^2/dp_a dp_b).
template <class C>
PowerSumPoly<C> cutjoin_apply(const PowerSumPoly<C>& f) {
  PowerSumPoly<C> out;
  for (const auto& [s, c] : f) {
    const auto& p = s.parts();
    std::size_t n = p.size();
    // cut: each part splits into two
    for (std::size_t i = 0; i < n; ++i) {
      int cpart = p[i];
      std::vector<int> rest = p;
      rest.erase(rest.begin() + static_cast<long>(i));
      for (int a = 1; a < cpart; ++a) {
        std::vector<int> v = rest;
        v.push_back(a);
        v.push_back(cpart - a);
        add_term(out, Partition(v), mul_scalar(c, Rational(cpart, 2)));
      }
    }
    // join: each unordered pair of parts merges
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        std::vector<int> v;
        for (std::size_t k = 0; k < n; ++k)
          if (k != i && k != j) v.push_back(p[k]);
        v.push_back(p[i] + p[j]);
        add_term(out, Partition(v), mul_scalar(c, Rational(p[i] * p[j])));
      }
  }
  return out;
}

}  // namespace knotfermion
