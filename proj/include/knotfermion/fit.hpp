#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "laurent.hpp"
#include "linalg.hpp"
#include "ratfunc.hpp"
#include "rational.hpp"

namespace knotfermion {

/// Multivariate polynomial: exponent vector -> coefficient (a rational function of a, constant when specialized).
using MPoly = std::map<std::vector<int>, RationalFunction>;

/// All exponent vectors in `nvars` variables of total degree <= D, graded then lexicographic.
inline std::vector<std::vector<int>> monomials_upto(int nvars, int D) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(static_cast<std::size_t>(nvars), 0);
  for (int t = 0; t <= D; ++t) {
    std::function<void(int, int)> rec = [&](int i, int rem) {
      if (i == nvars - 1) {
        e[static_cast<std::size_t>(i)] = rem;
        out.push_back(e);
        return;
      }
      for (int j = rem; j >= 0; --j) {
        e[static_cast<std::size_t>(i)] = j;
        rec(i + 1, rem - j);
      }
    };
    if (nvars == 0) {
      if (t == 0) out.emplace_back();
    } else {
      rec(0, t);
    }
  }
  return out;
}

inline Rational monomial_value(const std::vector<int>& e, const std::vector<Rational>& x) {
  Rational v = 1;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i]) v *= x[i].pow(e[i]);
  return v;
}

/// One equation target = sum_c channel[c] * P_c(point) with unknown polynomials P_c.
struct FitSample {
  std::vector<Rational> point;
  std::vector<Rational> channel;
  Rational target;
};

enum class FitStatus { ok, inconsistent, rank_deficient, holdout_failed };

inline std::string to_string(FitStatus s) {
  switch (s) {
    case FitStatus::ok: return "ok";
    case FitStatus::inconsistent: return "inconsistent";
    case FitStatus::rank_deficient: return "rank_deficient";
    case FitStatus::holdout_failed: return "holdout_failed";
  }
  return "unknown";
}

/// Polynomials P_c of total degree <= degree, rational coefficients.
struct ChannelFit {
  int degree = 0;
  std::vector<std::vector<int>> monomials;
  std::vector<std::vector<Rational>> coeffs;  // [channel][monomial]
  FitStatus status = FitStatus::inconsistent;
  std::size_t rank = 0;
  std::size_t unknowns = 0;
  std::vector<Rational> holdout_residuals;

  Rational evaluate(const FitSample& s) const {
    Rational v = 0;
    for (std::size_t c = 0; c < coeffs.size(); ++c) {
      Rational p = 0;
      for (std::size_t i = 0; i < monomials.size(); ++i)
        if (!coeffs[c][i].is_zero()) p += coeffs[c][i] * monomial_value(monomials[i], s.point);
      v += p * s.channel[c];
    }
    return v;
  }
};

/// Solves for the channel polynomials at a fixed total degree on `fit` and validates on `holdout`.
inline ChannelFit fit_channels(int nvars, int nch, int degree, const std::vector<FitSample>& fit, const std::vector<FitSample>& holdout) {
  ChannelFit r;
  r.degree = degree;
  r.monomials = monomials_upto(nvars, degree);
  std::size_t nm = r.monomials.size();
  r.unknowns = nm * static_cast<std::size_t>(nch);
  IncrementalSolver<Rational> solver(r.unknowns);
  for (const FitSample& s : fit) {
    std::vector<Rational> row(r.unknowns, Rational(0));
    for (std::size_t i = 0; i < nm; ++i) {
      Rational mv = monomial_value(r.monomials[i], s.point);
      for (int c = 0; c < nch; ++c) row[static_cast<std::size_t>(c) * nm + i] = mv * s.channel[static_cast<std::size_t>(c)];
    }
    if (!solver.add(std::move(row), s.target)) {
      r.status = FitStatus::inconsistent;
      r.rank = solver.rank();
      return r;
    }
  }
  r.rank = solver.rank();
  if (!solver.full_rank()) {
    r.status = FitStatus::rank_deficient;
    return r;
  }
  std::vector<Rational> x = *solver.solution();
  r.coeffs.assign(static_cast<std::size_t>(nch), std::vector<Rational>(nm));
  for (int c = 0; c < nch; ++c)
    for (std::size_t i = 0; i < nm; ++i) r.coeffs[static_cast<std::size_t>(c)][i] = x[static_cast<std::size_t>(c) * nm + i];
  r.status = FitStatus::ok;
  for (const FitSample& s : holdout) {
    Rational res = s.target - r.evaluate(s);
    r.holdout_residuals.push_back(res);
    if (!res.is_zero()) r.status = FitStatus::holdout_failed;
  }
  return r;
}

/// Fit and holdout samples for a given degree.
using SampleProvider = std::function<std::pair<std::vector<FitSample>, std::vector<FitSample>>(int degree)>;

/// Smallest degree in [0, bound] whose fit is consistent, full rank and passes holdout.
/// Returns the last attempt (status != ok) if none succeeds.
inline ChannelFit minimal_degree_fit(int nvars, int nch, int bound, const SampleProvider& samples) {
  ChannelFit last;
  for (int D = 0; D <= bound; ++D) {
    auto [fit, hold] = samples(D);
    last = fit_channels(nvars, nch, D, fit, hold);
    if (last.status == FitStatus::ok) return last;
  }
  return last;
}

/// Rational function p/q with deg p + deg q minimal through (xs_i, ys_i), confirmed at (cx, cy).
/// Uses only fits that are overdetermined by at least one equation.
inline std::optional<RationalFunction> rational_interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys, const Rational& cx, const Rational& cy) {
  int n = static_cast<int>(xs.size());
  for (int t = 0; t + 2 <= n; ++t)
    for (int dq = 0; dq <= t; ++dq) {
      int dp = t - dq;
      // unknowns p_0..p_dp, q_0..q_{dq-1}; q is monic of degree dq
      IncrementalSolver<Rational> solver(static_cast<std::size_t>(dp + 1 + dq));
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        std::vector<Rational> row;
        Rational pw = 1;
        for (int j = 0; j <= dp; ++j, pw *= xs[static_cast<std::size_t>(i)]) row.push_back(pw);
        pw = 1;
        for (int j = 0; j < dq; ++j, pw *= xs[static_cast<std::size_t>(i)]) row.push_back(-ys[static_cast<std::size_t>(i)] * pw);
        ok = solver.add(std::move(row), ys[static_cast<std::size_t>(i)] * xs[static_cast<std::size_t>(i)].pow(dq));
      }
      if (!ok) continue;
      std::vector<Rational> x = *solver.solution();
      std::vector<Rational> pc(x.begin(), x.begin() + dp + 1), qc(x.begin() + dp + 1, x.end());
      qc.push_back(Rational(1));
      LaurentPoly q = LaurentPoly::dense(0, qc);
      if (evaluate(q, cx).is_zero()) continue;
      RationalFunction f(LaurentPoly::dense(0, pc), q);
      if (f.evaluate_at(cx) == cy) return f;
    }
  return std::nullopt;
}

/// Reconstructs fits with identical support, computed at distinct values of a, as rational functions
/// of a. The last node is held out to confirm each reconstruction; returns nullopt if any disagrees.
inline std::optional<std::vector<std::vector<RationalFunction>>> interpolate_fits_in_a(const std::vector<Rational>& nodes, const std::vector<ChannelFit>& fits) {
  if (nodes.size() != fits.size() || nodes.size() < 2) throw InvalidArgument("interpolation needs matching fits and at least two nodes");
  std::size_t nch = fits[0].coeffs.size(), nm = fits[0].monomials.size();
  for (const auto& f : fits)
    if (f.status != FitStatus::ok || f.monomials != fits[0].monomials) throw InvalidArgument("fits must succeed with a common support");
  std::vector<Rational> xs(nodes.begin(), nodes.end() - 1);
  std::vector<std::vector<RationalFunction>> out(nch, std::vector<RationalFunction>(nm));
  for (std::size_t c = 0; c < nch; ++c)
    for (std::size_t i = 0; i < nm; ++i) {
      std::vector<Rational> ys;
      for (std::size_t j = 0; j + 1 < fits.size(); ++j) ys.push_back(fits[j].coeffs[c][i]);
      auto f = rational_interpolate(xs, ys, nodes.back(), fits.back().coeffs[c][i]);
      if (!f) return std::nullopt;
      out[c][i] = *f;
    }
  return out;
}

/// Deterministic rational draws from a seeded Mersenne twister (raw outputs only, so the
/// sequence is identical on every platform).
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : gen_(seed) {}
  /// A rational in (0, 1) with denominator in [5, 100], not in `avoid`.
  Rational unit_interval(const std::vector<Rational>& avoid = {}) {
    for (;;) {
      long den = 5 + static_cast<long>(gen_() % 96);
      long num = 1 + static_cast<long>(gen_() % static_cast<std::uint64_t>(den - 1));
      Rational r(num, den);
      bool bad = false;
      for (const auto& x : avoid) bad = bad || x == r;
      if (!bad) return r;
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace knotfermion
