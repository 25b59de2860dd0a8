#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "fermion.hpp"
#include "fit.hpp"
#include "jacobi.hpp"
#include "knot.hpp"
#include "parallel.hpp"
#include "report.hpp"

namespace knotfermion {

enum class FitMode { specialized, exact };

inline std::string to_string(FitMode m) { return m == FitMode::exact ? "exact" : "specialized"; }

/// xi^e_m without its A^{(b-1)m} factor: (-1)^m J_{m-e}(rho = m), a polynomial in a.
inline LaurentPoly xi_hat(int e, int m, const KnotParams& K) {
  LaurentPoly p = jacobi_J<Rational>(m - e, Rational(m) * K.b);
  return m % 2 ? -p : p;
}

/// Values a must avoid: 1 (all p*_i vanish) and the zero of (Delta u)^2 at a = ((b-1)/(b+1))^2.
inline std::vector<Rational> forbidden_a(const KnotParams& K) {
  Rational r = (K.b - 1) / (K.b + 1);
  return {Rational(1), r * r};
}

/// A family of fit problems target(point) = sum_c channel_c(point) P_c(point), indexed by a.
class FitTarget {
 public:
  virtual ~FitTarget() = default;
  virtual int nvars() const = 0;
  virtual int nchannels() const = 0;
  virtual std::vector<Rational> avoid() const = 0;

  /// Samples at a specialized value of a.
  class Specialized {
   public:
    virtual ~Specialized() = default;
    virtual void prefetch(const std::vector<std::vector<int>>&) {}
    virtual FitSample sample(const std::vector<int>& point) = 0;
  };
  virtual std::unique_ptr<Specialized> at(const Rational& a) const = 0;

  /// Target and channels as polynomials in a.
  virtual std::pair<LaurentPoly, std::vector<LaurentPoly>> exact(const std::vector<int>& point) const = 0;
};

/// Grid and holdout point sets for a trial degree.
struct FitPlan {
  int degree_bound = 0;
  std::function<std::vector<std::vector<int>>(int)> grid;
  std::function<std::vector<std::vector<int>>(int)> holdout;
  FitMode mode = FitMode::specialized;
  std::uint64_t seed = 1;
  int max_a_nodes = 24;
};

/// Fitted polynomials P_c with coefficients in Q(a) (constants in specialized mode).
struct FitResult {
  std::string kind;
  int n = 0;
  int k = 0;
  KnotParams K;
  FitMode mode = FitMode::specialized;
  std::uint64_t seed = 0;
  std::vector<Rational> a_nodes;
  int degree = -1;
  int degree_bound = 0;
  std::vector<std::vector<int>> monomials;
  std::vector<std::vector<int>> channels;  // channel labels (eta vectors)
  std::vector<std::vector<RationalFunction>> coeffs;  // [channel][monomial]
  std::vector<std::vector<int>> grid, holdout;
  std::vector<Rational> holdout_residuals;  // at a_nodes[0]
  bool holdout_exact = false;               // exact mode: identity in Q(a) at every holdout point
  FitStatus status = FitStatus::inconsistent;

  bool passed() const {
    return status == FitStatus::ok && degree >= 0 && degree <= degree_bound && (mode == FitMode::specialized || holdout_exact);
  }

  /// Coefficient of the monomial with exponent vector e in channel c (zero if absent).
  RationalFunction coeff(std::size_t c, const std::vector<int>& e) const {
    for (std::size_t i = 0; i < monomials.size(); ++i)
      if (monomials[i] == e) return coeffs[c][i];
    return RationalFunction();
  }

  Json to_json() const {
    Json polys = Json::array();
    for (std::size_t c = 0; c < coeffs.size(); ++c) {
      Json terms = Json::array();
      for (std::size_t i = 0; i < monomials.size(); ++i) {
        const RationalFunction& f = coeffs[c][i];
        if (f.is_zero()) continue;
        Json v = f.den() == LaurentPoly(1) && f.num().lo() >= 0 && f.num().hi() <= 0 ? knotfermion::to_json(f.num().coeff(0)) : knotfermion::to_json(f);
        terms.push_back({{"exponents", monomials[i]}, {"coeff", v}});
      }
      polys.push_back({{"channel", channels[c]}, {"terms", terms}});
    }
    Json nodes = Json::array();
    for (const auto& a : a_nodes) nodes.push_back(knotfermion::to_json(a));
    Json res = Json::array();
    for (const auto& r : holdout_residuals) res.push_back(knotfermion::to_json(r));
    return {{"kind", kind},
            {"n", n},
            {"k", k},
            {"Q", K.Q},
            {"P", K.P},
            {"mode", to_string(mode)},
            {"seed", seed},
            {"a_nodes", nodes},
            {"degree", degree},
            {"degree_bound", degree_bound},
            {"status", to_string(status)},
            {"holdout_exact", holdout_exact},
            {"grid_size", grid.size()},
            {"holdout", holdout},
            {"holdout_residuals", res},
            {"polynomials", polys}};
  }
};

namespace detail {

inline std::vector<FitSample> samples_of(FitTarget::Specialized& s, const std::vector<std::vector<int>>& pts) {
  s.prefetch(pts);
  std::vector<FitSample> out;
  for (const auto& p : pts) out.push_back(s.sample(p));
  return out;
}

inline ChannelFit fit_at_degree(const FitTarget& T, FitTarget::Specialized& s, const FitPlan& plan, int D) {
  return fit_channels(T.nvars(), T.nchannels(), D, samples_of(s, plan.grid(D)), samples_of(s, plan.holdout(D)));
}

}  // namespace detail

/// Minimal-degree fit at one seeded specialization of a; in exact mode the coefficients are then
/// reconstructed in Q(a) from further specializations and certified exactly at the holdout points.
inline FitResult run_fit(const FitTarget& T, const FitPlan& plan) {
  FitResult r;
  r.mode = plan.mode;
  r.seed = plan.seed;
  r.degree_bound = plan.degree_bound;
  RationalSampler rs(plan.seed);
  std::vector<Rational> avoid = T.avoid();
  auto next_a = [&] {
    std::vector<Rational> av = avoid;
    av.insert(av.end(), r.a_nodes.begin(), r.a_nodes.end());
    Rational a = rs.unit_interval(av);
    r.a_nodes.push_back(a);
    return a;
  };
  auto spec = T.at(next_a());
  ChannelFit f;
  for (int D = 0; D <= plan.degree_bound; ++D) {
    f = detail::fit_at_degree(T, *spec, plan, D);
    if (f.status == FitStatus::ok) break;
  }
  r.status = f.status;
  r.degree = f.status == FitStatus::ok ? f.degree : -1;
  r.monomials = f.monomials;
  r.holdout_residuals = f.holdout_residuals;
  if (f.status != FitStatus::ok) return r;
  r.grid = plan.grid(r.degree);
  r.holdout = plan.holdout(r.degree);
  if (plan.mode == FitMode::specialized) {
    r.coeffs.assign(f.coeffs.size(), std::vector<RationalFunction>(f.monomials.size()));
    for (std::size_t c = 0; c < f.coeffs.size(); ++c)
      for (std::size_t i = 0; i < f.monomials.size(); ++i) r.coeffs[c][i] = RationalFunction(LaurentPoly(f.coeffs[c][i]));
    return r;
  }
  std::vector<ChannelFit> fits{f};
  std::optional<std::vector<std::vector<RationalFunction>>> rec;
  while (static_cast<int>(r.a_nodes.size()) < plan.max_a_nodes) {
    auto s = T.at(next_a());
    ChannelFit g = detail::fit_at_degree(T, *s, plan, r.degree);
    if (g.status != FitStatus::ok) {
      r.status = g.status;
      return r;
    }
    fits.push_back(std::move(g));
    if ((rec = interpolate_fits_in_a(r.a_nodes, fits))) break;
  }
  if (!rec) {
    r.status = FitStatus::holdout_failed;
    return r;
  }
  r.coeffs = *rec;
  r.holdout_exact = true;
  for (const auto& p : r.holdout) {
    auto [target, ch] = T.exact(p);
    RationalFunction rhs;
    for (std::size_t c = 0; c < ch.size(); ++c) {
      RationalFunction pc;
      std::vector<Rational> x(p.begin(), p.end());
      for (std::size_t i = 0; i < r.monomials.size(); ++i)
        if (!r.coeffs[c][i].is_zero()) pc += r.coeffs[c][i] * RationalFunction(LaurentPoly(monomial_value(r.monomials[i], x)));
      rhs += pc * RationalFunction(ch[c]);
    }
    if (!(rhs == RationalFunction(target))) r.holdout_exact = false;
  }
  if (!r.holdout_exact) r.status = FitStatus::holdout_failed;
  return r;
}

/// [u^k] K°_mu (normalized by A^{(b-1)|mu|}) against channels prod_i xi-hat^{eta_i}_{mu_i}.
/// `scale` multiplies the target by a function of the point (identity for plain correlators).
class CorrelatorTarget : public FitTarget {
 public:
  using Scale = std::function<Rational(const std::vector<int>&)>;
  CorrelatorTarget(int n, int k, const KnotParams& K, Scale scale = nullptr) : n_(n), k_(k), K_(K), scale_(std::move(scale)) {}

  int nvars() const override { return n_; }
  int nchannels() const override { return 1 << n_; }
  std::vector<Rational> avoid() const override { return forbidden_a(K_); }

  static std::vector<int> eta(int n, int c) {
    std::vector<int> e;
    for (int i = 0; i < n; ++i) e.push_back(((c >> i) & 1) + 1);
    return e;
  }

  class At : public Specialized {
   public:
    At(const CorrelatorTarget& t, const Rational& a) : t_(t), a_(a) {}
    void prefetch(const std::vector<std::vector<int>>& pts) override {
      std::vector<std::vector<int>> todo;
      for (auto p : pts) {
        std::sort(p.begin(), p.end(), std::greater<int>());
        if (!memo_.count(p) && std::find(todo.begin(), todo.end(), p) == todo.end()) todo.push_back(p);
      }
      if (todo.empty()) return;
      int workers = worker_count();
      if (engines_.size() < static_cast<std::size_t>(workers))
        for (int w = static_cast<int>(engines_.size()); w < workers; ++w)
          engines_.push_back(std::make_unique<KmuEngine<SpecializedModel>>(SpecializedModel{t_.K_, a_}, t_.k_ + 1, t_.n_));
      std::vector<Rational> vals(todo.size());
      parallel_for(todo.size(), workers, [&](int w, std::size_t i) { vals[i] = engines_[static_cast<std::size_t>(w)]->connected(todo[i]).coeff(t_.k_); });
      for (std::size_t i = 0; i < todo.size(); ++i) memo_[todo[i]] = vals[i];
    }
    FitSample sample(const std::vector<int>& p) override {
      std::vector<int> key = p;
      std::sort(key.begin(), key.end(), std::greater<int>());
      if (!memo_.count(key)) prefetch({key});
      Rational target = memo_.at(key);
      if (t_.scale_) target *= t_.scale_(p);
      std::vector<Rational> ch;
      for (int c = 0; c < t_.nchannels(); ++c) {
        Rational v = 1;
        std::vector<int> e = eta(t_.n_, c);
        for (int i = 0; i < t_.n_; ++i) v *= xi(e[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i)]);
        ch.push_back(v);
      }
      std::vector<Rational> pt;
      for (int m : p) pt.emplace_back(m);
      return {pt, ch, target};
    }

   private:
    Rational xi(int e, int m) {
      auto key = std::make_pair(e, m);
      auto it = xi_.find(key);
      if (it == xi_.end()) it = xi_.emplace(key, evaluate_a(xi_hat(e, m, t_.K_), a_)).first;
      return it->second;
    }
    const CorrelatorTarget& t_;
    Rational a_;
    std::vector<std::unique_ptr<KmuEngine<SpecializedModel>>> engines_;
    std::map<std::vector<int>, Rational> memo_;
    std::map<std::pair<int, int>, Rational> xi_;
  };

  std::unique_ptr<Specialized> at(const Rational& a) const override { return std::make_unique<At>(*this, a); }

  std::pair<LaurentPoly, std::vector<LaurentPoly>> exact(const std::vector<int>& p) const override {
    KmuEngine<ReducedModel> eng(ReducedModel{K_}, k_ + 1, n_);
    LaurentPoly target = eng.connected(p).coeff(k_);
    if (scale_) target = target.scaled(scale_(p));
    std::vector<LaurentPoly> ch;
    for (int c = 0; c < nchannels(); ++c) {
      LaurentPoly v(1);
      std::vector<int> e = eta(n_, c);
      for (int i = 0; i < n_; ++i) v = v * xi_hat(e[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i)], K_);
      ch.push_back(v);
    }
    return {target, ch};
  }

 private:
  int n_, k_;
  KnotParams K_;
  Scale scale_;
};

inline bool is_stable(int n, int k) { return !((n == 1 && k == -1) || (n == 2 && k == 0)); }

/// 9(k+n-1)+2.
inline int quasipoly_degree_bound(int n, int k) { return std::max(0, 9 * (k + n - 1) + 2); }

/// Consecutive integers from n+1 on each axis, 2D+3 per axis; holdout points strictly beyond the grid.
inline std::vector<std::vector<int>> default_grid(int n, int D) {
  int lo = n + 1, hi = n + 2 * D + 3;
  std::vector<std::vector<int>> pts;
  std::vector<int> p(static_cast<std::size_t>(n), lo);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      pts.push_back(p);
      return;
    }
    for (int m = lo; m <= hi; ++m) {
      p[static_cast<std::size_t>(i)] = m;
      rec(i + 1);
    }
  };
  rec(0);
  return pts;
}
inline std::vector<std::vector<int>> default_holdout(int n, int D, int count = 4) {
  int hi = n + 2 * D + 3;
  std::vector<std::vector<int>> pts;
  for (int j = 0; j < count; ++j) {
    std::vector<int> p;
    for (int i = 0; i < n; ++i) p.push_back(hi + 1 + j + i * (j + 1));
    pts.push_back(p);
  }
  return pts;
}

struct QuasiOptions {
  FitMode mode = FitMode::specialized;
  std::uint64_t seed = 1;
  int degree_bound = -1;  // negative selects 9(k+n-1)+2
  std::vector<std::vector<int>> grid;     // empty selects the default grid for each trial degree
  std::vector<std::vector<int>> holdout;  // empty selects the default holdout
};

/// Fits [u^k] K°_mu = sum_eta P_{k;eta}(mu) prod_i xi^{eta_i}_{mu_i} (A-monomials cleared).
inline FitResult fit_quasipolynomial(int n, int k, const KnotParams& K, const QuasiOptions& opt = {}) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (!is_stable(n, k)) throw StabilityError("(n,k) = (" + std::to_string(n) + "," + std::to_string(k) + ") is excluded");
  if (k < n - 2) throw StabilityRange("K°_mu starts at u^{n-2}");
  CorrelatorTarget T(n, k, K);
  FitPlan plan;
  plan.degree_bound = opt.degree_bound >= 0 ? opt.degree_bound : quasipoly_degree_bound(n, k);
  plan.grid = [&](int D) { return opt.grid.empty() ? default_grid(n, D) : opt.grid; };
  plan.holdout = [&](int D) { return opt.holdout.empty() ? default_holdout(n, D) : opt.holdout; };
  plan.mode = opt.mode;
  plan.seed = opt.seed;
  FitResult r = run_fit(T, plan);
  r.kind = "correlator";
  r.n = n;
  r.k = k;
  r.K = K;
  for (int c = 0; c < T.nchannels(); ++c) r.channels.push_back(CorrelatorTarget::eta(n, c));
  return r;
}

/// P_{sigma eta}(sigma mu) = P_eta(mu) for every permutation sigma of the slots.
inline bool fit_is_symmetric(const FitResult& r) {
  if (r.coeffs.empty()) return false;
  std::vector<int> perm(static_cast<std::size_t>(r.n));
  for (int i = 0; i < r.n; ++i) perm[static_cast<std::size_t>(i)] = i;
  auto channel_index = [&](const std::vector<int>& e) {
    for (std::size_t c = 0; c < r.channels.size(); ++c)
      if (r.channels[c] == e) return c;
    throw InvalidArgument("unknown channel");
  };
  do {
    for (std::size_t c = 0; c < r.channels.size(); ++c)
      for (std::size_t i = 0; i < r.monomials.size(); ++i) {
        std::vector<int> e2(r.channels[c].size()), m2(r.monomials[i].size());
        for (int s = 0; s < r.n; ++s) {
          e2[static_cast<std::size_t>(perm[static_cast<std::size_t>(s)])] = r.channels[c][static_cast<std::size_t>(s)];
          m2[static_cast<std::size_t>(perm[static_cast<std::size_t>(s)])] = r.monomials[i][static_cast<std::size_t>(s)];
        }
        if (!(r.coeff(channel_index(e2), m2) == r.coeffs[c][i])) return false;
      }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

/// Shows that (1,-1) and (2,0) do not fit the ansatz, while m^2 [u^-1] K°_(m) and
/// (mu1+mu2) [u^0] K°_(mu1,mu2) do; the stable (1,1) fit is the control.
inline CheckReport unstable_witness(const KnotParams& K, std::uint64_t seed = 1, int max_degree = 6) {
  CheckReport rep;
  rep.suite = "unstable_witness";
  rep.params = {{"Q", K.Q}, {"P", K.P}, {"seed", seed}, {"max_degree", max_degree}};
  auto attempt = [&](int n, int k, CorrelatorTarget::Scale scale, int bound) {
    CorrelatorTarget T(n, k, K, std::move(scale));
    FitPlan plan;
    plan.degree_bound = bound;
    plan.grid = [n](int D) { return default_grid(n, D); };
    plan.holdout = [n](int D) { return default_holdout(n, D); };
    plan.seed = seed;
    return run_fit(T, plan);
  };
  FitResult r1 = attempt(1, -1, nullptr, max_degree);
  rep.add("(1,-1) has no fit up to degree " + std::to_string(max_degree), r1.status != FitStatus::ok, {{"status", to_string(r1.status)}});
  FitResult r1s = attempt(1, -1, [](const std::vector<int>& p) { return Rational(p[0]) * Rational(p[0]); }, max_degree);
  rep.add("m^2 [u^-1] K° fits", r1s.passed(), {{"degree", r1s.degree}});
  FitResult r2 = attempt(2, 0, nullptr, max_degree);
  rep.add("(2,0) has no fit up to degree " + std::to_string(max_degree), r2.status != FitStatus::ok, {{"status", to_string(r2.status)}});
  FitResult r2s = attempt(2, 0, [](const std::vector<int>& p) { return Rational(p[0] + p[1]); }, max_degree);
  rep.add("(mu1+mu2) [u^0] K° fits", r2s.passed(), {{"degree", r2s.degree}});
  FitResult c = attempt(1, 1, nullptr, quasipoly_degree_bound(1, 1));
  rep.add("stable (1,1) control fits", c.passed(), {{"degree", c.degree}});
  return rep;
}

/// Coefficient [u^k] of the E_{l-s,l} matrix element of A~(m, um) times (m+1)...(m+s), or of the
/// identity part times m^2, with the A^{(b-1)m} factor cleared.
struct MatrixElement {
  int k = 0;
  Rational l = Rational(1, 2);
  int s = 0;
  bool identity = false;
  int m_power = 0;  // extra factor m^{m_power}
};

namespace detail {

template <class Model>
typename Model::C matrix_element_value(const Model& model, const MatrixElement& me, int m) {
  using C = typename Model::C;
  if (me.identity) {
    // m^2 (1/m) E_m / zeta(um) = (1/u) E_m (um/zeta(um))
    AtildeCoeffs<Model> A(model, m, me.k + 2);
    Series<C> e = A.raw(m) * lift<C>(series_inverse(zeta_over_arg_series(Rational(m), me.k + 2)));
    return mul_scalar(e.coeff(me.k + 1), Rational(m).pow(me.m_power));
  }
  AtildeCoeffs<Model> A(model, m, me.k + 1);
  // E_{l-s,l} carries e^{um(l - s/2)} from the definition of the E-operators
  Series<C> e = A.raw(m + me.s) * lift<C>(exp_series(Rational(m) * (me.l - Rational(me.s, 2)), me.k + 1));
  C v = mul_scalar(e.coeff(me.k), Rational(1, m));
  Rational pr = 1;
  for (int j = 1; j <= me.s; ++j) pr *= Rational(m + j);
  return mul_scalar(v, pr * Rational(m).pow(me.m_power));
}

}  // namespace detail

class MatrixElementTarget : public FitTarget {
 public:
  MatrixElementTarget(const MatrixElement& me, const KnotParams& K) : me_(me), K_(K) {}
  int nvars() const override { return 1; }
  int nchannels() const override { return 2; }
  std::vector<Rational> avoid() const override { return forbidden_a(K_); }

  class At : public Specialized {
   public:
    At(const MatrixElementTarget& t, const Rational& a) : t_(t), a_(a) {}
    FitSample sample(const std::vector<int>& p) override {
      int m = p[0];
      Rational v = detail::matrix_element_value(SpecializedModel{t_.K_, a_}, t_.me_, m);
      return {{Rational(m)}, {evaluate_a(xi_hat(1, m, t_.K_), a_), evaluate_a(xi_hat(2, m, t_.K_), a_)}, v};
    }

   private:
    const MatrixElementTarget& t_;
    Rational a_;
  };
  std::unique_ptr<Specialized> at(const Rational& a) const override { return std::make_unique<At>(*this, a); }
  std::pair<LaurentPoly, std::vector<LaurentPoly>> exact(const std::vector<int>& p) const override {
    int m = p[0];
    return {detail::matrix_element_value(ReducedModel{K_}, me_, m), {xi_hat(1, m, K_), xi_hat(2, m, K_)}};
  }

 private:
  MatrixElement me_;
  KnotParams K_;
};

/// Fits a matrix element against F^1 xi^1_m + F^2 xi^2_m with deg F <= 9k+2+s (9k+2 for the identity part).
inline FitResult fit_matrix_element(const MatrixElement& me, const KnotParams& K, std::vector<int> grid = {}, std::vector<int> holdout = {},
                                    FitMode mode = FitMode::specialized, std::uint64_t seed = 1) {
  if (me.s < 0) throw InvalidArgument("only s >= 0 is supported");
  if (me.k < (me.identity ? -1 : 0)) throw InvalidArgument("k is below the first nonzero order");
  MatrixElementTarget T(me, K);
  FitPlan plan;
  plan.degree_bound = std::max(0, 9 * me.k + 2 + (me.identity ? 0 : me.s) + me.m_power);
  auto wrap = [](const std::vector<int>& v) {
    std::vector<std::vector<int>> out;
    for (int m : v) out.push_back({m});
    return out;
  };
  plan.grid = [&](int D) {
    if (!grid.empty()) return wrap(grid);
    std::vector<int> g;
    for (int m = 2; m <= 2 * D + 4; ++m) g.push_back(m);
    return wrap(g);
  };
  plan.holdout = [&](int D) {
    if (!holdout.empty()) return wrap(holdout);
    std::vector<int> h;
    int hi = grid.empty() ? 2 * D + 4 : *std::max_element(grid.begin(), grid.end());
    for (int j = 1; j <= 4; ++j) h.push_back(hi + j);
    return wrap(h);
  };
  plan.mode = mode;
  plan.seed = seed;
  FitResult r = run_fit(T, plan);
  r.kind = me.identity ? "identity_part" : "matrix_element";
  r.n = 1;
  r.k = me.k;
  r.K = K;
  r.channels = {{1}, {2}};
  return r;
}

}  // namespace knotfermion
