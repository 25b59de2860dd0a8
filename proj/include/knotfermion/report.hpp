#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "laurent.hpp"
#include "ratfunc.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace knotfermion {

using Json = nlohmann::json;

enum class CheckStatus { pass, fail, info };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::info: return "info";
  }
  return "unknown";
}

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  Json witness;  // null when absent
};

/// Outcome of a verification suite. A suite passes iff every non-info check passes.
struct CheckReport {
  std::string suite;
  Json params = Json::object();
  std::vector<Check> checks;
  long ms = 0;

  void add(std::string name, bool ok, Json witness = nullptr) {
    checks.push_back({std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, std::move(witness)});
  }
  void info(std::string name, Json witness) { checks.push_back({std::move(name), CheckStatus::info, std::move(witness)}); }
  /// Appends the checks of another report, prefixing their names.
  void absorb(const CheckReport& o, const std::string& prefix) {
    for (const Check& c : o.checks) checks.push_back({prefix + c.name, c.status, c.witness});
  }

  bool passed() const {
    for (const Check& c : checks)
      if (c.status == CheckStatus::fail) return false;
    return true;
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const Check& c : checks) n += c.status == CheckStatus::fail;
    return n;
  }

  Json to_json() const {
    Json cs = Json::array();
    for (const Check& c : checks) cs.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"witness", c.witness}});
    return {{"suite", suite}, {"params", params}, {"checks", cs}, {"ms", ms}};
  }
};

/// Wall-clock milliseconds since construction.
class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  long ms() const {
    return static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0_).count());
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

// Canonical JSON encodings: rationals as "p/q" strings, polynomials as [exponent, coefficient] lists.

inline Json to_json(const Rational& r) { return r.short_str(); }

inline Json to_json(const LaurentPoly& p) {
  Json out = Json::array();
  for (auto& [e, c] : p.terms()) out.push_back(Json::array({e, c.short_str()}));
  return out;
}

inline Json to_json(const RationalFunction& f) { return {{"num", to_json(f.num())}, {"den", to_json(f.den())}}; }

template <class C>
Json to_json(const Series<C>& s) {
  Json cs = Json::array();
  for (int e = s.floor(); e < std::min(s.stored_end(), s.cap()); ++e) {
    C c = s.coeff(e);
    if (!is_zero(c)) cs.push_back(Json::array({e, to_json(c)}));
  }
  Json out = {{"floor", s.floor()}, {"coeffs", cs}};
  if (s.cap() < kExactCap) out["cap"] = s.cap();
  return out;
}

}  // namespace knotfermion
