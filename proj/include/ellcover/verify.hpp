#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covers.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "series.hpp"

namespace ellcover {

struct CheckResult {
  std::string check;
  std::string expected;
  std::string actual;
  bool pass = false;
  /// Informational rows are reported but do not affect the suite verdict.
  bool diagnostic = false;
};

struct VerifyParams {
  std::optional<unsigned> max_n;
  std::optional<unsigned> genus;
  EnumOptions opts;
};

inline bool all_pass(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs)
    if (!r.diagnostic && !r.pass) return false;
  return true;
}

namespace detail {

inline std::string fmt(const BigFloat& x, int digits = 12) { return x.str(digits); }

inline Place place_X() { return Place::finite(Poly::x()); }

inline void require_ell(const Field& F, unsigned ell, const std::string& suite) {
  if (F.ell() != ell) throw ValidationError("suite '" + suite + "' needs ell=" + std::to_string(ell));
}

}  // namespace detail

/// Brute force, exact rational-function expansion, truncated Euler product and the
/// piecewise closed form for ell = 2.
inline std::vector<CheckResult> suite_quadratic_exact(const Field& F, const VerifyParams& P) {
  detail::require_ell(F, 2, "quadratic-exact");
  const unsigned N = P.max_n.value_or(8);
  const auto euler = character_count_series(F, N).integers();
  const auto closed = quadratic_exact_series(F, N);
  std::vector<CheckResult> out;
  for (unsigned n = 1; n <= N; ++n) {
    const auto s = enumerate_summary(F, n, {}, P.opts);
    const BigInt want = quadratic_piecewise(F.q(), n);
    const bool ok = BigInt(s.characters) == want && closed[n] == want && euler[n] == want;
    out.push_back({"N(" + std::to_string(n) + ") brute = closed form = Euler product", want.str(),
                   "brute=" + std::to_string(s.characters) + " closed=" + closed[n].str() + " euler=" + euler[n].str(),
                   ok});
  }
  return out;
}

/// Brute-force character counts against the series coefficients; optionally
/// also against the idele-map count.
inline std::vector<CheckResult> suite_series_vs_brute(const Field& F, const VerifyParams& P, bool with_maps) {
  const unsigned N = P.max_n.value_or(6);
  const auto series = character_count_series(F, N).integers();
  std::vector<CheckResult> out;
  for (unsigned n = 1; n <= N; ++n) {
    const auto s = enumerate_summary(F, n, {}, P.opts);
    std::string actual = "brute=" + std::to_string(s.characters) + " series=" + series[n].str();
    bool ok = BigInt(s.characters) == series[n];
    if (with_maps) {
      const std::uint64_t maps = count_maps(F, n);
      actual += " maps=" + std::to_string(maps);
      ok = ok && maps == s.characters;
    }
    out.push_back({"characters_count(" + std::to_string(n) + ")", series[n].str(), actual, ok});
    out.push_back({"characters = (ell-1) fields at n=" + std::to_string(n),
                   std::to_string((F.ell() - 1) * s.fields), std::to_string(s.characters),
                   s.characters == (F.ell() - 1) * s.fields});
  }
  return out;
}

/// Ramified count and density at X for n = 4, split/inert densities at larger n.
inline std::vector<CheckResult> suite_conditioned(const Field& F, const VerifyParams& P) {
  std::vector<CheckResult> out;
  const Place X = detail::place_X();
  const Conditions ram{{X, LocalType::Ramified}}, split{{X, LocalType::Split}}, inert{{X, LocalType::Inert}};
  {
    const unsigned n = 4;
    const auto s = enumerate_summary(F, n, {ram}, P.opts);
    const auto ser = conditioned_series(F, n, ram).series.integers();
    out.push_back({"N(4, ramified at X): brute = series", ser[n].str(), std::to_string(s.cond_characters[0]),
                   BigInt(s.cond_characters[0]) == ser[n]});
    const Rational dens(s.cond_characters[0], s.characters);
    const Rational cv = local_density(F, X, LocalType::Ramified);
    out.push_back({"density(4, ramified at X) = c_v", to_string(cv), to_string(dens), dens == cv});
  }
  std::vector<unsigned> ns{8, 12};
  if (P.max_n) ns = {*P.max_n};
  for (unsigned n : ns) {
    const auto s = enumerate_summary(F, n, {ram, split, inert}, P.opts);
    const Rational tot(s.characters);
    const Rational r(s.cond_characters[0], 1), sp(s.cond_characters[1], 1), in(s.cond_characters[2], 1);
    const std::string tag = "(" + std::to_string(n) + ", X)";
    for (auto [name, cnt, type] : {std::tuple{"split", sp, LocalType::Split}, std::tuple{"inert", in, LocalType::Inert}}) {
      const Rational d = cnt / tot;
      const Rational cv = local_density(F, X, type);
      out.push_back({std::string(name) + " density" + tag + " within 0.05 of c_v", to_string(cv) + " +- 1/20",
                     to_string(d) + " (" + std::to_string(to_double(d)) + ")", abs(d - cv) <= Rational(1, 20)});
    }
    out.push_back({"trichotomy" + tag + ": ram + split + inert = total", to_string(tot),
                   to_string(Rational(r + sp + in)), r + sp + in == tot});
  }
  return out;
}

/// Brute-force ramified counts against the displayed main term (1-q^{-2})/(1+q^{-1}) q^{n-1}.
inline std::vector<CheckResult> suite_discrepancy(const Field& F, const VerifyParams& P) {
  detail::require_ell(F, 2, "discrepancy");
  std::vector<CheckResult> out;
  const Place X = detail::place_X();
  const unsigned N = P.max_n.value_or(8);
  const auto expansion = quadratic_ramified_series(F, 1, N);
  for (unsigned n = 4; n <= N; ++n) {
    const auto c = count_conditioned(F, n, {{X, LocalType::Ramified}}, P.opts);
    const Rational shown = quadratic_ramified_displayed(F.q(), 1, n);
    const Rational ratio = Rational(c.characters) / shown;
    const bool even = n % 2 == 0;
    const Rational want = even ? Rational(2) : Rational(0);
    out.push_back({"N(" + std::to_string(n) + ", ramified at X) / displayed main term", to_string(want),
                   "brute=" + std::to_string(c.characters) + " displayed=" + to_string(shown) +
                       " ratio=" + to_string(ratio) + " expansion=" + expansion[n].str(),
                   ratio == want && BigInt(c.characters) == expansion[n]});
  }
  return out;
}

/// Empirical point-count distributions against the convolution model.
inline std::vector<CheckResult> suite_distribution(const Field& F, const VerifyParams& P) {
  std::vector<CheckResult> out;
  const unsigned gmax = P.genus.value_or(5);
  const DistVector model = sum_distribution(F, F.q() + 1);
  out.push_back({"model mean = q+1", std::to_string(F.q() + 1), to_string(model.mean()),
                 model.mean() == Rational(F.q() + 1)});
  std::map<unsigned, Rational> tv;
  for (unsigned g = 1; g <= gmax; ++g) {
    if ((2 * g) % (F.ell() - 1) != 0) continue;
    DistVector emp;
    emp.provenance = Provenance::Empirical;
    emp.p = point_distribution(F, g, P.opts);
    const auto rep = compare_distributions(emp, model);
    tv[g] = rep.tv;
    out.push_back({"TV(genus " + std::to_string(g) + ")", "reported", to_string(rep.tv) + " (" +
                   std::to_string(to_double(rep.tv)) + ")", true, true});
    if (g >= 3)
      out.push_back({"empirical mean within 0.5 of q+1 at genus " + std::to_string(g),
                     std::to_string(F.q() + 1) + " +- 1/2", to_string(rep.mean_a),
                     abs(rep.mean_a - Rational(F.q() + 1)) <= Rational(1, 2)});
  }
  if (tv.count(gmax)) {
    out.push_back({"TV(genus " + std::to_string(gmax) + ") <= 0.1", "<= 1/10", to_string(tv[gmax]),
                   tv[gmax] <= Rational(1, 10)});
    if (tv.count(2) && gmax > 2)
      out.push_back({"TV(genus " + std::to_string(gmax) + ") < TV(genus 2)", "< " + to_string(tv[2]),
                     to_string(tv[gmax]), tv[gmax] < tv[2]});
  }
  return out;
}

/// The leading constant and the main-term ratio diagnostics.
inline std::vector<CheckResult> suite_constants(const Field& F, const VerifyParams& P) {
  std::vector<CheckResult> out;
  const unsigned Dmax = 14;
  if (F.ell() == 2) {
    const Rational want = 1 - Rational(1, static_cast<long long>(F.q()) * F.q());
    bool ok = true;
    std::string worst;
    for (unsigned D = 1; D <= Dmax; ++D) {
      const auto c = constant_C(F, D);
      ok = ok && c.exact && *c.exact == want && abs(c.value - BigFloat(want)) < BigFloat("1e-90");
    }
    out.push_back({"C_2(D) = 1 - q^-2 exactly for D = 1.." + std::to_string(Dmax), to_string(want),
                   ok ? to_string(want) : "mismatch", ok});
    const unsigned N = P.max_n.value_or(12);
    const auto series = character_count_series(F, N);
    for (unsigned n = 4; n <= N; ++n) {
      const BigFloat r = main_term_ratio(F, n, Dmax, &series);
      const BigFloat want_r = n % 2 == 0 ? BigFloat(2) : BigFloat(0);
      out.push_back({"main_term_ratio(" + std::to_string(n) + ")", want_r.str(3), detail::fmt(r),
                     abs(r - want_r) < BigFloat("1e-80")});
    }
    return out;
  }
  const auto c12 = constant_C(F, 12);
  const auto c14 = constant_C(F, 14);
  const BigFloat rel = c12.defect / c14.value;
  out.push_back({"|C(12) - C(14)| / C(14) <= 1e-6", "<= 1e-06", detail::fmt(rel, 6), rel <= BigFloat("1e-6")});
  out.push_back({"|C(12) - C(14)| <= tail bound", "<= " + detail::fmt(c12.tail_bound, 6), detail::fmt(c12.defect, 6),
                 c12.defect <= c12.tail_bound});
  bool mono = true;
  BigFloat prev = constant_C_value(F.q(), F.ell(), 1);
  for (unsigned D = 2; D <= Dmax; ++D) {
    const BigFloat cur = constant_C_value(F.q(), F.ell(), D);
    mono = mono && cur <= prev;
    prev = cur;
  }
  out.push_back({"C(D) non-increasing for D = 1.." + std::to_string(Dmax), "monotone", mono ? "monotone" : "not monotone",
                 mono});

  const unsigned lo = 20, hi = P.max_n.value_or(30);
  const auto series = character_count_series(F, hi);
  std::vector<BigFloat> defect;
  for (unsigned n = lo; n <= hi; ++n) {
    const BigFloat r = main_term_ratio(F, n, Dmax, &series);
    defect.push_back(abs(r - 1));
    out.push_back({"main_term_ratio(" + std::to_string(n) + ") within 0.15 of 1", "1 +- 0.15", detail::fmt(r, 6),
                   abs(r - 1) <= BigFloat("0.15")});
  }
  bool shrinking = true;
  for (std::size_t i = 1; i < defect.size(); ++i) shrinking = shrinking && defect[i] <= defect[i - 1];
  std::string seq;
  for (std::size_t i = 0; i < defect.size(); ++i) seq += (i ? " " : "") + detail::fmt(defect[i], 3);
  out.push_back({"|ratio - 1| non-increasing in n over " + std::to_string(lo) + ".." + std::to_string(hi),
                 "non-increasing", seq, shrinking});
  // Within a fixed residue class of n mod ell the defect does shrink.
  bool by_class = true;
  for (std::size_t i = F.ell(); i < defect.size(); ++i) by_class = by_class && defect[i] <= defect[i - F.ell()];
  out.push_back({"|ratio - 1| non-increasing along n = const mod ell", "non-increasing",
                 by_class ? "non-increasing" : "not monotone", by_class, true});
  return out;
}

/// Reciprocity on all pairs of finite places of degree <= 3, and vanishing of the
/// character sums A(n, chi) for n >= deg v.
inline std::vector<CheckResult> suite_characters(const Field& F, const VerifyParams&) {
  std::vector<CheckResult> out;
  const unsigned ell = F.ell();
  const PlaceTable table(F, 3);
  std::vector<Place> finite(table.places().begin() + 1, table.places().end());
  const unsigned sigma = reciprocity_sign_exponent(F);
  std::uint64_t pairs = 0, good = 0;
  for (const auto& v : finite)
    for (const auto& w : finite) {
      if (v == w) continue;
      ++pairs;
      const CharValue lhs = residue_symbol(F, w.poly, v);
      const CharValue rhs = residue_symbol(F, v.poly, w)
                                .times(CharValue::Exp(static_cast<long long>(sigma) * v.degree() * w.degree(), ell), ell);
      if (lhs == rhs) ++good;
    }
  out.push_back({"reciprocity on " + std::to_string(pairs) + " ordered place pairs", std::to_string(pairs),
                 std::to_string(good), good == pairs});

  std::uint64_t chars = 0, vanish = 0;
  for (const auto& v : finite) {
    for (unsigned power = 1; power < ell; ++power) {
      ++chars;
      bool ok = true;
      for (unsigned n = v.degree(); n <= v.degree() + 1 && ok; ++n) ok = character_sum(F, v, power, n).is_zero();
      const auto L = l_polynomial(F, v, power);
      ok = ok && L.size() <= v.degree() && !L.empty() && L[0] == Cyclo(ell, 1);
      if (ok) ++vanish;
    }
  }
  out.push_back({"L-sequences vanish from index deg v (" + std::to_string(chars) + " characters)", std::to_string(chars),
                 std::to_string(vanish), vanish == chars});
  return out;
}

/// Weil bound and functional equation for every field up to the genus bound.
inline std::vector<CheckResult> suite_weil(const Field& F, const VerifyParams& P) {
  std::vector<CheckResult> out;
  const unsigned gmax = P.genus.value_or(2);
  std::map<unsigned, PlaceTable> tables;
  for (unsigned g = 1; g <= gmax; ++g) {
    if ((2 * g) % (F.ell() - 1) != 0) continue;
    const unsigned n = conductor_from_genus(F.ell(), g);
    const auto fields = enumerate_extensions(F, n, P.opts);
    auto it = tables.find(2 * g);
    if (it == tables.end()) it = tables.emplace(2 * g, PlaceTable(F, 2 * g)).first;
    std::uint64_t weil_ok = 0, fe_ok = 0;
    for (const auto& c : fields) {
      const BigInt N1 = point_count(F, c, 1, it->second);
      const BigInt dev = N1 - (F.q() + 1);
      if (dev * dev <= BigInt(4) * g * g * F.q()) ++weil_ok;
      const auto a = zeta_numerator(F, c);
      bool fe = a.size() == 2 * g + 1 && a[0] == 1;
      for (unsigned i = 0; fe && i <= g; ++i) fe = a[2 * g - i] == ipow(BigInt(F.q()), g - i) * a[i];
      if (fe) ++fe_ok;
    }
    const std::string tag = " at genus " + std::to_string(g) + " (" + std::to_string(fields.size()) + " fields)";
    out.push_back({"Weil bound" + tag, std::to_string(fields.size()), std::to_string(weil_ok), weil_ok == fields.size()});
    out.push_back({"functional equation" + tag, std::to_string(fields.size()), std::to_string(fe_ok),
                   fe_ok == fields.size()});
  }
  if (F.ell() == 2 && F.q() == 3) {
    const KummerClass c{0, {Poly({0, 2, 0, 1})}};
    const auto n2 = point_count(F, c, 2);
    out.push_back({"#C(F_9) for Y^2 = X^3 - X", "16", std::to_string(n2), n2 == 16});
  }
  return out;
}

/// ell * sum of tuple counts over admissible degree tuples = characters_count.
inline std::vector<CheckResult> suite_scaling(const Field& F, const VerifyParams& P) {
  std::vector<CheckResult> out;
  const unsigned N = P.max_n.value_or(6);
  for (unsigned n = 1; n <= N; ++n) {
    BigInt tuples = 0;
    for (const auto& d : degree_tuples(F.ell(), n)) tuples += count_tuples(F, d);
    const auto s = enumerate_summary(F, n, {}, P.opts);
    const BigInt lhs = tuples * F.ell();
    out.push_back({"ell * sum count_tuples at n=" + std::to_string(n), std::to_string(s.characters), lhs.str(),
                   lhs == BigInt(s.characters)});
  }
  return out;
}

/// Splitting classification of sampled idele maps against the matched Kummer classes.
inline std::vector<CheckResult> suite_oracle(const Field& F, const VerifyParams& P) {
  const unsigned n = P.max_n.value_or(4);
  const auto rep = splitting_agreement(F, n, 100);
  return {{"splitting agreement on 100 sampled (map, place) pairs at n=" + std::to_string(n),
           std::to_string(rep.checked) + " agreed, 0 unmatched",
           std::to_string(rep.agreed) + " agreed, " + std::to_string(rep.unmatched) + " unmatched",
           rep.agreed == rep.checked && rep.unmatched == 0 && rep.checked == 100}};
}

using SuiteFn = std::function<std::vector<CheckResult>(const Field&, const VerifyParams&)>;

inline const std::vector<std::pair<std::string, SuiteFn>>& suite_registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> reg = {
      {"quadratic-exact", suite_quadratic_exact},
      {"series-vs-brute", [](const Field& F, const VerifyParams& P) { return suite_series_vs_brute(F, P, false); }},
      {"triple", [](const Field& F, const VerifyParams& P) { return suite_series_vs_brute(F, P, true); }},
      {"conditioned", suite_conditioned},
      {"discrepancy", suite_discrepancy},
      {"distribution", suite_distribution},
      {"constants", suite_constants},
      {"characters", suite_characters},
      {"weil", suite_weil},
      {"scaling", suite_scaling},
      {"oracle", suite_oracle},
  };
  return reg;
}

/// Runs one named suite, or every suite applicable to the field for "all".
inline std::vector<CheckResult> run_suite(const std::string& name, const Field& F, const VerifyParams& P) {
  const auto& reg = suite_registry();
  if (name == "all") {
    std::vector<CheckResult> out;
    for (const auto& [n, fn] : reg) {
      if (F.ell() != 2 && (n == "quadratic-exact" || n == "discrepancy")) continue;
      for (auto& r : fn(F, P)) {
        r.check = n + ": " + r.check;
        out.push_back(std::move(r));
      }
    }
    return out;
  }
  for (const auto& [n, fn] : reg)
    if (n == name) return fn(F, P);
  throw ValidationError("unknown suite '" + name + "'");
}

}  // namespace ellcover
