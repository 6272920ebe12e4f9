// Acceptance run: one PASS/FAIL line per criterion with tolerance and runtime.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "oracles/detdiv.hpp"
#include "oracles/kostant.hpp"
#include "oracles/qpascal.hpp"
#include "oracles/sl2_tilting.hpp"
#include "xtilt/forms.hpp"
#include "xtilt/xcat.hpp"

using namespace xtilt;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

struct Case {
  RootSystem rs;
  Weight lambda;
  std::string name() const { return rs.label() + " (" + weight_to_string(lambda) + ")"; }
};

std::vector<Case> weyl_cases() {
  std::vector<Case> out;
  const auto a1 = RootSystem::from_label("A1"), a2 = RootSystem::from_label("A2");
  const auto b2 = RootSystem::from_label("B2"), g2 = RootSystem::from_label("G2");
  for (int l = 0; l <= 8; ++l) out.push_back({a1, {l}});
  for (const Weight& w : {Weight{1, 0}, Weight{1, 1}, Weight{2, 1}}) out.push_back({a2, w});
  for (const Weight& w : {Weight{1, 0}, Weight{0, 1}, Weight{1, 1}}) out.push_back({b2, w});
  out.push_back({g2, {1, 0}});
  return out;
}

std::vector<GroundRing> weyl_rings() {
  return {GroundRing::generic(), GroundRing::cyclotomic(3), GroundRing::cyclotomic(5), GroundRing::integer_local(3)};
}

std::string key(const Case& c, const GroundRing& r) { return c.name() + " over " + r.descriptor(); }

/// Oracle Laurent polynomial as a ring element.
RingElem embed(const oracle::Laurent& p, const GroundRing& r) {
  LaurentPoly l;
  for (auto [e, c] : p) l += LaurentPoly::monomial(Rational(c), e);
  return RingElem::embed(l, r);
}

oracle::Laurent qint_oracle(int n) {
  if (n >= 0) return oracle::qint_laurent(n);
  oracle::Laurent p = oracle::qint_laurent(-n);
  for (auto& [e, c] : p) c = -c;
  return p;
}

/// Layout used in the worked examples: the transpose of Ehat with its block order reversed.
Mat displayed_layout(const Mat& ehat) {
  const std::size_t n = ehat.rows();
  Mat out(ehat.ring(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = ehat(j, n - 1 - i);
  return out;
}

Character kostant_character(const RootSystem& rs, const Weight& lambda) {
  oracle::Kostant k(rs.cartan());
  const auto c = k.character(lambda);
  return Character(c.begin(), c.end());
}

// Objects built in criteria 1-5, for the axiom and relation suite.
std::vector<std::pair<std::string, XObject>> built;
std::map<std::string, XObject> smins, smaxs;

Outcome criterion1() {
  Outcome o;
  const auto a1 = RootSystem::from_label("A1");
  const auto k = GroundRing::generic();
  for (int lam : {5, 6, 7}) {
    XObject m = seed_object(a1, k, {lam}, true);
    m = minimal_extend(m, {lam - 2});
    built.push_back({"A1 partial lambda=" + std::to_string(lam), m});
    const Mat shown = displayed_layout(hat_matrices(m, {lam - 4}).Ehat);
    const auto q = [&](int n) { return embed(qint_oracle(n), k); };
    const Mat expect = Mat::from_rows(
        k, {{q(lam - 1), embed(oracle::qbinom_pascal(lam, 2, 1), k)}, {q(lam) + q(lam - 2), q(lam) * q(lam - 1)}});
    o.expect(shown == expect, "Ehat differs at lambda=" + std::to_string(lam) + ": " + shown.to_string());
    o.expect((q(lam) / q(2)) * (q(lam) + q(lam - 2)) == q(lam) * q(lam - 1),
             "identity fails at lambda=" + std::to_string(lam));
    // [2] [lam][lam-1]/[2] = [lam][lam-1] in the coefficient oracle
    const auto lhs = embed(oracle::qbinom_pascal(lam, 2, 1), k) * q(2);
    o.expect(lhs == q(lam) * q(lam - 1), "binomial identity fails at lambda=" + std::to_string(lam));
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto a2 = RootSystem::from_label("A2");
  const int cartan[2][2] = {{2, -1}, {-1, 2}};
  const Weight al{2, -1}, be{-1, 2};
  for (const auto& ring : {GroundRing::generic(), GroundRing::cyclotomic(3)}) {
    for (const Weight& lam : {Weight{1, 1}, Weight{2, 1}, Weight{1, 3}, Weight{4, 2}}) {
      XObject m = seed_object(a2, ring, lam, true);
      m = minimal_extend(m, lam - al);
      m = minimal_extend(m, lam - be);
      const Weight mu = lam - al - be;
      const Mat shown = displayed_layout(hat_matrices(m, mu).Ehat);
      const auto q = [&](int n) { return embed(qint_oracle(n), ring); };
      const int la = lam[0], lb = lam[1];
      const Mat expect = Mat::from_rows(ring, {{q(la), q(lb - cartan[0][1])}, {q(la - cartan[1][0]), q(lb)}});
      o.expect(shown == expect, "A2 hat matrix differs at " + weight_to_string(lam) + " over " + ring.descriptor());
    }
  }
  const auto c3 = GroundRing::cyclotomic(3);
  const Weight rho{1, 1};
  o.expect(embed(qint_oracle(2), c3).is_unit(), "[2] is not a unit");
  o.expect(RingElem::from_fraction(c3, Poly({Rational(1), Rational(-1), Rational(1)}), Poly::constant(1)).is_unit(),
           "v^2-v+1 is not a unit");
  XObject m = seed_object(a2, c3, rho, true);
  for (const auto& w : build_weights(a2, rho, {})) {
    if (w == rho) continue;
    const auto st = maximal_step(m, w);
    if (w == a2.zero_weight()) {
      o.expect(st.exponents == std::vector<int>{1}, "saturation invariants at 0 are not (sigma_3)");
      o.expect(st.minimal_rank == 2, "minimal rank at 0 is not 2");
    }
    apply_step(m, w, st);
  }
  const XObject s = build_smax(a2, c3, rho);
  o.expect(s == m, "stepwise and direct S_max differ");
  o.expect(s.rank(a2.zero_weight()) == 3, "rank at 0 is " + std::to_string(s.rank(a2.zero_weight())));
  built.push_back({"A2 S_max(rho) over cyc:3", s});
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (const auto& c : weyl_cases()) {
    const Character expect = kostant_character(c.rs, c.lambda);
    o.expect(weyl_character(c.rs, c.lambda) == expect, "Freudenthal and Kostant disagree for " + c.name());
    for (const auto& r : weyl_rings()) {
      const XObject m = build_smin(c.rs, r, c.lambda);
      smins.emplace(key(c, r), m);
      built.push_back({"S_min " + key(c, r), m});
      o.expect(character(m) == expect, "character of S_min " + key(c, r));
    }
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto a1 = RootSystem::from_label("A1");
  const auto c3 = GroundRing::cyclotomic(3);
  const std::map<int, Character> stated = {{0, {{{0}, 1}}},
                                           {1, {{{1}, 1}}},
                                           {2, {{{2}, 1}}},
                                           {3, {{{3}, 1}, {{1}, 1}}},
                                           {4, {{{4}, 1}, {{0}, 1}}}};
  for (int lam = 0; lam <= 4; ++lam) {
    const XObject m = build_smax(a1, c3, {lam});
    built.push_back({"A1 S_max(" + std::to_string(lam) + ") over cyc:3", m});
    smaxs.emplace(key({a1, {lam}}, c3), m);
    Character expect;
    for (auto [w, k] : oracle::sl2_tilting_mults_cyc3(lam)) expect[{w}] = k;
    const Character got = weyl_multiplicities(m);
    o.expect(got == expect, "oracle disagrees at lambda=" + std::to_string(lam));
    o.expect(got == stated.at(lam), "stated multiplicities differ at lambda=" + std::to_string(lam));
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto k = GroundRing::generic();
  for (const auto& c : weyl_cases()) {
    const XObject& mn = smins.at(key(c, k));
    const XObject mx = build_smax(c.rs, k, c.lambda);
    smaxs.emplace(key(c, k), mx);
    built.push_back({"S_max " + key(c, k), mx});
    bool same = mn.region() == mx.region();
    for (const auto& w : mn.region()) same = same && mn.rank(w) == mx.rank(w);
    o.expect(same, "rank tables differ for " + c.name());
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (const auto& [name, m] : built) {
    const Report ax = check_axioms(m);
    o.expect(ax.passed(), name + ": " + ax.summary());
    const Report rel = verify_relations(m);
    o.expect(rel.passed(), name + ": " + rel.summary());
  }
  o.detail = o.ok ? std::to_string(built.size()) + " objects" : o.detail;
  return o;
}

Outcome criterion7() {
  Outcome o;
  for (const auto& [name, m] : smins) {
    const Report r = minimality_certificate(m);
    o.expect(r.passed(), "S_min " + name + ": " + r.summary());
  }
  for (const auto& c : weyl_cases())
    for (const auto& r : weyl_rings())
      if (!smaxs.count(key(c, r))) smaxs.emplace(key(c, r), build_smax(c.rs, r, c.lambda));
  for (const auto& [name, m] : smaxs) {
    const Report r = maximality_certificate(m);
    o.expect(r.passed(), "S_max " + name + ": " + r.summary());
  }
  return o;
}

/// Checks the form object against S_max and returns the isomorphism S_max -> form object.
std::optional<HomMap> form_checks(Outcome& o, const Case& c, const GroundRing& r, const XObject& m,
                                  const GradedForm& b, const XObject& s) {
  const std::string name = key(c, r);
  const Report rep = check_form(m, b);
  o.expect(rep.passed(), name + ": " + rep.summary());
  for (const auto& w : m.region())
    if (m.rank(w) > 0) o.expect(determinant(b.at(m, w)).is_unit(), name + ": Gram determinant not a unit");
  o.expect(character(m) == character(s), name + ": characters differ from S_max");
  std::string why;
  auto f = extend_hom({{c.lambda, Mat::identity(r, 1)}}, s, m, &why);
  if (!f) {
    o.fail(name + ": identity does not extend: " + why);
    return std::nullopt;
  }
  o.expect(is_isomorphism(*f, s, m), name + ": extension is not an isomorphism");
  return f;
}

Outcome criterion8() {
  Outcome o;
  for (const auto& c : weyl_cases()) {
    if (c.rs.label() != "A1" && c.rs.label() != "A2") continue;
    for (const auto& r : weyl_rings()) {
      const auto [m, b] = build_smax_with_form(c.rs, r, c.lambda);
      form_checks(o, c, r, m, b, smaxs.at(key(c, r)));
    }
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  for (const auto& c : weyl_cases()) {
    for (const auto& r : weyl_rings()) {
      const std::string name = key(c, r);
      const XObject& s = smaxs.at(name);
      const auto [m, b] = build_smax_with_form(c.rs, r, c.lambda);
      const auto f = form_checks(o, c, r, m, b, s);
      if (f) {
        // the form transported to S_max itself
        GradedForm pulled;
        for (const auto& w : s.region())
          if (s.rank(w) > 0) pulled.gram[w] = f->at(w).transpose() * b.at(m, w) * f->at(w);
        const Report rep = check_form(s, pulled);
        o.expect(rep.passed(), name + ": transported form: " + rep.summary());
      }
      const Character mults = weyl_multiplicities(s);
      o.expect(mults.count(c.lambda) && mults.at(c.lambda) == 1, name + ": multiplicity at lambda is not 1");
      Character sum;
      for (const auto& [w, k] : mults) {
        o.expect(c.rs.is_dominant(w), name + ": multiplicity at non-dominant " + weight_to_string(w));
        o.expect(c.rs.leq(w, c.lambda), name + ": multiplicity above lambda");
        for (const auto& [v, n] : kostant_character(c.rs, w)) sum[v] += k * n;
      }
      o.expect(sum == character(s), name + ": character equation fails");
    }
  }
  return o;
}

/// Integer matrix with the local invariants of m (entries in Z localized at p).
oracle::IMat cleared(const Mat& m) {
  std::vector<Rational> vals;
  Integer den = 1;
  for (const auto& x : m.entries()) {
    const RingElem y = to_fraction_field(x);
    const Rational q = y.is_zero() ? Rational(0) : y.num().coeff(0);
    vals.push_back(q);
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  }
  oracle::IMat out(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational v = vals[i * m.cols() + j] * Rational(den);
      out[i][j] = v.get_num();
    }
  return out;
}

Outcome criterion10() {
  Outcome o;
  const auto a1 = RootSystem::from_label("A1");
  std::size_t steps = 0;
  for (long p : {2L, 3L, 5L}) {
    const auto ring = GroundRing::integer_local(static_cast<int>(p));
    for (int lam = 0; lam <= 12; ++lam) {
      XObject m = seed_object(a1, ring, {lam}, true);
      for (const auto& w : build_weights(a1, {lam}, {})) {
        if (w == Weight{lam}) continue;
        const auto st = maximal_step(m, w);
        if (st.minimal_rank > 0) {
          std::vector<int> expect;
          for (int e : oracle::local_invariants(cleared(st.Etilde), p))
            if (e != 0) expect.push_back(e);
          std::vector<int> got = st.exponents;
          std::sort(expect.begin(), expect.end());
          std::sort(got.begin(), got.end());
          o.expect(got == expect, "p=" + std::to_string(p) + " lambda=" + std::to_string(lam) + " step " +
                                      weight_to_string(w));
          ++steps;
        }
        apply_step(m, w, st);
      }
      o.expect(m == build_smax(a1, ring, {lam}), "stepwise build differs from build_smax");
    }
  }
  if (o.ok) o.detail = std::to_string(steps) + " steps";
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double limit;  // seconds, 0 for none
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "A1 worked example: hat matrices at lambda = 5, 6, 7", 1.0, criterion1},
      {2, "A2 worked example: hat matrix, saturation (sigma_3), rank 3 at weight 0", 1.0, criterion2},
      {3, "Weyl character of S_min against Freudenthal and Kostant", 30.0, criterion3},
      {4, "sl2 tilting multiplicities at a cube root of unity", 5.0, criterion4},
      {5, "field semisimplicity: S_min and S_max rank tables agree over Q(v)", 0.0, criterion5},
      {6, "axioms and relations for every object of criteria 1-5", 0.0, criterion6},
      {7, "minimality and maximality certificates", 0.0, criterion7},
      {8, "contravariant forms on S_max for A1 and A2", 30.0, criterion8},
      {9, "self-duality, Weyl multiplicities and the character equation", 0.0, criterion9},
      {10, "A1 saturation invariants against integer determinantal divisors", 60.0, criterion10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit > 0 && secs >= c.limit) o.fail("runtime over limit");
    char limit[32];
    if (c.limit > 0)
      std::snprintf(limit, sizeof limit, "< %g s", c.limit);
    else
      std::snprintf(limit, sizeof limit, "none");
    std::printf("%s  criterion %2d  %s  [tolerance: exact; time %.3f s, limit %s]%s%s\n", o.ok ? "PASS" : "FAIL",
                c.id, c.title, secs, limit, o.detail.empty() ? "" : "  ", o.detail.c_str());
    failed += o.ok ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
