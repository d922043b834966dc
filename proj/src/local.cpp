// Tate's algorithm in the form given by Cremona, "Algorithms for modular elliptic curves", 3.2.
#include "anticyc/local.hpp"

#include <map>

#include "anticyc/errors.hpp"
#include "anticyc/quadfield.hpp"

namespace anticyc {

std::string KodairaType::symbol() const {
  switch (kind) {
    case KodairaKind::I0: return "I0";
    case KodairaKind::In: return "I" + std::to_string(n);
    case KodairaKind::II: return "II";
    case KodairaKind::III: return "III";
    case KodairaKind::IV: return "IV";
    case KodairaKind::I0star: return "I0*";
    case KodairaKind::Instar: return "I" + std::to_string(n) + "*";
    case KodairaKind::IVstar: return "IV*";
    case KodairaKind::IIIstar: return "III*";
    case KodairaKind::IIstar: return "II*";
  }
  return "?";
}

KodairaType KodairaType::parse(const std::string& s) {
  static const std::map<std::string, KodairaKind> fixed = {
      {"II", KodairaKind::II},       {"III", KodairaKind::III},       {"IV", KodairaKind::IV},
      {"IV*", KodairaKind::IVstar}, {"III*", KodairaKind::IIIstar}, {"II*", KodairaKind::IIstar}};
  if (auto it = fixed.find(s); it != fixed.end()) return KodairaType{it->second, 0};
  if (s.size() >= 2 && s[0] == 'I') {
    bool star = s.back() == '*';
    std::string digits = s.substr(1, s.size() - 1 - (star ? 1 : 0));
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) {
      int n = std::stoi(digits);
      return star ? Istar(n) : I(n);
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown Kodaira symbol '" + s + "'");
}

namespace {

struct Model {
  Int a1, a2, a3, a4, a6;

  // x = x' + r, y = y' + s x' + t
  void transform(const Int& r, const Int& s, const Int& t) {
    Int n1 = a1 + 2 * s;
    Int n2 = a2 - s * a1 + 3 * r - s * s;
    Int n3 = a3 + r * a1 + 2 * t;
    Int n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
    Int n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
    a1 = n1, a2 = n2, a3 = n3, a4 = n4, a6 = n6;
  }
  CurveQ curve() const { return CurveQ(a1, a2, a3, a4, a6); }
};

bool divides(const Int& m, const Int& x) { return mpz_divisible_p(x.get_mpz_t(), m.get_mpz_t()) != 0; }

Int md(const Int& x, const Int& p) {
  Int r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
  return r;
}

Int invmod(const Int& a, const Int& p) {
  Int r, aa = md(a, p);
  if (mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), p.get_mpz_t()) == 0) fail(ErrorCode::Internal, "non-invertible residue");
  return r;
}

// Whether a x^2 + b x + c has a root mod p.
bool quadroots(const Int& a, const Int& b, const Int& c, const Int& p) {
  Int A = md(a, p), B = md(b, p), C = md(c, p);
  if (p == 2) return C == 0 || md(A + B + C, p) == 0;
  if (A == 0) return B != 0 || C == 0;
  Int disc = md(B * B - 4 * A * C, p);
  return mpz_legendre(disc.get_mpz_t(), p.get_mpz_t()) >= 0;
}

using Poly = std::vector<Int>;  // low degree first, coefficients mod p

Poly trim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

Poly polymod(Poly f, const Poly& g, const Int& p) {
  f = trim(f);
  Int lead_inv = invmod(g.back(), p);
  while (f.size() >= g.size()) {
    Int q = md(f.back() * lead_inv, p);
    std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] = md(f[shift + i] - q * g[i], p);
    f = trim(f);
  }
  return f;
}

Poly polymulmod(const Poly& a, const Poly& b, const Poly& g, const Int& p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  for (auto& x : r) x = md(x, p);
  return polymod(r, g, p);
}

// Distinct roots mod p of the monic cubic T^3 + b T^2 + c T + d.
int nrootscubic(const Int& b, const Int& c, const Int& d, const Int& p) {
  if (p < 1000) {
    int n = 0;
    for (unsigned long t = 0; t < p.get_ui(); ++t)
      if (md(Int(t) * t * t + b * t * t + c * t + d, p) == 0) ++n;
    return n;
  }
  // deg gcd(T^p - T, f)
  Poly f = {md(d, p), md(c, p), md(b, p), Int(1)};
  Poly result = {Int(1)}, base = {Int(0), Int(1)};
  Int e = p;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = polymulmod(result, base, f, p);
    base = polymulmod(base, base, f, p);
    e >>= 1;
  }
  result.resize(std::max<std::size_t>(result.size(), 2), Int(0));
  result[1] = md(result[1] - 1, p);
  Poly g = f, h = trim(result);
  while (!h.empty()) {
    Poly r = polymod(g, h, p);
    g = h;
    h = r;
  }
  return static_cast<int>(g.size()) - 1;
}

}  // namespace

TateResult tate(const CurveQ& curve, std::uint64_t ell, bool require_minimal) {
  if (!is_prime(ell)) fail(ErrorCode::InvalidArgument, std::to_string(ell) + " is not prime");
  if (curve.disc() == 0) fail(ErrorCode::InvalidArgument, "singular model");
  const Int p(static_cast<unsigned long>(ell));
  const Int pp = p * p, ppp = pp * p;
  const Int halfmodp = (p + 1) / 2;
  Model m{curve.a1, curve.a2, curve.a3, curve.a4, curve.a6};
  TateResult res;
  res.local.ell = ell;

  auto finish = [&](KodairaType t, std::uint64_t c, int vD, int f) {
    res.local.type = t;
    res.local.c = c;
    res.local.v_disc = vD;
    res.local.v_cond = f;
    res.minimal = m.curve();
    return res;
  };

  for (;;) {
    CurveQ cur = m.curve();
    Int D = cur.disc();
    int vD = valuation(D, ell);
    if (vD == 0) return finish(KodairaType{}, 1, 0, 0);

    Int b2 = cur.b2(), b4 = cur.b4(), b6 = cur.b6(), c4 = cur.c4(), c6 = cur.c6();
    Int r, t;
    if (p == 2) {
      if (divides(p, b2)) {
        r = m.a4;
        t = r * (1 + m.a2 + m.a4) + m.a6;
      } else {
        r = m.a3;
        t = r + m.a4;
      }
    } else if (p == 3) {
      r = divides(p, b2) ? Int(-b6) : Int(-b2 * b4);
      t = m.a1 * r + m.a3;
    } else {
      if (divides(p, c4))
        r = -invmod(12, p) * b2;
      else
        r = -invmod(12 * c4, p) * (c6 + b2 * c4);
      t = -halfmodp * (m.a1 * r + m.a3);
    }
    m.transform(md(r, p), 0, md(t, p));

    if (!divides(p, c4)) {
      bool split = quadroots(1, m.a1, -m.a2, p);
      res.local.split_multiplicative = split;
      std::uint64_t c = split ? static_cast<std::uint64_t>(vD) : (vD % 2 == 0 ? 2 : 1);
      return finish(KodairaType::I(vD), c, vD, 1);
    }
    if (!divides(pp, m.a6)) return finish(KodairaType{KodairaKind::II, 0}, 1, vD, vD);
    if (!divides(ppp, m.curve().b8())) return finish(KodairaType{KodairaKind::III, 0}, 2, vD, vD - 1);
    if (!divides(ppp, m.curve().b6())) {
      std::uint64_t c = quadroots(1, m.a3 / p, -m.a6 / pp, p) ? 3 : 1;
      return finish(KodairaType{KodairaKind::IV, 0}, c, vD, vD - 2);
    }

    // Now arrange p | a1, a2; p^2 | a3, a4; p^3 | a6.
    Int s;
    if (p == 2) {
      s = md(m.a2, 2);
      t = 2 * md(m.a6 / 4, 2);
    } else {
      s = -m.a1 * halfmodp;
      t = -m.a3 * halfmodp;
    }
    m.transform(0, s, t);

    Int b = m.a2 / p, c = m.a4 / pp, d = m.a6 / ppp;
    Int w = 27 * d * d - b * b * c * c + 4 * b * b * b * d - 18 * b * c * d + 4 * c * c * c;
    Int x = 3 * c - b * b;
    if (!divides(p, w)) {
      std::uint64_t cp = 1 + nrootscubic(b, c, d, p);
      return finish(KodairaType::Istar(0), cp, vD, vD - 4);
    }
    if (!divides(p, x)) {
      if (p == 2)
        r = c;
      else if (p == 3)
        r = b * c;
      else
        r = (b * c - 9 * d) * invmod(2 * x, p);
      r = p * md(r, p);
      m.transform(r, 0, 0);
      int ix = 3, iy = 3;
      Int mx = pp, my = pp;
      std::uint64_t cp = 0;
      while (cp == 0) {
        Int a2t = m.a2 / p, a3t = m.a3 / my, a4t = (m.a4 / p) / mx, a6t = (m.a6 / mx) / my;
        if (!divides(p, a3t * a3t + 4 * a6t)) {
          cp = quadroots(1, a3t, -a6t, p) ? 4 : 2;
        } else {
          t = p == 2 ? Int(my * a6t) : Int(my * md(-a3t * halfmodp, p));
          m.transform(0, 0, t);
          my *= p;
          ++iy;
          a2t = m.a2 / p;
          a3t = m.a3 / my;
          a4t = (m.a4 / p) / mx;
          a6t = (m.a6 / mx) / my;
          if (!divides(p, a4t * a4t - 4 * a6t * a2t)) {
            cp = quadroots(a2t, a4t, a6t, p) ? 4 : 2;
          } else {
            r = p == 2 ? Int(mx * md(a6t * a2t, p)) : Int(mx * md(-a4t * invmod(2 * a2t, p), p));
            m.transform(r, 0, 0);
            mx *= p;
            ++ix;
          }
        }
      }
      return finish(KodairaType::Istar(ix + iy - 5), cp, vD, vD - ix - iy + 1);
    }

    // triple root
    Int rp = p == 3 ? Int(-d) : Int(-b * invmod(3, p));
    r = p * md(rp, p);
    m.transform(r, 0, 0);
    Int x3t = m.a3 / pp, x6t = m.a6 / (pp * pp);
    if (!divides(p, x3t * x3t + 4 * x6t)) {
      std::uint64_t cp = quadroots(1, x3t, -x6t, p) ? 3 : 1;
      return finish(KodairaType{KodairaKind::IVstar, 0}, cp, vD, vD - 6);
    }
    t = p == 2 ? x6t : Int(x3t * halfmodp);
    t = -pp * md(t, p);
    m.transform(0, 0, t);
    if (!divides(pp * pp, m.a4)) return finish(KodairaType{KodairaKind::IIIstar, 0}, 2, vD, vD - 7);
    if (!divides(pp * pp * pp, m.a6)) return finish(KodairaType{KodairaKind::IIstar, 0}, 1, vD, vD - 8);

    if (require_minimal)
      fail(ErrorCode::NonMinimalModel, curve.str() + " is not minimal at " + std::to_string(ell));
    m.a1 /= p;
    m.a2 /= pp;
    m.a3 /= ppp;
    m.a4 /= pp * pp;
    m.a6 /= pp * pp * pp;
    ++res.rescalings;
  }
}

LocalData tate_algorithm(const CurveQ& curve, std::uint64_t ell, bool require_minimal) {
  return tate(curve, ell, require_minimal).local;
}

std::uint64_t tamagawa_p_part(const LocalData& local, std::uint64_t p) {
  std::uint64_t r = 1, c = local.c;
  while (c % p == 0) {
    c /= p;
    r *= p;
  }
  return r;
}

bool kida_p_divides(const KodairaType& base, bool ramified, std::uint64_t ell, std::uint64_t p) {
  if (p < 5) fail(ErrorCode::SmallPrime, "kida_p_divides needs p >= 5");
  if (ell == p) fail(ErrorCode::InvalidArgument, "kida_p_divides needs ell != p");
  bool pn = base.n > 0 && base.n % static_cast<std::int64_t>(p) == 0;
  if (base.kind == KodairaKind::In && pn) return true;
  return base.kind == KodairaKind::Instar && pn && ramified && ell != 2;
}

GlobalReduction global_reduction(const CurveQ& curve, bool require_minimal) {
  Int D = curve.disc();
  if (D == 0) fail(ErrorCode::InvalidArgument, "singular model");
  GlobalReduction g;
  g.conductor = 1;
  for (auto ell : prime_divisors_u64(D)) {
    LocalData ld = tate_algorithm(curve, ell, require_minimal);
    if (ld.v_cond == 0) continue;
    g.conductor *= ipow(ell, ld.v_cond);
    g.local.push_back(ld);
  }
  return g;
}

Int conductor(const CurveQ& curve) { return global_reduction(curve).conductor; }

std::uint64_t tau_anticyclotomic(const CurveQ& curve, std::uint64_t d, std::uint64_t p) {
  GlobalReduction g = global_reduction(curve);
  QuadField K(d);
  if (mod_u64(g.conductor, p) == 0) fail(ErrorCode::BadReduction, "p divides the conductor");
  std::uint64_t tau = 1;
  for (const auto& ld : g.local) {
    // ramified and inert primes of K are not in S_ns
    if (splitting(ld.ell, K) == SplittingType::Split) tau *= tamagawa_p_part(ld, p);
  }
  return tau;
}

}  // namespace anticyc
