#include <algorithm>

#include "galdesc/error.hpp"
#include "galdesc/fields.hpp"

namespace galdesc {

namespace {

Integer pollard_rho(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto f = [&](const Integer& v) {
      Integer r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      Integer diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_into(Integer n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    out.push_back(n);
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

// p-adic valuation and unit part.
std::pair<long, Integer> split(const Integer& a, const Integer& p) {
  long v = 0;
  Integer u = a;
  while (u % p == 0) {
    u /= p;
    ++v;
  }
  return {v, u};
}

long mod_small(const Integer& a, long m) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(m));
  return r.get_si();
}

bool is_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()); }

}  // namespace

std::vector<Integer> prime_factors(const Integer& n) {
  if (n == 0) throw Error("InvalidArgument", "prime factors of zero");
  Integer m = abs(n);
  std::vector<Integer> out;
  for (unsigned long p = 2; p < 10000 && m > 1; ++p) {
    if (m % p != 0) continue;
    out.emplace_back(p);
    while (m % p == 0) m /= p;
  }
  if (m > 1) factor_into(m, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int hilbert_symbol(const Integer& a, const Integer& b, const Integer& p) {
  if (a == 0 || b == 0) throw Error("InvalidArgument", "Hilbert symbol of zero");
  if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
  auto [alpha, u] = split(a, p);
  auto [beta, v] = split(b, p);
  if (p == 2) {
    auto eps = [](const Integer& x) { return mod_small(x, 4) == 3 ? 1 : 0; };
    auto omega = [](const Integer& x) {
      long r = mod_small(x, 8);
      return (r == 3 || r == 5) ? 1 : 0;
    };
    long e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
    return e % 2 ? -1 : 1;
  }
  int r = 1;
  if ((alpha * beta) % 2 && mod_small(p, 4) == 3) r = -r;
  if (beta % 2) r *= mpz_legendre(u.get_mpz_t(), p.get_mpz_t());
  if (alpha % 2) r *= mpz_legendre(v.get_mpz_t(), p.get_mpz_t());
  return r;
}

NormMembership quadratic_norm_membership(const Integer& d, const Rational& alpha, long witness_bound) {
  if (d == 0 || d == 1) throw Error("InvalidArgument", "d must not be 0 or 1");
  if (alpha == 0) throw Error("InvalidArgument", "alpha must be nonzero");
  Integer m = abs(d);
  if (m > 1)
    for (const auto& p : prime_factors(m))
      if (m % (p * p) == 0) throw Error("NotSquarefree", d.get_str() + " is divisible by a square");

  // alpha and num*den differ by the square den^2.
  Integer a = alpha.get_num() * alpha.get_den();
  std::vector<Integer> places{Integer(0), Integer(2)};
  for (const auto& p : prime_factors(d)) places.push_back(p);
  for (const auto& p : prime_factors(a)) places.push_back(p);
  NormMembership res;
  res.member = true;
  for (const auto& p : places)
    if (hilbert_symbol(a, d, p) != 1) {
      res.member = false;
      break;
    }
  if (!res.member) return res;

  // x = X/q, y = Y/q with X^2 - d Y^2 = alpha q^2; q ranges over multiples
  // of the denominator of alpha.
  const Integer& den = alpha.get_den();
  for (Integer q = den; q <= witness_bound; q += den) {
    Integer target = alpha.get_num() * (q / den) * (q / den) * den;  // alpha * q^2
    Integer ymax = 200;
    if (d < 0) {
      if (target < 0) break;
      Integer lim;
      mpz_sqrt(lim.get_mpz_t(), Integer(target / abs(d)).get_mpz_t());
      ymax = std::min(ymax, Integer(lim + 1));
    }
    for (Integer y = 0; y <= ymax; ++y) {
      Integer x2 = target + d * y * y;
      if (!is_square(x2)) continue;
      Integer x;
      mpz_sqrt(x.get_mpz_t(), x2.get_mpz_t());
      Rational xr(x, q), yr(y, q);
      xr.canonicalize();
      yr.canonicalize();
      res.witness = std::make_pair(xr, yr);
      return res;
    }
  }
  return res;
}

}  // namespace galdesc
