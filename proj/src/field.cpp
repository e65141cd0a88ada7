#include "nilcount/field.hpp"

#include <algorithm>
#include <cstdlib>

namespace nilcount {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::not_a_prime_power: return "NotAPrimePower";
    case errc::too_large: return "TooLarge";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::not_square: return "NotSquare";
    case errc::not_nilpotent_orbit: return "NotNilpotentOrbit";
    case errc::not_nilpotent_pair: return "NotNilpotentPair";
    case errc::not_eventually_constant: return "NotEventuallyConstant";
    case errc::edge_not_in_tree: return "EdgeNotInTree";
    case errc::out_of_range: return "OutOfRange";
    case errc::invalid_triple: return "InvalidTriple";
    case errc::io_error: return "IoError";
  }
  return "Error";
}

bool is_prime_power(std::uint64_t q, std::uint32_t* p_out, unsigned* k_out) {
  if (q < 2) return false;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;  // q itself is prime
  unsigned k = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) return false;
  if (p_out) *p_out = static_cast<std::uint32_t>(p);
  if (k_out) *k_out = k;
  return true;
}

namespace {

// Dense polynomials over F_p, coefficient vectors with no trailing zeros.
using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  const int dm = deg(m);
  while (deg(a) >= dm) {
    const std::uint64_t lead = a.back();
    const int shift = deg(a) - dm;
    // m is monic here, so subtract lead * x^shift * m
    for (int i = 0; i <= dm; ++i) {
      std::uint64_t v = a[static_cast<std::size_t>(i + shift)] + (p - (lead * m[static_cast<std::size_t>(i)]) % p);
      a[static_cast<std::size_t>(i + shift)] = static_cast<std::uint32_t>(v % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
  }
  trim(prod);
  return poly_mod(std::move(prod), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
  Poly result{1};
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = static_cast<std::uint32_t>((a[i] + p - b[i]) % p);
  trim(a);
  return a;
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  // extended Euclid in Z_p
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    std::int64_t tmp = t - quot * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quot * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  while (!b.empty()) {
    const std::uint32_t lead_inv = mod_inverse(b.back(), p);
    Poly bm = b;
    for (auto& c : bm) c = static_cast<std::uint32_t>((static_cast<std::uint64_t>(c) * lead_inv) % p);
    a = poly_mod(std::move(a), bm, p);
    std::swap(a, b);
  }
  return a;
}

// Rabin's test: f (monic, degree k) is irreducible over F_p iff
// x^(p^k) == x (mod f) and gcd(x^(p^(k/t)) - x, f) = 1 for prime t | k.
bool is_irreducible(const Poly& f, std::uint32_t p, unsigned k) {
  const Poly x{0, 1};
  std::vector<unsigned> prime_divisors;
  unsigned rest = k;
  for (unsigned t = 2; t * t <= rest; ++t) {
    if (rest % t == 0) {
      prime_divisors.push_back(t);
      while (rest % t == 0) rest /= t;
    }
  }
  if (rest > 1) prime_divisors.push_back(rest);

  for (unsigned t : prime_divisors) {
    std::uint64_t e = 1;
    for (unsigned i = 0; i < k / t; ++i) e *= p;
    Poly h = poly_powmod(x, e, f, p);
    Poly g = poly_gcd(poly_sub(std::move(h), x, p), f, p);
    if (deg(g) != 0) return false;
  }
  std::uint64_t e = 1;
  for (unsigned i = 0; i < k; ++i) e *= p;
  Poly h = poly_powmod(x, e, f, p);
  return poly_sub(std::move(h), x, p).empty();
}

}  // namespace

Field::Field(std::uint32_t p, unsigned k, std::uint32_t q) : q_(q), p_(p), k_(k) {
  if (k_ == 1) {
    modulus_ = {0, 1};
  } else {
    // smallest base-p coefficient encoding wins
    for (std::uint32_t t = 0;; ++t) {
      Poly f(k_ + 1, 0);
      f[k_] = 1;
      std::uint32_t rest = t;
      for (unsigned i = 0; i < k_; ++i) {
        f[i] = rest % p_;
        rest /= p_;
      }
      if (is_irreducible(f, p_, k_)) {
        modulus_ = f;
        break;
      }
    }
    reduction_.assign(k_, 0);
    for (unsigned i = 0; i < k_; ++i) reduction_[i] = (p_ - modulus_[i]) % p_;
  }

  if (q_ <= kTableOrder) {
    mul_table_.assign(static_cast<std::size_t>(q_) * q_, 0);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b <= a; ++b) {
        const GfElem v = mul_generic(static_cast<GfElem>(a), static_cast<GfElem>(b));
        mul_table_[static_cast<std::size_t>(a) * q_ + b] = v;
        mul_table_[static_cast<std::size_t>(b) * q_ + a] = v;
      }
  }
  if (q_ <= kInvTableOrder) {
    inv_table_.assign(q_, 0);
    for (std::uint32_t a = 1; a < q_; ++a) inv_table_[a] = pow(static_cast<GfElem>(a), q_ - 2);
  }
}

GfElem Field::add(GfElem a, GfElem b) const {
  if (k_ == 1) return static_cast<GfElem>((static_cast<std::uint32_t>(a) + b) % p_);
  std::uint32_t result = 0;
  std::uint32_t scale = 1;
  std::uint32_t x = a, y = b;
  for (unsigned i = 0; i < k_; ++i) {
    result += ((x % p_ + y % p_) % p_) * scale;
    x /= p_;
    y /= p_;
    scale *= p_;
  }
  return static_cast<GfElem>(result);
}

GfElem Field::neg(GfElem a) const {
  if (k_ == 1) return static_cast<GfElem>((p_ - a) % p_);
  std::uint32_t result = 0;
  std::uint32_t scale = 1;
  std::uint32_t x = a;
  for (unsigned i = 0; i < k_; ++i) {
    result += ((p_ - x % p_) % p_) * scale;
    x /= p_;
    scale *= p_;
  }
  return static_cast<GfElem>(result);
}

GfElem Field::sub(GfElem a, GfElem b) const { return add(a, neg(b)); }

GfElem Field::mul(GfElem a, GfElem b) const {
  if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(a) * q_ + b];
  return mul_generic(a, b);
}

GfElem Field::mul_generic(GfElem a, GfElem b) const {
  if (k_ == 1) return static_cast<GfElem>((static_cast<std::uint64_t>(a) * b) % p_);
  std::uint32_t da[17], db[17];
  std::uint64_t prod[33] = {0};
  std::uint32_t x = a, y = b;
  for (unsigned i = 0; i < k_; ++i) {
    da[i] = x % p_;
    db[i] = y % p_;
    x /= p_;
    y /= p_;
  }
  for (unsigned i = 0; i < k_; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < k_; ++j) prod[i + j] += static_cast<std::uint64_t>(da[i]) * db[j];
  }
  // fold x^(k+t) = x^t * (x^k mod f) from the top down
  for (int i = 2 * static_cast<int>(k_) - 2; i >= static_cast<int>(k_); --i) {
    const std::uint64_t c = prod[i] % p_;
    prod[i] = 0;
    if (c == 0) continue;
    for (unsigned j = 0; j < k_; ++j) prod[i - k_ + j] += c * reduction_[j];
  }
  std::uint32_t result = 0;
  std::uint32_t scale = 1;
  for (unsigned i = 0; i < k_; ++i) {
    result += static_cast<std::uint32_t>(prod[i] % p_) * scale;
    scale *= p_;
  }
  return static_cast<GfElem>(result);
}

GfElem Field::pow(GfElem a, std::uint64_t e) const {
  GfElem result = 1;
  GfElem base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

GfElem Field::inv(GfElem a) const {
  if (a == 0) fail(errc::division_by_zero, "inverse of 0 in GF(" + std::to_string(q_) + ")");
  if (!inv_table_.empty()) return inv_table_[a];
  return pow(a, q_ - 2);
}

FieldPtr make_field(std::uint32_t q) {
  if (q < 2) fail(errc::not_a_prime_power, "field order must be at least 2, got " + std::to_string(q));
  if (q > Field::kMaxOrder) fail(errc::too_large, "field order " + std::to_string(q) + " exceeds 2^16");
  std::uint32_t p = 0;
  unsigned k = 0;
  if (!is_prime_power(q, &p, &k))
    fail(errc::not_a_prime_power, std::to_string(q) + " is not a prime power");
  return FieldPtr(new Field(p, k, q));
}

}  // namespace nilcount
