#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "nilcount/errors.hpp"

namespace nilcount {

// Canonical element index in [0, q). 0 is the additive identity, 1 the
// multiplicative identity. For extension fields the index encodes the
// coefficient vector of the residue polynomial in base p: e = sum c_i p^i.
using GfElem = std::uint16_t;

// Writes p and k such that q = p^k when q is a prime power (k >= 1).
bool is_prime_power(std::uint64_t q, std::uint32_t* p_out = nullptr, unsigned* k_out = nullptr);

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Exact arithmetic in GF(q), q = p^k <= 2^16. Immutable after construction;
// all operations are pure and safe for concurrent use.
//
// The representation is fixed: GF(p^k) = F_p[x]/(f) where f is the monic
// irreducible polynomial of degree k whose coefficient vector, read as a
// base-p integer sum c_i p^i, is minimal. This pins element encodings
// across runs and platforms.
class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  std::uint32_t q() const noexcept { return q_; }
  std::uint32_t p() const noexcept { return p_; }
  unsigned degree() const noexcept { return k_; }

  // Modulus polynomial coefficients c_0..c_k (c_k = 1). For k == 1 this is
  // the polynomial x, i.e. {0, 1}.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  GfElem add(GfElem a, GfElem b) const;
  GfElem sub(GfElem a, GfElem b) const;
  GfElem neg(GfElem a) const;
  GfElem mul(GfElem a, GfElem b) const;
  GfElem inv(GfElem a) const;  // throws division_by_zero on a == 0
  GfElem pow(GfElem a, std::uint64_t e) const;

  bool compatible(const Field& other) const noexcept { return q_ == other.q_; }

 private:
  Field(std::uint32_t p, unsigned k, std::uint32_t q);
  friend FieldPtr make_field(std::uint32_t q);

  GfElem mul_generic(GfElem a, GfElem b) const;

  std::uint32_t q_ = 0;
  std::uint32_t p_ = 0;
  unsigned k_ = 1;
  std::vector<std::uint32_t> modulus_;    // c_0..c_k over F_p
  std::vector<std::uint32_t> reduction_;  // x^k = sum reduction_[i] x^i mod f
  std::vector<GfElem> mul_table_;         // q*q entries when q <= kTableOrder
  std::vector<GfElem> inv_table_;         // q entries when q <= kInvTableOrder

  static constexpr std::uint32_t kTableOrder = 256;
  static constexpr std::uint32_t kInvTableOrder = 4096;
};

// Builds GF(q). Throws not_a_prime_power for q < 2 or composite q with more
// than one prime factor, too_large for q > 2^16.
FieldPtr make_field(std::uint32_t q);

}  // namespace nilcount
