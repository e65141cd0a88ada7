#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "nilcount/counting.hpp"
#include "nilcount/matrix.hpp"

namespace nilcount {

enum class BalanceTag { balanced, unbalanced };

// Classification of v for a nilpotent pair: a = dim of the cyclic subspace
// of v under gf, ell = dim of the cyclic subspace of f v under fg. For
// nilpotent pairs either ell = a (balanced) or ell = a - 1 (unbalanced);
// the zero vector is balanced of length 0.
struct BalancedClass {
  GfVector vector;
  std::size_t a = 0;
  std::size_t ell = 0;
  BalanceTag tag = BalanceTag::balanced;
};

struct NilpotentTriple {
  LinearPair pair;
  GfVector v;
};

// gf nilpotent; agrees with fg being nilpotent.
bool is_nilpotent_pair(const LinearPair& pair);

// Throws not_nilpotent_pair when gf is not nilpotent.
BalancedClass classify_vector(const LinearPair& pair, const GfVector& v);

// Two independent routes to the number of balanced vectors in V:
// a direct classification scan of all q^m vectors, and the alternating
// kernel-profile sum 1 + sum_i (q^(d'_i) - q^(d_i)).
BigCount count_balanced_direct(const LinearPair& pair);
BigCount balanced_count_kernel_formula(const LinearPair& pair);

inline constexpr std::uint64_t kPairEnumerationCap = 100'000'000;    // on q^(2mn)
inline constexpr std::uint64_t kTripleEnumerationCap = 100'000'000;  // on q^(2mn) * q^m
inline constexpr std::uint64_t kRankEnumerationCap = 10'000'000;     // on q^(mn)

BigCount pair_space(std::uint64_t q, unsigned m, unsigned n);  // q^(2mn)

// Brute-force count of pairs with gf nilpotent.
BigCount enumerate_nilpotent_pairs(std::uint64_t q, unsigned m, unsigned n, unsigned workers = 1,
                                   std::uint64_t cap = kPairEnumerationCap);

// Brute-force count of (nilpotent pair, balanced v) triples; with ell set,
// only vectors whose cyclic subspace has dimension ell.
BigCount enumerate_balanced_triples(std::uint64_t q, unsigned m, unsigned n,
                                    std::optional<unsigned> ell = std::nullopt, unsigned workers = 1,
                                    std::uint64_t cap = kTripleEnumerationCap);

// The bijection (nilpotent pair, balanced vector) -> arbitrary pair of maps.
// The cyclic bases of T[v] and T'[fv] are turned into isomorphisms onto the
// echelon bases of the two subspaces, the off-diagonal blocks into
// graph-complements, and the residual nilpotent pair is carried across;
// the output is assembled block-diagonally. All choices are deterministic.
// Throws invalid_triple when the pair is not nilpotent or v is unbalanced.
LinearPair theta(const NilpotentTriple& t);

// Brute-force count of n x m matrices of rank exactly r.
BigCount count_rank_maps(std::uint64_t q, unsigned m, unsigned n, unsigned r, unsigned workers = 1,
                         std::uint64_t cap = kRankEnumerationCap);

struct ThetaAudit {
  BigCount triples = 0;     // (nilpotent pair, balanced vector) count
  BigCount image_size = 0;  // distinct theta outputs
  bool injective = false;
  bool covers_hom_space = false;  // image is all of Hom(V,W) x Hom(W,V)
};

// Exhaustively applies theta to every triple and audits injectivity and
// image size against q^(2mn).
ThetaAudit audit_theta(std::uint64_t q, unsigned m, unsigned n, std::uint64_t cap = kTripleEnumerationCap);

// Enumeration order for pairs is lexicographic over the concatenated
// row-major entries of (f, g); the index reads those entries as big-endian
// base-q digits.
std::uint64_t linear_pair_index(const LinearPair& pair);
LinearPair linear_pair_at(const FieldPtr& field, unsigned m, unsigned n, std::uint64_t index);
void for_each_linear_pair(const FieldPtr& field, unsigned m, unsigned n,
                          const std::function<void(const LinearPair&)>& fn);

// Vectors in canonical index order: coordinates as big-endian base-q digits.
GfVector vector_at(const FieldPtr& field, unsigned dim, std::uint64_t index);
void for_each_vector(const FieldPtr& field, unsigned dim, const std::function<void(const GfVector&)>& fn);

}  // namespace nilcount
