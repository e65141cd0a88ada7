#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "nilcount/field.hpp"

namespace nilcount {

// Coordinate column vector over a field, entries are canonical indices.
using GfVector = std::vector<GfElem>;

// Dense row-major matrix over GF(q). Value type; copies are cheap at the
// sizes this library works with.
class GfMatrix {
 public:
  GfMatrix(FieldPtr field, std::size_t rows, std::size_t cols);

  static GfMatrix identity(FieldPtr field, std::size_t n);
  static GfMatrix from_rows(FieldPtr field, const std::vector<std::vector<std::uint32_t>>& rows);
  static GfMatrix from_columns(FieldPtr field, std::size_t dim, const std::vector<GfVector>& columns);

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  GfElem operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, GfElem v) { entries_[r * cols_ + c] = v; }

  bool is_zero() const;
  bool is_square() const noexcept { return rows_ == cols_; }
  GfVector column(std::size_t c) const;

  friend bool operator==(const GfMatrix& a, const GfMatrix& b);

 private:
  FieldPtr field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<GfElem> entries_;
};

GfMatrix operator*(const GfMatrix& a, const GfMatrix& b);  // shape_mismatch on bad dims
GfVector mat_apply(const GfMatrix& a, const GfVector& v);
GfMatrix mat_pow(const GfMatrix& a, std::uint64_t e);

std::size_t rank(const GfMatrix& a);

// True iff a^s = 0 where s is the side length (Cayley-Hamilton bound).
// Tested by repeated squaring. Throws not_square.
bool is_nilpotent(const GfMatrix& a);

// Least a >= 0 with t^a v = 0; the dimension of the cyclic subspace
// span{v, tv, t^2 v, ...}. Throws not_nilpotent_orbit if the orbit does not
// reach 0 within side+1 steps.
std::size_t cyclic_length(const GfMatrix& t, const GfVector& v);

// --- subspace machinery -----------------------------------------------------
//
// Subspaces of GF(q)^dim are handled through their unique reduced
// row-echelon bases, which makes every basis choice deterministic.

struct EchelonBasis {
  std::vector<GfVector> basis;       // RREF rows, one per dimension
  std::vector<std::size_t> pivots;   // pivot coordinate of each basis vector
};

EchelonBasis reduced_span(const FieldPtr& field, const std::vector<GfVector>& span, std::size_t dim);
EchelonBasis kernel_basis(const GfMatrix& a);
EchelonBasis image_basis(const GfMatrix& a);

// Standard vectors e_i for the non-pivot coordinates, in increasing index
// order; together with the subspace they form a basis of the ambient space.
std::vector<GfVector> standard_complement(const EchelonBasis& sub, std::size_t dim);

// Coefficients of target in the given independent vectors, if target lies in
// their span.
std::optional<GfVector> coords_in(const FieldPtr& field, const std::vector<GfVector>& basis,
                                  const GfVector& target);

std::optional<GfMatrix> try_inverse(const GfMatrix& a);

// --- pairs of maps -----------------------------------------------------------

// Ordered pair f: V -> W, g: W -> V with dim V = m, dim W = n, both stored as
// matrices acting on coordinate columns from the left: f is n x m, g is m x n.
struct LinearPair {
  FieldPtr field;
  std::size_t m;
  std::size_t n;
  GfMatrix f;
  GfMatrix g;

  LinearPair(GfMatrix f_in, GfMatrix g_in);

  GfMatrix composite_on_v() const { return g * f; }  // gf, m x m
  GfMatrix composite_on_w() const { return f * g; }  // fg, n x n
  LinearPair swapped() const { return LinearPair(g, f); }
};

// d[i] = dim ker(f (gf)^i)       (the sequence d_1, d_2, ... )
// d_prime[i] = dim ker((gf)^i)   (the sequence d'_0 = 0, d'_1, ... )
// Interleaving d'_{i-1} <= d_i <= d'_i holds; both stop at the first index
// where d' reaches m. Requires a nilpotent pair.
struct KernelProfile {
  std::vector<std::size_t> d;
  std::vector<std::size_t> d_prime;
};

KernelProfile kernel_profile(const LinearPair& pair);

// Fitting-style decomposition for a pair: V = V_I + V_N and W = W_I + W_N
// with gf invertible on V_I and nilpotent on V_N (resp. fg on W_I, W_N), and
// f, g block-diagonal with respect to the decomposition. The subspaces are
// canonical; the bases are their reduced row-echelon bases.
struct FittingData {
  std::vector<GfVector> basis_v_inv;
  std::vector<GfVector> basis_v_nil;
  std::vector<GfVector> basis_w_inv;
  std::vector<GfVector> basis_w_nil;
  GfMatrix s1;  // f|V_I : V_I -> W_I, invertible
  GfMatrix n1;  // f|V_N : V_N -> W_N
  GfMatrix s2;  // g|W_I : W_I -> V_I, invertible
  GfMatrix n2;  // g|W_N : W_N -> V_N, composes with n1 to nilpotent maps
};

FittingData fitting_decompose(const LinearPair& pair);

}  // namespace nilcount
