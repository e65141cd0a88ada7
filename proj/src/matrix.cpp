#include "nilcount/matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nilcount {

GfMatrix::GfMatrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

GfMatrix GfMatrix::identity(FieldPtr field, std::size_t n) {
  GfMatrix a(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) a.set(i, i, 1);
  return a;
}

GfMatrix GfMatrix::from_rows(FieldPtr field, const std::vector<std::vector<std::uint32_t>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  GfMatrix a(field, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) fail(errc::shape_mismatch, "ragged row list in matrix literal");
    for (std::size_t j = 0; j < c; ++j) {
      if (rows[i][j] >= field->q())
        fail(errc::out_of_range, "entry " + std::to_string(rows[i][j]) + " not in GF(" + std::to_string(field->q()) + ")");
      a.set(i, j, static_cast<GfElem>(rows[i][j]));
    }
  }
  return a;
}

GfMatrix GfMatrix::from_columns(FieldPtr field, std::size_t dim, const std::vector<GfVector>& columns) {
  GfMatrix a(field, dim, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != dim) fail(errc::shape_mismatch, "column length mismatch");
    for (std::size_t i = 0; i < dim; ++i) a.set(i, j, columns[j][i]);
  }
  return a;
}

bool GfMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](GfElem e) { return e == 0; });
}

GfVector GfMatrix::column(std::size_t c) const {
  GfVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

bool operator==(const GfMatrix& a, const GfMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_->q() == b.field_->q() &&
         a.entries_ == b.entries_;
}

GfMatrix operator*(const GfMatrix& a, const GfMatrix& b) {
  if (a.cols() != b.rows())
    fail(errc::shape_mismatch, "cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                   " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  if (!a.field()->compatible(*b.field())) fail(errc::shape_mismatch, "operands live in different fields");
  const Field& f = *a.field();
  GfMatrix c(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const GfElem aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c.set(i, j, f.add(c(i, j), f.mul(aik, b(k, j))));
    }
  return c;
}

GfVector mat_apply(const GfMatrix& a, const GfVector& v) {
  if (a.cols() != v.size()) fail(errc::shape_mismatch, "matrix-vector size mismatch");
  const Field& f = *a.field();
  GfVector out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    GfElem acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc = f.add(acc, f.mul(a(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

GfMatrix mat_pow(const GfMatrix& a, std::uint64_t e) {
  if (!a.is_square()) fail(errc::not_square, "power of a non-square matrix");
  GfMatrix result = GfMatrix::identity(a.field(), a.rows());
  GfMatrix base = a;
  while (e > 0) {
    if (e & 1) result = result * base;
    if (e >>= 1) base = base * base;
  }
  return result;
}

namespace {

// In-place reduced row echelon form; returns pivot columns in order.
std::vector<std::size_t> rref_in_place(const Field& f, std::vector<GfVector>& rows, std::size_t width) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < width && lead < rows.size(); ++col) {
    std::size_t sel = lead;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[lead]);
    const GfElem piv_inv = f.inv(rows[lead][col]);
    for (std::size_t j = col; j < width; ++j) rows[lead][j] = f.mul(rows[lead][j], piv_inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead || rows[r][col] == 0) continue;
      const GfElem factor = rows[r][col];
      for (std::size_t j = col; j < width; ++j)
        rows[r][j] = f.sub(rows[r][j], f.mul(factor, rows[lead][j]));
    }
    pivots.push_back(col);
    ++lead;
  }
  rows.resize(pivots.size());
  return pivots;
}

}  // namespace

std::size_t rank(const GfMatrix& a) {
  std::vector<GfVector> rows(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    rows[i].resize(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) rows[i][j] = a(i, j);
  }
  return rref_in_place(*a.field(), rows, a.cols()).size();
}

bool is_nilpotent(const GfMatrix& a) {
  if (!a.is_square()) fail(errc::not_square, "nilpotency is defined for square matrices");
  const std::size_t s = a.rows();
  if (s == 0) return true;
  GfMatrix power = a;
  std::size_t e = 1;
  while (e < s) {
    power = power * power;
    e *= 2;
  }
  return power.is_zero();
}

std::size_t cyclic_length(const GfMatrix& t, const GfVector& v) {
  if (!t.is_square()) fail(errc::not_square, "cyclic length needs a square operator");
  if (t.cols() != v.size()) fail(errc::shape_mismatch, "vector dimension mismatch");
  const std::size_t s = t.rows();
  GfVector u = v;
  std::size_t a = 0;
  while (std::any_of(u.begin(), u.end(), [](GfElem e) { return e != 0; })) {
    if (a > s) fail(errc::not_nilpotent_orbit, "orbit does not reach 0; operator not nilpotent on it");
    u = mat_apply(t, u);
    ++a;
  }
  return a;
}

EchelonBasis reduced_span(const FieldPtr& field, const std::vector<GfVector>& span, std::size_t dim) {
  std::vector<GfVector> rows = span;
  for (const auto& v : rows)
    if (v.size() != dim) fail(errc::shape_mismatch, "spanning vector dimension mismatch");
  EchelonBasis out;
  out.pivots = rref_in_place(*field, rows, dim);
  out.basis = std::move(rows);
  return out;
}

EchelonBasis kernel_basis(const GfMatrix& a) {
  const Field& f = *a.field();
  std::vector<GfVector> rows(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    rows[i].resize(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) rows[i][j] = a(i, j);
  }
  const std::vector<std::size_t> pivots = rref_in_place(f, rows, a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t p : pivots) is_pivot[p] = true;

  std::vector<GfVector> null_vectors;
  for (std::size_t free_col = 0; free_col < a.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    GfVector v(a.cols(), 0);
    v[free_col] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(rows[r][free_col]);
    null_vectors.push_back(std::move(v));
  }
  return reduced_span(a.field(), null_vectors, a.cols());
}

EchelonBasis image_basis(const GfMatrix& a) {
  std::vector<GfVector> cols(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) cols[j] = a.column(j);
  return reduced_span(a.field(), cols, a.rows());
}

std::vector<GfVector> standard_complement(const EchelonBasis& sub, std::size_t dim) {
  std::vector<bool> is_pivot(dim, false);
  for (std::size_t p : sub.pivots) is_pivot[p] = true;
  std::vector<GfVector> out;
  for (std::size_t i = 0; i < dim; ++i) {
    if (is_pivot[i]) continue;
    GfVector e(dim, 0);
    e[i] = 1;
    out.push_back(std::move(e));
  }
  return out;
}

std::optional<GfVector> coords_in(const FieldPtr& field, const std::vector<GfVector>& basis,
                                  const GfVector& target) {
  const std::size_t dim = target.size();
  const std::size_t k = basis.size();
  // augmented system [basis columns | target], solved by elimination
  std::vector<GfVector> rows(dim, GfVector(k + 1, 0));
  for (std::size_t j = 0; j < k; ++j) {
    if (basis[j].size() != dim) fail(errc::shape_mismatch, "basis vector dimension mismatch");
    for (std::size_t i = 0; i < dim; ++i) rows[i][j] = basis[j][i];
  }
  for (std::size_t i = 0; i < dim; ++i) rows[i][k] = target[i];

  const Field& f = *field;
  const std::vector<std::size_t> pivots = rref_in_place(f, rows, k + 1);
  GfVector coeffs(k, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == k) return std::nullopt;  // inconsistent
    coeffs[pivots[r]] = rows[r][k];
  }
  // basis vectors are independent in every call site, so all k columns are pivots
  return coeffs;
}

std::optional<GfMatrix> try_inverse(const GfMatrix& a) {
  if (!a.is_square()) fail(errc::not_square, "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  const Field& f = *a.field();
  std::vector<GfVector> rows(n, GfVector(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = a(i, j);
    rows[i][n + i] = 1;
  }
  const std::vector<std::size_t> pivots = rref_in_place(f, rows, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    if (i >= pivots.size() || pivots[i] != i) return std::nullopt;
  GfMatrix inv(a.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.set(i, j, rows[i][n + j]);
  return inv;
}

LinearPair::LinearPair(GfMatrix f_in, GfMatrix g_in)
    : field(f_in.field()), m(f_in.cols()), n(f_in.rows()), f(std::move(f_in)), g(std::move(g_in)) {
  if (g.rows() != m || g.cols() != n)
    fail(errc::shape_mismatch, "pair shapes must be f: n x m and g: m x n");
  if (!field->compatible(*g.field())) fail(errc::shape_mismatch, "pair maps live in different fields");
}

KernelProfile kernel_profile(const LinearPair& pair) {
  const GfMatrix gf = pair.composite_on_v();
  if (!is_nilpotent(gf)) fail(errc::not_nilpotent_pair, "kernel profile needs gf nilpotent");
  const std::size_t m = pair.m;

  KernelProfile profile;
  profile.d_prime.push_back(0);
  GfMatrix power = GfMatrix::identity(pair.field, m);  // (gf)^i as i grows
  while (profile.d_prime.back() < m) {
    profile.d.push_back(m - rank(pair.f * power));
    power = gf * power;
    profile.d_prime.push_back(m - rank(power));
  }
  return profile;
}

namespace {

// Matrix of the restriction of `map` to span(domain_basis), expressed in
// image_basis coordinates. The restriction must land in that span.
GfMatrix restriction_block(const GfMatrix& map, const std::vector<GfVector>& domain_basis,
                           const std::vector<GfVector>& image_space_basis) {
  GfMatrix block(map.field(), image_space_basis.size(), domain_basis.size());
  for (std::size_t j = 0; j < domain_basis.size(); ++j) {
    const auto coeffs = coords_in(map.field(), image_space_basis, mat_apply(map, domain_basis[j]));
    if (!coeffs) throw std::logic_error("restriction does not preserve the block decomposition");
    for (std::size_t i = 0; i < image_space_basis.size(); ++i) block.set(i, j, (*coeffs)[i]);
  }
  return block;
}

}  // namespace

FittingData fitting_decompose(const LinearPair& pair) {
  // The chains im((gf)^i) and ker((gf)^i) stabilize by exponent m, so a
  // single power suffices.
  const GfMatrix pv = mat_pow(pair.composite_on_v(), pair.m);
  const GfMatrix pw = mat_pow(pair.composite_on_w(), pair.n);

  FittingData data{
      image_basis(pv).basis, kernel_basis(pv).basis,
      image_basis(pw).basis, kernel_basis(pw).basis,
      GfMatrix(pair.field, 0, 0), GfMatrix(pair.field, 0, 0),
      GfMatrix(pair.field, 0, 0), GfMatrix(pair.field, 0, 0)};

  data.s1 = restriction_block(pair.f, data.basis_v_inv, data.basis_w_inv);
  data.n1 = restriction_block(pair.f, data.basis_v_nil, data.basis_w_nil);
  data.s2 = restriction_block(pair.g, data.basis_w_inv, data.basis_v_inv);
  data.n2 = restriction_block(pair.g, data.basis_w_nil, data.basis_v_nil);
  return data;
}

}  // namespace nilcount
