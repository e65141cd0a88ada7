#include "nilcount/nilpotent_pairs.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "nilcount/parallel.hpp"

namespace nilcount {

namespace {

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t limit) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (result > limit / base) return std::nullopt;
    result *= base;
  }
  return result;
}

std::uint64_t require_space(std::uint64_t q, std::uint64_t exp, std::uint64_t cap, const char* what) {
  const auto space = checked_pow(q, exp, cap);
  if (!space)
    fail(errc::too_large, std::string(what) + " space q^" + std::to_string(exp) + " exceeds the cap " +
                              std::to_string(cap));
  return *space;
}

GfVector linear_combination(const Field& f, const std::vector<GfVector>& vectors, const GfVector& coeffs,
                            std::size_t dim) {
  GfVector out(dim, 0);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (coeffs[i] == 0) continue;
    for (std::size_t r = 0; r < dim; ++r) out[r] = f.add(out[r], f.mul(coeffs[i], vectors[i][r]));
  }
  return out;
}

std::vector<GfVector> cyclic_basis(const GfMatrix& op, const GfVector& start, std::size_t length) {
  std::vector<GfVector> basis;
  basis.reserve(length);
  GfVector u = start;
  for (std::size_t i = 0; i < length; ++i) {
    basis.push_back(u);
    if (i + 1 < length) u = mat_apply(op, u);
  }
  return basis;
}

}  // namespace

bool is_nilpotent_pair(const LinearPair& pair) { return is_nilpotent(pair.composite_on_v()); }

BalancedClass classify_vector(const LinearPair& pair, const GfVector& v) {
  const GfMatrix gf = pair.composite_on_v();
  if (!is_nilpotent(gf)) fail(errc::not_nilpotent_pair, "classification needs a nilpotent pair");
  BalancedClass out;
  out.vector = v;
  out.a = cyclic_length(gf, v);
  if (out.a == 0) {
    out.ell = 0;
    out.tag = BalanceTag::balanced;
    return out;
  }
  out.ell = cyclic_length(pair.composite_on_w(), mat_apply(pair.f, v));
  if (out.ell == out.a)
    out.tag = BalanceTag::balanced;
  else if (out.ell + 1 == out.a)
    out.tag = BalanceTag::unbalanced;
  else
    throw std::logic_error("cyclic-length gap other than 0 or 1 for a nilpotent pair");
  return out;
}

BigCount count_balanced_direct(const LinearPair& pair) {
  const GfMatrix gf = pair.composite_on_v();
  if (!is_nilpotent(gf)) fail(errc::not_nilpotent_pair, "balanced count needs a nilpotent pair");
  const GfMatrix fg = pair.composite_on_w();
  BigCount count = 0;
  for_each_vector(pair.field, static_cast<unsigned>(pair.m), [&](const GfVector& v) {
    const std::size_t a = cyclic_length(gf, v);
    if (a == 0 || cyclic_length(fg, mat_apply(pair.f, v)) == a) ++count;
  });
  return count;
}

BigCount balanced_count_kernel_formula(const LinearPair& pair) {
  const KernelProfile profile = kernel_profile(pair);
  const std::uint64_t q = pair.field->q();
  BigCount total = 0;
  for (std::size_t dp : profile.d_prime) total += big_pow(q, dp);
  for (std::size_t d : profile.d) total -= big_pow(q, d);
  return total;
}

BigCount pair_space(std::uint64_t q, unsigned m, unsigned n) {
  return big_pow(q, 2ull * m * n);
}

std::uint64_t linear_pair_index(const LinearPair& pair) {
  const std::uint64_t q = pair.field->q();
  std::uint64_t index = 0;
  for (std::size_t r = 0; r < pair.f.rows(); ++r)
    for (std::size_t c = 0; c < pair.f.cols(); ++c) index = index * q + pair.f(r, c);
  for (std::size_t r = 0; r < pair.g.rows(); ++r)
    for (std::size_t c = 0; c < pair.g.cols(); ++c) index = index * q + pair.g(r, c);
  return index;
}

LinearPair linear_pair_at(const FieldPtr& field, unsigned m, unsigned n, std::uint64_t index) {
  const std::uint64_t q = field->q();
  const std::size_t digits = 2ull * m * n;
  GfMatrix f(field, n, m);
  GfMatrix g(field, m, n);
  for (std::size_t t = digits; t-- > 0;) {
    const GfElem digit = static_cast<GfElem>(index % q);
    index /= q;
    if (t < static_cast<std::size_t>(n) * m)
      f.set(t / m, t % m, digit);
    else {
      const std::size_t s = t - static_cast<std::size_t>(n) * m;
      g.set(s / n, s % n, digit);
    }
  }
  return LinearPair(std::move(f), std::move(g));
}

void for_each_linear_pair(const FieldPtr& field, unsigned m, unsigned n,
                          const std::function<void(const LinearPair&)>& fn) {
  const std::uint64_t space =
      require_space(field->q(), 2ull * m * n, std::numeric_limits<std::uint64_t>::max() / 2, "pair");
  for (std::uint64_t i = 0; i < space; ++i) fn(linear_pair_at(field, m, n, i));
}

GfVector vector_at(const FieldPtr& field, unsigned dim, std::uint64_t index) {
  const std::uint64_t q = field->q();
  GfVector v(dim, 0);
  for (std::size_t i = dim; i-- > 0;) {
    v[i] = static_cast<GfElem>(index % q);
    index /= q;
  }
  return v;
}

void for_each_vector(const FieldPtr& field, unsigned dim, const std::function<void(const GfVector&)>& fn) {
  const std::uint64_t space =
      require_space(field->q(), dim, std::numeric_limits<std::uint64_t>::max() / 2, "vector");
  for (std::uint64_t i = 0; i < space; ++i) fn(vector_at(field, dim, i));
}

BigCount enumerate_nilpotent_pairs(std::uint64_t q, unsigned m, unsigned n, unsigned workers,
                                   std::uint64_t cap) {
  const std::uint64_t space = require_space(q, 2ull * m * n, cap, "pair");
  const FieldPtr field = make_field(static_cast<std::uint32_t>(q));

  auto scan_chunk = [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t count = 0;
    for (std::uint64_t i = lo; i < hi; ++i)
      if (is_nilpotent_pair(linear_pair_at(field, m, n, i))) ++count;
    return count;
  };
  const std::uint64_t total = parallel_reduce(0, space, workers, std::uint64_t{0}, scan_chunk,
                                              [](std::uint64_t a, std::uint64_t b) { return a + b; });
  return BigCount(total);
}

BigCount enumerate_balanced_triples(std::uint64_t q, unsigned m, unsigned n, std::optional<unsigned> ell,
                                    unsigned workers, std::uint64_t cap) {
  const std::uint64_t space = require_space(q, 2ull * m * n + m, cap, "triple") /
                              (checked_pow(q, m, cap).value());
  const FieldPtr field = make_field(static_cast<std::uint32_t>(q));
  const std::uint64_t vectors = checked_pow(q, m, cap).value();

  auto scan_chunk = [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t count = 0;
    for (std::uint64_t i = lo; i < hi; ++i) {
      const LinearPair pair = linear_pair_at(field, m, n, i);
      const GfMatrix gf = pair.composite_on_v();
      if (!is_nilpotent(gf)) continue;
      const GfMatrix fg = pair.composite_on_w();
      for (std::uint64_t vi = 0; vi < vectors; ++vi) {
        const GfVector v = vector_at(field, m, vi);
        const std::size_t a = cyclic_length(gf, v);
        const bool balanced = a == 0 || cyclic_length(fg, mat_apply(pair.f, v)) == a;
        if (balanced && (!ell || a == *ell)) ++count;
      }
    }
    return count;
  };
  const std::uint64_t total = parallel_reduce(0, space, workers, std::uint64_t{0}, scan_chunk,
                                              [](std::uint64_t a, std::uint64_t b) { return a + b; });
  return BigCount(total);
}

LinearPair theta(const NilpotentTriple& t) {
  const LinearPair& pair = t.pair;
  const FieldPtr& field = pair.field;
  const Field& fq = *field;
  const std::size_t m = pair.m;
  const std::size_t n = pair.n;
  if (t.v.size() != m) fail(errc::invalid_triple, "vector dimension does not match the pair");

  const GfMatrix gf = pair.composite_on_v();
  if (!is_nilpotent(gf)) fail(errc::invalid_triple, "pair is not nilpotent");
  const std::size_t length = cyclic_length(gf, t.v);
  if (length == 0) return pair;  // empty invertible part, theta degenerates to the identity

  const GfMatrix fg = pair.composite_on_w();
  const GfVector fv = mat_apply(pair.f, t.v);
  if (cyclic_length(fg, fv) != length) fail(errc::invalid_triple, "vector is not balanced");

  // cyclic bases of the two invariant subspaces and their echelon data
  const std::vector<GfVector> bv = cyclic_basis(gf, t.v, length);
  const std::vector<GfVector> bw = cyclic_basis(fg, fv, length);
  const EchelonBasis ex = reduced_span(field, bv, m);
  const EchelonBasis ey = reduced_span(field, bw, n);
  const std::vector<GfVector> xs = standard_complement(ex, m);
  const std::vector<GfVector> ys = standard_complement(ey, n);

  // expansion bases of the ambient spaces
  std::vector<GfVector> v_frame = bv;
  v_frame.insert(v_frame.end(), xs.begin(), xs.end());
  std::vector<GfVector> w_frame = bw;
  w_frame.insert(w_frame.end(), ys.begin(), ys.end());

  // off-diagonal blocks and the residual pair, read off columnwise
  const std::size_t mc = xs.size();  // m - length
  const std::size_t nc = ys.size();  // n - length
  std::vector<GfVector> a_block(mc), n1_block(mc);  // per column of f on xs
  for (std::size_t j = 0; j < mc; ++j) {
    const auto coords = coords_in(field, w_frame, mat_apply(pair.f, xs[j]));
    if (!coords) throw std::logic_error("frame does not span the ambient space");
    a_block[j] = GfVector(coords->begin(), coords->begin() + static_cast<std::ptrdiff_t>(length));
    n1_block[j] = GfVector(coords->begin() + static_cast<std::ptrdiff_t>(length), coords->end());
  }
  std::vector<GfVector> b_block(nc), n2_block(nc);  // per column of g on ys
  for (std::size_t k = 0; k < nc; ++k) {
    const auto coords = coords_in(field, v_frame, mat_apply(pair.g, ys[k]));
    if (!coords) throw std::logic_error("frame does not span the ambient space");
    b_block[k] = GfVector(coords->begin(), coords->begin() + static_cast<std::ptrdiff_t>(length));
    n2_block[k] = GfVector(coords->begin() + static_cast<std::ptrdiff_t>(length), coords->end());
  }

  // graph-complement bases encoded by the off-diagonal blocks
  std::vector<GfVector> w_shift(mc), z_shift(nc);
  for (std::size_t j = 0; j < mc; ++j) {
    GfVector shift = linear_combination(fq, ex.basis, a_block[j], m);
    w_shift[j] = xs[j];
    for (std::size_t r = 0; r < m; ++r) w_shift[j][r] = fq.add(w_shift[j][r], shift[r]);
  }
  for (std::size_t k = 0; k < nc; ++k) {
    GfVector shift = linear_combination(fq, ey.basis, b_block[k], n);
    z_shift[k] = ys[k];
    for (std::size_t r = 0; r < n; ++r) z_shift[k][r] = fq.add(z_shift[k][r], shift[r]);
  }

  // assemble the block-diagonal output on the new frames
  std::vector<GfVector> pv_cols = bv;
  pv_cols.insert(pv_cols.end(), w_shift.begin(), w_shift.end());
  std::vector<GfVector> pw_cols = bw;
  pw_cols.insert(pw_cols.end(), z_shift.begin(), z_shift.end());

  std::vector<GfVector> qv_cols;  // images under f'
  for (std::size_t i = 0; i < length; ++i) qv_cols.push_back(ey.basis[i]);
  for (std::size_t j = 0; j < mc; ++j) {
    GfVector img(n, 0);
    for (std::size_t k = 0; k < nc; ++k) {
      if (n1_block[j][k] == 0) continue;
      for (std::size_t r = 0; r < n; ++r) img[r] = fq.add(img[r], fq.mul(n1_block[j][k], z_shift[k][r]));
    }
    qv_cols.push_back(std::move(img));
  }
  std::vector<GfVector> qw_cols;  // images under g'
  for (std::size_t i = 0; i < length; ++i) qw_cols.push_back(ex.basis[i]);
  for (std::size_t k = 0; k < nc; ++k) {
    GfVector img(m, 0);
    for (std::size_t j = 0; j < mc; ++j) {
      if (n2_block[k][j] == 0) continue;
      for (std::size_t r = 0; r < m; ++r) img[r] = fq.add(img[r], fq.mul(n2_block[k][j], w_shift[j][r]));
    }
    qw_cols.push_back(std::move(img));
  }

  const auto pv_inv = try_inverse(GfMatrix::from_columns(field, m, pv_cols));
  const auto pw_inv = try_inverse(GfMatrix::from_columns(field, n, pw_cols));
  if (!pv_inv || !pw_inv) throw std::logic_error("assembled frames must be invertible");

  GfMatrix f_out = GfMatrix::from_columns(field, n, qv_cols) * *pv_inv;
  GfMatrix g_out = GfMatrix::from_columns(field, m, qw_cols) * *pw_inv;
  return LinearPair(std::move(f_out), std::move(g_out));
}

BigCount count_rank_maps(std::uint64_t q, unsigned m, unsigned n, unsigned r, unsigned workers,
                         std::uint64_t cap) {
  if (r > std::min(m, n)) fail(errc::out_of_range, "rank exceeds min(m, n)");
  const std::uint64_t space = require_space(q, static_cast<std::uint64_t>(m) * n, cap, "matrix");
  const FieldPtr field = make_field(static_cast<std::uint32_t>(q));

  auto scan_chunk = [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t count = 0;
    GfMatrix a(field, n, m);
    for (std::uint64_t i = lo; i < hi; ++i) {
      std::uint64_t rest = i;
      for (std::size_t t = static_cast<std::size_t>(n) * m; t-- > 0;) {
        a.set(t / m, t % m, static_cast<GfElem>(rest % q));
        rest /= q;
      }
      if (rank(a) == r) ++count;
    }
    return count;
  };
  const std::uint64_t total = parallel_reduce(0, space, workers, std::uint64_t{0}, scan_chunk,
                                              [](std::uint64_t a, std::uint64_t b) { return a + b; });
  return BigCount(total);
}

ThetaAudit audit_theta(std::uint64_t q, unsigned m, unsigned n, std::uint64_t cap) {
  const std::uint64_t space = require_space(q, 2ull * m * n + m, cap, "triple") /
                              checked_pow(q, m, cap).value();
  const std::uint64_t vectors = checked_pow(q, m, cap).value();
  const FieldPtr field = make_field(static_cast<std::uint32_t>(q));

  ThetaAudit audit;
  std::vector<bool> seen(space, false);
  bool injective = true;
  std::uint64_t triples = 0;
  std::uint64_t image = 0;
  for (std::uint64_t i = 0; i < space; ++i) {
    const LinearPair pair = linear_pair_at(field, m, n, i);
    const GfMatrix gf = pair.composite_on_v();
    if (!is_nilpotent(gf)) continue;
    const GfMatrix fg = pair.composite_on_w();
    for (std::uint64_t vi = 0; vi < vectors; ++vi) {
      const GfVector v = vector_at(field, m, vi);
      const std::size_t a = cyclic_length(gf, v);
      if (a != 0 && cyclic_length(fg, mat_apply(pair.f, v)) != a) continue;
      ++triples;
      const std::uint64_t out = linear_pair_index(theta(NilpotentTriple{pair, v}));
      if (seen[out])
        injective = false;
      else {
        seen[out] = true;
        ++image;
      }
    }
  }
  audit.triples = triples;
  audit.image_size = image;
  audit.injective = injective;
  audit.covers_hom_space = BigCount(image) == pair_space(q, m, n);
  return audit;
}

}  // namespace nilcount
