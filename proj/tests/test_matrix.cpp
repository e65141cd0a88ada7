#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nilcount/matrix.hpp"
#include "nilcount/nilpotent_pairs.hpp"

using namespace nilcount;

namespace {

// Jordan block with 1s immediately below the diagonal.
GfMatrix jordan(const FieldPtr& f, std::size_t s) {
  GfMatrix j(f, s, s);
  for (std::size_t i = 0; i + 1 < s; ++i) j.set(i + 1, i, 1);
  return j;
}

// Independent kernel-dimension oracle: scan all q^cols vectors.
std::size_t brute_kernel_dim(const GfMatrix& a) {
  std::uint64_t space = 1;
  for (std::size_t i = 0; i < a.cols(); ++i) space *= a.field()->q();
  std::uint64_t solutions = 0;
  for (std::uint64_t idx = 0; idx < space; ++idx) {
    const GfVector v = vector_at(a.field(), static_cast<unsigned>(a.cols()), idx);
    const GfVector image = mat_apply(a, v);
    bool zero = true;
    for (GfElem e : image) zero = zero && e == 0;
    if (zero) ++solutions;
  }
  std::size_t dim = 0;
  while (solutions > 1) {
    solutions /= a.field()->q();
    ++dim;
  }
  return dim;
}

}  // namespace

TEST_CASE("products") {
  const auto f2 = make_field(2);
  const auto f3 = make_field(3);

  const GfMatrix a = GfMatrix::from_rows(f3, {{1, 2, 0}, {0, 1, 1}, {2, 0, 1}});
  CHECK(GfMatrix::identity(f3, 3) * a == a);

  const GfMatrix j2 = jordan(f3, 2);
  CHECK((j2 * j2).is_zero());

  const GfMatrix x = GfMatrix::from_rows(f2, {{1, 1}, {0, 1}});
  const GfMatrix y = GfMatrix::from_rows(f2, {{1, 0}, {1, 1}});
  CHECK(x * y == GfMatrix::from_rows(f2, {{0, 1}, {1, 1}}));

  CHECK_THROWS_WITH_AS(a * j2, doctest::Contains("ShapeMismatch"), Error);

  // squared subdiagonal blocks vanish over every field
  for (std::uint32_t q : {3u, 4u, 5u, 9u}) {
    const GfMatrix j = jordan(make_field(q), 2);
    CHECK((j * j).is_zero());
  }
}

TEST_CASE("literal validation") {
  const auto f2 = make_field(2);
  CHECK_THROWS_WITH_AS(GfMatrix::from_rows(f2, {{1, 0}, {1}}), doctest::Contains("ShapeMismatch"), Error);
  CHECK_THROWS_WITH_AS(GfMatrix::from_rows(f2, {{2}}), doctest::Contains("OutOfRange"), Error);
  // pair shapes must be f: n x m against g: m x n
  CHECK_THROWS_WITH_AS(LinearPair(GfMatrix(f2, 2, 3), GfMatrix(f2, 2, 3)),
                       doctest::Contains("ShapeMismatch"), Error);
}

TEST_CASE("rank") {
  const auto f2 = make_field(2);
  CHECK(rank(GfMatrix(f2, 3, 4)) == 0);
  CHECK(rank(GfMatrix::identity(f2, 4)) == 4);
  CHECK(rank(GfMatrix::from_rows(f2, {{1, 1}, {1, 1}})) == 1);
}

TEST_CASE("nilpotency spot checks") {
  const auto f2 = make_field(2);
  CHECK(is_nilpotent(GfMatrix(f2, 3, 3)));
  CHECK_FALSE(is_nilpotent(GfMatrix::identity(f2, 1)));
  CHECK(is_nilpotent(jordan(f2, 3)));
  CHECK_THROWS_WITH_AS(is_nilpotent(GfMatrix(f2, 2, 3)), doctest::Contains("NotSquare"), Error);
}

TEST_CASE("nilpotency agrees with explicit powering") {
  auto powered_to_zero = [](const GfMatrix& a) {
    GfMatrix power = a;
    bool zero = power.is_zero();
    for (std::size_t k = 2; k <= a.rows() && !zero; ++k) {
      power = power * a;
      zero = power.is_zero();
    }
    return zero;
  };

  for (std::uint32_t q : {2u, 3u}) {
    const auto f = make_field(q);
    for (std::size_t s = 1; s <= 3; ++s) {
      std::uint64_t space = 1;
      for (std::size_t i = 0; i < s * s; ++i) space *= q;
      for (std::uint64_t idx = 0; idx < space; ++idx) {
        GfMatrix a(f, s, s);
        std::uint64_t rest = idx;
        for (std::size_t t = 0; t < s * s; ++t) {
          a.set(t / s, t % s, static_cast<GfElem>(rest % q));
          rest /= q;
        }
        CHECK(is_nilpotent(a) == powered_to_zero(a));
      }
    }
    // size 4, sampled
    std::mt19937 rng(1234);
    std::uniform_int_distribution<std::uint32_t> dist(0, q - 1);
    for (int trial = 0; trial < 2000; ++trial) {
      GfMatrix a(f, 4, 4);
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) a.set(r, c, static_cast<GfElem>(dist(rng)));
      CHECK(is_nilpotent(a) == powered_to_zero(a));
    }
  }
}

TEST_CASE("cyclic length") {
  const auto f2 = make_field(2);
  const GfMatrix j3 = jordan(f2, 3);
  CHECK(cyclic_length(j3, {0, 0, 0}) == 0);
  CHECK(cyclic_length(j3, {1, 0, 0}) == 3);
  CHECK(cyclic_length(j3, {0, 0, 1}) == 1);
  CHECK_THROWS_WITH_AS(cyclic_length(GfMatrix::identity(f2, 1), {1}),
                       doctest::Contains("NotNilpotentOrbit"), Error);
}

TEST_CASE("kernel profiles of pinned pairs") {
  const auto f2 = make_field(2);

  SUBCASE("zero pair has everything in the kernel") {
    const LinearPair pair(GfMatrix(f2, 2, 2), GfMatrix(f2, 2, 2));
    const KernelProfile profile = kernel_profile(pair);
    CHECK(profile.d == std::vector<std::size_t>{2});
    CHECK(profile.d_prime == std::vector<std::size_t>{0, 2});
  }

  SUBCASE("invertible f with zero g") {
    const LinearPair pair(GfMatrix::identity(f2, 1), GfMatrix(f2, 1, 1));
    const KernelProfile profile = kernel_profile(pair);
    CHECK(profile.d == std::vector<std::size_t>{0});
    CHECK(profile.d_prime == std::vector<std::size_t>{0, 1});
  }

  SUBCASE("f = (1 0), g = (0 1)^T") {
    const GfMatrix f = GfMatrix::from_rows(f2, {{1, 0}});
    const GfMatrix g = GfMatrix::from_rows(f2, {{0}, {1}});
    const LinearPair pair(f, g);

    // expected values from the brute-force kernel oracle
    CHECK(brute_kernel_dim(pair.f) == 1);
    const GfMatrix gf = pair.composite_on_v();
    CHECK(brute_kernel_dim(gf) == 1);
    CHECK(brute_kernel_dim(gf * gf) == 2);
    CHECK(brute_kernel_dim(pair.f * gf) == 2);

    const KernelProfile profile = kernel_profile(pair);
    CHECK(profile.d == std::vector<std::size_t>{1, 2});
    CHECK(profile.d_prime == std::vector<std::size_t>{0, 1, 2});
  }

  SUBCASE("non-nilpotent pair is rejected") {
    const LinearPair pair(GfMatrix::identity(f2, 2), GfMatrix::identity(f2, 2));
    CHECK_THROWS_WITH_AS(kernel_profile(pair), doctest::Contains("NotNilpotentPair"), Error);
  }
}

TEST_CASE("kernel profile interleaving over all nilpotent pairs, q = 2, m,n <= 3") {
  const auto f2 = make_field(2);
  for (unsigned m = 1; m <= 3; ++m)
    for (unsigned n = 1; n <= 3; ++n) {
      bool ok = true;
      for_each_linear_pair(f2, m, n, [&](const LinearPair& pair) {
        if (!is_nilpotent_pair(pair)) return;
        const KernelProfile profile = kernel_profile(pair);
        REQUIRE(profile.d.size() + 1 == profile.d_prime.size());
        for (std::size_t i = 0; i < profile.d.size(); ++i)
          ok = ok && profile.d_prime[i] <= profile.d[i] && profile.d[i] <= profile.d_prime[i + 1];
        ok = ok && profile.d_prime.back() == m;
      });
      CHECK(ok);
    }
}

TEST_CASE("fitting decomposition of pinned pairs") {
  const auto f2 = make_field(2);

  SUBCASE("identity pair is purely invertible") {
    const LinearPair pair(GfMatrix::identity(f2, 2), GfMatrix::identity(f2, 2));
    const FittingData fd = fitting_decompose(pair);
    CHECK(fd.basis_v_inv.size() == 2);
    CHECK(fd.basis_v_nil.empty());
    CHECK(fd.basis_w_inv.size() == 2);
    CHECK(fd.basis_w_nil.empty());
  }

  SUBCASE("zero pair is purely nilpotent") {
    const LinearPair pair(GfMatrix(f2, 2, 3), GfMatrix(f2, 3, 2));
    const FittingData fd = fitting_decompose(pair);
    CHECK(fd.basis_v_inv.empty());
    CHECK(fd.basis_v_nil.size() == 3);
    CHECK(fd.basis_w_inv.empty());
    CHECK(fd.basis_w_nil.size() == 2);
  }

  SUBCASE("diagonal idempotent pair splits one and one") {
    const GfMatrix d = GfMatrix::from_rows(f2, {{1, 0}, {0, 0}});
    const LinearPair pair(d, d);
    const FittingData fd = fitting_decompose(pair);
    CHECK(fd.basis_v_inv.size() == 1);
    CHECK(fd.basis_v_nil.size() == 1);
    CHECK(fd.basis_w_inv.size() == 1);
    CHECK(fd.basis_w_nil.size() == 1);
  }
}

TEST_CASE("fitting decomposition invariants over all pairs, q = 2, m,n <= 3") {
  const auto f2 = make_field(2);
  const Field& fq = *f2;
  for (unsigned m = 1; m <= 3; ++m)
    for (unsigned n = 1; n <= 3; ++n) {
      bool ok = true;
      for_each_linear_pair(f2, m, n, [&](const LinearPair& pair) {
        const FittingData fd = fitting_decompose(pair);
        ok = ok && fd.basis_v_inv.size() + fd.basis_v_nil.size() == m;
        ok = ok && fd.basis_w_inv.size() + fd.basis_w_nil.size() == n;

        // combined bases span the ambient spaces
        std::vector<GfVector> v_all = fd.basis_v_inv;
        v_all.insert(v_all.end(), fd.basis_v_nil.begin(), fd.basis_v_nil.end());
        ok = ok && reduced_span(f2, v_all, m).basis.size() == m;
        std::vector<GfVector> w_all = fd.basis_w_inv;
        w_all.insert(w_all.end(), fd.basis_w_nil.begin(), fd.basis_w_nil.end());
        ok = ok && reduced_span(f2, w_all, n).basis.size() == n;

        // gf acts invertibly on V_I and nilpotently on V_N; fg symmetrically
        ok = ok && rank(fd.s2 * fd.s1) == fd.basis_v_inv.size();
        ok = ok && rank(fd.s1 * fd.s2) == fd.basis_w_inv.size();
        ok = ok && is_nilpotent(fd.n2 * fd.n1);
        ok = ok && is_nilpotent(fd.n1 * fd.n2);

        // the blocks really are the restrictions: f maps V_I into W_I per s1
        for (std::size_t j = 0; j < fd.basis_v_inv.size(); ++j) {
          GfVector expect(n, 0);
          for (std::size_t i = 0; i < fd.basis_w_inv.size(); ++i)
            for (std::size_t r = 0; r < n; ++r)
              expect[r] = fq.add(expect[r], fq.mul(fd.s1(i, j), fd.basis_w_inv[i][r]));
          ok = ok && mat_apply(pair.f, fd.basis_v_inv[j]) == expect;
        }
        for (std::size_t j = 0; j < fd.basis_v_nil.size(); ++j) {
          GfVector expect(n, 0);
          for (std::size_t i = 0; i < fd.basis_w_nil.size(); ++i)
            for (std::size_t r = 0; r < n; ++r)
              expect[r] = fq.add(expect[r], fq.mul(fd.n1(i, j), fd.basis_w_nil[i][r]));
          ok = ok && mat_apply(pair.f, fd.basis_v_nil[j]) == expect;
        }
      });
      CHECK(ok);
    }
}

TEST_CASE("composites invertible exactly when both maps are isomorphisms") {
  for (std::uint32_t q : {2u, 3u}) {
    const auto f = make_field(q);
    for (unsigned m = 1; m <= 2; ++m)
      for (unsigned n = 1; n <= 2; ++n) {
        bool ok = true;
        for_each_linear_pair(f, m, n, [&](const LinearPair& pair) {
          const bool composites = rank(pair.composite_on_v()) == m && rank(pair.composite_on_w()) == n;
          const bool isos = m == n && rank(pair.f) == m && rank(pair.g) == m;
          ok = ok && composites == isos;
        });
        CHECK(ok);
      }
  }
}
