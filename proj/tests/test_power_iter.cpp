#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "tensorspec/direct_solve.hpp"
#include "tensorspec/errors.hpp"
#include "tensorspec/power_iter.hpp"
#include "tensorspec/rankone.hpp"

using namespace tensorspec;
using fixtures::diagonal;

namespace {

SymTensor all_ones(int m, int n) {
  SymTensor::Builder b(m, n);
  for_each_sorted_index(n, m, [&](std::span<const int> idx) { b.set(idx, 1.0); });
  return b.build();
}

SymTensor matrix2(double a, double b, double d) {
  SymTensor::Builder s(2, 2);
  s.set({0, 0}, a).set({0, 1}, b).set({1, 1}, d);
  return s.build();
}

}  // namespace

TEST(Collatz, Examples) {
  auto [lo, hi] = collatz_ratios(all_ones(3, 2), Vector::Ones(2));
  EXPECT_DOUBLE_EQ(lo, 4.0);
  EXPECT_DOUBLE_EQ(hi, 4.0);
  std::tie(lo, hi) = collatz_ratios(matrix2(2, 1, 2), Vector::Ones(2));
  EXPECT_DOUBLE_EQ(lo, 3.0);
  EXPECT_DOUBLE_EQ(hi, 3.0);
  Vector x(2);
  x << 1, 2;
  std::tie(lo, hi) = collatz_ratios(all_ones(3, 2), x);
  EXPECT_DOUBLE_EQ(lo, 2.25);
  EXPECT_DOUBLE_EQ(hi, 9.0);
}

TEST(Collatz, RejectsNonPositiveVector) {
  Vector x(2);
  x << 1, 0;
  EXPECT_THROW(collatz_ratios(all_ones(3, 2), x), ValidationError);
}

TEST(Nqz, Examples) {
  const auto ones = nqz(all_ones(3, 2));
  EXPECT_TRUE(ones.converged);
  EXPECT_NEAR(ones.rho, 4.0, 1e-10);
  EXPECT_EQ(ones.iterates.size(), 1u);

  const auto mat = nqz(matrix2(2, 1, 2));
  EXPECT_TRUE(mat.converged);
  EXPECT_NEAR(mat.rho, 3.0, 1e-10);

  const auto stuck = nqz(diagonal(4, {1.0, 2.0}));
  EXPECT_FALSE(stuck.converged);
  EXPECT_EQ(stuck.stop_reason, "stagnated");
  EXPECT_DOUBLE_EQ(stuck.lower(), 1.0);
  EXPECT_DOUBLE_EQ(stuck.upper(), 2.0);
}

TEST(Nqz, RejectsNegativeEntries) {
  EXPECT_THROW(nqz(matrix2(1, -1, 1)), ValidationError);
}

TEST(Nqz, BracketMonotoneAndGeometric) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 3 + trial % 2;
    const int n = 2 + trial % 5;
    const auto a = fixtures::random_positive_sym(m, n, rng);
    const auto t = nqz(a);
    ASSERT_TRUE(t.converged);
    for (std::size_t k = 0; k < t.iterates.size(); ++k) {
      const auto& it = t.iterates[k];
      EXPECT_LE(it.lower, it.upper);
      EXPECT_LE(it.min_ratio, it.max_ratio);
      EXPECT_GT(it.x.minCoeff(), 0.0);
      if (k > 0) {
        EXPECT_GE(it.lower, t.iterates[k - 1].lower);
        EXPECT_LE(it.upper, t.iterates[k - 1].upper);
      }
    }
    for (std::size_t k = 0; k + 10 < t.iterates.size(); ++k) {
      const double w0 = t.iterates[k].upper - t.iterates[k].lower;
      const double w1 = t.iterates[k + 10].upper - t.iterates[k + 10].lower;
      if (w0 > 1e-13 * t.rho) EXPECT_LT(w1, w0);
    }
  }
}

TEST(Nqz, MatchesLargestHRoot) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 3 + trial % 3;
    const auto a = fixtures::random_positive_sym(m, 2, rng);
    double largest = -INFINITY;
    for (const auto& p : h_spectrum_2d(a)) {
      if (p.lambda.imag() == 0.0) largest = std::max(largest, p.lambda.real());
    }
    EXPECT_NEAR(nqz(a).rho, largest, 1e-8 * std::max(1.0, largest));
  }
}

TEST(Nqz, ScaleEquivariance) {
  std::mt19937_64 rng(23);
  const auto a = fixtures::random_positive_sym(3, 4, rng);
  const double r = nqz(a).rho;
  EXPECT_NEAR(nqz(scaled(a, 7.5)).rho, 7.5 * r, 1e-10 * 7.5 * r);
}

TEST(Nqz, GeneralTensor) {
  GenTensor::Builder b(3, 2);
  for_each_index(2, 3, [&](std::span<const int> idx) { b.set(idx, 1.0); });
  const auto t = nqz(b.build());
  EXPECT_TRUE(t.converged);
  EXPECT_NEAR(t.rho, 4.0, 1e-10);
}

TEST(Nqz, ZeroComponentsGiveBoundEstimate) {
  // Row 2 of A x^{m-1} vanishes identically.
  SymTensor::Builder b(2, 2);
  b.set({0, 0}, 1.0);
  const auto t = nqz(b.build());
  EXPECT_TRUE(t.bound_estimate);
}

TEST(ZPower, Examples) {
  const auto ref = z_power(construct_reference_tensor(4, 3));
  EXPECT_TRUE(ref.converged);
  EXPECT_NEAR(ref.pair.lambda.real(), 1.0, 1e-12);

  IterOptions near_e1;
  Vector s(2);
  s << 1.0, 0.1;
  near_e1.start = s;
  near_e1.restarts = 1;
  const auto d = z_power(diagonal(4, {1.0, 0.5}), near_e1);
  EXPECT_TRUE(d.converged);
  EXPECT_NEAR(d.pair.lambda.real(), 1.0, 1e-10);
  EXPECT_LE((*d.pair.vector - Vector::Unit(2, 0)).norm(), 1e-5);

  const auto mat = z_power(matrix2(2, 1, 2));
  EXPECT_TRUE(mat.converged);
  EXPECT_NEAR(mat.pair.lambda.real(), 3.0, 1e-9);
}

TEST(ZPower, ConsistencyAndResidual) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 3 + trial % 2;
    const int n = 2 + trial % 4;
    const auto a = fixtures::random_sym(m, n, rng);
    IterOptions o;
    o.seed = trial;
    const auto r = z_power(a, o);
    ASSERT_TRUE(r.pair.vector.has_value());
    EXPECT_NEAR(r.pair.lambda.real(), apply_m(a, *r.pair.vector), 1e-12);
    if (r.converged) EXPECT_LE(r.pair.residual, 1e-10 * std::max(1.0, frobenius_norm(a)));
  }
}

TEST(ZPower, DeterministicForFixedSeed) {
  std::mt19937_64 rng(25);
  const auto a = fixtures::random_sym(4, 5, rng);
  IterOptions o;
  o.seed = 9;
  const auto r1 = z_power(a, o), r2 = z_power(a, o);
  EXPECT_EQ(r1.pair.lambda, r2.pair.lambda);
  EXPECT_EQ(*r1.pair.vector, *r2.pair.vector);
}
