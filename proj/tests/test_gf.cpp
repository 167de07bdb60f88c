#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace ringlab;

namespace {

struct FieldCase {
  std::uint64_t p;
  unsigned m;
};

const std::vector<FieldCase> kFields = {{2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 6},
                                        {3, 2}, {3, 3}, {5, 2}, {7, 2}, {2, 8}, {3, 5}};

/// Field element as the coefficient vector the library exposes, checked
/// against independent polynomial multiplication mod the modulus.
oracle::Poly as_poly(const GaloisField& f, Id a) {
  oracle::Poly c;
  for (auto v : f.coefficients(a)) c.push_back(v);
  oracle::trim(c);
  return c;
}

}  // namespace

TEST(GaloisField, ModulusIsFirstIrreducibleInScanOrder) {
  for (auto [p, m] : kFields) {
    if (m == 1) continue;
    auto f = GaloisField::make(p, m);
    oracle::Poly mod(f.modulus().begin(), f.modulus().end());
    EXPECT_EQ(mod, oracle::first_irreducible(m, p)) << p << "^" << m;
    EXPECT_TRUE(oracle::irreducible_by_division(mod, p));
  }
}

TEST(GaloisField, Gf4ModulusIsXSquaredPlusXPlusOne) {
  // Of the four monic quadratics over GF(2) only x^2+x+1 has no root.
  int irreducible = 0;
  for (std::uint64_t k = 0; k < 4; ++k) irreducible += oracle::irreducible_by_division(oracle::monic(2, k, 2), 2);
  EXPECT_EQ(irreducible, 1);
  auto f = GaloisField::make(2, 2);
  EXPECT_EQ(oracle::Poly(f.modulus().begin(), f.modulus().end()), (oracle::Poly{1, 1, 1}));
  EXPECT_EQ(f.order(), 4u);
}

TEST(GaloisField, Gf25ModulusMatchesScan) {
  auto f = GaloisField::make(5, 2);
  EXPECT_EQ(f.order(), 25u);
  EXPECT_EQ(oracle::Poly(f.modulus().begin(), f.modulus().end()), oracle::first_irreducible(2, 5));
}

TEST(GaloisField, ArithmeticMatchesPolynomialReduction) {
  for (auto [p, m] : kFields) {
    auto f = GaloisField::make(p, m);
    if (f.order() > 256) continue;
    oracle::Poly mod(f.modulus().begin(), f.modulus().end());
    for (Id a = 0; a < f.order(); ++a) {
      const auto pa = as_poly(f, a);
      for (Id b = 0; b < f.order(); ++b) {
        const auto pb = as_poly(f, b);
        oracle::Poly sum(std::max(pa.size(), pb.size()), 0);
        for (std::size_t i = 0; i < sum.size(); ++i)
          sum[i] = ((i < pa.size() ? pa[i] : 0) + (i < pb.size() ? pb[i] : 0)) % p;
        oracle::trim(sum);
        ASSERT_EQ(as_poly(f, f.add(a, b)), sum) << f.name() << " " << a << "+" << b;
        auto prod = oracle::poly_mul(pa, pb, p);
        if (m > 1) prod = oracle::poly_mod(prod, mod, p);
        ASSERT_EQ(as_poly(f, f.mul(a, b)), prod) << f.name() << " " << a << "*" << b;
      }
    }
  }
}

TEST(GaloisField, FieldAxiomsAndInverses) {
  for (auto [p, m] : kFields) {
    auto f = GaloisField::make(p, m);
    for (Id a = 0; a < f.order(); ++a) {
      EXPECT_EQ(f.mul(a, 1), a);
      EXPECT_EQ(f.add(a, f.neg(a)), 0u);
      if (a) {
        EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
        EXPECT_EQ(f.pow(a, f.order() - 1), 1u);
      }
    }
  }
  EXPECT_THROW(GaloisField::make(5, 1).inv(0), Error);
}

TEST(GaloisField, SpecExamples) {
  auto f4 = GaloisField::make(2, 2);
  const Id x = f4.from_coefficients({0, 1});
  const Id x1 = f4.from_coefficients({1, 1});
  EXPECT_EQ(f4.mul(x, x), x1);
  EXPECT_EQ(f4.frobenius(x, 1), x1);
  EXPECT_EQ(GaloisField::make(5, 1).inv(2), 3u);
  EXPECT_EQ(GaloisField::make(2, 1).order(), 2u);
}

TEST(GaloisField, PrimitiveRootGeneratesMultiplicativeGroup) {
  for (auto [p, m] : kFields) {
    auto f = GaloisField::make(p, m);
    std::set<Id> seen;
    Id g = 1;
    for (std::uint32_t i = 0; i + 1 < f.order(); ++i) {
      seen.insert(g);
      g = f.mul(g, f.primitive_root());
    }
    EXPECT_EQ(seen.size(), f.order() - 1u) << f.name();
    EXPECT_EQ(f.element_order(f.primitive_root()), f.order() - 1u);
  }
}

TEST(GaloisField, FrobeniusIsARingAutomorphism) {
  for (auto [p, m] : kFields) {
    auto f = GaloisField::make(p, m);
    const bool exhaustive = f.order() <= 256;
    std::mt19937_64 rng(oracle::kAxiomSeed);
    std::uniform_int_distribution<Id> pick(0, f.order() - 1);
    const std::uint64_t pairs = exhaustive ? std::uint64_t{f.order()} * f.order() : 20000;
    for (std::uint64_t i = 0; i < pairs; ++i) {
      const Id a = exhaustive ? static_cast<Id>(i / f.order()) : pick(rng);
      const Id b = exhaustive ? static_cast<Id>(i % f.order()) : pick(rng);
      ASSERT_EQ(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
      ASSERT_EQ(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
    }
    for (Id a = 0; a < f.order(); ++a) {
      EXPECT_EQ(f.frobenius(a, m), a);
      // Direct a^p by repeated multiplication.
      Id ap = 1;
      for (std::uint64_t k = 0; k < p; ++k) ap = f.mul(ap, a);
      EXPECT_EQ(f.frobenius(a, 1), ap);
      if (m == 1) {
        EXPECT_EQ(f.frobenius(a, 1), a);
      }
    }
  }
}

TEST(GaloisField, SubfieldsAreEmbeddedFixedFields) {
  for (auto [p, m] : kFields) {
    auto f = GaloisField::make(p, m);
    auto subs = subfields(f);
    std::vector<std::uint64_t> degrees;
    for (const auto& s : subs) degrees.push_back(s.degree);
    EXPECT_EQ(degrees, divisors(m));
    for (const auto& s : subs) {
      ASSERT_EQ(s.field.order(), oracle::pow_u(p, s.degree));
      std::set<Id> image(s.embedding.begin(), s.embedding.end());
      EXPECT_EQ(image.size(), s.field.order());
      for (Id a = 0; a < s.field.order(); ++a)
        for (Id b = 0; b < s.field.order(); ++b) {
          ASSERT_EQ(s.embedding[s.field.add(a, b)], f.add(s.embedding[a], s.embedding[b]));
          ASSERT_EQ(s.embedding[s.field.mul(a, b)], f.mul(s.embedding[a], s.embedding[b]));
        }
      std::set<Id> fixed;
      for (Id a = 0; a < f.order(); ++a)
        if (f.frobenius(a, s.degree) == a) fixed.insert(a);
      EXPECT_EQ(fixed, image) << f.name() << " degree " << s.degree;
    }
  }
}

TEST(GaloisField, SubfieldExamples) {
  auto f64 = GaloisField::make(2, 6);
  std::vector<std::uint32_t> orders;
  for (const auto& s : subfields(f64)) orders.push_back(s.field.order());
  EXPECT_EQ(orders, (std::vector<std::uint32_t>{2, 4, 8, 64}));
  EXPECT_EQ(subfields(GaloisField::make(7, 1)).size(), 1u);
  auto s4 = subfields(GaloisField::make(2, 2));
  ASSERT_EQ(s4.size(), 2u);
  EXPECT_EQ(std::set<Id>(s4[0].embedding.begin(), s4[0].embedding.end()), (std::set<Id>{0, 1}));
}

TEST(GaloisField, Errors) {
  EXPECT_THROW(GaloisField::make(4, 1), Error);
  try {
    GaloisField::make(6, 2);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPrime);
  }
  ScopedCap cap(1000);
  try {
    GaloisField::make(2, 10);
    FAIL() << "cap not enforced";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
  }
}
