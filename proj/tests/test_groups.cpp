#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace ringlab;

namespace {

constexpr std::uint64_t kChainSeed = 11;
constexpr int kChainsPerGroup = 40;

Ring mat(unsigned n, std::uint64_t p, unsigned m = 1) { return make_matrix_ring(n, GaloisField::make(p, m)); }

/// Closure by repeated right multiplication with the generators.
std::set<Id> naive_closure(const Ring& r, const std::vector<Id>& gens) {
  std::set<Id> s{r.one()};
  std::vector<Id> todo{r.one()};
  while (!todo.empty()) {
    const Id x = todo.back();
    todo.pop_back();
    for (Id g : gens) {
      const Id y = r.mul(x, g);
      if (s.insert(y).second) todo.push_back(y);
    }
  }
  return s;
}

Id naive_inverse(const Ring& r, Id x) {
  for (Id y = 0; y < r.order(); ++y)
    if (r.mul(x, y) == r.one()) return y;
  return 0;
}

/// Derived series from all-pairs commutators and naive closure.
std::vector<std::uint64_t> naive_derived_orders(const Ring& r, std::set<Id> g) {
  std::vector<std::uint64_t> orders{g.size()};
  std::map<Id, Id> inv;
  for (Id x : g) inv[x] = naive_inverse(r, x);
  while (g.size() > 1) {
    std::set<Id> comms;
    for (Id a : g)
      for (Id b : g) comms.insert(r.mul(r.mul(inv[a], inv[b]), r.mul(a, b)));
    auto next = naive_closure(r, std::vector<Id>(comms.begin(), comms.end()));
    if (next.size() == g.size()) break;
    g = std::move(next);
    orders.push_back(g.size());
  }
  return orders;
}

std::vector<Id> sorted(const SubsetMask& m) { return m.elements(); }

/// Cube rotations as signed permutation matrices mod 3: a quarter turn about
/// the z axis and a half turn about the y+z diagonal.
std::pair<Id, Id> cube_rotation_generators(const Ring& m33) {
  const auto* mi = m33.as<MatrixImpl>();
  const Id a = mi->from_entries({0, 2, 0, 1, 0, 0, 0, 0, 1});
  const Id b = mi->from_entries({2, 0, 0, 0, 0, 1, 0, 1, 0});
  return {a, b};
}

}  // namespace

TEST(Units, Examples) {
  auto z12 = units_of(make_zmod(12));
  EXPECT_EQ(z12.elements(), (std::vector<Id>{1, 5, 7, 11}));
  EXPECT_EQ(units_of(mat(2, 2)).order(), 6u);
  auto zero = units_of(make_zmod(1));
  EXPECT_EQ(zero.order(), 1u);
  EXPECT_EQ(zero.identity(), 0u);
}

TEST(Units, PowerCyclingAgreesWithBruteForceAndFastPath) {
  for (const char* text : {"Z(1)", "Z(2)", "Z(36)", "Z(64)", "M(2,GF(2))", "M(2,GF(3))", "M(2,GF(2^2))", "M(2,GF(5))",
                           "M(3,GF(2))", "UT(2,GF(5))", "UT(3,GF(2))", "GF(3^3)", "Z(4) (+) M(2,GF(2))",
                           "Z(6) (+) UT(2,GF(3))"}) {
    auto r = eval(text);
    auto fast = units_of(r, {true, {}});
    auto generic = units_of(r, {false, {}});
    EXPECT_EQ(fast.elements(), generic.elements()) << text;
    EXPECT_EQ(fast.elements(), oracle::brute_units(r)) << text;
    for (Id u : generic.elements()) {
      ASSERT_EQ(r.mul(u, generic.inverse(u)), r.one()) << text;
      ASSERT_EQ(r.mul(generic.inverse(u), u), r.one()) << text;
    }
    for (Id x = 0; x < r.order(); ++x) {
      auto c = power_cycle(r, x);
      ASSERT_EQ(c.has_value(), fast.contains(x)) << text << " " << x;
    }
  }
}

TEST(Units, ThreadCountDoesNotChangeTheResult) {
  auto r = mat(3, 3);
  auto one = units_of(r, {true, {1}});
  auto four = units_of(r, {true, {4}});
  EXPECT_EQ(one.elements(), four.elements());
  EXPECT_EQ(one.order(), oracle::gl_order(3, 3));
}

TEST(Units, UnitCountsMatchGeneralLinearOrders) {
  for (auto [n, p, m] : std::vector<std::tuple<unsigned, std::uint64_t, unsigned>>{
           {2, 2, 1}, {2, 3, 1}, {2, 2, 2}, {2, 5, 1}, {3, 2, 1}, {3, 3, 1}, {2, 7, 1}, {2, 3, 2}}) {
    EXPECT_EQ(units_of(mat(n, p, m)).order(), oracle::gl_order(n, oracle::pow_u(p, m)));
  }
}

TEST(Closure, Examples) {
  auto r = mat(2, 5);
  auto g = units_of(r);
  EXPECT_EQ(subgroup_closure(g, {}).order(), 1u);
  const Id y = singer_element(r);
  auto cyc = subgroup_closure(g, {y});
  EXPECT_EQ(cyc.order(), 24u);
  EXPECT_EQ(std::set<Id>(cyc.elements.begin(), cyc.elements.end()), naive_closure(r, {y}));
  EXPECT_EQ(subgroup_closure(g, g.elements()).order(), 480u);
  try {
    subgroup_closure(g, {0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAUnit);
  }
}

TEST(Closure, LagrangeAndGeneratorsOnRandomSubsets) {
  std::mt19937_64 rng(kChainSeed);
  for (const char* text : {"M(2,GF(3))", "M(2,GF(5))", "M(3,GF(2))", "M(2,GF(2^2))"}) {
    auto r = eval(text);
    auto g = units_of(r);
    std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
    for (int t = 0; t < 30; ++t) {
      std::vector<Id> gens;
      const int k = 1 + t % 3;
      for (int i = 0; i < k; ++i) gens.push_back(g.elements()[pick(rng)]);
      auto h = subgroup_closure(g, gens);
      ASSERT_EQ(g.order() % h.order(), 0u) << text;
      ASSERT_EQ(std::set<Id>(h.elements.begin(), h.elements.end()), naive_closure(r, gens));
      auto reduced = generators_of(g, h.mask);
      ASSERT_LE(reduced.size(), static_cast<std::size_t>(std::bit_width(h.order())));
      ASSERT_EQ(subgroup_closure(g, reduced).mask, h.mask);
    }
  }
}

TEST(DerivedSeries, Examples) {
  auto gl23 = derived_series(units_of(mat(2, 3)));
  EXPECT_EQ(gl23.orders, (std::vector<std::uint64_t>{48, 24, 8, 2, 1}));
  EXPECT_EQ(gl23.terminal, SeriesTerminal::ReachedTrivial);
  auto gl25 = derived_series(units_of(mat(2, 5)));
  EXPECT_EQ(gl25.orders, (std::vector<std::uint64_t>{480, 120, 120}));
  EXPECT_EQ(gl25.terminal, SeriesTerminal::Stabilized);
  auto trivial = derived_series(units_of(make_zmod(2)));
  EXPECT_EQ(trivial.orders, (std::vector<std::uint64_t>{1}));
  EXPECT_TRUE(trivial.solvable());
}

TEST(DerivedSeries, MatchesAllPairsOracle) {
  for (const char* text : {"M(2,GF(2))", "M(2,GF(3))", "M(3,GF(2))", "M(2,GF(2^2))", "M(2,GF(5))", "UT(3,GF(2))",
                           "UT(2,GF(5))", "Z(4) (+) M(2,GF(2))"}) {
    auto r = eval(text);
    auto g = units_of(r);
    auto fast = derived_series(g);
    auto pairs = derived_series(g, SeriesOptions{true});
    EXPECT_EQ(fast.orders, pairs.orders) << text;
    std::set<Id> all(g.elements().begin(), g.elements().end());
    auto naive = naive_derived_orders(r, all);
    std::vector<std::uint64_t> expected = naive;
    if (expected.back() != 1) expected.push_back(expected.back());
    EXPECT_EQ(fast.orders, expected) << text;
    for (std::size_t i = 1; i + 1 < fast.orders.size(); ++i) EXPECT_LT(fast.orders[i], fast.orders[i - 1]);
  }
}

TEST(DerivedSeries, AllPairsCommutatorSubgroupAgreesWithNormalClosure) {
  auto g = units_of(mat(2, 3));
  auto whole = subgroup_from_mask(g, g.mask());
  auto a = commutator_subgroup(g, generators_of(g, g.mask()));
  auto b = commutator_subgroup_all_pairs(g, whole);
  EXPECT_EQ(a.mask, b.mask);
  EXPECT_EQ(a.order(), 24u);
}

TEST(Solvable, Examples) {
  for (std::uint64_t n : {2, 12, 60, 64}) EXPECT_TRUE(is_solvable(units_of(make_zmod(n))));
  EXPECT_FALSE(is_solvable(units_of(mat(3, 2))));
  EXPECT_EQ(derived_series(units_of(mat(3, 2))).orders, (std::vector<std::uint64_t>{168, 168}));
  EXPECT_FALSE(is_solvable(units_of(mat(2, 2, 2))));
  EXPECT_EQ(derived_series(units_of(mat(2, 2, 2))).orders, (std::vector<std::uint64_t>{180, 60, 60}));
  EXPECT_TRUE(is_solvable(units_of(mat(2, 2))));
  EXPECT_TRUE(is_solvable(units_of(mat(2, 3))));
}

TEST(Solvable, SubgroupsOfSolvableGroupsAreSolvable) {
  std::mt19937_64 rng(kChainSeed);
  int solvable_pairs = 0;
  for (const char* text : {"M(2,GF(3))", "M(2,GF(5))", "M(3,GF(2))", "M(2,GF(2^2))", "UT(3,GF(3))"}) {
    auto g = units_of(eval(text));
    std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
    for (int t = 0; t < kChainsPerGroup; ++t) {
      // Chain H = <x> <= K = <x, y> <= L = <x, y, z>.
      std::vector<Id> gens{g.elements()[pick(rng)]};
      std::vector<bool> chain;
      for (int level = 0; level < 3; ++level) {
        chain.push_back(is_solvable(g, subgroup_closure(g, gens)));
        gens.push_back(g.elements()[pick(rng)]);
      }
      for (std::size_t i = 1; i < chain.size(); ++i)
        if (chain[i]) {
          ++solvable_pairs;
          ASSERT_TRUE(chain[i - 1]) << text;
        }
    }
  }
  EXPECT_GT(solvable_pairs, 0);
}

TEST(ElementOrder, Examples) {
  auto r = mat(2, 5);
  auto g = units_of(r);
  EXPECT_EQ(element_order(g, r.one()), 1u);
  EXPECT_EQ(element_order(g, singer_element(r)), 24u);
  EXPECT_EQ(element_order(g, r.neg(r.one())), 2u);
  for (Id x : g.elements()) {
    std::uint64_t k = 1;
    for (Id y = x; y != r.one(); y = r.mul(y, x)) ++k;
    ASSERT_EQ(element_order(g, x), k);
  }
}

TEST(Normalizer, Examples) {
  auto r = mat(2, 5);
  auto g = units_of(r);
  auto whole = subgroup_from_mask(g, g.mask());
  EXPECT_EQ(normalizer(g, whole).order(), 480u);
  auto cyc = subgroup_closure(g, {singer_element(r)});
  EXPECT_EQ(normalizer(g, cyc).order(), 48u);

  auto r3 = mat(3, 2);
  auto g3 = units_of(r3);
  auto c7 = subgroup_closure(g3, {singer_element(r3)});
  EXPECT_EQ(c7.order(), 7u);
  EXPECT_EQ(normalizer(g3, c7).order(), 21u);
}

TEST(Normalizer, GeneratorFormMatchesElementwiseScanAndNaiveOracle) {
  std::mt19937_64 rng(kChainSeed);
  for (const char* text : {"M(2,GF(3))", "M(3,GF(2))", "M(2,GF(5))"}) {
    auto r = eval(text);
    auto g = units_of(r);
    std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
    for (int t = 0; t < 8; ++t) {
      auto h = subgroup_closure(g, {g.elements()[pick(rng)]});
      auto n1 = normalizer(g, h);
      auto n2 = normalizer_elementwise(g, h, {4});
      EXPECT_EQ(n1.mask, n2.mask);
      std::set<Id> naive;
      for (Id u : g.elements()) {
        bool keep = true;
        const Id ui = naive_inverse(r, u);
        for (Id x : h.elements) keep = keep && h.contains(r.mul(r.mul(ui, x), u));
        if (keep) naive.insert(u);
      }
      EXPECT_EQ(sorted(n1.mask), std::vector<Id>(naive.begin(), naive.end()));
      // Abelian h: N(h) >= C(h) >= h.
      auto c = centralizer(g, h.elements);
      EXPECT_TRUE(c.mask.is_subset_of(n1.mask));
      EXPECT_TRUE(h.mask.is_subset_of(c.mask));
    }
  }
}

TEST(Centralizer, Examples) {
  auto r = mat(2, 5);
  auto g = units_of(r);
  EXPECT_EQ(centralizer(g, {r.one()}).order(), 480u);
  EXPECT_EQ(centralizer(g, {singer_element(r)}).order(), 24u);
  auto z = units_of(make_zmod(60));
  for (Id x : z.elements()) EXPECT_EQ(centralizer(z, {x}).order(), z.order());
  EXPECT_EQ(centralizer(g, {singer_element(r)}, {3}).mask, centralizer(g, {singer_element(r)}, {1}).mask);
}

TEST(RecognizeS4, Examples) {
  auto r = mat(3, 3);
  auto g = units_of(r);
  auto [a, b] = cube_rotation_generators(r);
  const auto* mi = r.as<MatrixImpl>();
  EXPECT_EQ(mi->determinant(a), 1u);
  EXPECT_EQ(mi->determinant(b), 1u);
  EXPECT_EQ(naive_closure(r, {a, b}).size(), 24u);
  EXPECT_TRUE(recognize_s4(g, a, b));
  EXPECT_FALSE(recognize_s4(g, r.one(), r.one()));
  EXPECT_FALSE(recognize_s4(g, a, r.mul(a, a)));
}

TEST(Groups, ZeroRingAndTrivialGroup) {
  auto g = units_of(make_zmod(1));
  EXPECT_EQ(derived_series(g).orders, (std::vector<std::uint64_t>{1}));
  EXPECT_TRUE(is_solvable(g));
  EXPECT_EQ(trivial_subgroup(g).order(), 1u);
}

TEST(Groups, JsonShape) {
  auto s = derived_series(units_of(mat(2, 3)));
  EXPECT_EQ(to_json(s).dump(), R"({"orders":[48,24,8,2,1],"terminal":"ReachedTrivial"})");
  EXPECT_EQ(to_json(derived_series(units_of(mat(2, 5)))).dump(), R"({"orders":[480,120,120],"terminal":"Stabilized"})");
}
