#include <doctest.h>

#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include "equiweyl/group.hpp"
#include "equiweyl/rng.hpp"

using namespace equiweyl;

namespace {

std::vector<FiniteGroup> supported_groups() {
  std::vector<FiniteGroup> gs;
  gs.push_back(build_group(GroupFamily::Cyclic, 1, 2));
  gs.push_back(build_group(GroupFamily::Cyclic, 2, 2));
  gs.push_back(build_group(GroupFamily::Cyclic, 4, 2));
  gs.push_back(build_group(GroupFamily::Dihedral, 1, 2));
  gs.push_back(build_group(GroupFamily::Dihedral, 2, 2));
  gs.push_back(build_group(GroupFamily::Dihedral, 4, 2));
  gs.push_back(build_group(GroupFamily::Cyclic, 2, 3));
  gs.push_back(build_group(GroupFamily::Product, 2, 3));
  gs.push_back(build_group(GroupFamily::Product, 3, 3));
  return gs;
}

}  // namespace

TEST_CASE("trivial and order-2 cyclic groups") {
  FiniteGroup c1 = build_group(GroupFamily::Cyclic, 1, 2);
  CHECK(c1.size() == 1);
  CHECK(c1.elements[0].is_identity());

  FiniteGroup c2 = build_group(GroupFamily::Cyclic, 2, 2);
  CHECK(c2.size() == 2);
  CHECK(c2.elements[1].matrix == -Eigen::MatrixXi::Identity(2, 2));
  CHECK(c2.mul_table(1, 1) == 0);  // Z/2
  CHECK(c2.mul_table(0, 1) == 1);
}

TEST_CASE("D4 is the full set of 2x2 signed permutation matrices") {
  // independent enumeration: all signed permutations in dimension 2
  std::set<std::array<int, 4>> expected;
  for (int perm = 0; perm < 2; ++perm)
    for (int s0 = -1; s0 <= 1; s0 += 2)
      for (int s1 = -1; s1 <= 1; s1 += 2) {
        std::array<int, 4> m{};
        if (perm == 0) {
          m = {s0, 0, 0, s1};
        } else {
          m = {0, s0, s1, 0};
        }
        expected.insert(m);
      }
  REQUIRE(expected.size() == 8);

  FiniteGroup d4 = build_group(GroupFamily::Dihedral, 4, 2);
  REQUIRE(d4.size() == 8);
  std::set<std::array<int, 4>> got;
  for (const auto& e : d4.elements) {
    CHECK(e.is_signed_permutation());
    got.insert({e.matrix(0, 0), e.matrix(0, 1), e.matrix(1, 0), e.matrix(1, 1)});
  }
  CHECK(got == expected);
}

TEST_CASE("unsupported families are rejected") {
  CHECK_THROWS_AS(build_group(GroupFamily::Cyclic, 3, 2), UnsupportedGroup);
  CHECK_THROWS_AS(build_group(GroupFamily::Cyclic, 4, 3), UnsupportedGroup);
  CHECK_THROWS_AS(build_group(GroupFamily::Dihedral, 4, 3), UnsupportedGroup);
  CHECK_THROWS_AS(build_group(GroupFamily::Product, 4, 3), UnsupportedGroup);
}

TEST_CASE("group table invariants") {
  for (const auto& g : supported_groups()) {
    const int m = g.size();
    // closure and associativity on the table
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        CHECK(g.mul_table(i, j) >= 0);
        CHECK(g.mul_table(i, j) < m);
        for (int l = 0; l < m; ++l)
          CHECK(g.multiply(g.multiply(i, j), l) == g.multiply(i, g.multiply(j, l)));
      }
    for (int i = 0; i < m; ++i) {
      CHECK(g.multiply(0, i) == i);
      CHECK(g.multiply(i, g.inverse[i]) == 0);
      CHECK((g.elements[i].matrix * g.elements[g.inverse[i]].matrix).isIdentity());
    }
    // exact orthogonality of each element
    for (const auto& e : g.elements) {
      CHECK(e.is_signed_permutation());
      CHECK((e.matrix.transpose() * e.matrix).isIdentity());
      CHECK(std::abs(e.det()) == 1);
    }
  }
}

TEST_CASE("character table orthogonality and dimensions") {
  for (const auto& g : supported_groups()) {
    CharacterTable t = character_table(g);
    const int ni = t.num_irreps();
    CHECK(ni == t.num_classes());

    // conjugacy classes partition the group
    std::vector<int> seen(g.size(), 0);
    for (const auto& cls : t.classes)
      for (int e : cls) seen[e]++;
    for (int c : seen) CHECK(c == 1);

    int sum_sq = 0;
    for (int d : t.dims) {
      CHECK(d >= 1);
      sum_sq += d * d;
    }
    CHECK(sum_sq == g.size());

    // row orthogonality over group elements
    for (int i = 0; i < ni; ++i)
      for (int j = 0; j < ni; ++j) {
        std::complex<double> acc(0.0, 0.0);
        for (int e = 0; e < g.size(); ++e) acc += t.value(i, e) * std::conj(t.value(j, e));
        double target = i == j ? g.size() : 0.0;
        CHECK(std::abs(acc - target) < 1e-12);
      }

    // column orthogonality: sum_chi chi(c) conj(chi(c')) = |G|/|class| delta
    for (int c = 0; c < ni; ++c)
      for (int cp = 0; cp < ni; ++cp) {
        std::complex<double> acc(0.0, 0.0);
        for (int i = 0; i < ni; ++i) acc += t.values(i, c) * std::conj(t.values(i, cp));
        double target = c == cp ? static_cast<double>(g.size()) / t.classes[c].size() : 0.0;
        CHECK(std::abs(acc - target) < 1e-12);
      }

    // chi(g^{-1}) = conj(chi(g))
    for (int i = 0; i < ni; ++i)
      for (int e = 0; e < g.size(); ++e)
        CHECK(std::abs(t.value(i, g.inverse[e]) - std::conj(t.value(i, e))) < 1e-12);
  }
}

TEST_CASE("C2 and C4 character values") {
  CharacterTable c2 = character_table(build_group(GroupFamily::Cyclic, 2, 2));
  REQUIRE(c2.num_irreps() == 2);
  CHECK(c2.value(0, 0) == std::complex<double>(1.0, 0.0));
  CHECK(c2.value(0, 1) == std::complex<double>(1.0, 0.0));
  CHECK(c2.value(1, 1) == std::complex<double>(-1.0, 0.0));

  // C4 characters are the fourth roots of unity i^{jk}
  FiniteGroup g4 = build_group(GroupFamily::Cyclic, 4, 2);
  CharacterTable c4 = character_table(g4);
  REQUIRE(c4.num_irreps() == 4);
  const std::complex<double> i_unit(0.0, 1.0);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k)
      CHECK(std::abs(c4.value(j, k) - std::pow(i_unit, j * k)) < 1e-12);
}

TEST_CASE("D4 irrep dimensions") {
  CharacterTable t = character_table(build_group(GroupFamily::Dihedral, 4, 2));
  std::multiset<int> dims(t.dims.begin(), t.dims.end());
  CHECK(dims == std::multiset<int>{1, 1, 1, 1, 2});
}

TEST_CASE("fixed point data in closed form") {
  FiniteGroup d4 = build_group(GroupFamily::Dihedral, 4, 2);

  CHECK_THROWS_AS(fixed_point_data(d4, 0), IdentityElement);

  for (int g = 1; g < d4.size(); ++g) {
    FixedPointData d = fixed_point_data(d4, g);
    const auto& mat = d4.elements[g].matrix;
    if (mat == -Eigen::MatrixXi::Identity(2, 2)) {
      CHECK(d.fixed_subspace.cols() == 0);
      CHECK(d.kappa == doctest::Approx(2.0).epsilon(1e-14));
    } else if (d4.elements[g].det() == 1) {
      // rotations R90, R270
      CHECK(d.fixed_subspace.cols() == 0);
      CHECK(d.kappa == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    } else {
      // reflections fix a line and separate at rate 2
      CHECK(d.fixed_subspace.cols() == 1);
      CHECK(d.kappa == doctest::Approx(2.0).epsilon(1e-12));
      Eigen::VectorXd v = d.fixed_subspace.col(0);
      CHECK((d4.elements[g].apply(v) - v).norm() < 1e-12);
    }
  }

  // the swap reflection fixes the diagonal
  FixedPointData swap = fixed_point_data(d4, 6);
  CHECK(d4.elements[6].matrix(0, 1) == 1);
  CHECK(std::abs(std::abs(swap.fixed_subspace(0, 0)) - 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("kappa inequality on random points") {
  CounterRng rng(77);
  for (const auto& g : supported_groups()) {
    if (g.size() == 1) continue;
    const int n = g.dim();
    std::vector<FixedPointData> data;
    for (int e = 1; e < g.size(); ++e) data.push_back(fixed_point_data(g, e));
    for (int s = 0; s < 10000 / g.size() + 100; ++s) {
      Eigen::VectorXd x(n);
      for (int d = 0; d < n; ++d) x(d) = rng.uniform(s, d, -2.0, 2.0);
      for (const auto& fp : data) {
        double lhs = (g.elements[fp.element].apply(x) - x).norm();
        CHECK(lhs >= fp.kappa * distance_to_fixed_subspace(fp, x) - 1e-12);
      }
    }
  }
}
