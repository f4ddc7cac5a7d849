#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "equiweyl/domain.hpp"
#include "equiweyl/group.hpp"

using namespace equiweyl;

namespace {

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("indicator and boundary distance closed forms") {
  DomainSpec sq = DomainSpec::square(2, 0.5);
  CHECK(sq.contains(vec2(0.0, 0.0)));
  CHECK(sq.contains(vec2(0.49, -0.49)));
  CHECK(!sq.contains(vec2(0.5, 0.0)));
  CHECK(sq.boundary_distance(vec2(0.0, 0.0)) == doctest::Approx(0.5));
  CHECK(sq.boundary_distance(vec2(0.3, 0.1)) == doctest::Approx(0.2));
  CHECK(sq.boundary_distance(vec2(0.7, 0.0)) == doctest::Approx(0.2));
  // outside near a corner the distance is Euclidean to the corner point
  CHECK(sq.boundary_distance(vec2(0.8, 0.9)) ==
        doctest::Approx(std::hypot(0.3, 0.4)));

  DomainSpec disk = DomainSpec::disk(2, 1.0);
  CHECK(disk.contains(vec2(0.6, 0.6)));
  CHECK(!disk.contains(vec2(0.8, 0.8)));
  CHECK(disk.boundary_distance(vec2(0.6, 0.0)) == doctest::Approx(0.4));
  CHECK(disk.boundary_distance(vec2(1.5, 0.0)) == doctest::Approx(0.5));

  DomainSpec ann = DomainSpec::annulus(2, 0.5, 1.0);
  CHECK(!ann.contains(vec2(0.3, 0.0)));
  CHECK(ann.contains(vec2(0.7, 0.0)));
  CHECK(ann.boundary_distance(vec2(0.7, 0.0)) == doctest::Approx(0.2));
  CHECK(ann.boundary_distance(vec2(0.55, 0.0)) == doctest::Approx(0.05));

  CHECK(sq.bounding_half_width() == 0.5);
  CHECK(ann.bounding_half_width() == 1.0);
}

TEST_CASE("coarse square grid has the four symmetric cell centers") {
  InteriorIndex grid = discretize(DomainSpec::square(2, 1.0), 1.0);
  REQUIRE(grid.size() == 4);
  std::set<std::pair<int, int>> got;
  for (int i = 0; i < grid.size(); ++i) {
    got.insert({grid.points(i, 0), grid.points(i, 1)});
    Eigen::VectorXd x = grid.coordinate(i);
    CHECK(std::abs(x(0)) == doctest::Approx(0.5));
    CHECK(std::abs(x(1)) == doctest::Approx(0.5));
  }
  CHECK(got == std::set<std::pair<int, int>>{{-1, -1}, {-1, 0}, {0, -1}, {0, 0}});
}

TEST_CASE("grid sizes and index round trip") {
  // half-width 1/2 at h = 1/(M+1) gives an M x M interior grid
  for (int M : {4, 15, 128}) {
    InteriorIndex grid = discretize(DomainSpec::square(2, 0.5), 1.0 / (M + 1));
    CHECK(grid.size() == M * M);
  }

  InteriorIndex grid = discretize(DomainSpec::disk(2, 1.0), 0.07);
  for (int i = 0; i < grid.size(); ++i) {
    Eigen::VectorXi p = grid.points.row(i).transpose();
    CHECK(grid.find(p) == i);
  }
  Eigen::VectorXi outside(2);
  outside << 1000, 1000;
  CHECK(grid.find(outside) == -1);

  CHECK_THROWS_AS(discretize(DomainSpec::disk(2, 0.01), 1.0), EmptyDiscretization);
}

TEST_CASE("cell count converges to the disk area") {
  double h = 0.01;
  InteriorIndex grid = discretize(DomainSpec::disk(2, 1.0), h);
  double area = grid.size() * h * h;
  CHECK(area == doctest::Approx(std::numbers::pi).epsilon(0.05));
}

TEST_CASE("action permutations represent the group") {
  FiniteGroup d4 = build_group(GroupFamily::Dihedral, 4, 2);
  InteriorIndex grid = discretize(DomainSpec::square(2, 0.5), 1.0 / 9.0);

  std::vector<std::vector<int>> perms;
  for (const auto& e : d4.elements) perms.push_back(action_permutation(grid, e));

  // identity acts trivially
  for (int i = 0; i < grid.size(); ++i) CHECK(perms[0][i] == i);

  // T(g) v[i] = v[perm[i]] means coordinate(perm[i]) = g^{-1} coordinate(i)
  for (int g = 0; g < d4.size(); ++g) {
    Eigen::MatrixXd ginv = d4.elements[d4.inverse[g]].matrix.cast<double>();
    for (int i = 0; i < grid.size(); ++i)
      CHECK((grid.coordinate(perms[g][i]) - ginv * grid.coordinate(i)).norm() < 1e-12);
  }

  // homomorphism: perm(gh) = perm(h) followed by perm(g) in this convention
  for (int g = 0; g < d4.size(); ++g)
    for (int hh = 0; hh < d4.size(); ++hh) {
      int gh = d4.multiply(g, hh);
      for (int i = 0; i < grid.size(); ++i)
        CHECK(perms[gh][i] == perms[hh][perms[g][i]]);
    }

  // a quarter turn has order four
  int r90 = -1;
  for (int g = 0; g < d4.size(); ++g) {
    const auto& m = d4.elements[g].matrix;
    if (m(0, 0) == 0 && m(0, 1) == -1 && m(1, 0) == 1) r90 = g;
  }
  REQUIRE(r90 >= 0);
  for (int i = 0; i < grid.size(); ++i) {
    int j = perms[r90][perms[r90][perms[r90][perms[r90][i]]]];
    CHECK(j == i);
  }
}

TEST_CASE("grid closure fails for a non-invariant domain") {
  // two nested origin-centered rectangles: invariant under sign flips but not
  // under the coordinate swap
  DomainSpec dom = DomainSpec::box_union({vec2(0.6, 0.3), vec2(0.2, 0.5)});
  InteriorIndex grid = discretize(dom, 0.1);
  FiniteGroup d4 = build_group(GroupFamily::Dihedral, 4, 2);
  FiniteGroup d2 = build_group(GroupFamily::Dihedral, 2, 2);

  for (const auto& e : d2.elements) CHECK_NOTHROW(action_permutation(grid, e));

  bool threw = false;
  for (const auto& e : d4.elements) {
    try {
      action_permutation(grid, e);
    } catch (const GridNotClosed&) {
      threw = true;
    }
  }
  CHECK(threw);
}

TEST_CASE("boundary tube volume matches closed forms") {
  // square of side 1: inner strip 8 rho - 4 rho^2 plus outer offset
  // 8 rho + pi rho^2 with rounded corners
  double rho = 0.05;
  auto sq = boundary_tube_volume(DomainSpec::square(2, 0.5), rho, 400000, 11);
  double expected_sq = 16.0 * 0.5 * rho + (std::numbers::pi - 4.0) * rho * rho;
  CHECK(std::abs(sq.volume - expected_sq) < 5.0 * sq.stderr_ + 1e-12);

  // disk of radius R: annulus of area 4 pi R rho
  auto dk = boundary_tube_volume(DomainSpec::disk(2, 1.0), rho, 400000, 11);
  CHECK(std::abs(dk.volume - 4.0 * std::numbers::pi * rho) < 5.0 * dk.stderr_ + 1e-12);

  auto zero = boundary_tube_volume(DomainSpec::disk(2, 1.0), 0.0, 1000, 11);
  CHECK(zero.volume == 0.0);
}

TEST_CASE("monte carlo error shrinks like 1/sqrt(samples)") {
  double rho = 0.05;
  auto coarse = boundary_tube_volume(DomainSpec::disk(2, 1.0), rho, 10000, 3);
  auto fine = boundary_tube_volume(DomainSpec::disk(2, 1.0), rho, 1000000, 3);
  CHECK(fine.stderr_ < coarse.stderr_ / 5.0);
  CHECK(fine.stderr_ > coarse.stderr_ / 20.0);
}

TEST_CASE("fixed set tube volume matches closed forms") {
  double r = 0.05;

  // C2 = {I, -I}: the fixed set is the origin, the tube a small disk
  FiniteGroup c2 = build_group(GroupFamily::Cyclic, 2, 2);
  auto origin = fixed_set_tube_volume(DomainSpec::square(2, 0.5), c2, r, 400000, 5);
  CHECK(std::abs(origin.volume - std::numbers::pi * r * r) < 5.0 * origin.stderr_ + 1e-12);

  // D1: one mirror line, the tube a slab of width 2r through the unit square
  FiniteGroup d1 = build_group(GroupFamily::Dihedral, 1, 2);
  auto slab = fixed_set_tube_volume(DomainSpec::square(2, 0.5), d1, r, 400000, 5);
  CHECK(std::abs(slab.volume - 2.0 * r) < 5.0 * slab.stderr_ + 1e-12);

  FiniteGroup c1 = build_group(GroupFamily::Cyclic, 1, 2);
  CHECK_THROWS_AS(fixed_set_tube_volume(DomainSpec::square(2, 0.5), c1, r, 10, 5),
                  TrivialGroup);
  CHECK_THROWS_AS(fixed_set_tube_volume(DomainSpec::square(2, 0.5), c2, 0.0, 10, 5),
                  Error);
}

TEST_CASE("tube estimates are deterministic in the seed") {
  auto a = boundary_tube_volume(DomainSpec::disk(2, 1.0), 0.03, 50000, 42);
  auto b = boundary_tube_volume(DomainSpec::disk(2, 1.0), 0.03, 50000, 42);
  auto c = boundary_tube_volume(DomainSpec::disk(2, 1.0), 0.03, 50000, 43);
  CHECK(a.volume == b.volume);
  CHECK(a.volume != c.volume);
}
