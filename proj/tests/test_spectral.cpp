#include "fracinpaint/dense_oracle.hpp"
#include "fracinpaint/spectral.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace fracinpaint;
using fracinpaint::testing::max_abs_diff;
using fracinpaint::testing::random_grid;

namespace {

const double pi = std::numbers::pi;

ImageGrid sampled_mode(const GridShape& s, Index k, Index l) {
  ImageGrid g(s.rows, s.cols);
  for (Index i = 0; i < s.rows; ++i) {
    for (Index j = 0; j < s.cols; ++j) {
      const double x = (j + 0.5) * s.dx();
      const double y = (i + 0.5) * s.dy();
      g(i, j) = std::cos(k * pi * x / s.width) * std::cos(l * pi * y / s.height);
    }
  }
  return g;
}

}  // namespace

TEST_CASE("neumann eigenvalue formula") {
  CHECK(neumann_eigenvalue(1, 1, 1.0, 1.0) == 0.0);
  CHECK(neumann_eigenvalue(2, 1, 1.0, 1.0) == doctest::Approx(9.8696044).epsilon(1e-9));
  CHECK(neumann_eigenvalue(3, 2, 2.0, 1.0) == doctest::Approx(19.7392088).epsilon(1e-9));
  CHECK_THROWS_AS(neumann_eigenvalue(1, 1, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(neumann_eigenvalue(1, 1, 1.0, -2.0), std::domain_error);
  CHECK_THROWS_AS(neumann_eigenvalue(0, 1, 1.0, 1.0), std::domain_error);
}

TEST_CASE("periodic laplacian symbol") {
  const GridShape s = GridShape::pixels(8, 6);
  CHECK(dft_laplacian_symbol(0, 0, s) == 0.0);
  CHECK(dft_laplacian_symbol(3, 0, s) == doctest::Approx(-4.0));
  CHECK(dft_laplacian_symbol(0, 4, s) == doctest::Approx(-4.0));
  for (Index i = 0; i < s.cols; ++i) {
    for (Index j = 0; j < s.rows; ++j) {
      if (i || j) CHECK(dft_laplacian_symbol(i, j, s) < 0.0);
    }
  }
  CHECK_THROWS_AS(dft_laplacian_symbol(6, 0, s), std::out_of_range);
  CHECK_THROWS_AS(dft_laplacian_symbol(0, -1, s), std::out_of_range);
}

TEST_CASE("grid shape validation") {
  CHECK_THROWS_AS(GridShape(1, 4, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GridShape(4, 4, 0.0, 1.0), std::domain_error);
  const GridShape s(4, 8, 2.0, 1.0);
  CHECK(s.dx() == 0.25);
  CHECK(s.dy() == 0.25);
}

TEST_CASE("plan symbol grids") {
  SUBCASE("alpha = 2 keeps the eigenvalue grid bitwise") {
    const SpectralPlan plan(GridShape::pixels(4, 4), Basis::NeumannCosine, 2.0);
    CHECK((plan.eigenvalues_half_alpha() == plan.eigenvalues()).all());
  }
  SUBCASE("alpha = 1 takes elementwise powers") {
    const GridShape s(4, 4, pi / 2.0, pi);
    const SpectralPlan plan(s, Basis::NeumannCosine, 1.0);
    // k = 1 along x on a domain of width pi/2 gives lambda = 4.
    CHECK(plan.eigenvalues()(0, 1) == doctest::Approx(4.0));
    CHECK(plan.eigenvalues_half_alpha()(0, 1) == doctest::Approx(2.0));
    CHECK(plan.eigenvalues_alpha()(0, 1) == doctest::Approx(4.0));
  }
  SUBCASE("DC entries vanish") {
    const SpectralPlan plan(GridShape::pixels(8, 8), Basis::PeriodicDFT, 1.6);
    CHECK(plan.eigenvalues()(0, 0) == 0.0);
    CHECK(plan.eigenvalues_half_alpha()(0, 0) == 0.0);
    CHECK(plan.eigenvalues_alpha()(0, 0) == 0.0);
    CHECK((plan.eigenvalues() >= 0.0).all());
  }
  SUBCASE("alpha outside (0, 2]") {
    const GridShape s = GridShape::pixels(4, 4);
    CHECK_THROWS_AS(SpectralPlan(s, Basis::NeumannCosine, 0.0), std::domain_error);
    CHECK_THROWS_AS(SpectralPlan(s, Basis::NeumannCosine, 2.5), std::domain_error);
  }
  SUBCASE("neumann grid uses the one-based formula shifted to zero") {
    const GridShape s(6, 5, 3.0, 2.0);
    const SpectralPlan plan(s, Basis::NeumannCosine);
    for (Index l = 0; l < s.rows; ++l) {
      for (Index k = 0; k < s.cols; ++k) {
        CHECK(plan.eigenvalues()(l, k) ==
              doctest::Approx(neumann_eigenvalue(k + 1, l + 1, s.width, s.height)));
      }
    }
  }
}

TEST_CASE("half-alpha symbol is monotone along each frequency axis") {
  for (double alpha : {0.5, 1.0, 1.6, 2.0}) {
    const SpectralPlan plan(GridShape::pixels(12, 10), Basis::NeumannCosine, alpha);
    const ImageGrid& h = plan.eigenvalues_half_alpha();
    CHECK((h.rightCols(9) >= h.leftCols(9)).all());
    CHECK((h.bottomRows(11) >= h.topRows(11)).all());
  }
  // The DFT grid is monotone in |frequency|, i.e. up to the Nyquist index.
  const SpectralPlan dft(GridShape::pixels(12, 10), Basis::PeriodicDFT, 1.4);
  const ImageGrid& h = dft.eigenvalues_half_alpha();
  CHECK((h.block(0, 1, 12, 5) >= h.block(0, 0, 12, 5)).all());
  CHECK((h.block(1, 0, 6, 10) >= h.block(0, 0, 6, 10)).all());
}

TEST_CASE("transform roundtrip") {
  for (Basis basis : {Basis::NeumannCosine, Basis::PeriodicDFT}) {
    for (auto [r, c] : {std::pair<Index, Index>{2, 2}, {3, 5}, {16, 16}, {17, 33}, {64, 64}}) {
      const GridShape s = GridShape::pixels(r, c);
      const SpectralPlan plan(s, basis);
      const ImageGrid u = random_grid(r, c, static_cast<unsigned>(r * 100 + c), -2.0, 3.0);
      const ImageGrid back = plan.inverse(plan.forward(u));
      CHECK(max_abs_diff(back, u) < 1e-12 * u.abs().maxCoeff());
    }
  }
}

TEST_CASE("constant image has only a DC coefficient") {
  for (Basis basis : {Basis::NeumannCosine, Basis::PeriodicDFT}) {
    const SpectralPlan plan(GridShape::pixels(6, 8), basis);
    const ImageGrid u = ImageGrid::Constant(6, 8, 0.375);
    CoefficientGrid c = plan.forward(u);
    CHECK(std::abs(c(0, 0) - 0.375) < 1e-15);
    c(0, 0) = 0.0;
    CHECK(c.abs().maxCoeff() < 1e-15);
    CHECK((plan.inverse(plan.forward(u)) - 0.375).abs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("sampled cosine mode maps to a single coefficient") {
  const GridShape s = GridShape::pixels(8, 8);
  const SpectralPlan plan(s, Basis::NeumannCosine);
  // phi_{2,1}: one-based (m, n) = (2, 1) is zero-based k = 1 along x, l = 0.
  const ImageGrid u = sampled_mode(s, 1, 0);
  const ImageGrid coeffs = plan.forward_cosine(u);
  CHECK(coeffs(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  ImageGrid rest = coeffs;
  rest(0, 1) = 0.0;
  CHECK(rest.abs().maxCoeff() < 1e-13);

  // Independent check of the coefficient convention by brute-force inner products.
  const oracle::DenseMatrix b = oracle::cosine_basis(s);
  const oracle::DenseVector v = oracle::flatten(u);
  for (Index m = 0; m < b.cols(); ++m) {
    const double c = b.col(m).dot(v) / b.col(m).squaredNorm();
    CHECK(std::abs(c - coeffs(m / s.cols, m % s.cols)) < 1e-12);
  }
}

TEST_CASE("real and complex cosine paths agree") {
  const SpectralPlan plan(GridShape::pixels(9, 7), Basis::NeumannCosine);
  const ImageGrid u = random_grid(9, 7, 5);
  const CoefficientGrid c = plan.forward(u);
  const ImageGrid r = plan.forward_cosine(u);
  CHECK((c.real() - r).abs().maxCoeff() < 1e-15);
  CHECK(c.imag().abs().maxCoeff() == 0.0);
  CHECK(max_abs_diff(plan.inverse_cosine(r), u) < 1e-13);

  const SpectralPlan dft(GridShape::pixels(9, 7), Basis::PeriodicDFT);
  CHECK_THROWS(dft.forward_cosine(u));
}

TEST_CASE("fractional laplacian") {
  const GridShape s = GridShape::pixels(8, 8);
  SUBCASE("constant image goes to zero") {
    const SpectralPlan plan(s, Basis::NeumannCosine, 1.3);
    CHECK(apply_fractional_laplacian(plan, ImageGrid::Constant(8, 8, 0.7)).abs().maxCoeff() <
          1e-14);
  }
  SUBCASE("eigenfunction at alpha = 2") {
    const SpectralPlan plan(s, Basis::NeumannCosine, 2.0);
    const ImageGrid phi = sampled_mode(s, 1, 1);
    const double lam = neumann_eigenvalue(2, 2, s.width, s.height);
    CHECK(max_abs_diff(apply_fractional_laplacian(plan, phi), lam * phi) < 1e-13);
  }
  SUBCASE("dense eigen-sum oracle") {
    const ImageGrid u = random_grid(8, 8, 11);
    for (double alpha : {0.5, 1.0, 1.4, 2.0}) {
      const SpectralPlan plan(s, Basis::NeumannCosine, alpha);
      CHECK(max_abs_diff(apply_fractional_laplacian(plan, u),
                         oracle::fractional_laplacian_eigensum(s, u, alpha)) < 1e-8);
    }
  }
  SUBCASE("non-square physical domain") {
    const GridShape r(6, 10, 2.5, 1.5);
    const ImageGrid u = random_grid(6, 10, 12);
    const SpectralPlan plan(r, Basis::NeumannCosine, 1.2);
    CHECK(max_abs_diff(apply_fractional_laplacian(plan, u),
                       oracle::fractional_laplacian_eigensum(r, u, 1.2)) < 1e-8);
  }
  SUBCASE("periodic symbol matches the assembled 5-point laplacian") {
    const GridShape p(6, 10, 3.0, 4.0);
    const SpectralPlan plan(p, Basis::PeriodicDFT);
    const ImageGrid u = random_grid(6, 10, 13);
    const ImageGrid dense = oracle::unflatten(oracle::periodic_laplacian(p) * oracle::flatten(u),
                                              p.rows, p.cols);
    CHECK(max_abs_diff(spectral_laplacian(plan, u), dense) < 1e-10);
    CHECK(max_abs_diff(apply_fractional_laplacian(plan, u), -dense) < 1e-10);
  }
  SUBCASE("shape mismatch") {
    const SpectralPlan plan(s, Basis::NeumannCosine);
    CHECK_THROWS_AS(apply_fractional_laplacian(plan, ImageGrid::Zero(8, 9)),
                    std::invalid_argument);
  }
}

TEST_CASE("plans can be shared across copies") {
  const SpectralPlan a(GridShape::pixels(8, 8), Basis::PeriodicDFT, 1.5);
  const SpectralPlan b = a;
  const ImageGrid u = random_grid(8, 8, 3);
  CHECK((apply_fractional_laplacian(a, u) == apply_fractional_laplacian(b, u)).all());
}
