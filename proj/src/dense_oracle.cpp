#include "fracinpaint/dense_oracle.hpp"

#include <Eigen/LU>

#include <cmath>
#include <numbers>

namespace fracinpaint::oracle {

DenseVector flatten(const ImageGrid& g) {
  DenseVector v(g.size());
  for (Index i = 0; i < g.rows(); ++i) {
    for (Index j = 0; j < g.cols(); ++j) v(i * g.cols() + j) = g(i, j);
  }
  return v;
}

ImageGrid unflatten(const DenseVector& v, Index rows, Index cols) {
  ImageGrid g(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) g(i, j) = v(i * cols + j);
  }
  return g;
}

DenseMatrix cosine_basis(const GridShape& shape) {
  const Index n = shape.size();
  DenseMatrix b(n, n);
  const double pi = std::numbers::pi;
  for (Index i = 0; i < shape.rows; ++i) {
    const double y = (i + 0.5) * shape.dy();
    for (Index j = 0; j < shape.cols; ++j) {
      const double x = (j + 0.5) * shape.dx();
      for (Index l = 0; l < shape.rows; ++l) {
        for (Index k = 0; k < shape.cols; ++k) {
          b(i * shape.cols + j, l * shape.cols + k) =
              std::cos(k * pi * x / shape.width) * std::cos(l * pi * y / shape.height);
        }
      }
    }
  }
  return b;
}

DenseVector cosine_eigenvalues(const GridShape& shape) {
  DenseVector lam(shape.size());
  const double pi = std::numbers::pi;
  for (Index l = 0; l < shape.rows; ++l) {
    for (Index k = 0; k < shape.cols; ++k) {
      const double wx = k * pi / shape.width;
      const double wy = l * pi / shape.height;
      lam(l * shape.cols + k) = wx * wx + wy * wy;
    }
  }
  return lam;
}

DenseMatrix cosine_operator(const GridShape& shape, const DenseVector& symbol) {
  const DenseMatrix b = cosine_basis(shape);
  const DenseMatrix b_inv = b.partialPivLu().inverse();
  return b * symbol.asDiagonal() * b_inv;
}

ImageGrid fractional_laplacian_eigensum(const GridShape& shape, const ImageGrid& u, double alpha) {
  const DenseMatrix b = cosine_basis(shape);
  const DenseVector lam = cosine_eigenvalues(shape);
  const DenseVector uv = flatten(u);
  DenseVector out = DenseVector::Zero(uv.size());
  for (Index m = 0; m < b.cols(); ++m) {
    const double coeff = b.col(m).dot(uv) / b.col(m).squaredNorm();
    const double weight = lam(m) == 0.0 ? 0.0 : std::pow(lam(m), alpha / 2.0);
    out += coeff * weight * b.col(m);
  }
  return unflatten(out, shape.rows, shape.cols);
}

DenseMatrix periodic_laplacian(const GridShape& shape) {
  const Index rows = shape.rows;
  const Index cols = shape.cols;
  const double ax = 1.0 / (shape.dx() * shape.dx());
  const double ay = 1.0 / (shape.dy() * shape.dy());
  DenseMatrix lap = DenseMatrix::Zero(shape.size(), shape.size());
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const Index p = i * cols + j;
      lap(p, p) += -2.0 * ax - 2.0 * ay;
      lap(p, i * cols + (j + 1) % cols) += ax;
      lap(p, i * cols + (j + cols - 1) % cols) += ax;
      lap(p, ((i + 1) % rows) * cols + j) += ay;
      lap(p, ((i + rows - 1) % rows) * cols + j) += ay;
    }
  }
  return lap;
}

namespace {

DenseVector explicit_forcing(const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
                             const ModelParams& p, const GridShape& shape) {
  return flatten(curvature(u, p.delta, shape.spacing())) + flatten(lam.values() * (f - u));
}

ImageGrid solve(const DenseMatrix& a, const DenseVector& rhs, const GridShape& shape) {
  return unflatten(a.partialPivLu().solve(rhs), shape.rows, shape.cols);
}

}  // namespace

ImageGrid fms_step(const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
                   const ModelParams& p, const GridShape& shape) {
  const Index n = shape.size();
  const DenseMatrix id = DenseMatrix::Identity(n, n);
  const DenseVector lam_modes = cosine_eigenvalues(shape);
  DenseMatrix half;  // (-Lap)^(alpha/2)
  DenseMatrix full;  // (-Lap)^alpha
  if (p.alpha == 2.0) {
    const DenseMatrix lap = cosine_operator(shape, -lam_modes);
    half = -lap;
    full = lap * lap;
  } else {
    half = cosine_operator(shape, lam_modes.array().pow(p.alpha / 2.0).matrix());
    full = cosine_operator(shape, lam_modes.array().pow(p.alpha).matrix());
  }
  const double diag = 1.0 / p.dt + p.c2;
  const DenseMatrix lhs = diag * id + p.mu * full + p.c1 * half;
  const DenseVector uv = flatten(u);
  const DenseVector rhs = diag * uv + p.c1 * half * uv + explicit_forcing(u, f, lam, p, shape);
  return solve(lhs, rhs, shape);
}

ImageGrid cvms_step(const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
                    const ModelParams& p, const GridShape& shape) {
  const DenseMatrix lap = periodic_laplacian(shape);
  const DenseMatrix id = DenseMatrix::Identity(shape.size(), shape.size());
  const double diag = 1.0 / p.dt + p.c2;
  const DenseMatrix lhs = diag * id - (p.mu + p.c1) * lap;
  const DenseVector uv = flatten(u);
  const DenseVector rhs = diag * uv - p.c1 * lap * uv + explicit_forcing(u, f, lam, p, shape);
  return solve(lhs, rhs, shape);
}

ImageGrid tvl2_step(const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
                    const ModelParams& p, const GridShape& shape) {
  const DenseMatrix lap = periodic_laplacian(shape);
  const DenseMatrix id = DenseMatrix::Identity(shape.size(), shape.size());
  const double diag = 1.0 / p.dt + p.c2;
  const DenseMatrix lhs = diag * id - p.c1 * lap;
  const DenseVector uv = flatten(u);
  const DenseVector rhs = diag * uv - p.c1 * lap * uv + explicit_forcing(u, f, lam, p, shape);
  return solve(lhs, rhs, shape);
}

ImageGrid tvh1_step(const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
                    const ModelParams& p, const GridShape& shape) {
  const DenseMatrix lap = periodic_laplacian(shape);
  const DenseMatrix bilap = lap * lap;
  const DenseMatrix id = DenseMatrix::Identity(shape.size(), shape.size());
  const double diag = 1.0 / p.dt + p.c2;
  const DenseMatrix lhs = diag * id + p.c1 * bilap;
  const DenseVector uv = flatten(u);
  const DenseVector kappa = flatten(curvature(u, p.delta, shape.spacing()));
  const DenseVector rhs =
      diag * uv + p.c1 * bilap * uv - lap * kappa + flatten(lam.values() * (f - u));
  return solve(lhs, rhs, shape);
}

ImageGrid step(Model model, const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
               const ModelParams& p, const GridShape& shape) {
  switch (model) {
    case Model::FMS: return fms_step(u, f, lam, p, shape);
    case Model::CVMS: return cvms_step(u, f, lam, p, shape);
    case Model::TVL2: return tvl2_step(u, f, lam, p, shape);
    case Model::TVH1: return tvh1_step(u, f, lam, p, shape);
  }
  throw std::invalid_argument("oracle::step: unknown model");
}

double max_relative_error(const ImageGrid& a, const ImageGrid& b) {
  require_same_shape(a, b, "max_relative_error");
  const double scale = b.abs().maxCoeff();
  const double err = (a - b).abs().maxCoeff();
  return scale > 0.0 ? err / scale : err;
}

}  // namespace fracinpaint::oracle
