#pragma once

// Dense, transform-free reference implementations. Everything here assembles
// explicit matrices over the row-major vectorised grid (index i * cols + j) and
// is meant for grids of at most a few hundred pixels.

#include "fracinpaint/fields.hpp"
#include "fracinpaint/grid.hpp"
#include "fracinpaint/solvers.hpp"

namespace fracinpaint::oracle {

using DenseMatrix = Eigen::MatrixXd;
using DenseVector = Eigen::VectorXd;

DenseVector flatten(const ImageGrid& g);
ImageGrid unflatten(const DenseVector& v, Index rows, Index cols);

/// Column m holds the cosine eigenfunction cos(k pi x/a) cos(l pi y/b) of mode
/// m = l * cols + k, sampled at the cell centres.
DenseMatrix cosine_basis(const GridShape& shape);

/// Neumann eigenvalue of mode m = l * cols + k, evaluated directly.
DenseVector cosine_eigenvalues(const GridShape& shape);

/// B diag(symbol) B^-1 with B = cosine_basis(shape), inverted by LU.
DenseMatrix cosine_operator(const GridShape& shape, const DenseVector& symbol);

/// sum_m <u, phi_m>/<phi_m, phi_m> * lambda_m^(alpha/2) * phi_m, by explicit
/// inner products.
ImageGrid fractional_laplacian_eigensum(const GridShape& shape, const ImageGrid& u, double alpha);

/// Periodic 5-point Laplacian assembled from its stencil.
DenseMatrix periodic_laplacian(const GridShape& shape);

/// One step of each model as a dense linear solve. kappa comes from curvature().
ImageGrid fms_step(const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
                   const ModelParams& p, const GridShape& shape);
ImageGrid cvms_step(const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
                    const ModelParams& p, const GridShape& shape);
ImageGrid tvl2_step(const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
                    const ModelParams& p, const GridShape& shape);
ImageGrid tvh1_step(const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
                    const ModelParams& p, const GridShape& shape);

ImageGrid step(Model model, const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
               const ModelParams& p, const GridShape& shape);

/// max|a - b| / max|b|
double max_relative_error(const ImageGrid& a, const ImageGrid& b);

}  // namespace fracinpaint::oracle
