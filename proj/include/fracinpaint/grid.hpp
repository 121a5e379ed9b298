#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace fracinpaint {

using Index = Eigen::Index;

/// Row-major dense 2D field; row index is y, column index is x.
template <typename Scalar>
using Grid = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using ImageGrid = Grid<double>;
using CoefficientGrid = Grid<std::complex<double>>;

struct Spacing {
  double dx = 1.0;
  double dy = 1.0;
};

/// Pixel counts plus the physical extent of the domain [0,width] x [0,height].
/// Samples sit at cell centres, so dx = width / cols and dy = height / rows.
struct GridShape {
  Index rows = 0;
  Index cols = 0;
  double width = 0.0;
  double height = 0.0;

  GridShape() = default;
  GridShape(Index rows_, Index cols_, double width_, double height_)
      : rows(rows_), cols(cols_), width(width_), height(height_) {
    if (rows < 2 || cols < 2) {
      throw std::invalid_argument("GridShape: need at least 2x2 pixels");
    }
    if (!(width > 0.0) || !(height > 0.0)) {
      throw std::domain_error("GridShape: domain extents must be positive");
    }
  }

  /// Unit pixel spacing: width = cols, height = rows.
  static GridShape pixels(Index rows, Index cols) {
    return GridShape(rows, cols, static_cast<double>(cols), static_cast<double>(rows));
  }

  template <typename Derived>
  static GridShape of(const Eigen::DenseBase<Derived>& g) {
    return pixels(g.rows(), g.cols());
  }

  double dx() const { return width / static_cast<double>(cols); }
  double dy() const { return height / static_cast<double>(rows); }
  Spacing spacing() const { return {dx(), dy()}; }
  double cell_area() const { return dx() * dy(); }
  Index size() const { return rows * cols; }

  template <typename Derived>
  bool matches(const Eigen::DenseBase<Derived>& g) const {
    return g.rows() == rows && g.cols() == cols;
  }

  friend bool operator==(const GridShape&, const GridShape&) = default;
};

template <typename A, typename B>
void require_same_shape(const Eigen::DenseBase<A>& a, const Eigen::DenseBase<B>& b,
                        const char* where) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(where) + ": shape mismatch (" +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()) + ")");
  }
}

template <typename Derived>
bool all_finite(const Eigen::DenseBase<Derived>& g) {
  return g.derived().array().isFinite().all();
}

}  // namespace fracinpaint
