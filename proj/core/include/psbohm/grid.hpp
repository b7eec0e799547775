#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace psbohm {

using cplx = std::complex<double>;

constexpr int kMaxDims = 3;

/// Uniform tensor-product grid in 1..3 dimensions.
///
/// Per-axis counts must be powers of two (>= 16) so that every spectral
/// operation built on top runs as an exact radix-2 transform. The grid covers
/// the half-open box [min, min + count*step) per axis; quadrature below uses
/// uniform weights, which on this box is the trapezoid rule for periodic or
/// boundary-decaying data.
class SpatialGrid {
 public:
  struct Axis {
    double min = 0.0;
    double step = 0.0;
    int count = 0;
  };

  SpatialGrid() = default;
  explicit SpatialGrid(std::vector<Axis> axes);

  static SpatialGrid uniform_1d(double min, double step, int count);
  /// Centered cube: each axis spans [-half_span, half_span) with `count` nodes.
  static SpatialGrid centered(int dims, double half_span, int count);

  int dims() const { return static_cast<int>(axes_.size()); }
  const Axis& axis(int d) const { return axes_[static_cast<size_t>(d)]; }
  double coord(int d, int i) const { return axes_[static_cast<size_t>(d)].min + i * axes_[static_cast<size_t>(d)].step; }
  std::vector<double> axis_coords(int d) const;

  std::size_t total_points() const;
  std::array<int, kMaxDims> shape() const;
  double volume_element() const;
  double span(int d) const { return axes_[static_cast<size_t>(d)].step * axes_[static_cast<size_t>(d)].count; }

  /// Fourier-dual grid: same counts, spacing 2*pi/(count*step), zero-centered
  /// (node count/2 sits exactly at frequency 0). Max representable frequency
  /// per axis is pi/step (Nyquist).
  SpatialGrid dual() const;

  /// True if node count/2 sits at coordinate 0 on every axis (within tol*step).
  bool is_zero_centered(double tol = 1e-9) const;

  bool operator==(const SpatialGrid& o) const;
  bool operator!=(const SpatialGrid& o) const { return !(*this == o); }

 private:
  std::vector<Axis> axes_;
};

/// Dense row-major array over up to 6 axes (configuration grids use rank =
/// dims, phase-space grids rank = 2*dims). Minimal by design: the library
/// needs indexing, iteration, and axis-wise transforms, nothing more.
template <typename T>
class GridArray {
 public:
  GridArray() = default;
  GridArray(std::vector<int> shape_in) : shape_(std::move(shape_in)) {
    std::size_t n = 1;
    for (int s : shape_) n *= static_cast<std::size_t>(s);
    data_.assign(n, T{});
  }

  int rank() const { return static_cast<int>(shape_.size()); }
  const std::vector<int>& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  std::size_t index(const std::vector<int>& idx) const {
    std::size_t lin = 0;
    for (std::size_t d = 0; d < shape_.size(); ++d) lin = lin * static_cast<std::size_t>(shape_[d]) + static_cast<std::size_t>(idx[d]);
    return lin;
  }
  T& at(const std::vector<int>& idx) { return data_[index(idx)]; }
  const T& at(const std::vector<int>& idx) const { return data_[index(idx)]; }

  /// Decompose a linear index into per-axis indices.
  std::vector<int> unravel(std::size_t lin) const {
    std::vector<int> idx(shape_.size());
    for (int d = rank() - 1; d >= 0; --d) {
      idx[static_cast<size_t>(d)] = static_cast<int>(lin % static_cast<std::size_t>(shape_[static_cast<size_t>(d)]));
      lin /= static_cast<std::size_t>(shape_[static_cast<size_t>(d)]);
    }
    return idx;
  }

  typename std::vector<T>::iterator begin() { return data_.begin(); }
  typename std::vector<T>::iterator end() { return data_.end(); }
  typename std::vector<T>::const_iterator begin() const { return data_.begin(); }
  typename std::vector<T>::const_iterator end() const { return data_.end(); }

 private:
  std::vector<int> shape_;
  std::vector<T> data_;
};

/// Uniform-weight quadrature: sum(values) * volume_element. Exact to spectral
/// accuracy for data that decays below the declared-support threshold at the
/// box faces, and integrates a constant to constant * box volume.
double quadrature(const SpatialGrid& g, const GridArray<double>& values);
cplx quadrature(const SpatialGrid& g, const GridArray<cplx>& values);

/// Quadrature over the tensor-product phase-space box (xgrid x pgrid).
double quadrature2(const SpatialGrid& xg, const SpatialGrid& pg, const GridArray<double>& values);
cplx quadrature2(const SpatialGrid& xg, const SpatialGrid& pg, const GridArray<cplx>& values);

/// Nearest grid node to a point; throws if the point lies outside the box.
std::vector<int> nearest_node(const SpatialGrid& g, const std::vector<double>& x);

}  // namespace psbohm
