#include "psbohm/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace psbohm {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

SpatialGrid::SpatialGrid(std::vector<Axis> axes) : axes_(std::move(axes)) {
  if (axes_.empty() || axes_.size() > static_cast<size_t>(kMaxDims))
    throw std::invalid_argument("grid: dims must be 1..3");
  for (const Axis& a : axes_) {
    if (!power_of_two(a.count) || a.count < 16)
      throw std::invalid_argument("grid: axis count must be a power of two >= 16, got " + std::to_string(a.count));
    if (!(a.step > 0.0) || !std::isfinite(a.step) || !std::isfinite(a.min))
      throw std::invalid_argument("grid: axis step must be positive and finite");
  }
}

SpatialGrid SpatialGrid::uniform_1d(double min, double step, int count) {
  return SpatialGrid({Axis{min, step, count}});
}

SpatialGrid SpatialGrid::centered(int dims, double half_span, int count) {
  if (!(half_span > 0.0)) throw std::invalid_argument("grid: half_span must be positive");
  std::vector<Axis> axes;
  double step = 2.0 * half_span / count;
  for (int d = 0; d < dims; ++d) axes.push_back(Axis{-half_span, step, count});
  return SpatialGrid(std::move(axes));
}

std::vector<double> SpatialGrid::axis_coords(int d) const {
  const Axis& a = axes_[static_cast<size_t>(d)];
  std::vector<double> x(static_cast<size_t>(a.count));
  for (int i = 0; i < a.count; ++i) x[static_cast<size_t>(i)] = a.min + i * a.step;
  return x;
}

std::size_t SpatialGrid::total_points() const {
  std::size_t n = 1;
  for (const Axis& a : axes_) n *= static_cast<std::size_t>(a.count);
  return n;
}

std::array<int, kMaxDims> SpatialGrid::shape() const {
  std::array<int, kMaxDims> s{1, 1, 1};
  for (int d = 0; d < dims(); ++d) s[static_cast<size_t>(d)] = axes_[static_cast<size_t>(d)].count;
  return s;
}

double SpatialGrid::volume_element() const {
  double v = 1.0;
  for (const Axis& a : axes_) v *= a.step;
  return v;
}

SpatialGrid SpatialGrid::dual() const {
  std::vector<Axis> axes;
  for (const Axis& a : axes_) {
    double dk = 2.0 * std::numbers::pi / (a.step * a.count);
    axes.push_back(Axis{-dk * (a.count / 2), dk, a.count});
  }
  return SpatialGrid(std::move(axes));
}

bool SpatialGrid::is_zero_centered(double tol) const {
  for (const Axis& a : axes_) {
    double center = a.min + (a.count / 2) * a.step;
    if (std::abs(center) > tol * a.step) return false;
  }
  return true;
}

bool SpatialGrid::operator==(const SpatialGrid& o) const {
  if (axes_.size() != o.axes_.size()) return false;
  for (size_t d = 0; d < axes_.size(); ++d) {
    const Axis& a = axes_[d];
    const Axis& b = o.axes_[d];
    double tol = 1e-12 * std::max(std::abs(a.step), std::abs(b.step));
    if (a.count != b.count || std::abs(a.min - b.min) > tol || std::abs(a.step - b.step) > tol) return false;
  }
  return true;
}

double quadrature(const SpatialGrid& g, const GridArray<double>& values) {
  if (values.size() != g.total_points()) throw std::invalid_argument("quadrature: size mismatch");
  double s = 0.0;
  for (double v : values) s += v;
  return s * g.volume_element();
}

cplx quadrature(const SpatialGrid& g, const GridArray<cplx>& values) {
  if (values.size() != g.total_points()) throw std::invalid_argument("quadrature: size mismatch");
  cplx s = 0.0;
  for (const cplx& v : values) s += v;
  return s * g.volume_element();
}

double quadrature2(const SpatialGrid& xg, const SpatialGrid& pg, const GridArray<double>& values) {
  if (values.size() != xg.total_points() * pg.total_points())
    throw std::invalid_argument("quadrature2: size mismatch");
  double s = 0.0;
  for (double v : values) s += v;
  return s * xg.volume_element() * pg.volume_element();
}

cplx quadrature2(const SpatialGrid& xg, const SpatialGrid& pg, const GridArray<cplx>& values) {
  if (values.size() != xg.total_points() * pg.total_points())
    throw std::invalid_argument("quadrature2: size mismatch");
  cplx s = 0.0;
  for (const cplx& v : values) s += v;
  return s * xg.volume_element() * pg.volume_element();
}

std::vector<int> nearest_node(const SpatialGrid& g, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != g.dims()) throw std::invalid_argument("nearest_node: dims mismatch");
  std::vector<int> idx(x.size());
  for (int d = 0; d < g.dims(); ++d) {
    const SpatialGrid::Axis& a = g.axis(d);
    double t = (x[static_cast<size_t>(d)] - a.min) / a.step;
    long i = std::lround(t);
    if (i < 0 || i >= a.count) throw std::invalid_argument("nearest_node: point outside grid box");
    idx[static_cast<size_t>(d)] = static_cast<int>(i);
  }
  return idx;
}

}  // namespace psbohm
