#include "psbohm/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace psbohm::fourier {

namespace {

constexpr double kPi = std::numbers::pi;

// Plan creation is not thread-safe; execution with new arrays is. Plans are
// created once per (length, sign) with FFTW_UNALIGNED so they run on any
// caller buffer, and kept for the process lifetime.
fftw_plan plan_for(int n, int sign) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<cplx> in(static_cast<size_t>(n)), out(static_cast<size_t>(n));
  fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                 reinterpret_cast<fftw_complex*>(out.data()), sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p) throw std::runtime_error("fourier: fftw plan creation failed");
  cache.emplace(key, p);
  return p;
}

void run_fft(cplx* in, cplx* out, int n, int sign) {
  fftw_execute_dft(plan_for(n, sign), reinterpret_cast<fftw_complex*>(in),
                   reinterpret_cast<fftw_complex*>(out));
}

struct AxisLoop {
  std::size_t lines, stride, block;
  int n;
};

AxisLoop axis_loop(const std::vector<int>& shape, int axis) {
  AxisLoop L;
  L.n = shape[static_cast<size_t>(axis)];
  std::size_t outer = 1, inner = 1;
  for (int d = 0; d < static_cast<int>(shape.size()); ++d) {
    if (d < axis) outer *= static_cast<std::size_t>(shape[static_cast<size_t>(d)]);
    if (d > axis) inner *= static_cast<std::size_t>(shape[static_cast<size_t>(d)]);
  }
  L.lines = outer * inner;
  L.stride = inner;
  L.block = inner * static_cast<std::size_t>(L.n);
  L.lines = outer * inner;
  return L;
}

template <typename Fn>
void for_each_line(GridArray<cplx>& a, int axis, Fn&& fn) {
  AxisLoop L = axis_loop(a.shape(), axis);
  std::vector<cplx> scratch(static_cast<size_t>(L.n)), scratch2(static_cast<size_t>(L.n));
  std::size_t outer = a.size() / L.block;
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < L.stride; ++i) {
      std::size_t base = o * L.block + i;
      for (int j = 0; j < L.n; ++j) scratch[static_cast<size_t>(j)] = a[base + static_cast<size_t>(j) * L.stride];
      fn(scratch.data(), scratch2.data(), L.n);
      for (int j = 0; j < L.n; ++j) a[base + static_cast<size_t>(j) * L.stride] = scratch2[static_cast<size_t>(j)];
    }
  }
}

}  // namespace

void fft_axis(GridArray<cplx>& a, int axis, int fftw_sign) {
  for_each_line(a, axis, [&](cplx* in, cplx* out, int n) { run_fft(in, out, n, fftw_sign); });
}

void axis_to_dual(GridArray<cplx>& a, int axis, const SpatialGrid::Axis& primal, int sign, double scale) {
  const int n = primal.count;
  const double dk = 2.0 * kPi / (primal.step * n);
  std::vector<cplx> phase(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m) {
    double km = (m - n / 2) * dk;
    phase[static_cast<size_t>(m)] = scale * std::polar(1.0, sign * km * primal.min);
  }
  const int fftw_sign = (sign < 0) ? FFTW_FORWARD : FFTW_BACKWARD;
  for_each_line(a, axis, [&](cplx* in, cplx* out, int nn) {
    run_fft(in, out, nn, fftw_sign);
    // out[q] = sum_j in_j e^{sign*2*pi*i*q*j/n}; dual index m has q = (m + n/2) mod n
    for (int m = 0; m < nn; ++m) in[m] = phase[static_cast<size_t>(m)] * out[(m + nn / 2) % nn];
    for (int m = 0; m < nn; ++m) out[m] = in[m];
  });
}

void axis_from_dual(GridArray<cplx>& a, int axis, const SpatialGrid::Axis& primal, int sign, double scale) {
  const int n = primal.count;
  const double dk = 2.0 * kPi / (primal.step * n);
  std::vector<cplx> phase(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m) {
    double km = (m - n / 2) * dk;
    phase[static_cast<size_t>(m)] = std::polar(1.0, -sign * km * primal.min);
  }
  const int fftw_sign = (sign < 0) ? FFTW_BACKWARD : FFTW_FORWARD;
  for_each_line(a, axis, [&](cplx* in, cplx* out, int nn) {
    for (int m = 0; m < nn; ++m) in[m] *= phase[static_cast<size_t>(m)];
    run_fft(in, out, nn, fftw_sign);
    for (int j = 0; j < nn; ++j)
      if (j & 1) out[j] = -out[j];
    for (int j = 0; j < nn; ++j) out[j] *= scale;
  });
}

std::vector<SpatialGrid::Axis> axes_of(const SpatialGrid& g) {
  std::vector<SpatialGrid::Axis> axes;
  for (int d = 0; d < g.dims(); ++d) axes.push_back(g.axis(d));
  return axes;
}

std::vector<SpatialGrid::Axis> concat_axes(const SpatialGrid& a, const SpatialGrid& b) {
  std::vector<SpatialGrid::Axis> axes = axes_of(a);
  for (int d = 0; d < b.dims(); ++d) axes.push_back(b.axis(d));
  return axes;
}

GridArray<cplx> to_frequency(const SpatialGrid& g, const GridArray<cplx>& w) {
  if (w.size() != g.total_points()) throw std::invalid_argument("to_frequency: size mismatch");
  GridArray<cplx> a = w;
  const double s = 1.0 / std::sqrt(2.0 * kPi);
  for (int d = 0; d < g.dims(); ++d) axis_to_dual(a, d, g.axis(d), -1, g.axis(d).step * s);
  return a;
}

GridArray<cplx> from_frequency(const SpatialGrid& g, const GridArray<cplx>& W) {
  if (W.size() != g.total_points()) throw std::invalid_argument("from_frequency: size mismatch");
  GridArray<cplx> a = W;
  const double s = 1.0 / std::sqrt(2.0 * kPi);
  for (int d = 0; d < g.dims(); ++d) {
    double dk = 2.0 * kPi / (g.axis(d).step * g.axis(d).count);
    axis_from_dual(a, d, g.axis(d), -1, dk * s);
  }
  return a;
}

GridArray<cplx> char_forward(const std::vector<SpatialGrid::Axis>& axes, const GridArray<cplx>& F) {
  GridArray<cplx> a = F;
  if (static_cast<int>(axes.size()) != a.rank()) throw std::invalid_argument("char_forward: rank mismatch");
  for (int d = 0; d < a.rank(); ++d) axis_to_dual(a, d, axes[static_cast<size_t>(d)], +1, axes[static_cast<size_t>(d)].step);
  return a;
}

GridArray<cplx> char_inverse(const std::vector<SpatialGrid::Axis>& axes, const GridArray<cplx>& Fhat) {
  GridArray<cplx> a = Fhat;
  if (static_cast<int>(axes.size()) != a.rank()) throw std::invalid_argument("char_inverse: rank mismatch");
  for (int d = 0; d < a.rank(); ++d) {
    const SpatialGrid::Axis& ax = axes[static_cast<size_t>(d)];
    double dk = 2.0 * kPi / (ax.step * ax.count);
    axis_from_dual(a, d, ax, +1, dk / (2.0 * kPi));
  }
  return a;
}

GridArray<cplx> shift_sample(const SpatialGrid& g, const GridArray<cplx>& w, const std::vector<double>& offset) {
  if (static_cast<int>(offset.size()) != g.dims()) throw std::invalid_argument("shift_sample: dims mismatch");
  if (w.size() != g.total_points()) throw std::invalid_argument("shift_sample: size mismatch");
  for (int d = 0; d < g.dims(); ++d)
    if (std::abs(offset[static_cast<size_t>(d)]) > 0.5 * g.span(d))
      throw std::invalid_argument("shift_sample: offset beyond half the grid span");
  GridArray<cplx> a = w;
  for (int d = 0; d < g.dims(); ++d) {
    double off = offset[static_cast<size_t>(d)];
    if (off == 0.0) continue;
    const int n = g.axis(d).count;
    const double dk = 2.0 * kPi / (g.axis(d).step * n);
    std::vector<cplx> mult(static_cast<size_t>(n));
    for (int q = 0; q < n; ++q) {
      double k = (q <= n / 2) ? dk * q : dk * (q - n);
      if (q == n / 2) {
        mult[static_cast<size_t>(q)] = std::cos(dk * (n / 2) * off) / n;
      } else {
        mult[static_cast<size_t>(q)] = std::polar(1.0 / n, k * off);
      }
    }
    for_each_line(a, d, [&](cplx* in, cplx* out, int nn) {
      run_fft(in, out, nn, FFTW_FORWARD);
      for (int q = 0; q < nn; ++q) out[q] *= mult[static_cast<size_t>(q)];
      run_fft(out, in, nn, FFTW_BACKWARD);
      for (int j = 0; j < nn; ++j) out[j] = in[j];
    });
  }
  return a;
}

GridArray<cplx> derivative(const SpatialGrid& g, const GridArray<cplx>& w, int axis, int order) {
  if (axis < 0 || axis >= g.dims()) throw std::invalid_argument("derivative: bad axis");
  if (w.size() != g.total_points()) throw std::invalid_argument("derivative: size mismatch");
  return derivative_along(g.axis(axis), w, axis, order);
}

GridArray<cplx> derivative_along(const SpatialGrid::Axis& ax, const GridArray<cplx>& w, int axis,
                                 int order) {
  if (axis < 0 || axis >= w.rank()) throw std::invalid_argument("derivative_along: bad axis");
  if (order < 1) throw std::invalid_argument("derivative_along: order must be >= 1");
  if (w.shape()[static_cast<size_t>(axis)] != ax.count)
    throw std::invalid_argument("derivative_along: axis length mismatch");
  GridArray<cplx> a = w;
  const int n = ax.count;
  const double dk = 2.0 * kPi / (ax.step * n);
  std::vector<cplx> mult(static_cast<size_t>(n));
  for (int q = 0; q < n; ++q) {
    double k = (q <= n / 2) ? dk * q : dk * (q - n);
    cplx f;
    if (q == n / 2 && (order % 2 == 1)) {
      f = 0.0;
    } else {
      f = std::pow(cplx(0.0, k), order);
    }
    mult[static_cast<size_t>(q)] = f / static_cast<double>(n);
  }
  for_each_line(a, axis, [&](cplx* in, cplx* out, int nn) {
    run_fft(in, out, nn, FFTW_FORWARD);
    for (int q = 0; q < nn; ++q) out[q] *= mult[static_cast<size_t>(q)];
    run_fft(out, in, nn, FFTW_BACKWARD);
    for (int j = 0; j < nn; ++j) out[j] = in[j];
  });
  return a;
}

}  // namespace psbohm::fourier
