#pragma once

#include <vector>

#include "psbohm/grid.hpp"

namespace psbohm::fourier {

/// Fixed global convention. Wavefunction-side transforms are symmetric
/// (1/sqrt(2*pi) per axis):
///
///   to_frequency:   W(k) = (2*pi)^{-d/2} Int w(x) e^{-i k.x} dx
///   from_frequency: w(x) = (2*pi)^{-d/2} Int W(k) e^{+i k.x} dk
///
/// with k running over the zero-centered dual grid. The pair is exactly
/// unitary on the grid (discrete Parseval holds to roundoff) and maps the
/// unit Gaussian pi^{-1/4} e^{-x^2/2} to itself.
///
/// Field-side (characteristic function) transforms carry no prefactor
/// forward and (2*pi)^{-rank} backward:
///
///   char_forward: C[F](k...) = Int F e^{+i k.x} dV
///
/// Every sampled axis is an independent SpatialGrid::Axis so phase-space
/// arrays transform by concatenating x-axes and p-axes.

std::vector<SpatialGrid::Axis> axes_of(const SpatialGrid& g);
std::vector<SpatialGrid::Axis> concat_axes(const SpatialGrid& a, const SpatialGrid& b);

GridArray<cplx> to_frequency(const SpatialGrid& g, const GridArray<cplx>& w);
GridArray<cplx> from_frequency(const SpatialGrid& g, const GridArray<cplx>& W);

GridArray<cplx> char_forward(const std::vector<SpatialGrid::Axis>& axes, const GridArray<cplx>& F);
GridArray<cplx> char_inverse(const std::vector<SpatialGrid::Axis>& axes, const GridArray<cplx>& Fhat);

/// Samples of w(x + offset) by spectral phase shift; exact for band-limited
/// data. Throws if any |offset_d| exceeds half the axis span (the shifted
/// bulk would wrap around the periodic box).
GridArray<cplx> shift_sample(const SpatialGrid& g, const GridArray<cplx>& w, const std::vector<double>& offset);

/// Spectral partial derivative d^order/dx_axis^order. The Nyquist bin is
/// zeroed for odd orders (its derivative sign is ambiguous; declared-support
/// data has no content there).
GridArray<cplx> derivative(const SpatialGrid& g, const GridArray<cplx>& w, int axis, int order);

/// Same derivative along one axis of an arbitrary-rank array whose axis
/// metadata is supplied explicitly. Phase-space arrays concatenate x- and
/// p-axes, so their rank exceeds any single SpatialGrid.
GridArray<cplx> derivative_along(const SpatialGrid::Axis& ax, const GridArray<cplx>& w, int axis,
                                 int order);

/// Unnormalized in-place FFT along one axis (fftw_sign: -1 forward, +1
/// backward). Exposed for modules that manage their own phases.
void fft_axis(GridArray<cplx>& a, int axis, int fftw_sign);

/// One axis of the convention above, exposed so modules can transform a
/// subset of axes (e.g. the p-axes of a phase-space array only).
/// sign is the exponent sign of the forward direction (+1 for char).
void axis_to_dual(GridArray<cplx>& a, int axis, const SpatialGrid::Axis& primal, int sign, double scale);
void axis_from_dual(GridArray<cplx>& a, int axis, const SpatialGrid::Axis& primal, int sign, double scale);

}  // namespace psbohm::fourier
