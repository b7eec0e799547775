#pragma once

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "psbohm/grid.hpp"

namespace psbohm {

/// One monomial coeff * x^xpow * p^ppow (componentwise powers, unused
/// dimensions stay 0).
struct PolyTerm {
  std::array<int, 3> xpow{0, 0, 0};
  std::array<int, 3> ppow{0, 0, 0};
  cplx coeff{0.0, 0.0};
};

/// One term c(x) * p^ppow with a grid-sampled position coefficient. Covers
/// multiplicative potentials and position-dependent corrections that have no
/// closed polynomial form.
struct GridTerm {
  GridArray<cplx> coeff;
  std::array<int, 3> ppow{0, 0, 0};
};

/// Polynomial phase-space symbol: a sum of PolyTerms plus optional GridTerms
/// over a shared position grid. Closed under the operations the star-product
/// and bracket machinery needs: sums, products, partial derivatives in x and
/// p (spectral on grid coefficients), evaluation, and sampling onto a
/// phase-space lattice.
class PolySymbol {
 public:
  PolySymbol() = default;
  explicit PolySymbol(int dims);

  static PolySymbol constant(int dims, cplx c);
  static PolySymbol monomial(int dims, const std::array<int, 3>& xpow, const std::array<int, 3>& ppow,
                             cplx coeff);
  /// Convenience 1D monomial coeff * x^xp * p^pp.
  static PolySymbol monomial_1d(int xp, int pp, cplx coeff);

  int dims() const { return dims_; }
  const std::vector<PolyTerm>& terms() const { return terms_; }
  const std::vector<GridTerm>& grid_terms() const { return grid_terms_; }
  bool has_grid_terms() const { return !grid_terms_.empty(); }
  const SpatialGrid& xgrid() const;

  void add(const PolyTerm& t);
  void add_grid(const SpatialGrid& g, GridTerm t);
  void add_symbol(const PolySymbol& other);
  void scale(cplx s);

  /// Max total p-degree over all terms (grid terms included).
  int p_degree() const;
  /// Max total x-degree over pure terms; grid coefficients do not count.
  int x_degree() const;
  bool zero() const { return terms_.empty() && grid_terms_.empty(); }

  PolySymbol derivative_x(int axis) const;
  PolySymbol derivative_p(int axis) const;

  /// Pointwise product. Pure*grid products sample the pure x-monomial onto
  /// the grid; mixing two different position grids throws.
  PolySymbol times(const PolySymbol& other) const;

  /// Evaluate at a point. Grid terms require the node's linear index on the
  /// position grid; the overload without one throws if grid terms exist.
  cplx evaluate(const double* x, const double* p) const;
  cplx evaluate_at(const double* x, const double* p, std::size_t node) const;

  /// Dense samples over xg x pg (rank 2*dims, x-axes first). Grid terms
  /// require xg to equal their stored grid.
  GridArray<cplx> sample(const SpatialGrid& xg, const SpatialGrid& pg) const;

  /// Merge duplicate monomials and drop exactly-zero terms.
  void simplify();

 private:
  int dims_ = 1;
  std::vector<PolyTerm> terms_;
  std::vector<GridTerm> grid_terms_;
  std::optional<SpatialGrid> xgrid_;
};

/// Gridded phase-space function F(x, p) over a tensor-product box, tagged
/// with hbar. Samples are rank 2*dims, x-axes first, matching
/// fourier::concat_axes(xgrid, pgrid).
struct PhaseSpaceFunction {
  SpatialGrid xgrid;
  SpatialGrid pgrid;
  GridArray<cplx> samples;
  double hbar = 1.0;

  int dims() const { return xgrid.dims(); }
};

PhaseSpaceFunction make_phase_function(const SpatialGrid& xg, const SpatialGrid& pg, double hbar);

/// A Weyl-ordered observable symbol in either polynomial or gridded form.
class WeylSymbol {
 public:
  WeylSymbol(PolySymbol p, double hbar);
  explicit WeylSymbol(PhaseSpaceFunction f);

  bool is_poly() const { return std::holds_alternative<PolySymbol>(rep_); }
  const PolySymbol& poly() const;
  const PhaseSpaceFunction& field() const;
  double hbar() const { return hbar_; }

 private:
  std::variant<PolySymbol, PhaseSpaceFunction> rep_;
  double hbar_ = 1.0;
};

/// Samples of x_axis^power (or with p_side, p_axis^power) on the phase-space
/// lattice of (xg, pg).
GridArray<cplx> coord_power_samples(const SpatialGrid& xg, const SpatialGrid& pg, bool p_side,
                                    int axis, int power);

/// {a, b} = sum_d (da/dx_d db/dp_d - da/dp_d db/dx_d).
PolySymbol poisson_bracket(const PolySymbol& a, const PolySymbol& b);

}  // namespace psbohm
