#include "psbohm/phase_space.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "psbohm/fourier.hpp"

namespace psbohm {

namespace {

int total_degree(const std::array<int, 3>& pw, int dims) {
  int s = 0;
  for (int d = 0; d < dims; ++d) s += pw[static_cast<size_t>(d)];
  return s;
}

double ipow(double b, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// x^pw (componentwise) sampled over every node of g, row-major.
std::vector<double> monomial_over(const SpatialGrid& g, const std::array<int, 3>& pw) {
  std::vector<double> out(g.total_points(), 1.0);
  std::vector<int> idx(static_cast<size_t>(g.dims()), 0);
  for (std::size_t lin = 0; lin < out.size(); ++lin) {
    double v = 1.0;
    for (int d = 0; d < g.dims(); ++d) v *= ipow(g.coord(d, idx[static_cast<size_t>(d)]), pw[static_cast<size_t>(d)]);
    out[lin] = v;
    for (int d = g.dims() - 1; d >= 0; --d) {
      if (++idx[static_cast<size_t>(d)] < g.axis(d).count) break;
      idx[static_cast<size_t>(d)] = 0;
    }
  }
  return out;
}

}  // namespace

PolySymbol::PolySymbol(int dims) : dims_(dims) {
  if (dims < 1 || dims > kMaxDims) throw std::invalid_argument("PolySymbol: dims out of range");
}

PolySymbol PolySymbol::constant(int dims, cplx c) {
  PolySymbol s(dims);
  if (c != 0.0) s.terms_.push_back(PolyTerm{{0, 0, 0}, {0, 0, 0}, c});
  return s;
}

PolySymbol PolySymbol::monomial(int dims, const std::array<int, 3>& xpow,
                                const std::array<int, 3>& ppow, cplx coeff) {
  PolySymbol s(dims);
  for (int d = dims; d < 3; ++d) {
    if (xpow[static_cast<size_t>(d)] != 0 || ppow[static_cast<size_t>(d)] != 0)
      throw std::invalid_argument("PolySymbol: power on axis beyond dims");
  }
  if (coeff != 0.0) s.terms_.push_back(PolyTerm{xpow, ppow, coeff});
  return s;
}

PolySymbol PolySymbol::monomial_1d(int xp, int pp, cplx coeff) {
  return monomial(1, {xp, 0, 0}, {pp, 0, 0}, coeff);
}

const SpatialGrid& PolySymbol::xgrid() const {
  if (!xgrid_) throw std::logic_error("PolySymbol: no position grid attached");
  return *xgrid_;
}

void PolySymbol::add(const PolyTerm& t) {
  if (t.coeff != 0.0) terms_.push_back(t);
}

void PolySymbol::add_grid(const SpatialGrid& g, GridTerm t) {
  if (t.coeff.size() != g.total_points())
    throw std::invalid_argument("PolySymbol: grid coefficient size mismatch");
  if (g.dims() != dims_) throw std::invalid_argument("PolySymbol: grid dims mismatch");
  if (xgrid_ && *xgrid_ != g) throw std::invalid_argument("PolySymbol: mixed position grids");
  if (!xgrid_) xgrid_ = g;
  grid_terms_.push_back(std::move(t));
}

void PolySymbol::add_symbol(const PolySymbol& other) {
  if (other.dims_ != dims_) throw std::invalid_argument("PolySymbol: dims mismatch");
  for (const auto& t : other.terms_) add(t);
  for (const auto& t : other.grid_terms_) add_grid(other.xgrid(), t);
}

void PolySymbol::scale(cplx s) {
  for (auto& t : terms_) t.coeff *= s;
  for (auto& t : grid_terms_)
    for (auto& c : t.coeff) c *= s;
}

int PolySymbol::p_degree() const {
  int deg = 0;
  for (const auto& t : terms_) deg = std::max(deg, total_degree(t.ppow, dims_));
  for (const auto& t : grid_terms_) deg = std::max(deg, total_degree(t.ppow, dims_));
  return deg;
}

int PolySymbol::x_degree() const {
  int deg = 0;
  for (const auto& t : terms_) deg = std::max(deg, total_degree(t.xpow, dims_));
  return deg;
}

PolySymbol PolySymbol::derivative_x(int axis) const {
  if (axis < 0 || axis >= dims_) throw std::invalid_argument("PolySymbol: bad axis");
  PolySymbol out(dims_);
  for (const auto& t : terms_) {
    int e = t.xpow[static_cast<size_t>(axis)];
    if (e == 0) continue;
    PolyTerm d = t;
    d.xpow[static_cast<size_t>(axis)] = e - 1;
    d.coeff *= static_cast<double>(e);
    out.add(d);
  }
  for (const auto& t : grid_terms_) {
    GridTerm d;
    d.ppow = t.ppow;
    d.coeff = fourier::derivative(*xgrid_, t.coeff, axis, 1);
    out.add_grid(*xgrid_, std::move(d));
  }
  return out;
}

PolySymbol PolySymbol::derivative_p(int axis) const {
  if (axis < 0 || axis >= dims_) throw std::invalid_argument("PolySymbol: bad axis");
  PolySymbol out(dims_);
  for (const auto& t : terms_) {
    int e = t.ppow[static_cast<size_t>(axis)];
    if (e == 0) continue;
    PolyTerm d = t;
    d.ppow[static_cast<size_t>(axis)] = e - 1;
    d.coeff *= static_cast<double>(e);
    out.add(d);
  }
  for (const auto& t : grid_terms_) {
    int e = t.ppow[static_cast<size_t>(axis)];
    if (e == 0) continue;
    GridTerm d;
    d.ppow = t.ppow;
    d.ppow[static_cast<size_t>(axis)] = e - 1;
    d.coeff = t.coeff;
    for (auto& c : d.coeff) c *= static_cast<double>(e);
    out.add_grid(*xgrid_, std::move(d));
  }
  return out;
}

PolySymbol PolySymbol::times(const PolySymbol& other) const {
  if (other.dims_ != dims_) throw std::invalid_argument("PolySymbol: dims mismatch");
  if (xgrid_ && other.xgrid_ && *xgrid_ != *other.xgrid_)
    throw std::invalid_argument("PolySymbol: mixed position grids");
  const std::optional<SpatialGrid>& grid = xgrid_ ? xgrid_ : other.xgrid_;
  PolySymbol out(dims_);

  for (const auto& a : terms_)
    for (const auto& b : other.terms_) {
      PolyTerm t;
      for (int d = 0; d < 3; ++d) {
        t.xpow[static_cast<size_t>(d)] = a.xpow[static_cast<size_t>(d)] + b.xpow[static_cast<size_t>(d)];
        t.ppow[static_cast<size_t>(d)] = a.ppow[static_cast<size_t>(d)] + b.ppow[static_cast<size_t>(d)];
      }
      t.coeff = a.coeff * b.coeff;
      out.add(t);
    }

  auto pure_times_grid = [&](const PolyTerm& a, const GridTerm& b) {
    GridTerm t;
    t.coeff = b.coeff;
    std::vector<double> xs = monomial_over(*grid, a.xpow);
    for (std::size_t i = 0; i < t.coeff.size(); ++i) t.coeff[i] *= a.coeff * xs[i];
    for (int d = 0; d < 3; ++d) t.ppow[static_cast<size_t>(d)] = a.ppow[static_cast<size_t>(d)] + b.ppow[static_cast<size_t>(d)];
    out.add_grid(*grid, std::move(t));
  };
  for (const auto& a : terms_)
    for (const auto& b : other.grid_terms_) pure_times_grid(a, b);
  for (const auto& b : other.terms_)
    for (const auto& a : grid_terms_) pure_times_grid(b, a);

  for (const auto& a : grid_terms_)
    for (const auto& b : other.grid_terms_) {
      GridTerm t;
      t.coeff = a.coeff;
      for (std::size_t i = 0; i < t.coeff.size(); ++i) t.coeff[i] *= b.coeff[i];
      for (int d = 0; d < 3; ++d) t.ppow[static_cast<size_t>(d)] = a.ppow[static_cast<size_t>(d)] + b.ppow[static_cast<size_t>(d)];
      out.add_grid(*grid, std::move(t));
    }

  out.simplify();
  return out;
}

cplx PolySymbol::evaluate(const double* x, const double* p) const {
  if (!grid_terms_.empty())
    throw std::logic_error("PolySymbol: grid terms need evaluate_at with a node index");
  cplx acc = 0.0;
  for (const auto& t : terms_) {
    double v = 1.0;
    for (int d = 0; d < dims_; ++d)
      v *= ipow(x[d], t.xpow[static_cast<size_t>(d)]) * ipow(p[d], t.ppow[static_cast<size_t>(d)]);
    acc += t.coeff * v;
  }
  return acc;
}

cplx PolySymbol::evaluate_at(const double* x, const double* p, std::size_t node) const {
  cplx acc = 0.0;
  for (const auto& t : terms_) {
    double v = 1.0;
    for (int d = 0; d < dims_; ++d)
      v *= ipow(x[d], t.xpow[static_cast<size_t>(d)]) * ipow(p[d], t.ppow[static_cast<size_t>(d)]);
    acc += t.coeff * v;
  }
  for (const auto& t : grid_terms_) {
    double v = 1.0;
    for (int d = 0; d < dims_; ++d) v *= ipow(p[d], t.ppow[static_cast<size_t>(d)]);
    acc += t.coeff[node] * v;
  }
  return acc;
}

GridArray<cplx> PolySymbol::sample(const SpatialGrid& xg, const SpatialGrid& pg) const {
  if (xg.dims() != dims_ || pg.dims() != dims_)
    throw std::invalid_argument("PolySymbol: sample grid dims mismatch");
  if (!grid_terms_.empty() && xg != *xgrid_)
    throw std::invalid_argument("PolySymbol: sample grid differs from coefficient grid");
  std::vector<int> shape;
  for (int d = 0; d < dims_; ++d) shape.push_back(xg.axis(d).count);
  for (int d = 0; d < dims_; ++d) shape.push_back(pg.axis(d).count);
  GridArray<cplx> out(shape);
  const std::size_t np = pg.total_points();

  for (const auto& t : terms_) {
    std::vector<double> xs = monomial_over(xg, t.xpow);
    std::vector<double> ps = monomial_over(pg, t.ppow);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const cplx cx = t.coeff * xs[i];
      cplx* row = out.data() + i * np;
      for (std::size_t j = 0; j < np; ++j) row[j] += cx * ps[j];
    }
  }
  for (const auto& t : grid_terms_) {
    std::vector<double> ps = monomial_over(pg, t.ppow);
    for (std::size_t i = 0; i < t.coeff.size(); ++i) {
      const cplx cx = t.coeff[i];
      cplx* row = out.data() + i * np;
      for (std::size_t j = 0; j < np; ++j) row[j] += cx * ps[j];
    }
  }
  return out;
}

void PolySymbol::simplify() {
  std::map<std::pair<std::array<int, 3>, std::array<int, 3>>, cplx> merged;
  for (const auto& t : terms_) merged[{t.xpow, t.ppow}] += t.coeff;
  terms_.clear();
  for (const auto& [key, c] : merged)
    if (c != 0.0) terms_.push_back(PolyTerm{key.first, key.second, c});

  std::map<std::array<int, 3>, GridArray<cplx>> gmerged;
  for (auto& t : grid_terms_) {
    auto it = gmerged.find(t.ppow);
    if (it == gmerged.end()) {
      gmerged.emplace(t.ppow, std::move(t.coeff));
    } else {
      for (std::size_t i = 0; i < it->second.size(); ++i) it->second[i] += t.coeff[i];
    }
  }
  grid_terms_.clear();
  for (auto& [pw, coeff] : gmerged) {
    bool nonzero = false;
    for (const cplx& c : coeff)
      if (c != 0.0) {
        nonzero = true;
        break;
      }
    if (nonzero) grid_terms_.push_back(GridTerm{std::move(coeff), pw});
  }
  if (grid_terms_.empty()) xgrid_.reset();
}

PhaseSpaceFunction make_phase_function(const SpatialGrid& xg, const SpatialGrid& pg, double hbar) {
  if (xg.dims() != pg.dims()) throw std::invalid_argument("make_phase_function: dims mismatch");
  PhaseSpaceFunction f;
  f.xgrid = xg;
  f.pgrid = pg;
  std::vector<int> shape;
  for (int d = 0; d < xg.dims(); ++d) shape.push_back(xg.axis(d).count);
  for (int d = 0; d < pg.dims(); ++d) shape.push_back(pg.axis(d).count);
  f.samples = GridArray<cplx>(shape);
  f.hbar = hbar;
  return f;
}

WeylSymbol::WeylSymbol(PolySymbol p, double hbar) : rep_(std::move(p)), hbar_(hbar) {}

WeylSymbol::WeylSymbol(PhaseSpaceFunction f) : hbar_(f.hbar) { rep_ = std::move(f); }

const PolySymbol& WeylSymbol::poly() const {
  if (!is_poly()) throw std::logic_error("WeylSymbol: gridded form has no polynomial view");
  return std::get<PolySymbol>(rep_);
}

const PhaseSpaceFunction& WeylSymbol::field() const {
  if (is_poly()) throw std::logic_error("WeylSymbol: polynomial form has no gridded view");
  return std::get<PhaseSpaceFunction>(rep_);
}

GridArray<cplx> coord_power_samples(const SpatialGrid& xg, const SpatialGrid& pg, bool p_side,
                                    int axis, int power) {
  std::array<int, 3> pw{0, 0, 0};
  pw[static_cast<size_t>(axis)] = power;
  PolySymbol s = p_side ? PolySymbol::monomial(xg.dims(), {0, 0, 0}, pw, 1.0)
                        : PolySymbol::monomial(xg.dims(), pw, {0, 0, 0}, 1.0);
  return s.sample(xg, pg);
}

PolySymbol poisson_bracket(const PolySymbol& a, const PolySymbol& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("poisson_bracket: dims mismatch");
  PolySymbol out(a.dims());
  for (int d = 0; d < a.dims(); ++d) {
    PolySymbol t1 = a.derivative_x(d).times(b.derivative_p(d));
    PolySymbol t2 = a.derivative_p(d).times(b.derivative_x(d));
    t2.scale(-1.0);
    out.add_symbol(t1);
    out.add_symbol(t2);
  }
  out.simplify();
  return out;
}

}  // namespace psbohm
