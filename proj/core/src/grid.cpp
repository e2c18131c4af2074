#include "hmt/grid.hpp"

#include <cmath>

namespace hmt {

GridFunction::GridFunction(int dim, double box_side, int samples_per_dim)
    : dim_(dim), box_(box_side), n_(samples_per_dim) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("dim must be 1, 2 or 3");
  if (box_side <= 0) throw std::invalid_argument("box_side must be positive");
  if (samples_per_dim < 2 || (samples_per_dim & (samples_per_dim - 1)) != 0)
    throw std::invalid_argument("samples_per_dim must be a power of two >= 2");
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(samples_per_dim);
  data_.assign(total, cplx(0.0, 0.0));
  cell_vol_ = std::pow(box_ / n_, dim_);
}

void GridFunction::unflatten(std::size_t i, int* idx) const {
  for (int d = dim_ - 1; d >= 0; --d) {
    idx[d] = static_cast<int>(i % n_);
    i /= n_;
  }
}

std::size_t GridFunction::flatten(const int* idx) const {
  std::size_t i = 0;
  for (int d = 0; d < dim_; ++d) {
    int v = idx[d] % n_;
    if (v < 0) v += n_;
    i = i * n_ + static_cast<std::size_t>(v);
  }
  return i;
}

void GridFunction::point(std::size_t i, double* x) const {
  int idx[3];
  unflatten(i, idx);
  for (int d = 0; d < dim_; ++d) x[d] = coord(idx[d]);
}

void GridFunction::frequency(std::size_t i, double* xi) const {
  int idx[3];
  unflatten(i, idx);
  for (int d = 0; d < dim_; ++d) xi[d] = freq(idx[d]);
}

double GridFunction::freq_norm(std::size_t i) const {
  double xi[3];
  frequency(i, xi);
  double s = 0;
  for (int d = 0; d < dim_; ++d) s += xi[d] * xi[d];
  return std::sqrt(s);
}

void GridFunction::require_finite() const {
  for (const cplx& v : data_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("grid function contains non-finite samples");
}

double GridFunction::lp_norm(double p) const {
  double s = 0;
  for (const cplx& v : data_) s += std::pow(std::abs(v), p);
  return std::pow(s * cell_vol_, 1.0 / p);
}

double GridFunction::max_abs() const {
  double m = 0;
  for (const cplx& v : data_) m = std::max(m, std::abs(v));
  return m;
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  if (!a.same_grid(b)) throw grid_mismatch_error("grid mismatch in operator+");
  GridFunction r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  if (!a.same_grid(b)) throw grid_mismatch_error("grid mismatch in operator-");
  GridFunction r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

GridFunction operator*(cplx c, const GridFunction& f) {
  GridFunction r = f;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] *= c;
  return r;
}

} // namespace hmt
