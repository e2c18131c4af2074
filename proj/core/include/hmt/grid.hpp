#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hmt {

using cplx = std::complex<double>;

/// Complex-valued function sampled on a uniform periodic box [-L/2, L/2)^n.
///
/// The same container carries space-domain and frequency-domain samples; the
/// interpretation is up to the caller. In the frequency interpretation bin i
/// along an axis carries the physical frequency k/L with k = i for i < N/2
/// and k = i - N otherwise (standard DFT ordering, Nyquist bin at -N/(2L)).
class GridFunction {
public:
  GridFunction(int dim, double box_side, int samples_per_dim);

  static GridFunction zeros(int dim, double box_side, int samples_per_dim) {
    return GridFunction(dim, box_side, samples_per_dim);
  }

  int dim() const { return dim_; }
  double box_side() const { return box_; }
  int samples_per_dim() const { return n_; }
  std::size_t size() const { return data_.size(); }
  double cell_volume() const { return cell_vol_; }

  const std::vector<cplx>& data() const { return data_; }
  std::vector<cplx>& data() { return data_; }
  cplx operator[](std::size_t i) const { return data_[i]; }
  cplx& operator[](std::size_t i) { return data_[i]; }

  /// Per-axis lattice indices of flat index i (row-major).
  void unflatten(std::size_t i, int* idx) const;
  std::size_t flatten(const int* idx) const;

  /// Space coordinate of axis index: x = -L/2 + i*L/N.
  double coord(int axis_index) const { return -box_ / 2.0 + axis_index * (box_ / n_); }
  /// Physical frequency of axis index in DFT ordering: k/L.
  double freq(int axis_index) const {
    int k = axis_index < n_ / 2 ? axis_index : axis_index - n_;
    return k / box_;
  }
  /// Integer frequency of axis index: k in [-N/2, N/2).
  int freq_index(int axis_index) const {
    return axis_index < n_ / 2 ? axis_index : axis_index - n_;
  }

  void point(std::size_t i, double* x) const;
  void frequency(std::size_t i, double* xi) const;
  double freq_norm(std::size_t i) const;

  bool same_grid(const GridFunction& other) const {
    return dim_ == other.dim_ && box_ == other.box_ && n_ == other.n_;
  }

  /// Rejects non-finite samples (used by ops whose preconditions require it).
  void require_finite() const;

  /// Grid L^p norm: (sum |f|^p cell_volume)^(1/p).
  double lp_norm(double p) const;
  double l2_norm() const { return lp_norm(2.0); }
  double max_abs() const;

private:
  int dim_;
  double box_;
  int n_;
  double cell_vol_;
  std::vector<cplx> data_;
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(cplx c, const GridFunction& f);

struct grid_mismatch_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

} // namespace hmt
