#ifndef DECONV2D_SPECTRAL_HPP
#define DECONV2D_SPECTRAL_HPP

#include "deconv2d/grid.hpp"

namespace deconv2d {

/// FFT-based evaluation of the autoconvolution operator via zero-padding.
///
/// The n x n grid is zero-padded to 2n x 2n, so the cyclic convolution of the
/// padded arrays coincides with the linear convolution and reproduces the
/// composite-midpoint sums exactly (up to FFT roundoff): padded output bin
/// (k-1, l-1) corresponds to the lattice node (kh, lh).
///
/// Methods are pure; FFT plans are cached per thread.
class SpectralOperator {
public:
  SpectralOperator(int n, DataCase data_case) : n_(n), case_(data_case) {}

  int n() const { return n_; }
  DataCase data_case() const { return case_; }
  int pad() const { return 2 * n_; }

  /// h^2 R(IFFT(FFT(Z(x))^2)); R restricts to [0,1]^2 in the limited case.
  DataGrid forward(const GridFunction& x) const;

  /// h^2 R(IFFT(2 FFT(Z(x)) FFT(Z(u)))); symmetric in (x, u).
  DataGrid derivative_apply(const GridFunction& x, const GridFunction& u) const;

  /// h^2 corner(IFFT(2 conj(FFT(Z(x))) FFT(E(v)))) where E zero-extends
  /// limited-case data to the padded lattice (and zeroes the forced outer
  /// boundary in the full case). Exact transpose of derivative_apply under
  /// the unweighted Euclidean pairing.
  GridFunction adjoint_apply(const GridFunction& x, const DataGrid& v) const;

private:
  int n_;
  DataCase case_;
};

}  // namespace deconv2d

#endif
