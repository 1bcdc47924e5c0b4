#include "deconv2d/spectral.hpp"

#include <fftw3.h>

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace deconv2d {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// 2D complex DFT of fixed size m x m on fftw-aligned buffers. Normalized so
// that inverse(forward(a)) == a.
class Fft2D {
public:
  explicit Fft2D(int m) : m_(m) {
    buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * m * m));
    if (!buf_) throw std::bad_alloc();
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_dft_2d(m, m, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    inv_ = fftw_plan_dft_2d(m, m, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!fwd_ || !inv_) throw std::runtime_error("FFTW plan creation failed");
  }

  ~Fft2D() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(inv_);
    fftw_free(buf_);
  }

  Fft2D(const Fft2D&) = delete;
  Fft2D& operator=(const Fft2D&) = delete;

  Eigen::MatrixXcd forward(const Eigen::MatrixXcd& in) { return run(in, fwd_, 1.0); }
  Eigen::MatrixXcd inverse(const Eigen::MatrixXcd& in) { return run(in, inv_, 1.0 / (double(m_) * m_)); }

private:
  Eigen::MatrixXcd run(const Eigen::MatrixXcd& in, fftw_plan plan, double scale) {
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) {
        buf_[i * m_ + j][0] = in(i, j).real();
        buf_[i * m_ + j][1] = in(i, j).imag();
      }
    fftw_execute(plan);
    Eigen::MatrixXcd out(m_, m_);
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j)
        out(i, j) = scale * std::complex<double>(buf_[i * m_ + j][0], buf_[i * m_ + j][1]);
    return out;
  }

  int m_;
  fftw_complex* buf_;
  fftw_plan fwd_;
  fftw_plan inv_;
};

Fft2D& fft_for(int m) {
  thread_local std::map<int, std::unique_ptr<Fft2D>> cache;
  auto& slot = cache[m];
  if (!slot) slot = std::make_unique<Fft2D>(m);
  return *slot;
}

Eigen::MatrixXcd zero_pad(const Eigen::MatrixXd& x, int m) {
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(m, m);
  z.topLeftCorner(x.rows(), x.cols()) = x.cast<std::complex<double>>();
  return z;
}

// Real part, asserting the imaginary residue is negligible.
Eigen::MatrixXd take_real(const Eigen::MatrixXcd& z) {
  const double re = z.real().norm();
  const double im = z.imag().norm();
  if (im > 1e-10 * re + 1e-14)
    throw std::runtime_error("spectral backend: non-negligible imaginary residue");
  return z.real();
}

}  // namespace

DataGrid SpectralOperator::forward(const GridFunction& x) const {
  if (x.n() != n_) throw std::invalid_argument("SpectralOperator: grid size mismatch");
  const int m = pad();
  auto& fft = fft_for(m);
  Eigen::MatrixXcd spec = fft.forward(zero_pad(x.values(), m));
  const Eigen::MatrixXd conv = take_real(fft.inverse(spec.array().square().matrix()));
  const double h2 = x.h() * x.h();
  DataGrid y(case_, n_);
  if (case_ == DataCase::Limited) {
    y.values() = h2 * conv.topLeftCorner(n_, n_);
  } else {
    y.values() = h2 * conv;
    y.values().row(m - 1).setZero();  // forced outer boundary
    y.values().col(m - 1).setZero();
  }
  return y;
}

DataGrid SpectralOperator::derivative_apply(const GridFunction& x, const GridFunction& u) const {
  if (x.n() != n_ || u.n() != n_)
    throw std::invalid_argument("SpectralOperator: grid size mismatch");
  const int m = pad();
  auto& fft = fft_for(m);
  Eigen::MatrixXcd sx = fft.forward(zero_pad(x.values(), m));
  Eigen::MatrixXcd su = fft.forward(zero_pad(u.values(), m));
  const Eigen::MatrixXd conv = take_real(fft.inverse((2.0 * sx.array() * su.array()).matrix()));
  const double h2 = x.h() * x.h();
  DataGrid y(case_, n_);
  if (case_ == DataCase::Limited) {
    y.values() = h2 * conv.topLeftCorner(n_, n_);
  } else {
    y.values() = h2 * conv;
    y.values().row(m - 1).setZero();
    y.values().col(m - 1).setZero();
  }
  return y;
}

GridFunction SpectralOperator::adjoint_apply(const GridFunction& x, const DataGrid& v) const {
  if (x.n() != n_) throw std::invalid_argument("SpectralOperator: grid size mismatch");
  if (v.data_case() != case_ || v.n() != n_)
    throw std::invalid_argument("SpectralOperator: data grid mismatch");
  const int m = pad();
  auto& fft = fft_for(m);
  Eigen::MatrixXcd sx = fft.forward(zero_pad(x.values(), m));
  Eigen::MatrixXcd sv;
  if (case_ == DataCase::Limited) {
    sv = fft.forward(zero_pad(v.values(), m));
  } else {
    Eigen::MatrixXd ext = v.values();
    ext.row(m - 1).setZero();  // the forced-zero boundary carries no information
    ext.col(m - 1).setZero();
    sv = fft.forward(ext.cast<std::complex<double>>());
  }
  const Eigen::MatrixXd w =
      take_real(fft.inverse((2.0 * sx.array().conjugate() * sv.array()).matrix()));
  const double h2 = x.h() * x.h();
  return GridFunction(n_, h2 * w.topLeftCorner(n_, n_));
}

}  // namespace deconv2d
