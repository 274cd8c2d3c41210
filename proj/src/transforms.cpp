#include "tauprec/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>

#include "tauprec/errors.hpp"

namespace tauprec {

namespace {

// FFTW planning is not thread safe and every cached plan executes into its
// own fixed buffers, so all transform calls serialize on one lock. No plan
// or scratch state is observable outside a call.
std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

struct DstPlan {
  fftwl_plan plan;
  long double* buf;
};

DstPlan& dst_plan(int n) {
  static std::map<int, DstPlan>* cache = new std::map<int, DstPlan>();
  auto it = cache->find(n);
  if (it == cache->end()) {
    DstPlan p;
    p.buf = fftwl_alloc_real(n);
    p.plan = fftwl_plan_r2r_1d(n, p.buf, p.buf, FFTW_RODFT00, FFTW_ESTIMATE);
    it = cache->emplace(n, p).first;
  }
  return it->second;
}

struct RealFftPlans {
  fftw_plan forward;
  fftw_plan inverse;
  double* real_buf;
  fftw_complex* cplx_buf;
};

RealFftPlans& real_fft_plans(int m) {
  static std::map<int, RealFftPlans>* cache = new std::map<int, RealFftPlans>();
  auto it = cache->find(m);
  if (it == cache->end()) {
    RealFftPlans p;
    p.real_buf = fftw_alloc_real(m);
    p.cplx_buf = fftw_alloc_complex(m / 2 + 1);
    p.forward = fftw_plan_dft_r2c_1d(m, p.real_buf, p.cplx_buf, FFTW_ESTIMATE);
    p.inverse = fftw_plan_dft_c2r_1d(m, p.cplx_buf, p.real_buf, FFTW_ESTIMATE);
    it = cache->emplace(m, p).first;
  }
  return it->second;
}

}  // namespace

void dst1_inplace(long double* data, int n) {
  if (n < 1) throw DimensionMismatch("dst1: size must be >= 1");
  std::lock_guard<std::mutex> lock(fftw_mutex());
  DstPlan& p = dst_plan(n);
  for (int i = 0; i < n; ++i) p.buf[i] = data[i];
  fftwl_execute(p.plan);
  // RODFT00 applied twice is 2(n+1) * identity.
  const long double scale = 1.0L / sqrtl(2.0L * (n + 1));
  for (int i = 0; i < n; ++i) data[i] = scale * p.buf[i];
}

Eigen::VectorXd dst1(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  if (n < 1) throw DimensionMismatch("dst1: size must be >= 1");
  std::lock_guard<std::mutex> lock(fftw_mutex());
  DstPlan& p = dst_plan(n);
  for (int i = 0; i < n; ++i) p.buf[i] = x[i];
  fftwl_execute(p.plan);
  const long double scale = 1.0L / sqrtl(2.0L * (n + 1));
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = static_cast<double>(scale * p.buf[i]);
  return y;
}

Eigen::VectorXcd real_fft(const Eigen::VectorXd& x) {
  const int m = static_cast<int>(x.size());
  if (m < 1) throw DimensionMismatch("real_fft: size must be >= 1");
  std::lock_guard<std::mutex> lock(fftw_mutex());
  RealFftPlans& p = real_fft_plans(m);
  for (int i = 0; i < m; ++i) p.real_buf[i] = x[i];
  fftw_execute(p.forward);
  Eigen::VectorXcd s(m / 2 + 1);
  for (int i = 0; i < m / 2 + 1; ++i) s[i] = std::complex<double>(p.cplx_buf[i][0], p.cplx_buf[i][1]);
  return s;
}

Eigen::VectorXd real_ifft(const Eigen::VectorXcd& spectrum, int m) {
  if (m < 1 || spectrum.size() != m / 2 + 1)
    throw DimensionMismatch("real_ifft: spectrum size must be m/2+1");
  std::lock_guard<std::mutex> lock(fftw_mutex());
  RealFftPlans& p = real_fft_plans(m);
  for (int i = 0; i < m / 2 + 1; ++i) {
    p.cplx_buf[i][0] = spectrum[i].real();
    p.cplx_buf[i][1] = spectrum[i].imag();
  }
  fftw_execute(p.inverse);
  Eigen::VectorXd y(m);
  const double scale = 1.0 / m;
  for (int i = 0; i < m; ++i) y[i] = p.real_buf[i] * scale;
  return y;
}

}  // namespace tauprec
