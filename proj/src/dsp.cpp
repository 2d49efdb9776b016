// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "esdd/dsp.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "esdd/error.hpp"

namespace esdd {

namespace {

// FFTW plans are created once per transform size and reused via the
// new-array execute interface. Planning is not thread-safe, execution is.
class FftPlans {
 public:
  static FftPlans& instance() {
    static FftPlans plans;
    return plans;
  }

  struct Entry {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
    ~Entry() {
      if (r2c) fftw_destroy_plan(r2c);
      if (c2r) fftw_destroy_plan(c2r);
    }
  };

  const Entry& get(int n) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(n);
    if (it != cache_.end()) return *it->second;
    auto entry = std::make_unique<Entry>();
    double* re = fftw_alloc_real(n);
    fftw_complex* cx = fftw_alloc_complex(n / 2 + 1);
    entry->r2c = fftw_plan_dft_r2c_1d(n, re, cx, FFTW_ESTIMATE);
    entry->c2r = fftw_plan_dft_c2r_1d(n, cx, re, FFTW_ESTIMATE);
    fftw_free(re);
    fftw_free(cx);
    auto [pos, _] = cache_.emplace(n, std::move(entry));
    return *pos->second;
  }

 private:
  std::mutex mu_;
  std::map<int, std::unique_ptr<Entry>> cache_;
};

struct FftwBuffer {
  double* re;
  fftw_complex* cx;
  explicit FftwBuffer(int n)
      : re(fftw_alloc_real(n)), cx(fftw_alloc_complex(n / 2 + 1)) {}
  ~FftwBuffer() {
    fftw_free(re);
    fftw_free(cx);
  }
};

}  // namespace

std::vector<double> hann_window(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / n);
  return w;
}

Eigen::MatrixXcd stft(const std::vector<double>& samples, int win, int hop) {
  if (win <= 0 || hop <= 0 || hop > win)
    throw DataError("stft: need 0 < hop <= win");
  int len = static_cast<int>(samples.size());
  if (len < win) throw DataError("stft: audio shorter than one frame");
  int frames = 1 + (len - win) / hop;
  int bins = win / 2 + 1;

  const auto& plans = FftPlans::instance().get(win);
  std::vector<double> window = hann_window(win);
  FftwBuffer buf(win);

  Eigen::MatrixXcd out(frames, bins);
  for (int t = 0; t < frames; ++t) {
    const double* x = samples.data() + static_cast<size_t>(t) * hop;
    for (int i = 0; i < win; ++i) buf.re[i] = x[i] * window[i];
    fftw_execute_dft_r2c(plans.r2c, buf.re, buf.cx);
    for (int k = 0; k < bins; ++k)
      out(t, k) = std::complex<double>(buf.cx[k][0], buf.cx[k][1]);
  }
  return out;
}

std::vector<double> istft(const Eigen::MatrixXcd& frames, int win, int hop,
                          int n_samples) {
  if (win <= 0 || hop <= 0 || hop > win)
    throw DataError("istft: need 0 < hop <= win");
  int n_frames = static_cast<int>(frames.rows());
  int bins = win / 2 + 1;
  if (static_cast<int>(frames.cols()) != bins)
    throw DataError("istft: frame width does not match window size");

  const auto& plans = FftPlans::instance().get(win);
  std::vector<double> window = hann_window(win);
  FftwBuffer buf(win);

  std::vector<double> num(n_samples, 0.0);
  std::vector<double> den(n_samples, 0.0);
  for (int t = 0; t < n_frames; ++t) {
    for (int k = 0; k < bins; ++k) {
      buf.cx[k][0] = frames(t, k).real();
      buf.cx[k][1] = frames(t, k).imag();
    }
    fftw_execute_dft_c2r(plans.c2r, buf.cx, buf.re);
    int base = t * hop;
    for (int i = 0; i < win; ++i) {
      int idx = base + i;
      if (idx < 0 || idx >= n_samples) continue;
      double y = buf.re[i] / win;  // FFTW c2r is unnormalized
      num[idx] += window[i] * y;
      den[idx] += window[i] * window[i];
    }
  }
  for (int i = 0; i < n_samples; ++i) {
    num[i] = den[i] > 1e-12 ? num[i] / den[i] : 0.0;
  }
  return num;
}

}  // namespace esdd
