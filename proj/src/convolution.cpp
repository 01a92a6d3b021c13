#include "rsym/convolution.hpp"

#include <fftw3.h>

#include <complex>
#include <map>
#include <memory>
#include <mutex>

#include "rsym/error.hpp"

namespace rsym {

namespace {

constexpr std::size_t kDirectLimit = 64;

std::size_t fft_size(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

struct Buffers {
  std::size_t n;
  double* real;
  fftw_complex* spec;
  fftw_plan forward;
  fftw_plan backward;

  explicit Buffers(std::size_t size) : n(size) {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    real = fftw_alloc_real(n);
    spec = fftw_alloc_complex(n / 2 + 1);
    forward = fftw_plan_dft_r2c_1d(static_cast<int>(n), real, spec, FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_1d(static_cast<int>(n), spec, real, FFTW_ESTIMATE);
  }
  ~Buffers() {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_free(real);
    fftw_free(spec);
  }
  Buffers(const Buffers&) = delete;
  Buffers& operator=(const Buffers&) = delete;

  std::vector<std::complex<double>> transform(const std::vector<double>& x) {
    std::fill(real, real + n, 0.0);
    std::copy(x.begin(), x.end(), real);
    fftw_execute(forward);
    std::vector<std::complex<double>> out(n / 2 + 1);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = {spec[k][0], spec[k][1]};
    return out;
  }

  std::vector<double> inverse(const std::vector<std::complex<double>>& s, std::size_t len) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      spec[k][0] = s[k].real();
      spec[k][1] = s[k].imag();
    }
    fftw_execute(backward);
    std::vector<double> out(len);
    double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < len; ++i) out[i] = real[i] * scale;
    return out;
  }
};

}  // namespace

std::mutex& fftw_planner_mutex() {
  static std::mutex mu;
  return mu;
}

std::vector<double> convolve_direct(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<std::vector<double>> convolve_many(const std::vector<const std::vector<double>*>& a,
                                               const std::vector<const std::vector<double>*>& b) {
  require(a.size() == b.size(), "convolve_many: operand lists differ in length");
  std::vector<std::vector<double>> out(a.size());
  std::size_t longest = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    longest = std::max(longest, a[i]->size() + b[i]->size());
  if (longest <= kDirectLimit) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = convolve_direct(*a[i], *b[i]);
    return out;
  }
  Buffers buf(fft_size(longest));
  std::map<const std::vector<double>*, std::vector<std::complex<double>>> cache;
  auto spectrum = [&](const std::vector<double>* v) -> const std::vector<std::complex<double>>& {
    auto it = cache.find(v);
    if (it == cache.end()) it = cache.emplace(v, buf.transform(*v)).first;
    return it->second;
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i]->empty() || b[i]->empty()) continue;
    const auto& sa = spectrum(a[i]);
    const auto& sb = spectrum(b[i]);
    std::vector<std::complex<double>> prod(sa.size());
    for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = sa[k] * sb[k];
    out[i] = buf.inverse(prod, a[i]->size() + b[i]->size() - 1);
  }
  return out;
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
  return convolve_many({&a}, {&b})[0];
}

}  // namespace rsym
