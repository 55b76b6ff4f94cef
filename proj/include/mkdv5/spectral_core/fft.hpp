#pragma once

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace mkdv5::fft {

using cd = std::complex<double>;

namespace detail {

enum class Kind { c2c_forward, c2c_backward, r2c, c2r, c2c2d_forward };

// Plans are built with FFTW_ESTIMATE on private aligned buffers and always executed on those
// buffers, so the chosen algorithm is independent of caller alignment and runs are bit-reproducible.
struct Plan {
  fftw_plan plan = nullptr;
  fftw_complex* cbuf = nullptr;
  double* rbuf = nullptr;
  fftw_complex* cbuf2 = nullptr;

  Plan() = default;
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    if (plan) fftw_destroy_plan(plan);
    if (cbuf) fftw_free(cbuf);
    if (rbuf) fftw_free(rbuf);
    if (cbuf2) fftw_free(cbuf2);
  }
};

struct Cache {
  std::mutex mutex;
  std::map<std::tuple<Kind, std::size_t, std::size_t>, std::unique_ptr<Plan>> plans;
};

inline Cache& cache() {
  static Cache c;
  return c;
}

inline Plan& plan_for(Kind kind, std::size_t n, std::size_t m = 0) {
  auto& c = cache();
  const auto key = std::make_tuple(kind, n, m);
  auto it = c.plans.find(key);
  if (it != c.plans.end()) return *it->second;
  auto p = std::make_unique<Plan>();
  const int ni = static_cast<int>(n);
  switch (kind) {
    case Kind::c2c_forward:
    case Kind::c2c_backward:
      p->cbuf = fftw_alloc_complex(n);
      p->plan = fftw_plan_dft_1d(ni, p->cbuf, p->cbuf, kind == Kind::c2c_forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                 FFTW_ESTIMATE);
      break;
    case Kind::r2c:
      p->rbuf = fftw_alloc_real(n);
      p->cbuf = fftw_alloc_complex(n / 2 + 1);
      p->plan = fftw_plan_dft_r2c_1d(ni, p->rbuf, p->cbuf, FFTW_ESTIMATE);
      break;
    case Kind::c2r:
      p->rbuf = fftw_alloc_real(n);
      p->cbuf = fftw_alloc_complex(n / 2 + 1);
      p->plan = fftw_plan_dft_c2r_1d(ni, p->cbuf, p->rbuf, FFTW_ESTIMATE);
      break;
    case Kind::c2c2d_forward:
      p->cbuf = fftw_alloc_complex(n * m);
      p->plan = fftw_plan_dft_2d(static_cast<int>(m), ni, p->cbuf, p->cbuf, FFTW_FORWARD, FFTW_ESTIMATE);
      break;
  }
  auto& ref = *p;
  c.plans.emplace(key, std::move(p));
  return ref;
}

inline fftw_complex* as_fftw(cd* p) { return reinterpret_cast<fftw_complex*>(p); }
inline const cd* as_cd(const fftw_complex* p) { return reinterpret_cast<const cd*>(p); }

}  // namespace detail

// Unnormalized transforms: forward uses e^{-2 pi i jk/n}, backward e^{+2 pi i jk/n}.
inline void forward(cd* data, std::size_t n) {
  std::lock_guard lock(detail::cache().mutex);
  auto& p = detail::plan_for(detail::Kind::c2c_forward, n);
  std::copy(data, data + n, reinterpret_cast<cd*>(p.cbuf));
  fftw_execute(p.plan);
  std::copy(detail::as_cd(p.cbuf), detail::as_cd(p.cbuf) + n, data);
}

inline void backward(cd* data, std::size_t n) {
  std::lock_guard lock(detail::cache().mutex);
  auto& p = detail::plan_for(detail::Kind::c2c_backward, n);
  std::copy(data, data + n, reinterpret_cast<cd*>(p.cbuf));
  fftw_execute(p.plan);
  std::copy(detail::as_cd(p.cbuf), detail::as_cd(p.cbuf) + n, data);
}

// Real input of length n to the n/2+1 non-negative modes.
inline void real_forward(const double* in, cd* out, std::size_t n) {
  std::lock_guard lock(detail::cache().mutex);
  auto& p = detail::plan_for(detail::Kind::r2c, n);
  std::copy(in, in + n, p.rbuf);
  fftw_execute(p.plan);
  std::copy(detail::as_cd(p.cbuf), detail::as_cd(p.cbuf) + n / 2 + 1, out);
}

// Half spectrum (n/2+1 modes, Hermitian extension implied) to n real samples.
inline void real_backward(const cd* in, double* out, std::size_t n) {
  std::lock_guard lock(detail::cache().mutex);
  auto& p = detail::plan_for(detail::Kind::c2r, n);
  std::copy(in, in + n / 2 + 1, reinterpret_cast<cd*>(p.cbuf));
  fftw_execute(p.plan);
  std::copy(p.rbuf, p.rbuf + n, out);
}

// Row-major m x n array (m time rows, n space columns), forward in both directions.
inline void forward_2d(cd* data, std::size_t n, std::size_t m) {
  std::lock_guard lock(detail::cache().mutex);
  auto& p = detail::plan_for(detail::Kind::c2c2d_forward, n, m);
  std::copy(data, data + n * m, reinterpret_cast<cd*>(p.cbuf));
  fftw_execute(p.plan);
  std::copy(detail::as_cd(p.cbuf), detail::as_cd(p.cbuf) + n * m, data);
}

inline void clear_plan_cache() {
  std::lock_guard lock(detail::cache().mutex);
  detail::cache().plans.clear();
}

}  // namespace mkdv5::fft
