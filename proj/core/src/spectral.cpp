#include "spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>
#include <vector>

namespace dwp::gravity::detail {

namespace {

struct Plan {
  int dim = 1;
  int n[3] = {1, 1, 1};
  bool periodic = false;
  std::size_t real_size = 0;
  std::size_t spec_size = 0;
  double* real = nullptr;
  double* spec = nullptr;  // r2r output, or interleaved complex for periodic
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  std::vector<double> inv_eig;  // 1 / eigenvalue per spectral entry, scale included

  ~Plan() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    fftw_free(real);
    fftw_free(spec);
  }
};

double eig1(int k, int n, bool periodic) {
  const double theta = periodic ? 2.0 * std::numbers::pi * k / n : std::numbers::pi * (k + 1) / (n + 1);
  return 2.0 - 2.0 * std::cos(theta);
}

std::unique_ptr<Plan> make_plan(const Grid& g, bool periodic) {
  auto p = std::make_unique<Plan>();
  p->dim = g.dim;
  p->periodic = periodic;
  for (int a = 0; a < g.dim; ++a) p->n[a] = g.n[a];
  p->real_size = g.cells();

  if (!periodic) {
    p->spec_size = p->real_size;
    p->real = fftw_alloc_real(p->real_size);
    p->spec = fftw_alloc_real(p->spec_size);
    fftw_r2r_kind kinds[3] = {FFTW_RODFT00, FFTW_RODFT00, FFTW_RODFT00};
    p->forward = fftw_plan_r2r(g.dim, p->n, p->real, p->spec, kinds, FFTW_ESTIMATE);
    p->backward = fftw_plan_r2r(g.dim, p->n, p->spec, p->real, kinds, FFTW_ESTIMATE);
    double scale = 1.0;
    for (int a = 0; a < g.dim; ++a) scale *= 2.0 * (p->n[a] + 1);
    p->inv_eig.resize(p->spec_size);
    for (std::size_t c = 0; c < p->spec_size; ++c) {
      const auto k = g.coords(c);
      double lam = 0.0;
      for (int a = 0; a < g.dim; ++a) lam += eig1(k[a], p->n[a], false);
      p->inv_eig[c] = 1.0 / (lam * scale);
    }
    return p;
  }

  // r2c keeps n_last / 2 + 1 complex entries along the last axis.
  const int last = g.dim - 1;
  const int half = p->n[last] / 2 + 1;
  std::size_t outer = 1;
  for (int a = 0; a < last; ++a) outer *= p->n[a];
  const std::size_t modes = outer * half;
  p->spec_size = 2 * modes;
  p->real = fftw_alloc_real(p->real_size);
  p->spec = fftw_alloc_real(p->spec_size);
  auto* cplx = reinterpret_cast<fftw_complex*>(p->spec);
  p->forward = fftw_plan_dft_r2c(g.dim, p->n, p->real, cplx, FFTW_ESTIMATE);
  p->backward = fftw_plan_dft_c2r(g.dim, p->n, cplx, p->real, FFTW_ESTIMATE);
  const double scale = static_cast<double>(p->real_size);
  p->inv_eig.resize(modes);
  for (std::size_t m = 0; m < modes; ++m) {
    std::size_t rest = m / half;
    int k[3] = {0, 0, 0};
    k[last] = static_cast<int>(m % half);
    for (int a = last - 1; a >= 0; --a) {
      k[a] = static_cast<int>(rest % p->n[a]);
      rest /= p->n[a];
    }
    double lam = 0.0;
    for (int a = 0; a < g.dim; ++a) lam += eig1(k[a], p->n[a], true);
    p->inv_eig[m] = m == 0 ? 0.0 : 1.0 / (lam * scale);
  }
  return p;
}

std::mutex cache_mutex;
std::map<std::tuple<int, int, int, int, bool>, std::unique_ptr<Plan>> cache;

}  // namespace

void apply_inverse(const Grid& g, bool periodic, std::span<const double> in, std::span<double> out) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = cache[{g.dim, g.n[0], g.n[1], g.n[2], periodic}];
  if (!slot) slot = make_plan(g, periodic);
  Plan& p = *slot;

  std::copy(in.begin(), in.end(), p.real);
  fftw_execute(p.forward);
  if (!periodic) {
    for (std::size_t c = 0; c < p.spec_size; ++c) p.spec[c] *= p.inv_eig[c];
  } else {
    for (std::size_t m = 0; m < p.inv_eig.size(); ++m) {
      p.spec[2 * m] *= p.inv_eig[m];
      p.spec[2 * m + 1] *= p.inv_eig[m];
    }
  }
  fftw_execute(p.backward);
  std::copy(p.real, p.real + p.real_size, out.begin());
}

}  // namespace dwp::gravity::detail
