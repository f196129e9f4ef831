/*
Copyright 2026 The roomqa Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <complex>
#include <span>
#include <unsupported/Eigen/FFT>
#include <vector>

#include "roomqa/common.hpp"

namespace roomqa::dsp {

namespace detail {

inline Index next_pow2(Index n) {
  Index p = 1;
  while (p < n) p <<= 1;
  return p;
}

template <typename Scalar>
void direct_convolve(const Scalar* x, Index nx, const Scalar* h, Index nh,
                     Scalar* y) {
  for (Index i = 0; i < nx + nh - 1; ++i) y[i] = Scalar(0);
  for (Index i = 0; i < nx; ++i)
    for (Index j = 0; j < nh; ++j) y[i + j] += x[i] * h[j];
}

}  // namespace detail

/// Linear convolution x * h (length |x| + |h| - 1) via zero-padded real FFT.
/// Very short kernels take the direct path.
template <typename DerivedX, typename DerivedH>
Signal<typename DerivedX::Scalar> fft_convolve(
    const Eigen::DenseBase<DerivedX>& x, const Eigen::DenseBase<DerivedH>& h) {
  using Scalar = typename DerivedX::Scalar;
  static_assert(std::is_same_v<Scalar, typename DerivedH::Scalar>,
                "operands must share a scalar type");
  const Index nx = x.size();
  const Index nh = h.size();
  if (nx == 0 || nh == 0) throw Error("empty operand");

  const Index ny = nx + nh - 1;
  Signal<Scalar> y(ny);
  Signal<Scalar> xv(nx), hv(nh);
  for (Index i = 0; i < nx; ++i) xv[i] = x.derived().coeff(i);
  for (Index i = 0; i < nh; ++i) hv[i] = h.derived().coeff(i);

  if (std::min(nx, nh) <= 16) {
    detail::direct_convolve(xv.data(), nx, hv.data(), nh, y.data());
    return y;
  }

  const Index nfft = detail::next_pow2(ny);
  Eigen::FFT<Scalar> fft;
  fft.SetFlag(Eigen::FFT<Scalar>::HalfSpectrum);
  std::vector<Scalar> a(nfft, Scalar(0)), b(nfft, Scalar(0));
  std::copy(xv.data(), xv.data() + nx, a.begin());
  std::copy(hv.data(), hv.data() + nh, b.begin());
  std::vector<std::complex<Scalar>> fa, fb;
  fft.fwd(fa, a);
  fft.fwd(fb, b);
  for (std::size_t k = 0; k < fa.size(); ++k) fa[k] *= fb[k];
  std::vector<Scalar> out;
  fft.inv(out, fa, nfft);
  std::copy(out.begin(), out.begin() + ny, y.data());
  return y;
}

/// Convolves one signal with several kernels, transforming the signal once.
/// Each output is truncated to `out_len` samples (or the full length when
/// out_len < 0).
std::vector<Signal<double>> fft_convolve_many(
    const Signal<double>& x, std::span<const Signal<double>> kernels,
    Index out_len = -1);

}  // namespace roomqa::dsp
