// Copyright 2026 The qi-roclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <limits>
#include <utility>

namespace qi {

template <typename Scalar>
struct MinimizeResult {
  Scalar x;
  Scalar value;
  int iterations;
  bool converged;
};

/// Bounded scalar minimization on [lo, hi]: golden-section search with
/// parabolic interpolation steps (Brent's localmin). `tol` is the absolute
/// tolerance on x.
template <typename Scalar, typename F>
MinimizeResult<Scalar> brent_minimize(F&& f, Scalar lo, Scalar hi, Scalar tol, int max_iter = 500) {
  using std::abs;
  using std::sqrt;
  const Scalar golden = (Scalar(3) - sqrt(Scalar(5))) / 2;
  const Scalar eps = sqrt(std::numeric_limits<Scalar>::epsilon());

  Scalar a = lo, b = hi;
  Scalar x = a + golden * (b - a);
  Scalar w = x, v = x;
  Scalar fx = f(x);
  Scalar fw = fx, fv = fx;
  Scalar d = 0, e = 0;

  for (int iter = 0; iter < max_iter; ++iter) {
    const Scalar m = (a + b) / 2;
    const Scalar tol1 = eps * abs(x) + tol / 3;
    const Scalar tol2 = 2 * tol1;
    if (abs(x - m) <= tol2 - (b - a) / 2) return {x, fx, iter, true};

    bool golden_step = true;
    if (abs(e) > tol1) {
      // Fit a parabola through (v, fv), (w, fw), (x, fx).
      Scalar r = (x - w) * (fx - fv);
      Scalar q = (x - v) * (fx - fw);
      Scalar p = (x - v) * q - (x - w) * r;
      q = 2 * (q - r);
      if (q > 0) p = -p;
      q = abs(q);
      const Scalar e_prev = e;
      e = d;
      if (abs(p) < abs(q * e_prev / 2) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const Scalar u = x + d;
        if (u - a < tol2 || b - u < tol2) d = x < m ? tol1 : -tol1;
        golden_step = false;
      }
    }
    if (golden_step) {
      e = (x < m ? b : a) - x;
      d = golden * e;
    }

    const Scalar u = abs(d) >= tol1 ? x + d : x + (d > 0 ? tol1 : -tol1);
    const Scalar fu = f(u);
    if (fu <= fx) {
      (u < x ? b : a) = x;
      v = w, fv = fw;
      w = x, fw = fx;
      x = u, fx = fu;
    } else {
      (u < x ? a : b) = u;
      if (fu <= fw || w == x) {
        v = w, fv = fw;
        w = u, fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u, fv = fu;
      }
    }
  }
  return {x, fx, max_iter, false};
}

}  // namespace qi
