// Copyright 2026 The qwalk Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QWALK_POLY_HPP
#define QWALK_POLY_HPP

#include <complex>
#include <vector>

namespace qwalk {

using cplx = std::complex<double>;

// Dense univariate polynomial with real coefficients, ascending order:
// p(x) = c[0] + c[1] x + ... + c[n] x^n.
struct Poly {
    std::vector<double> c;

    Poly() = default;
    explicit Poly(std::vector<double> coeffs) : c(std::move(coeffs)) {}

    int degree() const;

    double eval(double x) const;
    cplx eval(cplx x) const;
    double deriv_at(double x, int order) const;
    Poly derivative() const;
};

Poly poly_add(const Poly& p, const Poly& q);
Poly poly_sub(const Poly& p, const Poly& q);
Poly poly_mul(const Poly& p, const Poly& q);

// All complex roots of p (degree 1..8), Durand-Kerner iteration followed by
// a Newton polish of each root.
std::vector<cplx> poly_roots(const Poly& p);

// Real roots extracted from poly_roots, sorted ascending.
std::vector<double> poly_real_roots(const Poly& p, double imag_tol = 1e-8);

}  // namespace qwalk

#endif  // QWALK_POLY_HPP
