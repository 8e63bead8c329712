/***********************************************************************
*  Copyright 2026 the nsk authors
*
*  Licensed under the Apache License, Version 2.0 (the "License");
*  you may not use this file except in compliance with the License.
*  You may obtain a copy of the License at
*
*      http://www.apache.org/licenses/LICENSE-2.0
*
*  Unless required by applicable law or agreed to in writing, software
*  distributed under the License is distributed on an "AS IS" BASIS,
*  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
*  implied. See the License for the specific language governing
*  permissions and limitations under the License.
***********************************************************************/

#pragma once

#include <functional>

#include "nsk/field.hpp"

namespace nsk {

/// Fourier multiplier m(xi); applied pointwise to every component.
/// The symbol must be finite on every grid wavenumber.
using Multiplier = std::function<cplx(const std::array<double, 3>& xi, double xi2)>;

SpectralField apply_multiplier(const SpectralField& f, const Multiplier& m);

// Differential operators (all spectral, exact on the grid).  Odd-order
// derivatives zero the unpaired Nyquist mode so real fields stay real.
SpectralField grad(const SpectralField& scalar);          // rank 1 -> dim
SpectralField divergence(const SpectralField& vec);       // rank dim -> 1
SpectralField curl(const SpectralField& vec);             // 2D -> scalar, 3D -> vector
SpectralField curl_of_scalar(const SpectralField& psi);   // 2D perp gradient
SpectralField laplacian(const SpectralField& f);
SpectralField grad_laplacian(const SpectralField& scalar);  // grad(lap(.))
SpectralField inv_laplacian(const SpectralField& f);        // zero-mean convention
SpectralField inv_lap_div(const SpectralField& vec);        // lap^{-1} div

/// Split u into potential and rotational parts (u = pot + rot, div rot = 0).
void helmholtz(const SpectralField& u, SpectralField& pot, SpectralField& rot);

/// Radial 2/3-rule dealiasing: modes with |xi| >= (2/3) * nyquist are zeroed.
SpectralField dealias(const SpectralField& f);
bool dealias_keeps(const Grid& g, std::size_t flat);

/// Pointwise product in sample space, dealiased afterwards.
SpectralField product(const SpectralField& a, const SpectralField& b);

/// exp(nu * t * lap) f  (exact spectral heat flow).
SpectralField heat_flow(const SpectralField& f, double nu, double t);

/// u . grad(f), component by component; products dealiased.
SpectralField advect(const SpectralField& u, const SpectralField& f);

/// Symmetric gradient (1/2)(grad u + grad u^T) flattened row-major
/// (rank dim*dim).  The momentum equations and the viscous dissipation use
/// this tensor; the factor-2 viscosity convention of the model lives in the
/// callers.
SpectralField sym_grad(const SpectralField& u);

/// w . T for a vector w and a rank dim*dim tensor T: (w.T)_j = sum_i w_i T_ij.
SpectralField vec_dot_tensor(const SpectralField& w, const SpectralField& T);

/// Pointwise |grad q|^2 of a scalar field.
SpectralField grad_sq(const SpectralField& scalar);

/// Pointwise dot product of two vector fields (dealiased scalar).
SpectralField dot(const SpectralField& a, const SpectralField& b);

SpectralField pointwise(const SpectralField& f,
                        const std::function<double(double)>& fn);

}  // namespace nsk
