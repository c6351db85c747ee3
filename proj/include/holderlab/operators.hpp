#pragma once

#include "holderlab/field.hpp"

namespace holderlab {

/// Spectral gradient. Rejects non-finite samples.
VectorField gradient(const ScalarField& f);

/// Spectral divergence.
ScalarField divergence(const VectorField& v);

/// max|div v| / max|v| (0 for the zero field).
double divergence_ratio(const VectorField& v);

/// Per-component gradients of v.
Jacobian jacobian(const VectorField& v);

/// Spectral Laplacian applied componentwise.
VectorField laplacian(const VectorField& v);

/// Orthogonal projection onto divergence-free fields: each mode k != 0 maps
/// v -> v - k (k.v) / |k|^2; the mean mode passes through.
VectorField leray_project(const VectorField& v);

/// 2/3-rule truncation of every component.
VectorField dealiased(const VectorField& v);

/// Dealiased advective product (b . grad) u formed in physical space.
VectorField advection_term(const VectorField& b, const VectorField& u);

/// grad (-Laplacian)^{-1} div (b . grad u); symbol -k (k.w)/|k|^2 applied to
/// the dealiased product w = (b . grad) u. Zero mean mode.
///
/// With this sign the pressure gradient of u_t + b.grad u - lap u = grad p is
/// the negative of the returned field.
VectorField pressure_gradient(const VectorField& b, const VectorField& u);

/// R_i R_j f with symbol -k_i k_j / |k|^2. Requires zero mean.
ScalarField riesz_double(int i, int j, const ScalarField& f);

/// (-Laplacian)^s f with symbol |k|^{2s}. For s < 0 the mean must vanish and
/// the mean mode is set to zero; for s >= 0 it is unchanged.
ScalarField fractional_laplacian(const ScalarField& f, double s);

/// Physical-space L2 norm: sqrt(sum |f|^2 h^n).
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& v);
/// Same quantity computed from the spectral coefficients.
double spectral_l2_norm(const ScalarField& f);

/// Samples a + b (componentwise) on matching grids.
VectorField add(const VectorField& a, const VectorField& b, double scale_b = 1.0);
VectorField scaled(const VectorField& a, double factor);

/// Relative tolerance used when testing for a vanishing mean.
inline constexpr double kMeanTolerance = 1e-10;

}  // namespace holderlab
