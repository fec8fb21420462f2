#pragma once

#include <cstddef>

namespace ofuglb {

// Radii of the likelihood-ratio confidence sequence. `L` is a Lipschitz bound
// on the cumulative loss over the ball of radius S in R^d.

/// log(1/delta) + inf_{c in (0,1]} { d log(1/c) + 2 S L c }, evaluated at the
/// minimiser c* = min(1, d / (2 S L)).
double radius_lr(int d, double S, double L, double delta);

/// log(1/delta) + d log(max(e, 2 e S L / d)); always >= radius_lr.
double radius_lr_relaxed(int d, double S, double L, double delta);

/// Covering-number variant:
/// log(pi^2 t^2 / (6 delta)) + inf_{c in (0, 5S]} { d log(5S/c) + c L },
/// evaluated at c* = min(5S, d / L).
double radius_discrete(int d, double S, double L, std::size_t t, double delta);

/// log(pi^2 t^2 / (6 delta)) + d log(max(1, 5 S L)) + 1; always >= radius_discrete.
double radius_discrete_relaxed(int d, double S, double L, std::size_t t, double delta);

/// 2 (1 + S R_s)(4 S^2 lambda + beta^2): the squared radius of the ellipsoidal
/// relaxation in the (Hessian + lambda I) norm.
double gamma_ellipsoid(double S, double R_s, double lambda, double beta_sq);

/// lambda = 1 / (8 S^2 (1 + S R_s)).
double default_lambda(double S, double R_s);

}  // namespace ofuglb
