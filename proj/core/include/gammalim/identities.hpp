#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gammalim/gamma.hpp"

namespace gammalim::identities {

enum class IdentityId {
    Reflection,
    SineProduct,
    GaussMultiplication,
    GammaFractionProduct,
    RootsOfUnityProduct,
    ChordLength,
};

const char* identity_name(IdentityId id) noexcept;

/// Quantified outcome of checking one identity over a grid.
/// pass <=> max_rel_residual <= threshold, and max_rel_residual is the
/// maximum over the whole declared grid, never a sample.
struct IdentityReport {
    IdentityId identity_id;
    std::string grid;
    double max_rel_residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
    /// Argument attaining the maximum, for diagnostics.
    std::string worst_point;
};

/// exp(2 pi i k / n), generated through the reduced sin_pi/cos_pi pair
/// rather than repeated multiplication (which drifts by n ~ 10^4).
struct RootOfUnity {
    long n;
    long k;
    ComplexScalar value;
};

RootOfUnity root_of_unity(long n, long k);

/// |Gamma(xi) Gamma(1-xi) sin(pi xi)/pi - 1|, the reflection identity
/// rearranged so nothing divides by a near-zero sine.
double reflection_residual(const ComplexScalar& xi);

/// prod_{k=1}^{n-1} sin(k pi / n) in log space. Closed form: n / 2^(n-1).
LogMagnitudeSign sine_product(long n);

/// prod_{k=1}^{n-1} (1 - omega_k) for the n-th roots of unity; equals n.
/// Factors are accumulated from the literal complex differences so the
/// check stays independent of the sine product.
ComplexScalar roots_of_unity_product(long n);

/// | |1 - omega_k| - 2 sin(pi k / n) |  (absolute: both sides vanish as
/// k/n -> 0).
double chord_length_residual(long n, long k);

/// Gauss multiplication formula
///   prod_{k=0}^{n-1} Gamma(z + k/n) = (2 pi)^((n-1)/2) n^(1/2 - n z) Gamma(n z)
/// checked in log space; returns |LHS/RHS - 1|.
double gauss_residual(const ComplexScalar& z, long n);

/// prod_{k=1}^{n-1} Gamma(k/n) vs (2 pi)^((n-1)/2) n^(-1/2), in log space;
/// returns the relative deviation.
double gamma_fraction_product_residual(long n);

/// Default grids sized to the library's verification suite. n_max <= 0
/// keeps the default extent; single_n >= 1 restricts Gauss to one n.
struct CheckOptions {
    long n_max = 0;
    long single_n = 0;
    double tol_override = 0.0; // <= 0 keeps per-identity defaults
};

IdentityReport check_identity(IdentityId id, const CheckOptions& opts = {});
std::vector<IdentityReport> check_all(const CheckOptions& opts = {});

} // namespace gammalim::identities
