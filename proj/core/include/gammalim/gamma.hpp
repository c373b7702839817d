#pragma once

#include <optional>

#include "gammalim/errors.hpp"
#include "gammalim/log_mag_sign.hpp"

namespace gammalim {

/// Nearest pole of Gamma (z = -pole_index) and the distance to it.
/// Only populated for Re(z) < 0.5; ties at half-integers break toward
/// the smaller index.
struct PoleProximity {
    long pole_index = 0;
    double distance = 0.0;
};

std::optional<PoleProximity> nearest_pole(const ComplexScalar& z) noexcept;

/// Selects one of the three independent evaluation routes.
struct EvalMethod {
    enum class Kind { RationalApprox, TruncatedProduct, Quadrature };

    Kind kind = Kind::RationalApprox;
    long param = 0; // product terms N (>= 1) or quadrature nodes (>= 2)

    static EvalMethod rational() { return {Kind::RationalApprox, 0}; }
    static EvalMethod product(long terms);
    static EvalMethod quadrature(long nodes);
};

/// sin(pi*z) with the argument reduced by its nearest integer before the
/// multiplication by pi. Integer arguments give an exact zero; for real z
/// at distance eps from an integer the relative error stays ~1 ulp all the
/// way down to denormal eps.
ComplexScalar sin_pi(const ComplexScalar& z) noexcept;
double sin_pi(double x) noexcept;

/// cos(pi*z) via the same reduction; exact +/-1 at integers, exact zero at
/// half-integers.
ComplexScalar cos_pi(const ComplexScalar& z) noexcept;
double cos_pi(double x) noexcept;

/// Gamma(z) by the production route: Lanczos rational approximation
/// (g = 607/128, 15 coefficients) for Re(z) >= 0.5, Euler reflection
/// through sin_pi otherwise. Relative error <= 1e-12 for |z| <= 20 at
/// distance >= 1e-3 from the poles.
///
/// Throws PoleError at nonpositive integers and OverflowToLogError when
/// the result exceeds double range.
ComplexScalar gamma(const ComplexScalar& z);

/// log Gamma(z) as (log|Gamma|, arg Gamma). exp of the result matches
/// Gamma(z) to <= 1e-12 relative for |z| <= 200 away from poles. The
/// phase is reduced to (-pi, pi]; real arguments come back with phase
/// exactly 0 or pi.
LogMagnitudeSign log_gamma(const ComplexScalar& z);

/// N-term truncation of the Euler/Weierstrass product
///   Gamma(z) = (1/z) prod_{n>=1} (1+1/n)^z / (1+z/n).
/// First-order convergence: the error decays like C(z)/N.
ComplexScalar gamma_weierstrass(const ComplexScalar& z, long terms);

/// Quadrature of the defining integral  int_0^inf e^-t t^(z-1) dt,
/// valid for Re(z) > 0 (DomainError otherwise).
///
/// Scheme: integrate by parts m times (exact identity) until the shifted
/// argument w = z + m has Re(w) >= 16, substitute t = e^s and apply the
/// trapezoid rule on s in [-4, log(3 Re(w) + 40)]. The rule is spectrally
/// accurate there: with M nodes and step h = range/(M-1) the relative
/// error is ~exp(-(pi/2)(2 pi/h - 2|Im z|)) + 1e-15, i.e. <= 1e-10 needs
/// only ~60 nodes for |Im z| <= 10 and M >= 200 reaches the 1e-13 floor.
ComplexScalar gamma_integral(const ComplexScalar& z, long nodes);

/// Dispatch helper for the CLI surface.
ComplexScalar eval_gamma(const ComplexScalar& z, const EvalMethod& method);

/// Residue of Gamma at z = -k, i.e. (-1)^k / k!, in log space so large k
/// does not underflow.
LogMagnitudeSign residue_at_pole(long k);

/// log(m!) by compensated summation for small m, Stirling series beyond;
/// thread-safe and independent of the Lanczos path.
double log_factorial(long m);

} // namespace gammalim
