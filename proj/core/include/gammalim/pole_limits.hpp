#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "gammalim/gamma.hpp"

namespace gammalim::poles {

/// Which limit of Gamma(n z)/Gamma(z): dilation n at the pole z = -k.
/// k = 0 is the z -> 0 case (limit 1/n); k >= 1 the general one.
struct RatioLimitSpec {
    long n = 1;
    long k = 0;
};

/// The sign of the k >= 1 limit, under the two competing conventions.
/// They agree whenever n is even or k is even; for odd n and odd k the
/// published (-1)^k conflicts with the residue derivation's (-1)^(k(n-1)),
/// and numerical extrapolation sides with the residues.
enum class SignConvention {
    PaperTheorem2, // (-1)^k
    ResidueOracle, // (-1)^(k(n-1))
};

/// +1 or -1 for the requested convention (always +1 at k = 0).
int convention_sign(const RatioLimitSpec& spec, SignConvention convention) noexcept;

/// True iff the two conventions disagree: k >= 1 with both n and k odd.
bool conventions_disagree(long n, long k) noexcept;

/// Closed-form limit: magnitude 1/n for k = 0, Gamma(k)/(n^2 Gamma(nk))
/// otherwise (via log_gamma); sign per the chosen convention.
LogMagnitudeSign ratio_limit_closed_form(const RatioLimitSpec& spec,
                                         SignConvention convention);

/// Independent ground truth from the simple-pole residues of Gamma:
///   lim_{z -> -k} Gamma(nz)/Gamma(z) = Res_{-nk}(Gamma) / (n Res_{-k}(Gamma))
///                                    = (-1)^(k(n-1)) k! / (n (nk)!)
/// for k >= 1, and 1/n for k = 0. Log-space factorials only; no shared
/// code with the Lanczos evaluator.
LogMagnitudeSign residue_ratio_oracle(const RatioLimitSpec& spec);

/// Gamma(n z)/Gamma(z), stable arbitrarily close to the poles. Within
/// distance 0.5 of z = -k (and n|z+k| < 0.5) it switches to the
/// cancellation-free reflection rewrite
///   sin(pi z) Gamma(1-z) / (sin(pi n z) Gamma(1-n z)),
/// which stays accurate to <= 1e-9 relative down to |z+k| = 1e-12.
/// At z exactly equal to -k the removable-singularity value (the residue
/// ratio) is returned.
ComplexScalar ratio_stable(const ComplexScalar& z, long n);

/// Extrapolated limit with its step table. value is the Richardson
/// extrapolant of the table, not the last entry; achieved_tol bounds the
/// change in the final extrapolation column.
struct LimitEstimate {
    LogMagnitudeSign value;
    std::vector<std::pair<double, double>> steps; // (epsilon, ratio), eps decreasing
    double order = 0.0;                           // estimated convergence order
    double achieved_tol = 0.0;
};

/// Richardson extrapolation of ratio_stable along z = -k + eps0 * 2^-j,
/// j = 0..steps-1 (real axis, from the right), assuming first-order
/// leading error. Steps below the eps = 1e-12 noise floor are dropped.
/// Throws ConvergenceError when the table fails to contract.
LimitEstimate limit_extrapolate(const RatioLimitSpec& spec, double eps0, int steps);

/// The same extrapolation driven by an arbitrary evaluator; seam for
/// diagnosing a broken evaluator and for alternate approach paths.
LimitEstimate extrapolate_sequence(const std::function<double(double)>& f,
                                   double eps0, int steps);

/// Deviation of pi/sin(pi (r/n - w)) at w = k -+ eps from its limit
/// (-1)^k pi / sin(pi r / n); decays linearly in eps. The larger of the
/// two one-sided deviations is returned.
double reflection_sign_limit(long n, long r, long k, double eps);

/// Extrapolated limit of prod_{r=1}^{n-1} Gamma(-w + r/n) Gamma(1 + w - r/n)
/// at w -> k (approached from below). The magnitude must land on
/// (2 pi)^(n-1)/n; the sign is reported as measured, which is how the
/// per-factor (-1)^k compounding to (-1)^(k(n-1)) gets tested.
LimitEstimate theorem2_product_limit(long n, long k, double eps0, int steps);

} // namespace gammalim::poles
