#pragma once

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gammalim/pole_limits.hpp"

namespace gammalim::cli {

// ---------------------------------------------------------------------------
// number formatting: '.' separator, no locale, LF-only output everywhere

/// Shortest decimal that round-trips to the same double.
inline std::string format_shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// 17 significant digits (enough to reconstruct the double exactly).
inline std::string format_sig17(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline std::string format_complex_sig17(const ComplexScalar& z) {
    if (z.imag() == 0.0) return format_sig17(z.real());
    std::string out = format_sig17(z.real());
    out += z.imag() < 0.0 ? "-" : "+";
    out += format_sig17(std::abs(z.imag()));
    out += 'i';
    return out;
}

// ---------------------------------------------------------------------------
// complex literals: "a", "bi", "a+bi", "a-bi", with "i" == "1i"

inline std::optional<double> parse_double_full(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1); // from_chars rejects '+'
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

inline std::optional<ComplexScalar> parse_complex(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.empty()) return std::nullopt;

    if (s.back() != 'i' && s.back() != 'I') {
        const auto re = parse_double_full(s);
        if (!re) return std::nullopt;
        return ComplexScalar(*re, 0.0);
    }

    std::string_view body = s.substr(0, s.size() - 1);
    // split before the sign of the imaginary part: the last '+'/'-' that is
    // neither leading nor an exponent sign
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        const char c = body[i];
        if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }

    auto parse_imag = [](std::string_view t) -> std::optional<double> {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_double_full(t);
    };

    if (split == std::string_view::npos) {
        const auto im = parse_imag(body);
        if (!im) return std::nullopt;
        return ComplexScalar(0.0, *im);
    }
    const auto re = parse_double_full(body.substr(0, split));
    const auto im = parse_imag(body.substr(split));
    if (!re || !im) return std::nullopt;
    return ComplexScalar(*re, *im);
}

// ---------------------------------------------------------------------------
// sweep: samples of Gamma(n z)/Gamma(z) on a real interval around a pole

struct SweepConfig {
    long n = 1;
    double center = 0.0;
    double half_width = 0.05;
    long samples = 1000;
    double exclusion_radius = 1e-4;
};

struct OutputRecord {
    double z;
    double ratio;
    double limit;
    double abs_deviation;
};

inline double distance_to_pole_grid(double z, double spacing) {
    if (z >= 0.0) return z; // nearest nonpositive grid point is 0
    const double j = std::nearbyint(-z / spacing);
    return std::abs(z + j * spacing);
}

/// Closed-form limit at the pole nearest the sweep center (residue-oracle
/// sign), the reference the deviation column measures against.
inline double sweep_reference_limit(const SweepConfig& cfg) {
    long k = static_cast<long>(std::llround(-cfg.center));
    if (k < 0) k = 0;
    return poles::residue_ratio_oracle({cfg.n, k}).to_real();
}

inline std::vector<OutputRecord> run_sweep(const SweepConfig& cfg) {
    const double limit = sweep_reference_limit(cfg);
    const double step = 2.0 * cfg.half_width / static_cast<double>(cfg.samples - 1);
    std::vector<OutputRecord> out;
    out.reserve(static_cast<std::size_t>(cfg.samples));
    for (long i = 0; i < cfg.samples; ++i) {
        const double z = cfg.center - cfg.half_width + step * static_cast<double>(i);
        const double num_dist = distance_to_pole_grid(z, 1.0 / static_cast<double>(cfg.n));
        const double den_dist = distance_to_pole_grid(z, 1.0);
        if (num_dist < cfg.exclusion_radius || den_dist < cfg.exclusion_radius) continue;
        double ratio;
        try {
            ratio = poles::ratio_stable(ComplexScalar(z, 0.0), cfg.n).real();
        } catch (const PoleError&) {
            continue; // grid point landed exactly on a pole of the numerator
        }
        if (!std::isfinite(ratio)) continue; // records carry finite fields only
        out.push_back({z, ratio, limit, std::abs(ratio - limit)});
    }
    return out;
}

} // namespace gammalim::cli
