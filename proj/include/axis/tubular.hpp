#pragma once

#include <functional>

#include "axis/matrix.hpp"

namespace axis {

/// Tangent vector field on the unit sphere S^2 in R^3: callable that maps a
/// surface point to a vector orthogonal to it.
using SphereField = std::function<RVec(const RVec&)>;

/// Tubular neighbourhood W_eps of the unit sphere S^2 in R^3. The nearest-
/// point projection pi(q) = q / ||q|| is closed form; epsilon must stay
/// below the reach of the sphere (1).
struct TubularConfig {
    double epsilon = 0.2;

    explicit TubularConfig(double eps) : epsilon(eps) {
        if (!(eps > 0.0 && eps < 1.0))
            throw invalid_input("TubularConfig: epsilon must lie in (0, 1) for S^2");
    }
};

inline RVec tube_projection(const RVec& q) {
    const double r = norm2(q);
    RVec p(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) p[i] = q[i] / r;
    return p;
}

/// Extension w(q) = [q - pi(q)] + v(pi(q)) of a tangent field v on S^2 to the
/// open tube W_eps. Zeros of w are exactly the zeros of v on the surface, and
/// on the boundary shells w points outward: w(q) . h(q) = eps with
/// h(q) = (q - pi(q)) / eps.
inline RVec tubular_extend(const TubularConfig& cfg, const SphereField& v, const RVec& q) {
    if (q.size() != 3) throw invalid_input("tubular_extend: expected a point of R^3");
    const double r = norm2(q);
    // Closed tube: boundary shells included so the outward-pointing identity
    // w . h = eps can be evaluated where it holds.
    if (!(std::abs(r - 1.0) <= cfg.epsilon + 1e-14))
        throw tube_domain_error("tubular_extend: point outside the tube W_eps");
    const RVec p = tube_projection(q);
    const RVec tangent = v(p);
    if (tangent.size() != 3) throw invalid_input("tubular_extend: field must produce R^3 vectors");
    RVec w(3);
    for (std::size_t i = 0; i < 3; ++i) w[i] = (q[i] - p[i]) + tangent[i];
    return w;
}

} // namespace axis
