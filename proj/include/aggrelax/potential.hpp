#pragma once

#include <string>

namespace aggrelax {

/// Interaction potential W entering the nonlocal velocity a[rho] = -W' * rho.
/// Two kinds are provided:
///   * newtonian:  W(x) = |x| / 2, W'(x) = sign(x) / 2   (pointy at the origin)
///   * quadratic:  W(x) = x^2 / 2, W'(x) = x             (smooth)
/// a_inf = sup |W'| over the differences reachable inside the domain; it is the
/// Lipschitz bound used by the subcharacteristic check c >= a_inf.
struct Potential {
    enum class Kind { Newtonian, Quadratic };

    Kind kind;
    double a_inf;
    double lambda_convexity; // lambda with W - lambda*x^2/2 convex (metadata only)
    bool pointy;

    static Potential newtonian();
    /// domain_diameter = x_max - x_min of the computational domain.
    static Potential quadratic(double domain_diameter);

    /// W'(x). For the pointy kind, x = 0 is an undefined point and throws;
    /// convolution callers must exclude the self term k = j.
    double derivative(double x) const;

    std::string name() const;
};

} // namespace aggrelax
