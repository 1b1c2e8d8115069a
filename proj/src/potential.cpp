#include "aggrelax/potential.hpp"

#include "aggrelax/errors.hpp"

namespace aggrelax {

Potential Potential::newtonian() {
    return Potential{Kind::Newtonian, 0.5, 0.0, true};
}

Potential Potential::quadratic(double domain_diameter) {
    if (!(domain_diameter > 0.0)) {
        throw ConfigError("potential: domain_diameter must be positive");
    }
    return Potential{Kind::Quadratic, domain_diameter, 1.0, false};
}

double Potential::derivative(double x) const {
    switch (kind) {
        case Kind::Newtonian:
            if (x == 0.0) {
                throw NumericsError("potential: W' of the newtonian kind is undefined at 0");
            }
            return x > 0.0 ? 0.5 : -0.5;
        case Kind::Quadratic:
            return x;
    }
    throw ConfigError("potential: unknown kind");
}

std::string Potential::name() const {
    switch (kind) {
        case Kind::Newtonian: return "newtonian";
        case Kind::Quadratic: return "quadratic";
    }
    return "unknown";
}

} // namespace aggrelax
