#pragma once

#include <cmath>
#include <string>

#include "relm/errors.hpp"

namespace relm {

enum class ActivationKind { Sigmoid, Radbas, Tribas, Sine, Hardlim };

/// Standard toolbox definitions. hardlim(0) = 1 by convention.
inline double activate(ActivationKind kind, double x) {
    switch (kind) {
        case ActivationKind::Sigmoid: return 1.0 / (1.0 + std::exp(-x));
        case ActivationKind::Radbas: return std::exp(-x * x);
        case ActivationKind::Tribas: return std::max(0.0, 1.0 - std::abs(x));
        case ActivationKind::Sine: return std::sin(x);
        case ActivationKind::Hardlim: return x >= 0.0 ? 1.0 : 0.0;
    }
    return 0.0;
}

inline const char* activation_name(ActivationKind kind) {
    switch (kind) {
        case ActivationKind::Sigmoid: return "sigmoid";
        case ActivationKind::Radbas: return "radbas";
        case ActivationKind::Tribas: return "tribas";
        case ActivationKind::Sine: return "sine";
        case ActivationKind::Hardlim: return "hardlim";
    }
    return "?";
}

inline ActivationKind activation_from_name(const std::string& name) {
    if (name == "sigmoid") return ActivationKind::Sigmoid;
    if (name == "radbas") return ActivationKind::Radbas;
    if (name == "tribas") return ActivationKind::Tribas;
    if (name == "sine") return ActivationKind::Sine;
    if (name == "hardlim") return ActivationKind::Hardlim;
    throw Error("unknown activation '" + name + "' (expected sigmoid|radbas|tribas|sine|hardlim)");
}

}  // namespace relm
