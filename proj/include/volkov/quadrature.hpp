#pragma once

#include <cstddef>
#include <vector>

namespace volkov {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::size_t size() const { return nodes.size(); }
};

// n-point Gauss-Legendre rule on [a, b]; nodes ascending.
QuadratureRule gauss_legendre(std::size_t n, double a, double b);

} // namespace volkov
