#include "volkov/quadrature.hpp"
#include "volkov/errors.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <map>
#include <mutex>

namespace volkov {

namespace {

struct Reference {
    std::vector<double> x, w;
};

const Reference& reference_rule(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, Reference> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    Reference r;
    const int ni = static_cast<int>(n);
    for (double z : boost::math::legendre_p_zeros<double>(ni)) {
        const double dp = boost::math::legendre_p_prime<double>(ni, z);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        r.x.push_back(z);
        r.w.push_back(w);
        if (z != 0.0) {
            r.x.push_back(-z);
            r.w.push_back(w);
        }
    }
    std::vector<std::size_t> idx(r.x.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return r.x[a] < r.x[b]; });
    Reference sorted;
    for (std::size_t i : idx) {
        sorted.x.push_back(r.x[i]);
        sorted.w.push_back(r.w[i]);
    }
    return cache.emplace(n, std::move(sorted)).first->second;
}

} // namespace

QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
    if (n == 0) throw ValidationError("quadrature needs at least one node");
    const Reference& ref = reference_rule(n);
    QuadratureRule q;
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    q.nodes.reserve(n);
    q.weights.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        q.nodes.push_back(mid + half * ref.x[i]);
        q.weights.push_back(half * ref.w[i]);
    }
    return q;
}

} // namespace volkov
