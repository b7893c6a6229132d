#pragma once

#include "volkov/kinematics.hpp"
#include "volkov/quadrature.hpp"

#include <vector>

namespace volkov {

// Spectral: N itself is a super-Gaussian of half-width `width`.
// Envelope: N is the transform of the flat-top exp(-|u/U|^order / 2), U = 1/width,
//           so the spatial envelope of the packet is the super-Gaussian.
enum class EtaShape { Spectral, Envelope };

class EtaWeight {
public:
    EtaWeight() = default;
    EtaWeight(double center, double width, double order = 10.0, EtaShape shape = EtaShape::Envelope);

    double operator()(double eta) const;
    double center() const { return center_; }
    double width() const { return width_; }
    double order() const { return order_; }
    EtaShape shape() const { return shape_; }

    // |eta - center| beyond which N is treated as zero.
    double support_half_width() const;
    QuadratureRule rule(std::size_t n) const;

    // Closed-form second moment of |N|^2 for the spectral shape.
    double second_moment_analytic() const;

private:
    double raw(double delta) const;

    double center_ = 0.0, width_ = 1.0, order_ = 10.0;
    EtaShape shape_ = EtaShape::Envelope;
    double scale_ = 1.0;
    std::vector<double> u_nodes_, u_weights_;
};

// Ratio of the 90%-intensity half-length (in units of x3 - (P3/E) x0, divided by |v_a - P3/E|)
// to 1/width, computed from the transform of N.
double envelope_calibration(EtaShape shape, double order);

class TransverseWeight {
public:
    TransverseWeight() = default;
    explicit TransverseWeight(double w);

    double operator()(double p1) const;
    double w() const { return w_; }
    double support_half_width() const { return 6.0 / w_; }
    QuadratureRule rule(std::size_t n) const;

private:
    double w_ = 170.0;
    double norm_ = 0.0;
};

// |p3/E - v_a|^(1/2) at (eta, p_perp).
double jacobian_factor(const CorrelationSpec& spec, double eta, double p_perp);

struct ModalDistribution {
    CorrelationSpec spec;
    EtaWeight N;
    TransverseWeight T;
};

struct MomentumMapRow {
    double eta, p1, q3_over_qminus, weight;
};

struct MomentumMap {
    std::vector<MomentumMapRow> rows;
    std::size_t skipped = 0;
};

MomentumMap momentum_density_map(const ModalDistribution& dist, double xi_star, const std::vector<double>& etas,
                                 const std::vector<double>& p1s);

// q3/q_- along the ridge eta = <eta>.
double ridge_q3_over_qminus(const ModalDistribution& dist, double xi_star, double p1);

} // namespace volkov
