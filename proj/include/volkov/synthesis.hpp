#pragma once

#include "volkov/field.hpp"
#include "volkov/spectral.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace volkov {

struct QuadratureSizes {
    std::size_t n_eta = 128;
    std::size_t n_p1 = 128;
};

// One (eta, p1) node of the reduced momentum integral.
struct MomentumNode {
    double eta = 0, p1 = 0, p3 = 0, E = 0, pm = 0;
    double weight = 0;   // |N T|^2 times the quadrature weights, for expectation values
    double coeff = 0;    // W_eta N W_p1 T |J|^(-1/2) / (2 pi sqrt(2 p_-)), normalisation applied
    double u[4] = {0, 0, 0, 0};
    double w[4] = {0, 0, 0, 0}; // gamma_- gamma_1 u / (2 p_-), so V = u - eA1 w
};

struct Moments {
    double E_over_pm = 0;   // <E / p_->
    double inv_pm = 0;      // <1 / p_->
    double inv_pm2 = 0;     // <1 / p_-^2>
    double p3_over_pm = 0;  // <p3 / p_->
    double p1_sq = 0;       // <p1^2>
    double eta = 0;
    double eta_p1_cov = 0;
};

class Wavepacket {
public:
    Wavepacket(ModalDistribution dist, QuadratureSizes sizes, std::shared_ptr<const FieldIntegrals> field,
               Spin spin = Spin::Up);

    const ModalDistribution& distribution() const { return dist_; }
    const QuadratureSizes& sizes() const { return sizes_; }
    const FieldIntegrals* field() const { return field_.get(); }
    std::shared_ptr<const FieldIntegrals> field_ptr() const { return field_; }
    Spin spin() const { return spin_; }
    const std::vector<MomentumNode>& nodes() const { return nodes_; }
    const Moments& moments() const { return moments_; }
    // Factor applied to psi so that the light-front norm is 1.
    double norm_scale() const { return norm_scale_; }
    std::size_t dropped_nodes() const { return dropped_; }

    // Fixed-eta partial wavepacket, integrated over p1 with n_p1 nodes (no norm rescale).
    Bispinor partial(const FourVector& x, double eta) const;
    Bispinor psi(const FourVector& x) const;
    double density(const FourVector& x) const;

    // Density along x3 = x3_start + i dx3 at fixed x_- and x1.
    void density_row(double x_minus, double x1, double x3_start, double dx3, std::size_t n, double* out) const;

    // Phase of every node relative to the reference carrier; used by resolution guards.
    double relative_phase(const MomentumNode& k, double x0, double x1, double x3, const FieldIntegrals::Values& f) const;

    Wavepacket with_sizes(QuadratureSizes sizes) const;

private:
    ModalDistribution dist_;
    QuadratureSizes sizes_;
    std::shared_ptr<const FieldIntegrals> field_;
    Spin spin_;
    ReferencePoint ref_;
    std::vector<MomentumNode> nodes_;
    Moments moments_;
    double norm_scale_ = 1.0;
    std::size_t dropped_ = 0;
};

struct SpacetimeGrid {
    enum class X1Rule { Peak, Constant };

    double x3_min = 0, x3_max = 0;
    std::size_t x3_steps = 2;
    double xm_min = 0, xm_max = 0;
    std::size_t xm_steps = 2;
    X1Rule x1_rule = X1Rule::Peak;
    double x1 = 0;

    double x3_at(std::size_t i) const;
    double xm_at(std::size_t j) const;
    double dx3() const;
    double dxm() const;
};

// x1 = x_f1(x_-) = -I1(x_-)/P_- for the peak rule.
double slice_x1(const Wavepacket& wp, const SpacetimeGrid& grid, double x_minus);

struct ResolutionReport {
    double dx3_limit = 0;        // pi / (spread of p_- over the effective support)
    std::size_t eta_required = 0; // nodes for 8 per 2 pi of phase variation
    std::size_t p1_required = 0;
    std::size_t eta_available = 0;
    std::size_t p1_available = 0;
    bool grid_ok = true;
    bool nodes_ok = true;
};

ResolutionReport check_resolution(const Wavepacket& wp, const SpacetimeGrid& grid, double nodes_per_cycle = 8.0);

struct DensityOptions {
    unsigned workers = 0;          // 0: hardware concurrency
    bool enforce_nyquist = true;   // throw or escalate when the node guard fails
    bool auto_escalate = true;
    bool convergence_probe = true; // compare peaks against doubled quadrature
    std::size_t max_nodes = 2048;
};

struct DensityField {
    SpacetimeGrid grid;
    std::vector<double> values; // row-major, x_- index outer
    QuadratureSizes sizes;
    ResolutionReport resolution;
    double probe_change = 0.0;   // largest relative peak change under doubling
    std::vector<double> probe_rows;

    double at(std::size_t j_xm, std::size_t i_x3) const { return values[j_xm * grid.x3_steps + i_x3]; }
    const double* row(std::size_t j_xm) const { return values.data() + j_xm * grid.x3_steps; }
};

DensityField density_grid(const Wavepacket& wp, const SpacetimeGrid& grid, const DensityOptions& options = {});

// Evaluate rows in parallel; rows are written by index.
void evaluate_rows(const Wavepacket& wp, const SpacetimeGrid& grid, unsigned workers, std::vector<double>& out);

unsigned resolve_workers(unsigned requested);

struct PeakLocation {
    double x3 = 0;
    double value = 0;
    double contrast = 0;
};

// Argmax with 3-point quadratic refinement; FlatSlice when max/median < 1.5.
PeakLocation peak_locate(const double* row, std::size_t n, double x3_start, double dx3);
PeakLocation peak_locate(const DensityField& field, double x_minus);

// Light-front norm over a rectangle of the (x1, x3) slice at fixed x_-.
double slice_norm(const Wavepacket& wp, double x_minus, double x1_min, double x1_max, std::size_t n1, double x3_min,
                  double x3_max, std::size_t n3);

// Fast path: p1 integral done in closed form with the phase expanded to second order in p1.
struct ParaxialResult {
    cplx amplitude;   // scalar envelope
    double density;   // light-front density with the leading-order spinor
};

void check_paraxial(const Wavepacket& wp);
ParaxialResult paraxial_envelope(const Wavepacket& wp, const FourVector& x);

} // namespace volkov
