#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "wpg/domain.hpp"
#include "wpg/surface.hpp"

namespace wpg {

struct FormSpaceOptions {
    double target = 1e-14;  // truncation target for the chart expansion
};

// Holomorphic quadratic differentials phi(z) dz^2 on the surface, i.e. weight-4 forms of the
// group (cusp forms for the punctured torus). Each basis form is a power series in a chart:
// q = exp(2 pi i zeta) in the cusp chart of the torus, the disk coordinate centred at the base
// point for genus two. A point is first moved by the group to where the series converges
// fastest (highest in the cusp chart, or into the Dirichlet domain), and the coefficients come
// from collocation: the series must agree with its own transform across the reduction.
class FormSpace {
public:
    enum class Chart { Cusp, Disk };

    int dimension() const { return static_cast<int>(coeffs_.cols()); }
    int modes() const { return static_cast<int>(coeffs_.rows()); }
    Chart chart() const { return chart_; }
    // Ratio of the largest discarded singular value to the smallest kept one in the
    // collocation system; small means the null space was cleanly separated.
    double null_space_gap() const { return gap_; }
    // Chart radius that reduced points never exceed: Im zeta >= reach for the cusp chart,
    // |w| <= reach for the disk chart.
    double reach() const { return reach_; }

    // All basis forms at z in H (upper half-plane coordinate).
    Eigen::VectorXcd evaluate(cplx z) const;
    // Combination sum_k c_k phi_k at z.
    cplx evaluate(const Eigen::VectorXcd& c, cplx z) const;

    // Group element moving z to the reduced region and the factor g'(z)^2, so that
    // phi(z) = phi(g z) * factor for every form.
    struct Reduction {
        cplx z;
        cplx factor;
    };
    Reduction reduce(cplx z) const;

    friend std::shared_ptr<const FormSpace> build_form_space(const MarkedSurface&, const DirichletDomain&,
                                                             FormSpaceOptions);

private:
    Chart chart_ = Chart::Disk;
    MoebiusMap normalizer_;             // cusp chart: zeta -> z
    cplx base_;                         // disk chart centre
    std::vector<MoebiusMap> moves_;     // reduction candidates (chart coordinates for the cusp)
    std::vector<cplx> targets_;         // disk chart: g * base for each move's inverse
    Eigen::MatrixXcd coeffs_;           // scaled coefficients b_n, one column per form
    int first_mode_ = 0;                // 1 for cusp forms (no constant term), 0 on the disk
    double reach_ = 0.0;
    double gap_ = 0.0;

    // Scaled series variable s and factor F with phi(z) = F * sum_n b_n s^n.
    void series_at(cplx z, cplx& s, cplx& factor) const;
};

// dimension 1 for the punctured torus, 3 for genus two.
std::shared_ptr<const FormSpace> build_form_space(const MarkedSurface& s, const DirichletDomain& D,
                                                  FormSpaceOptions opt = {});

}  // namespace wpg
