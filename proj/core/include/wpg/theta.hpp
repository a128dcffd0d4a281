#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "wpg/automorphic.hpp"
#include "wpg/domain.hpp"
#include "wpg/surface.hpp"

namespace wpg {

// Rational seed sum_t a_t (z - p_t)^-4. Poles must lie in the lower half-plane: the series
// is then holomorphic on H and decays like a weight-4 Eisenstein series.
struct SeedTerm {
    cplx coefficient;
    cplx pole;
};

struct Seed {
    std::vector<SeedTerm> terms;

    static Seed pole(cplx p, cplx coefficient = 1.0) { return {{{coefficient, p}}}; }
    cplx operator()(cplx z) const;
    bool is_zero() const;
    // Throws SeedPolesOnBoundary for a pole on the real line and InvalidConfig for one in H.
    void validate() const;
};

// Surface data shared by the field operations: the Dirichlet domain, the form space and the
// Petersson Gram matrix of its basis, G_jk = int_D phi_j conj(phi_k) y^4 dA_hyp.
struct FieldContext {
    MarkedSurface surface;
    DirichletDomain domain;
    std::shared_ptr<const FormSpace> space;
    Eigen::MatrixXcd gram;
    double gram_error = 0.0;  // max entry change between quadrature orders
    int order = 12;
};

struct FieldOptions {
    int order = 12;  // quadrature order over the domain
    DirichletOptions domain;
};

FieldContext make_field_context(const MarkedSurface& s, FieldOptions opt = {});

// Holomorphic quadratic differential phi(z) dz^2, stored as coefficients in the form space.
class QuadraticDifferential {
public:
    QuadraticDifferential(std::shared_ptr<const FormSpace> space, Eigen::VectorXcd coeffs)
        : space_(std::move(space)), coeffs_(std::move(coeffs)) {}

    static QuadraticDifferential basis(std::shared_ptr<const FormSpace> space, int k);
    static QuadraticDifferential zero(std::shared_ptr<const FormSpace> space);

    cplx operator()(cplx z) const { return space_->evaluate(coeffs_, z); }
    const Eigen::VectorXcd& coefficients() const { return coeffs_; }
    const std::shared_ptr<const FormSpace>& space() const { return space_; }

    // Truncation data when built from a theta series (zero otherwise).
    int truncation() const { return truncation_; }
    double truncation_error() const { return truncation_error_; }
    double raw_increment() const { return raw_increment_; }

    friend QuadraticDifferential theta_series(const FieldContext&, const Seed&, int);
    friend QuadraticDifferential operator+(const QuadraticDifferential&, const QuadraticDifferential&);
    friend QuadraticDifferential operator*(cplx, const QuadraticDifferential&);

private:
    std::shared_ptr<const FormSpace> space_;
    Eigen::VectorXcd coeffs_;
    int truncation_ = 0;
    double truncation_error_ = 0.0;
    double raw_increment_ = 0.0;
};

QuadraticDifferential operator+(const QuadraticDifferential& a, const QuadraticDifferential& b);
QuadraticDifferential operator*(cplx a, const QuadraticDifferential& b);

// Fixed probe points near the base point, shared by the automorphy and truncation checks.
std::vector<cplx> theta_probes(const DirichletDomain& D, int count = 20);

// Truncated Poincare series sum_{|A| <= R} seed(Az) A'(z)^2 at the given points. For the
// punctured torus the sum runs over cosets of the cusp stabilizer, with the seed summed in
// closed form over each coset.
std::vector<cplx> raw_theta_series(const MarkedSurface& s, const DirichletDomain& D, const Seed& seed, int R,
                                   const std::vector<cplx>& points);

// Largest |Theta_R(Az) A'(z)^2 - Theta_R(z)| over probes and generators, relative to the
// largest |Theta_R| on the probes.
double raw_automorphy_defect(const MarkedSurface& s, const DirichletDomain& D, const Seed& seed, int R);

int default_theta_truncation(const MarkedSurface& s);
// Largest truncation whose word enumeration stays within a few million elements.
int max_theta_truncation(const MarkedSurface& s);

// The Poincare series of the seed, summed over the whole group. Its coefficients come from
// unfolding: <phi_j, Theta> = (pi / 12) sum_t conj(a_t) phi_j(conj p_t), solved against the
// Gram matrix. The series truncated at R is evaluated on the probes as an independent check;
// NotConverged is thrown when the two disagree by more than max(1e-6 |Theta|, 10 times the
// change of the truncated series from R - 2 to R).
QuadraticDifferential theta_series(const FieldContext& ctx, const Seed& seed, int R = -1);

// One theta series per form-space dimension, seeds (z - x_k + 2i)^-4 with x_k = 0, 1, -1.
std::vector<QuadraticDifferential> theta_basis(const FieldContext& ctx, int R = -1);

}  // namespace wpg
