#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wpg/beltrami.hpp"
#include "wpg/intersections.hpp"

namespace wpg {

// Constants relating the analytic and geometric sides.
//   dl_gamma(t_delta)       = c1 * 2 Re int_gamma nu_delta          (fitted by the audit)
//   omega(t_gamma, t_delta) = sigma * 2 Im <nu_gamma, nu_delta>     (fitted by the audit)
//   area_pairing(mu_gamma, phi) = kappa * (i/2) int_gamma phi dz^2  (kappa = 2 from dA = 2 dx dy)
struct Conventions {
    double c1 = 1.0;
    int sigma = 1;
    double kappa = 2.0;
    bool audited = false;
    double c1_error = 0.0;  // propagated uncertainty of an audited c1
};

struct Tolerances {
    double pairing_rel = 1e-4;
    double bump_spread = 1e-5;
    double delta_floor = 1e-9;  // pairing error below which the delta limit counts as attained
    double delta_order = 1.0;
    double length_abs = 1e-3;   // |FD - GI| < max(length_abs, length_abs |FD|)
    double antisymmetry = 1e-5;
    double disjoint = 1e-10;
    double symplectic_rel = 1e-3;
    double skew = 1e-10;
    double audit = 1e-3;
    double projection_residual = 1e-6;
};

struct VerifyOptions {
    int quad_order = 12;
    int theta_R = -1;           // truncation for the seed checks; -1 picks the surface default
    double fd_step = -1.0;      // -1 picks 1e-4 times the twisted curve's length
    double ode_step = 1e-3;
    double collar_fraction = 0.6;  // collar half-width relative to the embedded limit
    double bump_fraction = 0.5;    // bump half-width in log r relative to log(r2 / r0)
    std::vector<BumpFamily> bumps{BumpFamily::Smooth, BumpFamily::Quintic, BumpFamily::Cosine};
    Seed seed = Seed::pole(cplx(0.0, -1.0));  // theta seed of the twist-pairing checks
    AnnulusRule annulus;
    Tolerances tol;
};

using ParamValue = std::variant<bool, int, double, std::string, std::vector<double>, std::vector<std::string>>;

struct CheckReport {
    std::string check_id;
    std::vector<std::pair<std::string, ParamValue>> params;  // in insertion order
    cplx lhs, rhs;
    bool complex_values = false;  // otherwise only the real parts are meaningful
    double lhs_error = 0.0, rhs_error = 0.0;  // attached numerical error estimates
    double abs_err = 0.0, rel_err = 0.0, tol = 0.0;
    bool pass = false;
    std::string notes;

    void set(const std::string& key, ParamValue v);
};

// {check_id, params, lhs, rhs, abs_err, rel_err, tol, pass, notes}. Complex values are written
// as [re, im]. Error estimates go into params.estimates.
std::string report_to_json(const CheckReport& r);
// Array of reports sorted by check id.
std::string reports_to_json(std::vector<CheckReport> reports);

// Twist tangent vector of a marked simple curve: the collar field and its harmonic part.
struct TwistVector {
    GeodesicClass curve;
    CollarChart chart;
    BeltramiDifferential collar;
    HarmonicProjection harmonic;
    double residual = 0.0;  // largest relative pairing change under the projection
};

// Fields of one surface for the checks; twist vectors are built on first use.
class VerificationSurface {
public:
    VerificationSurface(const MarkedSurface& s, const VerifyOptions& opt);

    const std::string& label() const { return label_; }
    const MarkedSurface& surface() const { return ctx_.surface; }
    const FieldContext& context() const { return ctx_; }
    const std::vector<QuadraticDifferential>& basis() const { return basis_; }
    const VerifyOptions& options() const { return opt_; }
    // Twist vector of simple_curves()[curve]. Throws SingularGram from the projection.
    const TwistVector& twist(int curve);
    // Measured curves for the length checks: the marked curves and a few crossing words.
    std::vector<GeodesicClass> measured_curves() const;

private:
    std::string label_;
    VerifyOptions opt_;
    FieldContext ctx_;
    std::vector<QuadraticDifferential> basis_;
    std::vector<std::optional<TwistVector>> twists_;
};

std::string surface_label(const MarkedSurface& s);

// The marked simple curves followed by words crossing them: A.B and A.B^-1 on the torus, A1 and
// B2 on genus two.
std::vector<GeodesicClass> probe_curves(const MarkedSurface& s);

// Collar pairing against each bump vs kappa * (i/2) int_gamma phi; passes on relative error and
// cross-bump spread.
CheckReport verify_twist_pairing(VerificationSurface& vs, int curve, const QuadraticDifferential& phi,
                                 const Conventions& conv = {}, bool reverse = false);

// Pairing for bumps shrinking over four dyadic widths. Passes when the observed order is at
// least delta_order, or when every width already meets delta_floor (the order then carries no
// information and the notes say so).
CheckReport verify_delta_limit(VerificationSurface& vs, int curve, const QuadraticDifferential& phi,
                               const Conventions& conv = {});

// Finite-difference dl_measured / dtau_twist against c1 * 2 Re int nu_twist, cross-checked against
// the cosine sum.
CheckReport verify_length_variation(VerificationSurface& vs, const GeodesicClass& measured, int twist_curve,
                                    const Conventions& conv = {});

// dl_gamma/dtau_delta + dl_delta/dtau_gamma for two marked curves.
CheckReport verify_antisymmetry(const MarkedSurface& s, int gamma, int delta, const VerifyOptions& opt = {});

// omega(t_gamma, t_delta) = sigma * 2 Im <nu_gamma, nu_delta> against dl_gamma / dtau_delta.
CheckReport wp_symplectic_on_twists(VerificationSurface& vs, int gamma, int delta, const Conventions& conv = {});

struct AuditResult {
    Conventions conventions;
    CheckReport report;
};

// Least-squares c1 per surface and the sign sigma over the whole suite. Throws
// InconsistentConventions when c1 varies by more than tol.audit across informative surfaces,
// when sigma has contradicting evaluations, or when fewer than two surfaces are informative.
// A suite of fewer than two surfaces is InvalidConfig.
AuditResult convention_audit(std::vector<VerificationSurface*> suite);

// torus(2, 0), torus(2, 0.3), torus(1.2, 0), genus2(1.5^3; 0^3), genus2(1.5, 2, 2.5; 0.2, 0, -0.4).
std::vector<MarkedSurface> default_suite();

enum class CheckFamily { TwistPairing, LengthVariation, Antisymmetry, Symplectic, Audit };
const char* to_string(CheckFamily f) noexcept;
// "twist-pairing", "length-variation", "antisymmetry", "symplectic", "audit" or "all".
std::vector<CheckFamily> check_families_from_string(const std::string& which);

struct SuiteRun {
    Conventions conventions;
    std::vector<CheckReport> reports;  // sorted by check id
};

// Runs the audit first (its conventions feed every other check) when any selected family needs
// them, then the selected families on every surface.
SuiteRun run_suite(const std::vector<MarkedSurface>& suite, const std::vector<CheckFamily>& families,
                   const VerifyOptions& opt = {});

}  // namespace wpg
