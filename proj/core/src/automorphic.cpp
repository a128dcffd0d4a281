#include "wpg/automorphic.hpp"

#include <algorithm>
#include <cmath>

#include "wpg/error.hpp"
#include "wpg/word.hpp"

namespace wpg {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr int kMaxReductionSteps = 1000;

cplx sq(cplx v) { return v * v; }

// Disk coordinate centred at b and its derivative.
cplx disk_of(cplx z, cplx b) { return (z - b) / (z - std::conj(b)); }
cplx disk_derivative(cplx z, cplx b) { return (b - std::conj(b)) / sq(z - std::conj(b)); }
cplx half_plane_of(cplx w, cplx b) { return (b - w * std::conj(b)) / (1.0 - w); }
cplx half_plane_derivative(cplx w, cplx b) { return (b - std::conj(b)) / sq(1.0 - w); }

// Translate so that -1/2 <= Re zeta < 1/2.
cplx center_strip(cplx zeta) { return zeta - std::floor(zeta.real() + 0.5); }

}  // namespace

// Cusp chart: pushes zeta up through the Ford candidates. phi-factor is prod G'(zeta)^2.
static cplx ford_reduce(const std::vector<MoebiusMap>& moves, cplx zeta, cplx& factor) {
    zeta = center_strip(zeta);
    for (int it = 0; it < kMaxReductionSteps; ++it) {
        double best = zeta.imag() * (1.0 + 1e-13);
        int pick = -1;
        for (std::size_t k = 0; k < moves.size(); ++k) {
            const double y = zeta.imag() / std::norm(moves[k].c() * zeta + moves[k].d());
            if (y > best) {
                best = y;
                pick = static_cast<int>(k);
            }
        }
        if (pick < 0) return zeta;
        factor *= sq(moves[static_cast<std::size_t>(pick)].derivative(zeta));
        zeta = center_strip(moves[static_cast<std::size_t>(pick)].apply(zeta));
    }
    throw Error(ErrorKind::NotConverged, "cusp reduction did not terminate");
}

// Disk chart: moves z across the Dirichlet side it violates most until it lies in the domain.
static cplx dirichlet_reduce(const std::vector<MoebiusMap>& moves, const std::vector<cplx>& targets, cplx base,
                             cplx z, cplx& factor) {
    for (int it = 0; it < kMaxReductionSteps; ++it) {
        // cosh d(z, p) is proportional to |z - p|^2 / Im p for fixed z.
        double best = std::norm(z - base) / base.imag() * (1.0 - 1e-13);
        int pick = -1;
        for (std::size_t k = 0; k < targets.size(); ++k) {
            const double v = std::norm(z - targets[k]) / targets[k].imag();
            if (v < best) {
                best = v;
                pick = static_cast<int>(k);
            }
        }
        if (pick < 0) return z;
        factor *= sq(moves[static_cast<std::size_t>(pick)].derivative(z));
        z = moves[static_cast<std::size_t>(pick)].apply(z);
    }
    throw Error(ErrorKind::NotConverged, "Dirichlet reduction did not terminate");
}

FormSpace::Reduction FormSpace::reduce(cplx z) const {
    cplx factor = 1.0;
    if (chart_ == Chart::Disk) {
        const cplx zr = dirichlet_reduce(moves_, targets_, base_, z, factor);
        return {zr, factor};
    }
    const MoebiusMap to_chart = normalizer_.inverse();
    cplx chart_factor = 1.0;
    const cplx zeta = ford_reduce(moves_, to_chart.apply(z), chart_factor);
    // phi(z) = f(zeta) (dzeta/dz)^2 and f(zeta) = f(zeta*) chart_factor; convert to H.
    const cplx zr = normalizer_.apply(zeta);
    factor = chart_factor * sq(to_chart.derivative(z)) / sq(to_chart.derivative(zr));
    return {zr, factor};
}

void FormSpace::series_at(cplx z, cplx& s, cplx& factor) const {
    factor = 1.0;
    if (chart_ == Chart::Disk) {
        const cplx zr = dirichlet_reduce(moves_, targets_, base_, z, factor);
        s = disk_of(zr, base_) / reach_;
        factor *= sq(disk_derivative(zr, base_));
        return;
    }
    const MoebiusMap to_chart = normalizer_.inverse();
    const cplx zeta = ford_reduce(moves_, to_chart.apply(z), factor);
    s = std::exp(cplx(0.0, kTwoPi) * zeta) * std::exp(kTwoPi * reach_);
    factor *= sq(to_chart.derivative(z));
}

Eigen::VectorXcd FormSpace::evaluate(cplx z) const {
    cplx s, factor;
    series_at(z, s, factor);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dimension());
    cplx p = first_mode_ == 0 ? cplx(1.0) : s;
    for (int n = 0; n < modes(); ++n) {
        out += p * coeffs_.row(n).transpose();
        p *= s;
    }
    return out * factor;
}

cplx FormSpace::evaluate(const Eigen::VectorXcd& c, cplx z) const { return (evaluate(z).array() * c.array()).sum(); }

std::shared_ptr<const FormSpace> build_form_space(const MarkedSurface& s, const DirichletDomain& D,
                                                  FormSpaceOptions opt) {
    auto fs = std::make_shared<FormSpace>();
    FormSpace& F = *fs;
    const int dim = s.topology() == Topology::PuncturedTorus ? 1 : 3;
    const double log_target = -std::log(opt.target);

    // Samples just outside the reduced region, each with its reduced image: f(s_m) = J_m f(s*_m)
    // in the chart, with the chart variable written as rho^n e^{i n phase_m} on the samples.
    std::vector<double> phase;
    std::vector<cplx> reduced;  // scaled series variable at the reduced image
    std::vector<cplx> jac;
    double rho = 1.0;
    int M = 0;

    if (s.topology() == Topology::PuncturedTorus) {
        F.chart_ = FormSpace::Chart::Cusp;
        F.first_mode_ = 1;
        if (D.cusps().empty()) throw Error(ErrorKind::DomainNotConverged, "punctured torus domain has no cusp");
        F.normalizer_ = D.cusps().front().normalizer;
        const MoebiusMap to_chart = F.normalizer_.inverse();
        std::vector<MoebiusMap> conj;
        for (int len = 1; len <= 4; ++len)
            for (const auto& w : reduced_words_of_length(s.rank(), len)) {
                const MoebiusMap G = to_chart * s.evaluate(w) * F.normalizer_;
                if (std::abs(G.c()) < 1e-9) continue;  // parabolic fixing the cusp
                for (int k = -2; k <= 2; ++k) conj.push_back(G * MoebiusMap::translation(k));
            }
        F.moves_ = std::move(conj);
        // Lowest reduced height, sampled along a low horocycle.
        double ymin = 1e300;
        for (int i = 0; i < 4000; ++i) {
            cplx f = 1.0;
            const cplx zr = ford_reduce(F.moves_, cplx(-0.5 + (i + 0.5) / 4000.0, 1e-3), f);
            ymin = std::min(ymin, zr.imag());
        }
        F.reach_ = 0.97 * ymin;
        M = static_cast<int>(std::ceil(log_target / (kTwoPi * F.reach_))) + 8;
        const double Y0 = 0.8 * F.reach_;
        rho = std::exp(kTwoPi * (F.reach_ - Y0));
        const int samples = 2 * (M + 10);
        for (int m = 0; m < samples; ++m) {
            const double x = (m + 0.5) / samples - 0.5;
            cplx J = 1.0;
            const cplx zr = ford_reduce(F.moves_, cplx(x, Y0), J);
            phase.push_back(kTwoPi * x);
            reduced.push_back(std::exp(cplx(0.0, kTwoPi) * zr) * std::exp(kTwoPi * F.reach_));
            jac.push_back(J);
        }
    } else {
        F.chart_ = FormSpace::Chart::Disk;
        F.first_mode_ = 0;
        F.base_ = D.base();
        for (const auto& side : D.sides()) {
            F.moves_.push_back(side.element.inverse());
            F.targets_.push_back(side.element.apply(F.base_));
        }
        double rmax = 0.0;
        for (const auto& v : D.vertices()) rmax = std::max(rmax, std::abs(disk_of(v.z, F.base_)));
        F.reach_ = rmax * (1.0 + 1e-9);
        // Coefficients of a bounded weight-4 form grow like n^3 against reach^n.
        M = static_cast<int>(std::ceil((log_target + 3.0 * std::log(200.0)) / -std::log(F.reach_)));
        const double rc = F.reach_ + 0.25 * (1.0 - F.reach_);
        rho = rc / F.reach_;
        const int samples = 2 * (M + 10);
        for (int m = 0; m < samples; ++m) {
            const double th = kTwoPi * (m + 0.5) / samples;
            const cplx w = std::polar(rc, th);
            const cplx z = half_plane_of(w, F.base_);
            cplx J = sq(half_plane_derivative(w, F.base_));
            const cplx zr = dirichlet_reduce(F.moves_, F.targets_, F.base_, z, J);
            J *= sq(disk_derivative(zr, F.base_));
            phase.push_back(th);
            reduced.push_back(disk_of(zr, F.base_) / F.reach_);
            jac.push_back(J);
        }
    }

    // Hejhal system: Fourier coefficient n of the reduced side equals b_n rho^n.
    const int Q2 = static_cast<int>(phase.size());
    Eigen::MatrixXcd A(Q2, M), Fr(M, Q2);
    for (int m = 0; m < Q2; ++m) {
        cplx p = F.first_mode_ == 0 ? cplx(1.0) : reduced[static_cast<std::size_t>(m)];
        for (int k = 0; k < M; ++k) {
            A(m, k) = jac[static_cast<std::size_t>(m)] * p;
            p *= reduced[static_cast<std::size_t>(m)];
        }
    }
    for (int n = 0; n < M; ++n) {
        const int mode = n + F.first_mode_;
        const double inv = 1.0 / (Q2 * std::pow(rho, mode));
        for (int m = 0; m < Q2; ++m) Fr(n, m) = std::polar(inv, -mode * phase[static_cast<std::size_t>(m)]);
    }
    const Eigen::MatrixXcd V = Fr * A - Eigen::MatrixXcd::Identity(M, M);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(V, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    F.gap_ = sv(M - dim) / sv(M - dim - 1);
    const Eigen::MatrixXcd N = svd.matrixV().rightCols(dim);

    // Deterministic basis: unit coefficient at pivot modes chosen by column-pivoted QR.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(N.transpose());
    Eigen::MatrixXcd P(dim, dim);
    std::vector<int> piv(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j) piv[static_cast<std::size_t>(j)] = qr.colsPermutation().indices()(j);
    std::sort(piv.begin(), piv.end());
    for (int j = 0; j < dim; ++j) P.row(j) = N.row(piv[static_cast<std::size_t>(j)]);
    F.coeffs_ = N * P.inverse();
    return fs;
}

}  // namespace wpg
