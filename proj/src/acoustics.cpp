#include "sawtrap/acoustics.hpp"

#include <cmath>
#include <stdexcept>

namespace sawtrap::acoustics {

namespace {
using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};
}  // namespace

void ElasticMedium::validate() const {
    if (!(lame_mu > 0.0))
        throw std::invalid_argument("ElasticMedium: mu must be > 0");
    if (!(lame_kappa > 0.0))
        throw std::invalid_argument("ElasticMedium: kappa must be > 0");
    if (!(density > 0.0))
        throw std::invalid_argument("ElasticMedium: density must be > 0");
}

double ElasticMedium::shear_velocity() const {
    validate();
    return std::sqrt(lame_mu / density);
}

double ElasticMedium::longitudinal_velocity() const {
    validate();
    return std::sqrt((lame_kappa + 2.0 * lame_mu) / density);
}

void PropagationSpec::validate() const {
    if (!(wave_number > 0.0))
        throw std::invalid_argument("PropagationSpec: wave number must be > 0");
    if (!(velocity >= 0.0))
        throw std::invalid_argument("PropagationSpec: velocity must be >= 0");
}

Eigen::Matrix3d strain_tensor(const Eigen::Matrix3d& displacement_gradient) {
    if (!displacement_gradient.allFinite())
        throw std::invalid_argument("strain_tensor: non-finite gradient");
    return 0.5 * (displacement_gradient + displacement_gradient.transpose());
}

Eigen::Matrix3d isotropic_stress(const ElasticMedium& medium,
                                 const Eigen::Matrix3d& strain) {
    medium.validate();
    if ((strain - strain.transpose()).cwiseAbs().maxCoeff() >
        1e-12 * (1.0 + strain.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("isotropic_stress: strain must be symmetric");
    return medium.lame_kappa * strain.trace() * Eigen::Matrix3d::Identity() +
           2.0 * medium.lame_mu * strain;
}

Eigen::Matrix3d secular_matrix(const ElasticMedium& medium,
                               const PropagationSpec& spec, double q) {
    medium.validate();
    spec.validate();
    const double k = medium.lame_kappa, mu = medium.lame_mu;
    const double l = spec.l(), m = spec.m();
    const double v2rho = spec.velocity * spec.velocity * medium.density;
    Eigen::Matrix3d p;
    p(0, 0) = (k + 2.0 * mu) * l * l - v2rho + mu * (m * m - q * q);
    p(1, 1) = (k + 2.0 * mu) * m * m - v2rho + mu * (l * l - q * q);
    p(2, 2) = (k + 2.0 * mu) * q * q + v2rho - mu * (l * l + m * m);
    p(0, 1) = p(1, 0) = (k + mu) * l * m;
    p(0, 2) = p(2, 0) = (k + mu) * l * q;
    p(1, 2) = p(2, 1) = (k + mu) * m * q;
    return p;
}

double secular_det(const ElasticMedium& medium, const PropagationSpec& spec,
                   double q) {
    return secular_matrix(medium, spec, q).determinant();
}

std::array<double, 4> secular_cubic(const ElasticMedium& medium,
                                    const PropagationSpec& spec) {
    // det P contains only even powers of q, so it is cubic in Q = q^2.
    // Sample at Q = 0..3 and invert the 4x4 Vandermonde system.
    Eigen::Matrix4d vandermonde;
    Eigen::Vector4d samples;
    for (int i = 0; i < 4; ++i) {
        const double big_q = i;
        samples(i) = secular_det(medium, spec, std::sqrt(big_q));
        for (int p = 0; p < 4; ++p) vandermonde(i, p) = std::pow(big_q, p);
    }
    const Eigen::Vector4d coeffs = vandermonde.fullPivLu().solve(samples);
    return {coeffs(0), coeffs(1), coeffs(2), coeffs(3)};
}

DecayConstants solve_decay_constants(const ElasticMedium& medium,
                                     const PropagationSpec& spec) {
    DecayConstants out;
    out.cubic = secular_cubic(medium, spec);
    const auto cubic = numerics::cubic_roots(out.cubic[3], out.cubic[2],
                                             out.cubic[1], out.cubic[0]);
    for (std::size_t i = 0; i < cubic.roots.size(); ++i) {
        Complex q = std::sqrt(cubic.roots[i]);
        if (q.real() < 0.0) q = -q;  // decaying branch of e^{-k q x3}
        out.q.roots.push_back(q);
        const Complex residual =
            ((out.cubic[3] * cubic.roots[i] + out.cubic[2]) * cubic.roots[i] +
             out.cubic[1]) *
                cubic.roots[i] +
            out.cubic[0];
        out.q.residuals.push_back(std::abs(residual));
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(cubic.roots[i] - cubic.roots[j]) <
                1e-8 * (1.0 + std::abs(cubic.roots[i])))
                out.repeated = true;
    }
    return out;
}

double free_space_potential(double b4, double k, double v, double x, double y,
                            double z, double t) {
    if (z < 0.0)
        throw std::domain_error("free_space_potential: z must be >= 0");
    const Complex phase =
        kI * (k * (x + y) / std::sqrt(2.0) - v * k * t);
    return (b4 * std::exp(-k * z) * std::exp(phase)).real();
}

}  // namespace sawtrap::acoustics
