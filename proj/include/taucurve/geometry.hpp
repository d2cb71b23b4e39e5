#ifndef TAUCURVE_GEOMETRY_HPP
#define TAUCURVE_GEOMETRY_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "taucurve/series.hpp"

namespace taucurve {

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exterior-map data: z(w) = r w + sum_{j>=0} u_j w^{-j}, r real > 0.
/// The image of the unit circle is the boundary curve; w traces it
/// counterclockwise and 0 must lie inside.
struct DomainShape {
    double r = 1.0;
    std::vector<cplx> u; // u[0]..u[J]

    cplx z(cplx w) const;
    cplx dz_dw(cplx w) const;
    cplx d2z_dw2(cplx w) const;
};

/// Boundary samples at M equispaced parameter values, with the theta
/// derivative of the parametrization. Moment quadrature needs nothing else,
/// so perturbed (non-Laurent) curves use the same representation.
struct CurveSamples {
    std::vector<double> theta;
    std::vector<cplx> z;
    std::vector<cplx> dz_dtheta;
    int size() const { return static_cast<int>(z.size()); }
};

CurveSamples sample_curve(const DomainShape& shape, int M);

/// Simplicity and orientation checks: positive speed, turning number one,
/// winding one about the origin, no pairwise segment crossings.
/// Throws GeometryError with a diagnostic when the curve is inadmissible.
void check_curve(const CurveSamples& c);

/// Winding number of the sampled curve about z0 (exact for points off the
/// polyline); 1 = interior, 0 = exterior.
int winding_number(const CurveSamples& c, cplx z0);

/// Background density sigma = dz dzbar U with U = -sum_{m,n>=1} T_mn z^m zbar^n.
/// T must be Hermitian so U and sigma are real.
class BackgroundPotential {
public:
    explicit BackgroundPotential(const std::vector<std::vector<cplx>>& T);

    static BackgroundPotential sigma_one();                // U = z zbar
    static BackgroundPotential sigma_abs_z_sq();           // sigma = |z|^2
    static BackgroundPotential sigma_radial_power(int M);  // sigma = |z|^{2M-2}

    int P() const { return P_; }
    cplx T(int m, int n) const; // 1-indexed, zero outside

    double U(cplx z, cplx zb) const;
    cplx dzU(cplx z, cplx zb) const;
    double sigma(cplx z, cplx zb) const;

    /// Smallest |sigma| over the curve; below sigma_floor the inverse
    /// problem is ill-posed and moment routines refuse to proceed.
    static constexpr double kSigmaFloor = 1e-6;
    void require_wellposed(const CurveSamples& c) const;

private:
    int P_;
    std::vector<cplx> T_; // row-major, (m-1)*P_ + (n-1)
};

/// The two complementary moment families plus the logarithmic moments.
struct MomentVector {
    double t0 = 0.0;
    std::vector<cplx> t; // t_1..t_K
    double v0 = 0.0;
    std::vector<cplx> v; // v_1..v_K
    int K() const { return static_cast<int>(t.size()); }
};

MomentVector compute_moments(const DomainShape& shape, const BackgroundPotential& pot,
                             int K, int M = 512);
MomentVector compute_moments(const CurveSamples& curve, const BackgroundPotential& pot, int K);

/// (1/pi) int_{D+} z^a zbar^b sigma d2z by contour reduction.
cplx generalized_moment(const DomainShape& shape, const BackgroundPotential& pot,
                        int a, int b, int M = 512);
cplx generalized_moment(const CurveSamples& curve, const BackgroundPotential& pot, int a, int b);

/// Truncated Laurent expansion of the Schwarz function,
/// S(z) = sum_k k t_k z^{k-1} + t0/z + sum_k v_k z^{-k-1}.
cplx schwarz_eval(const MomentVector& mom, cplx z);

/// Boundary deformation by a smooth localized outward bump of total swept
/// area eps centered at z(e^{i xi_angle}). Displacement is
/// d(theta) = eps * k(theta - xi_angle) / (norm * |z_theta|) with k a cos^8
/// window of half-width `kernel_width`, so the swept area is eps to first
/// order regardless of the kernel shape.
struct BumpResult {
    CurveSamples curve;    // perturbed curve
    MomentVector delta;    // moments(perturbed) - moments(base)
};
BumpResult bump_deform(const DomainShape& shape, const BackgroundPotential& pot,
                       double xi_angle, double eps, double kernel_width,
                       int K, int M = 2048);

} // namespace taucurve

#endif
