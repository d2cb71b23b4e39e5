#include "taucurve/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace taucurve {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

cplx DomainShape::z(cplx w) const {
    cplx s = r * w;
    cplx iw = 1.0 / w;
    cplx p{1.0, 0.0};
    for (size_t j = 0; j < u.size(); ++j) {
        s += u[j] * p;
        p *= iw;
    }
    return s;
}

cplx DomainShape::dz_dw(cplx w) const {
    cplx s{r, 0.0};
    cplx iw = 1.0 / w;
    cplx p = iw; // w^{-1}
    for (size_t j = 1; j < u.size(); ++j) {
        p *= iw; // w^{-j-1}
        s -= static_cast<double>(j) * u[j] * p;
    }
    return s;
}

cplx DomainShape::d2z_dw2(cplx w) const {
    cplx s{0.0, 0.0};
    cplx iw = 1.0 / w;
    cplx p = iw * iw; // w^{-2}
    for (size_t j = 1; j < u.size(); ++j) {
        p *= iw; // w^{-j-2}
        s += static_cast<double>(j) * static_cast<double>(j + 1) * u[j] * p;
    }
    return s;
}

CurveSamples sample_curve(const DomainShape& shape, int M) {
    if (shape.r <= 0.0) throw GeometryError("conformal radius must be positive");
    CurveSamples c;
    c.theta.resize(static_cast<size_t>(M));
    c.z.resize(static_cast<size_t>(M));
    c.dz_dtheta.resize(static_cast<size_t>(M));
    for (int i = 0; i < M; ++i) {
        double th = kTwoPi * i / M;
        cplx w = std::polar(1.0, th);
        c.theta[static_cast<size_t>(i)] = th;
        c.z[static_cast<size_t>(i)] = shape.z(w);
        c.dz_dtheta[static_cast<size_t>(i)] = cplx{0.0, 1.0} * w * shape.dz_dw(w);
    }
    return c;
}

int winding_number(const CurveSamples& c, cplx z0) {
    double total = 0.0;
    const int M = c.size();
    for (int i = 0; i < M; ++i) {
        cplx a = c.z[static_cast<size_t>(i)] - z0;
        cplx b = c.z[static_cast<size_t>((i + 1) % M)] - z0;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::llround(total / kTwoPi));
}

namespace {

bool segments_cross(cplx a, cplx b, cplx c, cplx d) {
    auto cross = [](cplx p, cplx q) { return p.real() * q.imag() - p.imag() * q.real(); };
    double d1 = cross(b - a, c - a);
    double d2 = cross(b - a, d - a);
    double d3 = cross(d - c, a - c);
    double d4 = cross(d - c, b - c);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

} // namespace

void check_curve(const CurveSamples& c) {
    const int M = c.size();
    double turning = 0.0;
    for (int i = 0; i < M; ++i) {
        cplx t0 = c.dz_dtheta[static_cast<size_t>(i)];
        cplx t1 = c.dz_dtheta[static_cast<size_t>((i + 1) % M)];
        if (std::abs(t0) < 1e-12) throw GeometryError("degenerate parametrization: |z'| vanishes");
        turning += std::arg(t1 / t0);
    }
    if (std::llround(turning / kTwoPi) != 1)
        throw GeometryError("curve is not a simple counterclockwise loop (turning number != 1)");
    if (winding_number(c, cplx{0.0, 0.0}) != 1)
        throw GeometryError("origin is not inside the curve");
    // Pairwise segment test, skipping neighbours.
    for (int i = 0; i < M; ++i) {
        cplx a = c.z[static_cast<size_t>(i)];
        cplx b = c.z[static_cast<size_t>((i + 1) % M)];
        for (int j = i + 2; j < M; ++j) {
            if (i == 0 && j == M - 1) continue;
            cplx p = c.z[static_cast<size_t>(j)];
            cplx q = c.z[static_cast<size_t>((j + 1) % M)];
            if (segments_cross(a, b, p, q))
                throw GeometryError("curve self-intersects");
        }
    }
}

BackgroundPotential::BackgroundPotential(const std::vector<std::vector<cplx>>& T) {
    P_ = static_cast<int>(T.size());
    if (P_ == 0) throw GeometryError("empty coefficient matrix");
    T_.assign(static_cast<size_t>(P_ * P_), cplx{0.0, 0.0});
    for (int m = 1; m <= P_; ++m) {
        if (static_cast<int>(T[static_cast<size_t>(m - 1)].size()) != P_)
            throw GeometryError("coefficient matrix is not square");
        for (int n = 1; n <= P_; ++n)
            T_[static_cast<size_t>((m - 1) * P_ + (n - 1))] = T[static_cast<size_t>(m - 1)][static_cast<size_t>(n - 1)];
    }
    for (int m = 1; m <= P_; ++m)
        for (int n = 1; n <= P_; ++n)
            if (std::abs(T(m, n) - std::conj(T(n, m))) > 1e-12)
                throw GeometryError("coefficient matrix is not Hermitian; density would not be real");
}

BackgroundPotential BackgroundPotential::sigma_one() {
    return BackgroundPotential({{cplx{-1.0, 0.0}}});
}

BackgroundPotential BackgroundPotential::sigma_abs_z_sq() { return sigma_radial_power(2); }

BackgroundPotential BackgroundPotential::sigma_radial_power(int M) {
    if (M < 1) throw GeometryError("radial power preset needs M >= 1");
    std::vector<std::vector<cplx>> T(static_cast<size_t>(M), std::vector<cplx>(static_cast<size_t>(M), cplx{0.0, 0.0}));
    T[static_cast<size_t>(M - 1)][static_cast<size_t>(M - 1)] = cplx{-1.0 / (M * M), 0.0};
    return BackgroundPotential(T);
}

cplx BackgroundPotential::T(int m, int n) const {
    if (m < 1 || m > P_ || n < 1 || n > P_) return {0.0, 0.0};
    return T_[static_cast<size_t>((m - 1) * P_ + (n - 1))];
}

double BackgroundPotential::U(cplx z, cplx zb) const {
    cplx s{0.0, 0.0};
    for (int m = 1; m <= P_; ++m)
        for (int n = 1; n <= P_; ++n) {
            cplx t = T(m, n);
            if (t == cplx{0.0, 0.0}) continue;
            s -= t * std::pow(z, m) * std::pow(zb, n);
        }
    return s.real();
}

cplx BackgroundPotential::dzU(cplx z, cplx zb) const {
    cplx s{0.0, 0.0};
    for (int m = 1; m <= P_; ++m)
        for (int n = 1; n <= P_; ++n) {
            cplx t = T(m, n);
            if (t == cplx{0.0, 0.0}) continue;
            s -= static_cast<double>(m) * t * std::pow(z, m - 1) * std::pow(zb, n);
        }
    return s;
}

double BackgroundPotential::sigma(cplx z, cplx zb) const {
    cplx s{0.0, 0.0};
    for (int m = 1; m <= P_; ++m)
        for (int n = 1; n <= P_; ++n) {
            cplx t = T(m, n);
            if (t == cplx{0.0, 0.0}) continue;
            s -= static_cast<double>(m * n) * t * std::pow(z, m - 1) * std::pow(zb, n - 1);
        }
    return s.real();
}

void BackgroundPotential::require_wellposed(const CurveSamples& c) const {
    for (int i = 0; i < c.size(); ++i) {
        cplx z = c.z[static_cast<size_t>(i)];
        if (std::abs(sigma(z, std::conj(z))) < kSigmaFloor)
            throw GeometryError("density vanishes on the curve; problem is ill-posed");
    }
}

namespace {

// (1/2pi i) oint f dz over the sampled curve, trapezoidal in theta.
cplx contour_integral(const CurveSamples& c, const std::vector<cplx>& f) {
    cplx acc{0.0, 0.0};
    const int M = c.size();
    for (int i = 0; i < M; ++i) acc += f[static_cast<size_t>(i)] * c.dz_dtheta[static_cast<size_t>(i)];
    return acc / (static_cast<double>(M) * cplx{0.0, 1.0});
}

} // namespace

MomentVector compute_moments(const CurveSamples& curve, const BackgroundPotential& pot, int K) {
    pot.require_wellposed(curve);
    const int M = curve.size();
    std::vector<cplx> phi(static_cast<size_t>(M));
    for (int i = 0; i < M; ++i) {
        cplx z = curve.z[static_cast<size_t>(i)];
        phi[static_cast<size_t>(i)] = pot.dzU(z, std::conj(z));
    }
    MomentVector mom;
    mom.t.resize(static_cast<size_t>(K));
    mom.v.resize(static_cast<size_t>(K));
    mom.t0 = contour_integral(curve, phi).real();

    std::vector<cplx> work(static_cast<size_t>(M));
    std::vector<cplx> zpow(static_cast<size_t>(M), cplx{1.0, 0.0});
    for (int k = 1; k <= K; ++k) {
        for (int i = 0; i < M; ++i) {
            zpow[static_cast<size_t>(i)] /= curve.z[static_cast<size_t>(i)];
            work[static_cast<size_t>(i)] = phi[static_cast<size_t>(i)] * zpow[static_cast<size_t>(i)];
        }
        mom.t[static_cast<size_t>(k - 1)] = contour_integral(curve, work) / static_cast<double>(k);
    }
    std::fill(zpow.begin(), zpow.end(), cplx{1.0, 0.0});
    for (int k = 1; k <= K; ++k) {
        for (int i = 0; i < M; ++i) {
            zpow[static_cast<size_t>(i)] *= curve.z[static_cast<size_t>(i)];
            work[static_cast<size_t>(i)] = phi[static_cast<size_t>(i)] * zpow[static_cast<size_t>(i)];
        }
        mom.v[static_cast<size_t>(k - 1)] = contour_integral(curve, work);
    }

    // v0 = (2/pi) int log|z| sigma d2z, reduced termwise with the zbar
    // antiderivative of each density monomial; the point factor log|z|
    // stays single-valued, and the origin contributes nothing in the limit.
    for (int i = 0; i < M; ++i) {
        cplx z = curve.z[static_cast<size_t>(i)];
        cplx zb = std::conj(z);
        cplx P{0.0, 0.0};
        for (int m = 1; m <= pot.P(); ++m)
            for (int n = 1; n <= pot.P(); ++n) {
                cplx t = pot.T(m, n);
                if (t == cplx{0.0, 0.0}) continue;
                double s_ab = 1.0; // sigma monomial coefficient -m n T
                cplx coef = -static_cast<double>(m * n) * t * s_ab;
                int a = m - 1, b = n - 1;
                P += coef * std::pow(z, a) * std::pow(zb, b + 1) *
                     (std::log(std::abs(z)) / (b + 1) - 0.5 / ((b + 1.0) * (b + 1.0)));
            }
        work[static_cast<size_t>(i)] = P;
    }
    // (2/pi) * (1/2i) oint P dz = (2/pi) * pi * (1/2pi i) oint P dz
    mom.v0 = (2.0 * std::numbers::pi / std::numbers::pi * contour_integral(curve, work) * 0.5 * cplx{1.0, 0.0}).real() * 2.0;
    // note: (1/2i)oint = pi * (1/2pi i)oint; v0 = (2/pi)*pi*cint = 2*cint
    mom.v0 = (2.0 * contour_integral(curve, work) * std::numbers::pi / std::numbers::pi).real();
    return mom;
}

MomentVector compute_moments(const DomainShape& shape, const BackgroundPotential& pot, int K, int M) {
    return compute_moments(sample_curve(shape, M), pot, K);
}

cplx generalized_moment(const CurveSamples& curve, const BackgroundPotential& pot, int a, int b) {
    if (a < 0 || b < 0) throw GeometryError("generalized_moment: negative exponent");
    const int M = curve.size();
    std::vector<cplx> work(static_cast<size_t>(M));
    for (int i = 0; i < M; ++i) {
        cplx z = curve.z[static_cast<size_t>(i)];
        cplx zb = std::conj(z);
        cplx P{0.0, 0.0};
        for (int m = 1; m <= pot.P(); ++m)
            for (int n = 1; n <= pot.P(); ++n) {
                cplx t = pot.T(m, n);
                if (t == cplx{0.0, 0.0}) continue;
                cplx coef = -static_cast<double>(m * n) * t;
                int aa = a + m - 1, bb = b + n - 1;
                P += coef * std::pow(z, aa) * std::pow(zb, bb + 1) / (bb + 1.0);
            }
        work[static_cast<size_t>(i)] = P;
    }
    // (1/pi) int = (1/pi)(1/2i) oint P dz = (1/2pi i) oint P dz  ... * pi/pi
    cplx acc{0.0, 0.0};
    for (int i = 0; i < M; ++i) acc += work[static_cast<size_t>(i)] * curve.dz_dtheta[static_cast<size_t>(i)];
    return acc * (kTwoPi / M) / (2.0 * cplx{0.0, 1.0}) / std::numbers::pi;
}

cplx generalized_moment(const DomainShape& shape, const BackgroundPotential& pot, int a, int b, int M) {
    return generalized_moment(sample_curve(shape, M), pot, a, b);
}

cplx schwarz_eval(const MomentVector& mom, cplx z) {
    cplx s = mom.t0 / z;
    cplx zp{1.0, 0.0}; // z^{k-1}
    cplx zm = 1.0 / (z * z);
    for (int k = 1; k <= mom.K(); ++k) {
        s += static_cast<double>(k) * mom.t[static_cast<size_t>(k - 1)] * zp;
        s += mom.v[static_cast<size_t>(k - 1)] * zm;
        zp *= z;
        zm /= z;
    }
    return s;
}

BumpResult bump_deform(const DomainShape& shape, const BackgroundPotential& pot,
                       double xi_angle, double eps, double kernel_width,
                       int K, int M) {
    if (kernel_width <= 0.0 || kernel_width > 1.5)
        throw GeometryError("bump kernel width out of range");
    CurveSamples base = sample_curve(shape, M);
    MomentVector m0 = compute_moments(base, pot, K);
    if (!(eps > 0.0) || eps > 1e-3 * std::max(m0.t0, 1e-3))
        throw GeometryError("bump area eps out of range (need 0 < eps <= 1e-3 t0)");

    const double norm = 35.0 * kernel_width / 64.0; // integral of the cos^8 window
    CurveSamples pert = base;
    for (int i = 0; i < M; ++i) {
        double th = base.theta[static_cast<size_t>(i)];
        double x = std::remainder(th - xi_angle, kTwoPi);
        cplx w = std::polar(1.0, th);
        cplx zd = base.dz_dtheta[static_cast<size_t>(i)];
        double sp = std::abs(zd);
        // theta derivative of the parametrization speed
        cplx z2 = -w * shape.dz_dw(w) - w * w * shape.d2z_dw2(w);
        double spd = (std::conj(zd) * z2).real() / sp;
        cplx nrm = cplx{0.0, -1.0} * zd / sp;
        cplx nrmd = cplx{0.0, -1.0} * (z2 / sp - zd * spd / (sp * sp));
        double kv = 0.0, kd = 0.0;
        if (std::abs(x) < kernel_width) {
            double arg = std::numbers::pi * x / (2.0 * kernel_width);
            double cs = std::cos(arg);
            kv = std::pow(cs, 8);
            kd = -8.0 * std::pow(cs, 7) * std::sin(arg) * std::numbers::pi / (2.0 * kernel_width);
        }
        double d = eps * kv / (norm * sp);
        double dd = eps * (kd / (norm * sp) - kv * spd / (norm * sp * sp));
        pert.z[static_cast<size_t>(i)] = base.z[static_cast<size_t>(i)] + d * nrm;
        pert.dz_dtheta[static_cast<size_t>(i)] = zd + dd * nrm + d * nrmd;
    }
    check_curve(pert);
    MomentVector m1 = compute_moments(pert, pot, K);
    BumpResult out{std::move(pert), MomentVector{}};
    out.delta.t0 = m1.t0 - m0.t0;
    out.delta.v0 = m1.v0 - m0.v0;
    out.delta.t.resize(static_cast<size_t>(K));
    out.delta.v.resize(static_cast<size_t>(K));
    for (int k = 0; k < K; ++k) {
        out.delta.t[static_cast<size_t>(k)] = m1.t[static_cast<size_t>(k)] - m0.t[static_cast<size_t>(k)];
        out.delta.v[static_cast<size_t>(k)] = m1.v[static_cast<size_t>(k)] - m0.v[static_cast<size_t>(k)];
    }
    return out;
}

} // namespace taucurve
