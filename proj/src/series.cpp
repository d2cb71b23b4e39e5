#include "taucurve/series.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace taucurve {

LaurentSeries::LaurentSeries(int nneg, int npos)
    : nneg_(nneg), npos_(npos), c_(static_cast<size_t>(nneg + npos + 1), cplx{0.0, 0.0}) {
    if (nneg < 0 || npos < 0) throw std::invalid_argument("LaurentSeries: negative truncation bound");
}

cplx LaurentSeries::coeff(int j) const {
    if (j < -nneg_ || j > npos_) return {0.0, 0.0};
    return c_[static_cast<size_t>(j + nneg_)];
}

void LaurentSeries::set_coeff(int j, cplx v) {
    if (j < -nneg_ || j > npos_) throw std::out_of_range("LaurentSeries::set_coeff: exponent outside window");
    c_[static_cast<size_t>(j + nneg_)] = v;
}

cplx LaurentSeries::eval(cplx w) const {
    // Two Horner passes: nonnegative exponents in w, negative in 1/w.
    cplx up{0.0, 0.0};
    for (int j = npos_; j >= 0; --j) up = up * w + coeff(j);
    cplx iw = 1.0 / w;
    cplx dn{0.0, 0.0};
    for (int j = -nneg_; j <= -1; ++j) dn = dn * iw + coeff(j);
    return up + dn * iw;
}

double LaurentSeries::max_abs() const {
    double m = 0.0;
    for (const auto& v : c_) m = std::max(m, std::abs(v));
    return m;
}

std::vector<cplx> LaurentSeries::circle_samples(int M) const {
    std::vector<cplx> out(static_cast<size_t>(M));
    for (int i = 0; i < M; ++i) {
        double th = 2.0 * std::numbers::pi * i / M;
        out[static_cast<size_t>(i)] = eval(std::polar(1.0, th));
    }
    return out;
}

LaurentSeries LaurentSeries::from_samples(std::span<const cplx> samples, int nneg, int npos) {
    const int M = static_cast<int>(samples.size());
    if (M <= 0) throw std::invalid_argument("from_samples: empty sample set");
    LaurentSeries s(nneg, npos);
    for (int j = -nneg; j <= npos; ++j) {
        cplx acc{0.0, 0.0};
        for (int i = 0; i < M; ++i) {
            double th = -2.0 * std::numbers::pi * j * i / M;
            acc += samples[static_cast<size_t>(i)] * std::polar(1.0, th);
        }
        s.set_coeff(j, acc / static_cast<double>(M));
    }
    return s;
}

LaurentSeries LaurentSeries::w_d_dw() const {
    LaurentSeries s(nneg_, npos_);
    for (int j = -nneg_; j <= npos_; ++j) s.set_coeff(j, static_cast<double>(j) * coeff(j));
    return s;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    const int nneg = std::max(a.nneg_, b.nneg_);
    const int npos = std::max(a.npos_, b.npos_);
    LaurentSeries out(nneg, npos);
    double dropped = 0.0;
    double kept = 0.0;
    for (int ja = -a.nneg_; ja <= a.npos_; ++ja) {
        const cplx ca = a.coeff(ja);
        if (ca == cplx{0.0, 0.0}) continue;
        for (int jb = -b.nneg_; jb <= b.npos_; ++jb) {
            const cplx cb = b.coeff(jb);
            if (cb == cplx{0.0, 0.0}) continue;
            const int j = ja + jb;
            if (j < -nneg || j > npos) {
                dropped = std::max(dropped, std::abs(ca * cb));
            } else {
                out.set_coeff(j, out.coeff(j) + ca * cb);
            }
        }
    }
    kept = std::max(out.max_abs(), 1e-300);
    if (dropped > 1e-9 * kept)
        throw TruncationError("series product overflows the truncation window");
    return out;
}

LaurentSeries LaurentSeries::pow(int n) const {
    if (n < 0) throw std::invalid_argument("LaurentSeries::pow: negative exponent");
    LaurentSeries out(nneg_, npos_);
    out.set_coeff(0, 1.0);
    for (int i = 0; i < n; ++i) out = out * (*this);
    return out;
}

LaurentSeries LaurentSeries::reciprocal(int lead) const {
    const cplx c = coeff(lead);
    if (std::abs(c) == 0.0) throw std::invalid_argument("reciprocal: zero leading coefficient");
    // h = s / (c w^lead) - 1, exponents shifted by -lead
    LaurentSeries h(nneg_, npos_);
    bool above = false, below = false;
    for (int j = -nneg_; j <= npos_; ++j) {
        if (j == lead) continue;
        const cplx v = coeff(j) / c;
        if (v == cplx{0.0, 0.0}) continue;
        const int e = j - lead;
        if (e > 0) above = true;
        if (e < 0) below = true;
        if (e < -h.nneg() || e > h.npos())
            throw TruncationError("reciprocal: shifted remainder outside window");
        h.set_coeff(e, v);
    }
    if (above && below)
        throw std::invalid_argument("reciprocal: remainder not one-sided about the leading term");
    // 1/(1+h) by Neumann series; one-sided h nilpotent under truncation.
    LaurentSeries geo(nneg_, npos_);
    geo.set_coeff(0, 1.0);
    LaurentSeries term = geo;
    for (int s = 1; s <= nneg_ + npos_ + 1; ++s) {
        term = term * h;
        term *= cplx{-1.0, 0.0};
        if (term.max_abs() < 1e-300) break;
        geo += term;
    }
    // result = geo * w^{-lead} / c
    LaurentSeries out(nneg_, npos_);
    for (int j = -geo.nneg(); j <= geo.npos(); ++j) {
        const cplx v = geo.coeff(j);
        if (v == cplx{0.0, 0.0}) continue;
        const int e = j - lead;
        if (e < -out.nneg() || e > out.npos()) {
            if (std::abs(v / c) > 1e-12 * std::max(1.0, geo.max_abs() / std::abs(c)))
                throw TruncationError("reciprocal: result outside window");
            continue;
        }
        out.set_coeff(e, v / c);
    }
    return out;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
    if (o.nneg_ > nneg_ || o.npos_ > npos_) {
        LaurentSeries grown(std::max(nneg_, o.nneg_), std::max(npos_, o.npos_));
        for (int j = -nneg_; j <= npos_; ++j) grown.set_coeff(j, coeff(j));
        *this = grown;
    }
    for (int j = -o.nneg_; j <= o.npos_; ++j) set_coeff(j, coeff(j) + o.coeff(j));
    return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& o) {
    LaurentSeries neg = o;
    neg *= cplx{-1.0, 0.0};
    return *this += neg;
}

LaurentSeries& LaurentSeries::operator*=(cplx s) {
    for (auto& v : c_) v *= s;
    return *this;
}

SeriesParts project_parts(const LaurentSeries& s) {
    SeriesParts p{LaurentSeries(s.nneg(), s.npos()), s.coeff(0), LaurentSeries(s.nneg(), s.npos())};
    for (int j = 1; j <= s.npos(); ++j) p.plus.set_coeff(j, s.coeff(j));
    for (int j = -s.nneg(); j <= -1; ++j) p.minus.set_coeff(j, s.coeff(j));
    return p;
}

LaurentSeries poisson_bracket_exact(const LaurentSeries& f, const LaurentSeries& df_dt0,
                                    const LaurentSeries& g, const LaurentSeries& dg_dt0) {
    return f.w_d_dw() * dg_dt0 - g.w_d_dw() * df_dt0;
}

LaurentSeries poisson_bracket(const SeriesFamily& f, const SeriesFamily& g,
                              double t0, double dt0_step) {
    double h = dt0_step > 0.0 ? dt0_step : 1e-4 * std::max(1.0, std::abs(t0));
    LaurentSeries f0 = f(t0), g0 = g(t0);
    LaurentSeries df = f(t0 + h) - f(t0 - h);
    df *= cplx{1.0 / (2.0 * h), 0.0};
    LaurentSeries dg = g(t0 + h) - g(t0 - h);
    dg *= cplx{1.0 / (2.0 * h), 0.0};
    return poisson_bracket_exact(f0, df, g0, dg);
}

} // namespace taucurve
