#ifndef TAUCURVE_SERIES_HPP
#define TAUCURVE_SERIES_HPP

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace taucurve {

using cplx = std::complex<double>;

/// Truncated Laurent series in w with exponents in [-nneg, npos].
/// Dense storage; all series in scope decay geometrically toward the
/// truncation edges, so dropped tails are checked, not silently lost.
class LaurentSeries {
public:
    LaurentSeries() : LaurentSeries(kDefaultOrder, kDefaultOrder) {}
    LaurentSeries(int nneg, int npos);

    static constexpr int kDefaultOrder = 24;

    int nneg() const { return nneg_; }
    int npos() const { return npos_; }

    cplx coeff(int j) const;       // 0 outside [-nneg, npos]
    void set_coeff(int j, cplx v); // throws std::out_of_range outside

    cplx eval(cplx w) const;
    double max_abs() const;

    // Samples at the M-th roots of unity, w_i = exp(2*pi*i*k/M).
    std::vector<cplx> circle_samples(int M) const;
    // Discrete Fourier projection of circle samples back onto [-nneg, npos].
    // Exact (up to roundoff) when M >= nneg + npos + 1 and the sampled
    // function is band-limited to that range.
    static LaurentSeries from_samples(std::span<const cplx> samples, int nneg, int npos);

    // w d/dw: multiplies coefficient of w^j by j.
    LaurentSeries w_d_dw() const;

    // Series product on the union of the operand windows. Throws
    // TruncationError if a discarded coefficient is significant.
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);

    LaurentSeries pow(int n) const; // n >= 0

    // Reciprocal of a series whose dominant term sits at exponent `lead`
    // (the remainder after factoring c*w^lead must be strictly one-sided).
    LaurentSeries reciprocal(int lead) const;

    LaurentSeries& operator+=(const LaurentSeries& o);
    LaurentSeries& operator-=(const LaurentSeries& o);
    LaurentSeries& operator*=(cplx s);
    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
    friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
    friend LaurentSeries operator*(LaurentSeries a, cplx s) { return a *= s; }
    friend LaurentSeries operator*(cplx s, LaurentSeries a) { return a *= s; }

private:
    int nneg_, npos_;
    std::vector<cplx> c_; // c_[j + nneg_] is the coefficient of w^j
};

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Split into strictly positive exponents, the constant term, and strictly
/// negative exponents; plus + zero + minus reassembles the input.
struct SeriesParts {
    LaurentSeries plus;
    cplx zero;
    LaurentSeries minus;
};
SeriesParts project_parts(const LaurentSeries& s);

/// A Laurent-series-valued function of t0.
using SeriesFamily = std::function<LaurentSeries(double)>;

/// {f, g} = w df/dw dg/dt0 - w dg/dw df/dt0, with d/dw exact on coefficients
/// and d/dt0 by central difference of step dt0_step (default
/// 1e-4 * max(1, |t0|) when dt0_step <= 0).
LaurentSeries poisson_bracket(const SeriesFamily& f, const SeriesFamily& g,
                              double t0, double dt0_step = 0.0);

/// Exact-derivative variant: d/dt0 coefficients supplied analytically.
LaurentSeries poisson_bracket_exact(const LaurentSeries& f, const LaurentSeries& df_dt0,
                                    const LaurentSeries& g, const LaurentSeries& dg_dt0);

} // namespace taucurve

#endif
