#pragma once

#include <complex>
#include <cstdint>

namespace zsindex {

/// Truncation parameter for the Vaaler smoothing of the interval indicator.
struct FourierSmoother {
    std::int64_t H;
    explicit FourierSmoother(std::int64_t h);
};

/// Period-1 indicator of [0, 1/2]: 1 on (0, 1/2), 1/2 on half-integers,
/// 0 on (1/2, 1).
double chi(double t);

/// Fourier coefficient of chi: 1/2 at 0, 0 at even k != 0, 1/(i pi k) at odd k.
std::complex<double> chi_hat(std::int64_t k);

/// Vaaler's J-hat: pi t (1-|t|) cot(pi t) + |t| on (0, 1); 1 at 0; 0 outside
/// (-1, 1). Real, even, |J_hat| <= 1.
double J_hat(double t);

/// chi_hat(h) * J_hat(h / (H+1)); zero for |h| > H.
std::complex<double> f_hat(std::int64_t h, const FourierSmoother& s);

/// f(x) = sum_{|h|<=H} f_hat(h) e(hx), real by symmetry.
double f_eval(double x, const FourierSmoother& s);

/// Triangular Fejer weight max(0, 1 - |h|/(H+1)).
double fejer_K_hat(std::int64_t h, const FourierSmoother& s);

/// (1/(H+1)) sum_{|h|<=H} K_hat(h); equals 1 for every H by the triangular
/// sum identity. Feeds the cancellation-aware S0/S1 comparison.
double approx_error_bound(const FourierSmoother& s);

/// Compensated (Kahan) accumulator.
class KahanSum {
public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0, c_ = 0.0;
};

}  // namespace zsindex
