#include "zsindex/approx.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace zsindex {

FourierSmoother::FourierSmoother(std::int64_t h) : H(h) {
    if (h < 1) throw std::invalid_argument("FourierSmoother: H must be >= 1");
}

double chi(double t) {
    double f = t - std::floor(t);
    if (f == 0.0 || f == 0.5) return 0.5;
    return f < 0.5 ? 1.0 : 0.0;
}

std::complex<double> chi_hat(std::int64_t k) {
    if (k == 0) return {0.5, 0.0};
    if (k % 2 == 0) return {0.0, 0.0};
    // 1/(i pi k) = -i/(pi k)
    return {0.0, -1.0 / (M_PI * static_cast<double>(k))};
}

double J_hat(double t) {
    double a = std::fabs(t);
    if (a >= 1.0) return 0.0;
    if (a < 1e-3) {
        // pi a cot(pi a) = 1 - (pi a)^2/3 - (pi a)^4/45 - ...
        double u = M_PI * a, u2 = u * u;
        return (1.0 - a) * (1.0 - u2 / 3.0 - u2 * u2 / 45.0) + a;
    }
    if (a > 1.0 - 1e-3) {
        // cot(pi a) = -cot(pi s), s = 1 - a small
        double s = 1.0 - a;
        double u = M_PI * s, u2 = u * u;
        double picot = 1.0 - u2 / 3.0 - u2 * u2 / 45.0;  // pi s cot(pi s)
        return -a * picot + a;
    }
    return M_PI * a * (1.0 - a) / std::tan(M_PI * a) + a;
}

std::complex<double> f_hat(std::int64_t h, const FourierSmoother& s) {
    if (std::llabs(h) > s.H) return {0.0, 0.0};
    std::complex<double> ch = chi_hat(h);
    if (ch == std::complex<double>{0.0, 0.0}) return ch;
    return ch * J_hat(static_cast<double>(h) / static_cast<double>(s.H + 1));
}

double f_eval(double x, const FourierSmoother& s) {
    // f(x) = 1/2 + sum_{h odd, 1<=h<=H} (2/(pi h)) J_hat(h/(H+1)) sin(2 pi h x)
    const double Hp1 = static_cast<double>(s.H + 1);
    const double theta = 2.0 * M_PI * x;
    KahanSum acc;
    acc.add(0.5);
    // sin((h+2) theta) recurrence with periodic resync against std::sin
    double cos2 = std::cos(2.0 * theta);
    double s_prev = 0.0, s_cur = 0.0;
    int steps = 0;
    for (std::int64_t h = 1; h <= s.H; h += 2) {
        if (steps == 0) {
            s_cur = std::sin(static_cast<double>(h) * theta);
            s_prev = std::sin(static_cast<double>(h - 2) * theta);
        } else {
            double next = 2.0 * cos2 * s_cur - s_prev;
            s_prev = s_cur;
            s_cur = next;
        }
        if (++steps == 256) steps = 0;
        acc.add(2.0 / (M_PI * static_cast<double>(h)) * J_hat(static_cast<double>(h) / Hp1) * s_cur);
    }
    return acc.value();
}

double fejer_K_hat(std::int64_t h, const FourierSmoother& s) {
    double v = 1.0 - std::fabs(static_cast<double>(h)) / static_cast<double>(s.H + 1);
    return v > 0.0 ? v : 0.0;
}

double approx_error_bound(const FourierSmoother& s) {
    KahanSum acc;
    for (std::int64_t h = -s.H; h <= s.H; ++h)
        acc.add(fejer_K_hat(h, s) / static_cast<double>(s.H + 1));
    return acc.value();
}

}  // namespace zsindex
