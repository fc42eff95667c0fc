#include "mixeff/student_t.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "mixeff/error.hpp"

namespace mixeff {

namespace {

// lgamma(x) - [(x - 1/2) log x - x + log(2 pi)/2]
double stirling_remainder(double x) {
    if (x >= 10.0) {
        const double r = 1.0 / x;
        const double r2 = r * r;
        return r * (1.0 / 12.0 - r2 * (1.0 / 360.0 - r2 * (1.0 / 1260.0 - r2 * (1.0 / 1680.0 - r2 / 1188.0))));
    }
    return std::lgamma(x) - ((x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi));
}

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    constexpr int max_iter = 200000;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) return h;
    }
    return h;
}

// I_x(a, b) given both x and y = 1 - x, so callers can pass an accurate complement.
double incomplete_beta_xy(double a, double b, double x, double y) {
    if (x <= 0.0) return 0.0;
    if (y <= 0.0) return 1.0;
    const double log_front = a * std::log(x) + b * std::log(y) - log_beta(a, b);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, y) / b;
}

// P(T > t) for t >= 0.
double upper_tail_nonnegative(double t, double df) {
    const double t2 = t * t;
    const double denom = df + t2;
    const double x = df / denom;
    const double y = t2 / denom;
    return 0.5 * incomplete_beta_xy(0.5 * df, 0.5, x, y);
}

void check_df(double t, double df) {
    if (!(df > 0.0) || !std::isfinite(df)) throw DomainError("student_t: degrees of freedom must be positive");
    if (std::isnan(t)) throw DomainError("student_t: t is NaN");
}

}  // namespace

double log_beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("log_beta: arguments must be positive");
    if (a < b) std::swap(a, b);
    if (a < 10.0) return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    // a large: expand lgamma(a) - lgamma(a + b) to avoid cancelling two huge values.
    const double s = a + b;
    return std::lgamma(b) + b - b * std::log(s) - (a - 0.5) * std::log1p(b / a) + stirling_remainder(a) -
           stirling_remainder(s);
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("regularized_incomplete_beta: a and b must be positive and finite");
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("regularized_incomplete_beta: x must lie in [0, 1]");
    return incomplete_beta_xy(a, b, x, 1.0 - x);
}

double student_t_sf(double t, double df) {
    check_df(t, df);
    if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
    return t >= 0.0 ? upper_tail_nonnegative(t, df) : 1.0 - upper_tail_nonnegative(-t, df);
}

double student_t_cdf(double t, double df) {
    check_df(t, df);
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    return t <= 0.0 ? upper_tail_nonnegative(-t, df) : 1.0 - upper_tail_nonnegative(t, df);
}

}  // namespace mixeff
