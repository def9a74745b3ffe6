#include "lexnet/mathutil.hpp"

#include <cmath>
#include <stdexcept>

namespace lexnet {

LogFactorialTable::LogFactorialTable(std::uint64_t max_n) {
    table_.resize(max_n + 1);
    table_[0] = 0.0;
    for (std::uint64_t n = 1; n <= max_n; ++n)
        table_[n] = std::lgamma(static_cast<double>(n) + 1.0);
}

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

} // namespace

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_two_sided(double t, double df) {
    if (df <= 0.0) throw std::invalid_argument("student_t_two_sided: df <= 0");
    const double x = df / (df + t * t);
    return incomplete_beta(df / 2.0, 0.5, x);
}

double hurwitz_zeta(double s, double a) {
    if (s <= 1.0) throw std::invalid_argument("hurwitz_zeta: requires s > 1");
    constexpr int kDirectTerms = 64;
    double sum = 0.0;
    for (int j = 0; j < kDirectTerms; ++j)
        sum += std::pow(a + j, -s);
    // Euler-Maclaurin tail from a + kDirectTerms onward.
    const double m = a + kDirectTerms;
    sum += std::pow(m, 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(m, -s);
    sum += s / 12.0 * std::pow(m, -s - 1.0);
    sum -= s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(m, -s - 3.0);
    return sum;
}

} // namespace lexnet
