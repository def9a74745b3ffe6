#ifndef LEXNET_MATHUTIL_HPP
#define LEXNET_MATHUTIL_HPP

#include <cstdint>
#include <vector>

namespace lexnet {

/// Table of ln(n!) for n = 0..max_n. Built once, then read-only, so
/// concurrent lookups are safe.
class LogFactorialTable {
public:
    explicit LogFactorialTable(std::uint64_t max_n);

    double log_factorial(std::uint64_t n) const { return table_[n]; }

    /// ln C(n, k); requires k <= n <= max_n.
    double log_choose(std::uint64_t n, std::uint64_t k) const {
        return table_[n] - table_[k] - table_[n - k];
    }

    std::uint64_t max_n() const { return table_.size() - 1; }

private:
    std::vector<double> table_;
};

/// Regularized incomplete beta I_x(a, b) via Lentz's continued fraction.
double incomplete_beta(double a, double b, double x);

/// Two-sided p-value of a t statistic with df degrees of freedom.
double student_t_two_sided(double t, double df);

/// Hurwitz zeta sum_{j>=0} (a + j)^-s for s > 1, a >= 1
/// (direct terms plus an Euler-Maclaurin tail).
double hurwitz_zeta(double s, double a);

} // namespace lexnet

#endif
