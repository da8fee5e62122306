#pragma once

#include <span>
#include <string>
#include <vector>

#include "qlc/common/error.hpp"

namespace qlc::stats {

class StatsError : public Error {
public:
    enum class Code { DegenerateGroups, RangeError, EmptyLog, MalformedLog };

    StatsError(Code code, const std::string& message) : Error(message), code_(code) {}
    Code code() const { return code_; }

private:
    Code code_;
};

std::string_view to_string(StatsError::Code code);

enum class PMethod { Exact, NormalApproximation };

std::string_view to_string(PMethod method);

struct GroupComparison {
    double median_t = 0;
    double median_f = 0;
    int n_t = 0;
    int n_f = 0;
    int df = 0;
    // #{(t, f) : t > f} + ½·#{(t, f) : t == f}
    double u = 0;
    double p_two_sided = 1;
    double cles = 0;
    PMethod p_method = PMethod::NormalApproximation;
};

// Largest smaller group for which the exact null distribution is used
// (tie-free data only).
inline constexpr int kExactMaxSmallerGroup = 8;

// Two-sided test of T against F. Throws DegenerateGroups if either group is
// empty.
GroupComparison mann_whitney_u(std::span<const double> group_t, std::span<const double> group_f);

// U for T against F via average ranks.
double u_statistic(std::span<const double> group_t, std::span<const double> group_f);

// P(U <= u) under the null for tie-free samples of sizes m and n.
double exact_u_cdf(double u, int m, int n);
// Two-sided p from the exact null distribution.
double exact_p_two_sided(double u, int m, int n);
// Two-sided p from the normal approximation with tie and continuity
// correction; `tie_sizes` lists the size of every group of equal values.
double normal_p_two_sided(double u, int m, int n, const std::vector<int>& tie_sizes);

// U / (nT·nF). Throws RangeError unless 0 <= U <= nT·nF and both sizes > 0.
double cles(double u, int n_t, int n_f);

// alpha / m. Throws RangeError unless m >= 1 and 0 < alpha < 1.
double bonferroni_alpha(double alpha, int m);

// Midpoint rule for even sizes. Throws DegenerateGroups when empty.
double median(std::vector<double> values);

// Fixed decimals with the leading zero of |x| < 1 dropped: .017, .63, -.5.
std::string display_decimal(double value, int digits);
// Whole percent, e.g. "86%".
std::string display_percent(double fraction);

} // namespace qlc::stats
