#include "qlc/stats/mann_whitney.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace qlc::stats {

namespace {

void require_groups(std::size_t n_t, std::size_t n_f)
{
    if (n_t == 0 || n_f == 0) {
        throw StatsError(StatsError::Code::DegenerateGroups, "both groups need at least one value");
    }
}

struct Ranked {
    double rank_sum_t = 0;
    std::vector<int> tie_sizes;
};

Ranked rank(std::span<const double> group_t, std::span<const double> group_f)
{
    std::vector<std::pair<double, bool>> all;
    all.reserve(group_t.size() + group_f.size());
    for (double v : group_t) {
        all.emplace_back(v, true);
    }
    for (double v : group_f) {
        all.emplace_back(v, false);
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    Ranked out;
    std::size_t i = 0;
    while (i < all.size()) {
        std::size_t j = i;
        while (j < all.size() && all[j].first == all[i].first) {
            ++j;
        }
        // Ranks i+1 .. j share their average.
        double average = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) {
            if (all[k].second) {
                out.rank_sum_t += average;
            }
        }
        out.tie_sizes.push_back(static_cast<int>(j - i));
        i = j;
    }
    return out;
}

// Number of arrangements giving each U value, for sizes m and n: the
// coefficients of the Gaussian binomial [m+n choose m]. Counts are kept in
// long double; relative precision is what matters for the p-value.
std::vector<long double> u_frequencies(int m, int n)
{
    if (m > n) {
        std::swap(m, n);
    }
    const std::size_t max_u = static_cast<std::size_t>(m) * static_cast<std::size_t>(n);
    std::vector<long double> poly(max_u + 1, 0.0L);
    poly[0] = 1.0L;
    std::size_t degree = 0;
    // prod_{i=1..m} (1 - q^{n+i}) / (1 - q^i)
    for (int i = 1; i <= m; ++i) {
        const std::size_t up = static_cast<std::size_t>(n + i);
        const std::size_t down = static_cast<std::size_t>(i);
        // Multiply by (1 - q^up).
        std::size_t new_degree = degree + up;
        std::vector<long double> next(new_degree + 1, 0.0L);
        for (std::size_t k = 0; k <= degree; ++k) {
            next[k] += poly[k];
            next[k + up] -= poly[k];
        }
        // Divide by (1 - q^down): running sum with stride `down`.
        for (std::size_t k = down; k <= new_degree; ++k) {
            next[k] += next[k - down];
        }
        degree = new_degree - down;
        next.resize(degree + 1);
        poly.assign(next.begin(), next.end());
        poly.resize(std::max(poly.size(), max_u + 1), 0.0L);
    }
    poly.resize(max_u + 1);
    for (long double& c : poly) {
        c = std::max(0.0L, std::round(c));
    }
    return poly;
}

double normal_sf(double z)
{
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

} // namespace

std::string_view to_string(StatsError::Code code)
{
    switch (code) {
    case StatsError::Code::DegenerateGroups: return "DegenerateGroups";
    case StatsError::Code::RangeError: return "RangeError";
    case StatsError::Code::EmptyLog: return "EmptyLog";
    case StatsError::Code::MalformedLog: return "MalformedLog";
    }
    return "?";
}

std::string_view to_string(PMethod method)
{
    return method == PMethod::Exact ? "exact" : "normal";
}

double u_statistic(std::span<const double> group_t, std::span<const double> group_f)
{
    require_groups(group_t.size(), group_f.size());
    double n_t = static_cast<double>(group_t.size());
    return rank(group_t, group_f).rank_sum_t - n_t * (n_t + 1) / 2.0;
}

double exact_u_cdf(double u, int m, int n)
{
    require_groups(static_cast<std::size_t>(std::max(m, 0)), static_cast<std::size_t>(std::max(n, 0)));
    std::vector<long double> freq = u_frequencies(m, n);
    long double total = std::accumulate(freq.begin(), freq.end(), 0.0L);
    long double below = 0;
    for (std::size_t k = 0; k < freq.size() && static_cast<double>(k) <= u + 1e-9; ++k) {
        below += freq[k];
    }
    return static_cast<double>(below / total);
}

double exact_p_two_sided(double u, int m, int n)
{
    double mn = static_cast<double>(m) * n;
    double lower = exact_u_cdf(u, m, n);
    // By symmetry P(U >= u) = P(U <= mn - u).
    double upper = exact_u_cdf(mn - u, m, n);
    return std::min(1.0, 2.0 * std::min(lower, upper));
}

double normal_p_two_sided(double u, int m, int n, const std::vector<int>& tie_sizes)
{
    double big_n = static_cast<double>(m) + n;
    double mean = static_cast<double>(m) * n / 2.0;
    double tie_term = 0;
    for (int t : tie_sizes) {
        tie_term += static_cast<double>(t) * t * t - t;
    }
    double variance = static_cast<double>(m) * n / 12.0 * ((big_n + 1) - tie_term / (big_n * (big_n - 1)));
    if (!(variance > 0)) {
        return 1.0;
    }
    double z = std::max(0.0, std::fabs(u - mean) - 0.5) / std::sqrt(variance);
    return std::min(1.0, 2.0 * normal_sf(z));
}

GroupComparison mann_whitney_u(std::span<const double> group_t, std::span<const double> group_f)
{
    require_groups(group_t.size(), group_f.size());
    GroupComparison out;
    out.n_t = static_cast<int>(group_t.size());
    out.n_f = static_cast<int>(group_f.size());
    out.df = out.n_t + out.n_f - 2;
    out.median_t = median({group_t.begin(), group_t.end()});
    out.median_f = median({group_f.begin(), group_f.end()});

    Ranked ranked = rank(group_t, group_f);
    out.u = ranked.rank_sum_t - static_cast<double>(out.n_t) * (out.n_t + 1) / 2.0;
    out.cles = cles(out.u, out.n_t, out.n_f);

    bool ties = std::any_of(ranked.tie_sizes.begin(), ranked.tie_sizes.end(), [](int t) { return t > 1; });
    if (!ties && std::min(out.n_t, out.n_f) <= kExactMaxSmallerGroup) {
        out.p_method = PMethod::Exact;
        out.p_two_sided = exact_p_two_sided(out.u, out.n_t, out.n_f);
    } else {
        out.p_method = PMethod::NormalApproximation;
        out.p_two_sided = normal_p_two_sided(out.u, out.n_t, out.n_f, ranked.tie_sizes);
    }
    return out;
}

double cles(double u, int n_t, int n_f)
{
    if (n_t <= 0 || n_f <= 0) {
        throw StatsError(StatsError::Code::RangeError, "group sizes must be positive");
    }
    double pairs = static_cast<double>(n_t) * n_f;
    if (!(u >= 0 && u <= pairs)) {
        throw StatsError(StatsError::Code::RangeError, "U must lie between 0 and nT*nF");
    }
    return u / pairs;
}

double bonferroni_alpha(double alpha, int m)
{
    if (m < 1 || !(alpha > 0 && alpha < 1)) {
        throw StatsError(StatsError::Code::RangeError, "need 0 < alpha < 1 and m >= 1");
    }
    return alpha / m;
}

double median(std::vector<double> values)
{
    if (values.empty()) {
        throw StatsError(StatsError::Code::DegenerateGroups, "median of an empty group");
    }
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    if (n % 2 == 1) {
        return values[n / 2];
    }
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

std::string display_decimal(double value, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    std::string s = buf;
    if (s.rfind("0.", 0) == 0) {
        s.erase(0, 1);
    } else if (s.rfind("-0.", 0) == 0) {
        s.erase(1, 1);
    }
    return s;
}

std::string display_percent(double fraction)
{
    return std::to_string(static_cast<long long>(std::lround(fraction * 100.0))) + "%";
}

} // namespace qlc::stats
