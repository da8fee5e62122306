#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "qlc/stats/mann_whitney.hpp"
#include "test_support.hpp"

using namespace qlc::stats;
using qlc::testing::oracle::pair_count_u;
using qlc::testing::oracle::permutation_p;

namespace {

StatsError::Code code_of(const std::function<void()>& action)
{
    try {
        action();
    } catch (const StatsError& e) {
        return e.code();
    }
    FAIL("expected a StatsError");
    return StatsError::Code::MalformedLog;
}

} // namespace

TEST_CASE("common language effect size from reference counts")
{
    CHECK(display_decimal(cles(4932, 249, 42), 2) == ".47");
    CHECK(display_decimal(cles(4716, 207, 36), 2) == ".63");
    CHECK(display_decimal(cles(2124, 281, 10), 2) == ".76");
    CHECK(cles(0, 3, 3) == 0.0);
    CHECK(cles(9, 3, 3) == 1.0);
    CHECK(code_of([] { cles(10, 3, 3); }) == StatsError::Code::RangeError);
    CHECK(code_of([] { cles(-1, 3, 3); }) == StatsError::Code::RangeError);
    CHECK(code_of([] { cles(0, 0, 3); }) == StatsError::Code::RangeError);
}

TEST_CASE("Bonferroni")
{
    CHECK(display_decimal(bonferroni_alpha(0.05, 3), 3) == ".017");
    CHECK(bonferroni_alpha(0.05, 1) == doctest::Approx(0.05));
    CHECK(code_of([] { bonferroni_alpha(0.05, 0); }) == StatsError::Code::RangeError);
    CHECK(code_of([] { bonferroni_alpha(1.5, 2); }) == StatsError::Code::RangeError);
}

TEST_CASE("display helpers")
{
    CHECK(display_decimal(0.5, 1) == ".5");
    CHECK(display_decimal(-0.25, 2) == "-.25");
    CHECK(display_decimal(1.234, 2) == "1.23");
    CHECK(display_percent(0.855670) == "86%");
    CHECK(display_percent(1.0) == "100%");
}

TEST_CASE("medians")
{
    CHECK(median({3, 1, 2}) == 2);
    CHECK(median({4, 1, 3, 2}) == 2.5);
    CHECK(code_of([] { median({}); }) == StatsError::Code::DegenerateGroups);
}

TEST_CASE("complete separation")
{
    std::vector<double> t{1, 2, 3};
    std::vector<double> f{4, 5, 6};
    GroupComparison c = mann_whitney_u(t, f);
    CHECK(c.u == 0);
    CHECK(c.p_method == PMethod::Exact);
    CHECK(c.p_two_sided == doctest::Approx(0.1));
    CHECK(c.cles == 0);
    CHECK(c.n_t == 3);
    CHECK(c.n_f == 3);
    CHECK(c.df == 4);
    CHECK(c.median_t == 2);
    CHECK(c.median_f == 5);
    GroupComparison swapped = mann_whitney_u(f, t);
    CHECK(swapped.u == 9);
    CHECK(swapped.p_two_sided == doctest::Approx(0.1));
}

TEST_CASE("exact p for unequal sizes")
{
    std::vector<double> t{3, 7, 9, 12};
    std::vector<double> f{1, 2, 5};
    GroupComparison c = mann_whitney_u(t, f);
    CHECK(c.u == 11);
    CHECK(c.p_two_sided == doctest::Approx(0.11428571428571428));
}

TEST_CASE("identical groups")
{
    std::vector<double> t{1, 1, 1};
    std::vector<double> f{1, 1, 1};
    GroupComparison c = mann_whitney_u(t, f);
    CHECK(c.u == 4.5);
    CHECK(c.cles == 0.5);
    CHECK(c.p_two_sided == doctest::Approx(1.0));
}

TEST_CASE("normal approximation without ties")
{
    std::vector<double> t(10);
    std::vector<double> f(10);
    std::iota(t.begin(), t.end(), 1.0);
    std::iota(f.begin(), f.end(), 11.0);
    GroupComparison c = mann_whitney_u(t, f);
    CHECK(c.p_method == PMethod::NormalApproximation);
    CHECK(c.u == 0);
    CHECK(c.p_two_sided == doctest::Approx(1.826717911095504e-4).epsilon(1e-6));
}

TEST_CASE("normal approximation with ties")
{
    std::vector<double> t{55, 60, 60, 71, 80, 80, 80, 92, 95, 40};
    std::vector<double> f{50, 55, 60, 62, 70, 70, 45, 30, 71, 33, 20};
    GroupComparison c = mann_whitney_u(t, f);
    CHECK(c.u == 87);
    CHECK(c.p_method == PMethod::NormalApproximation);
    CHECK(c.p_two_sided == doctest::Approx(0.026005616015273892).epsilon(1e-9));
}

TEST_CASE("U agrees with pair counting and is shift invariant")
{
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> size(1, 12);
    std::uniform_int_distribution<int> value(0, 9);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> t(static_cast<std::size_t>(size(rng)));
        std::vector<double> f(static_cast<std::size_t>(size(rng)));
        for (double& x : t) {
            x = value(rng);
        }
        for (double& x : f) {
            x = value(rng);
        }
        double u = u_statistic(t, f);
        CHECK(u == pair_count_u(t, f));
        CHECK(u + u_statistic(f, t) == doctest::Approx(static_cast<double>(t.size() * f.size())));
        std::vector<double> t_shifted = t;
        std::vector<double> f_shifted = f;
        for (double& x : t_shifted) {
            x = x * 3 + 100;
        }
        for (double& x : f_shifted) {
            x = x * 3 + 100;
        }
        GroupComparison a = mann_whitney_u(t, f);
        GroupComparison b = mann_whitney_u(t_shifted, f_shifted);
        CHECK(a.u == b.u);
        CHECK(a.p_two_sided == doctest::Approx(b.p_two_sided));
        CHECK(a.p_two_sided >= 0);
        CHECK(a.p_two_sided <= 1);
    }
}

TEST_CASE("exact p agrees with permutation counting")
{
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> size(1, 5);
    for (int trial = 0; trial < 200; ++trial) {
        int n_t = size(rng);
        int n_f = std::min(size(rng), 8 - n_t);
        if (n_f < 1) {
            n_f = 1;
        }
        std::vector<double> pool(static_cast<std::size_t>(n_t + n_f));
        std::iota(pool.begin(), pool.end(), 1.0);
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<double> t(pool.begin(), pool.begin() + n_t);
        std::vector<double> f(pool.begin() + n_t, pool.end());
        GroupComparison c = mann_whitney_u(t, f);
        CHECK(c.p_method == PMethod::Exact);
        CHECK(c.u == pair_count_u(t, f));
        CHECK(c.p_two_sided == doctest::Approx(permutation_p(t, f)).epsilon(1e-12));
    }
}

TEST_CASE("exact distribution sums to one")
{
    for (int m = 1; m <= 6; ++m) {
        for (int n = 1; n <= 6; ++n) {
            CHECK(exact_u_cdf(m * n, m, n) == doctest::Approx(1.0));
            CHECK(exact_u_cdf(-1, m, n) == 0.0);
            CHECK(exact_u_cdf(0, m, n) > 0.0);
        }
    }
}

TEST_CASE("empty groups")
{
    std::vector<double> some{1, 2};
    std::vector<double> none;
    CHECK(code_of([&] { mann_whitney_u(some, none); }) == StatsError::Code::DegenerateGroups);
    CHECK(code_of([&] { mann_whitney_u(none, some); }) == StatsError::Code::DegenerateGroups);
}
