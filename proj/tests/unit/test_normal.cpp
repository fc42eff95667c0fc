#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "doctest.h"
#include "mixeff/error.hpp"
#include "mixeff/normal.hpp"
#include "mixeff/student_t.hpp"

using namespace mixeff;

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

double phi_50_digits(double x) {
    const Float50 z = Float50(x) / boost::multiprecision::sqrt(Float50(2));
    return static_cast<double>(boost::math::erfc(-z) / 2);
}

}  // namespace

TEST_CASE("normal_cdf matches tabulated values") {
    // 30-digit reference values
    struct Row {
        double x, phi;
    };
    const Row table[] = {
        {-8.0, 6.22096057427178412351599517259e-16},
        {-3.0, 0.0013498980316300945266518147676},
        {-1.96, 0.0249978951482204341365842690408},
        {-1.0, 0.158655253931457051414767454368},
        {0.0, 0.5},
        {0.5, 0.691462461274013103637704610608},
        {1.0, 0.841344746068542948585232545632},
        {1.96, 0.975002104851779565863415730959},
        {2.5, 0.993790334674223864833021895426},
        {5.0, 0.999999713348428120806088326248},
    };
    for (const auto& row : table) {
        CAPTURE(row.x);
        CHECK(std::fabs(normal_cdf(row.x) - row.phi) <= 1e-15);
        CHECK(std::fabs(normal_sf(-row.x) - row.phi) <= 1e-15);
    }
}

TEST_CASE("normal_cdf within 1e-12 of a 50-digit evaluation on a dense grid") {
    double worst = 0.0;
    for (double x = -38.0; x <= 9.0; x += 0.0137) worst = std::max(worst, std::fabs(normal_cdf(x) - phi_50_digits(x)));
    CHECK(worst <= 1e-12);
}

TEST_CASE("normal_central_mass is 2 Phi - 1 and keeps precision near zero") {
    for (double x : {-4.0, -1.0, -0.3, 0.2, 1.0, 3.0}) CHECK(normal_central_mass(x) == doctest::Approx(2 * normal_cdf(x) - 1).epsilon(1e-14));
    // 2 phi(0) x for tiny x
    CHECK(normal_central_mass(1e-10) == doctest::Approx(2 * kInvSqrt2Pi * 1e-10).epsilon(1e-12));
    CHECK(normal_central_mass(0.0) == 0.0);
}

TEST_CASE("normal_pdf") {
    CHECK(normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
    CHECK(normal_pdf(1.5) == doctest::Approx(normal_pdf(-1.5)));
}

TEST_CASE("normal_quantile inverts normal_cdf") {
    CHECK(std::isinf(normal_quantile(0.0)));
    CHECK(std::isinf(normal_quantile(1.0)));
    CHECK(std::isnan(normal_quantile(-0.1)));
    CHECK(std::isnan(normal_quantile(1.1)));
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0));
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-14));
    for (double p : {1e-300, 1e-12, 1e-5, 0.01, 0.02425, 0.3, 0.7, 0.97575, 0.999, 1 - 1e-12}) {
        CAPTURE(p);
        const double boost_q = -std::sqrt(2.0) * boost::math::erfc_inv(2 * p);
        CHECK(normal_quantile(p) == doctest::Approx(boost_q).epsilon(1e-13));
        CHECK(normal_quantile_fast(p) == doctest::Approx(boost_q).epsilon(1.2e-9));
    }
}

TEST_CASE("incomplete beta against boost::math::ibeta") {
    double worst = 0.0;
    for (double a : {0.5, 1.0, 2.5, 7.0, 15.0, 50.0, 500.0, 5e4})
        for (double b : {0.5, 1.0, 3.0, 12.0, 80.0})
            for (double x : {0.0, 1e-6, 0.05, 0.3, 0.5, 0.77, 0.95, 0.999999, 1.0}) {
                const double got = regularized_incomplete_beta(a, b, x);
                worst = std::max(worst, std::fabs(got - boost::math::ibeta(a, b, x)));
            }
    CHECK(worst <= 1e-12);
    CHECK_THROWS_AS(regularized_incomplete_beta(0.0, 1.0, 0.5), DomainError);
    CHECK_THROWS_AS(regularized_incomplete_beta(1.0, 1.0, 1.5), DomainError);
}

TEST_CASE("log_beta against lgamma for moderate and large arguments") {
    CHECK(log_beta(2.0, 3.0) == doctest::Approx(std::log(1.0 / 12.0)).epsilon(1e-14));
    for (double a : {10.0, 123.5, 1e4, 1e7}) {
        const double expected = static_cast<double>(boost::math::lgamma(Float50(a)) + boost::math::lgamma(Float50(0.5)) -
                                                    boost::math::lgamma(Float50(a) + Float50(0.5)));
        CHECK(log_beta(a, 0.5) == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("Student t cdf within 1e-10 of boost") {
    double worst = 0.0;
    for (double df : {1.0, 2.0, 3.0, 4.5, 9.0, 29.0, 99.0, 999.0, 1e5})
        for (double t = -40.0; t <= 40.0; t += 0.173) {
            const boost::math::students_t dist(df);
            worst = std::max(worst, std::fabs(student_t_cdf(t, df) - boost::math::cdf(dist, t)));
            worst = std::max(worst, std::fabs(student_t_sf(t, df) - boost::math::cdf(boost::math::complement(dist, t))));
        }
    CHECK(worst <= 1e-10);
}

TEST_CASE("Student t tail at 2 sqrt(3) with 2 df") {
    // closed form for two degrees of freedom: (1 - t / sqrt(t^2 + 2)) / 2
    CHECK(student_t_sf(2.0 * std::sqrt(3.0), 2.0) == doctest::Approx(0.037089950113724269).epsilon(1e-13));
    CHECK(student_t_sf(0.0, 7.0) == doctest::Approx(0.5));
    CHECK(student_t_cdf(-INFINITY, 3.0) == 0.0);
    CHECK_THROWS_AS(student_t_cdf(1.0, 0.0), DomainError);
}
