#include <doctest.h>

#include <cmath>
#include <vector>

#include "expseries/errors.hpp"
#include "expseries/product.hpp"

using namespace expseries;

namespace {

ExponentSequence powers_ray(double ratio, double start) {
    return ExponentSequence({}, RayTail{0.0, ratio, start});
}

}  // namespace

TEST_CASE("construction enforces the modulus-doubling separation") {
    CHECK_NOTHROW(CanonicalProduct(ExponentSequence({{2.0, 0.0}, {4.0, 0.0}}), 2));
    CHECK_THROWS_AS(CanonicalProduct(ExponentSequence({{2.0, 0.0}, {3.9, 0.0}}), 2), Error);
    // Separation is enforced across the truncation boundary too.
    CHECK_NOTHROW(CanonicalProduct(ExponentSequence({{2.0, 0.0}, {4.0, 0.0}, {8.0, 0.0}}), 2));
    CHECK_THROWS_AS(CanonicalProduct(ExponentSequence({{2.0, 0.0}, {4.0, 0.0}, {7.0, 0.0}}), 2),
                    Error);
    // And between the last explicit zero and the ray tail.
    CHECK_NOTHROW(CanonicalProduct(ExponentSequence({{2.0, 0.0}}, RayTail{0.0, 2.0, 4.0}), 3));
    CHECK_THROWS_AS(CanonicalProduct(ExponentSequence({{2.0, 0.0}}, RayTail{0.0, 2.0, 3.0}), 3),
                    Error);
    CHECK_THROWS_AS(CanonicalProduct(ExponentSequence({{2.0, 0.0}}, RayTail{0.0, 1.5, 8.0}), 3),
                    Error);

    CHECK_THROWS_AS(CanonicalProduct(ExponentSequence({{2.0, 0.0}, {4.0, 0.0}}), 0), Error);
    CHECK_THROWS_AS(CanonicalProduct(ExponentSequence({{2.0, 0.0}, {4.0, 0.0}}), 3), Error);

    const CanonicalProduct p(powers_ray(2.0, 2.0), 8);
    CHECK(p.truncation() == 8);
    CHECK(p.zeros().front().real() == doctest::Approx(2.0));
    CHECK(p.zeros().back().real() == doctest::Approx(256.0));
    REQUIRE(p.dropped_tail().has_value());
    CHECK(p.dropped_tail()->start == doctest::Approx(512.0));
}

TEST_CASE("evaluation of a two-zero product") {
    const CanonicalProduct p(ExponentSequence({{2.0, 0.0}, {4.0, 0.0}}), 2);
    SUBCASE("interior value matches the closed form") {
        const GProductValue g = eval_G(p, {1.0, 0.0});
        CHECK(g.value.real() == doctest::Approx(0.375).epsilon(1e-12));
        CHECK(g.value.imag() == doctest::Approx(0.0));
        CHECK(g.tail_bound == 0.0);  // nothing was dropped
        const LogAbsValue l = eval_log_abs(p, {1.0, 0.0});
        CHECK(l.log_abs == doctest::Approx(std::log(0.375)).epsilon(1e-12));
    }
    SUBCASE("value at the origin is one") {
        const GProductValue g = eval_G(p, {0.0, 0.0});
        CHECK(g.value == Complex{1.0, 0.0});
    }
    SUBCASE("retained zeros evaluate to exactly zero") {
        CHECK(eval_G(p, {2.0, 0.0}).value == Complex{0.0, 0.0});
        CHECK(eval_G(p, {4.0, 0.0}).value == Complex{0.0, 0.0});
        CHECK(eval_log_abs(p, {2.0, 0.0}).log_abs == -kInf);
    }
    SUBCASE("complex arguments agree between value and log-magnitude") {
        const Complex z{0.7, -1.3};
        const GProductValue g = eval_G(p, z);
        const LogAbsValue l = eval_log_abs(p, z);
        CHECK(std::log(std::abs(g.value)) == doctest::Approx(l.log_abs).epsilon(1e-12));
    }
}

TEST_CASE("derivative at a zero has the product closed form") {
    const CanonicalProduct p(ExponentSequence({{2.0, 0.0}, {4.0, 0.0}}), 2);
    const Complex d1 = derivative_at_zero(p, 1);
    CHECK(d1.real() == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(std::abs(d1.imag()) < 1e-15);
    const Complex d2 = derivative_at_zero(p, 2);
    CHECK(d2.real() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(log_abs_derivative_at_zero(p, 1) == doctest::Approx(std::log(0.25)).epsilon(1e-12));
    CHECK_THROWS_AS(derivative_at_zero(p, 0), Error);
    CHECK_THROWS_AS(derivative_at_zero(p, 3), Error);

    // Finite-difference cross-check on a three-zero product.
    const CanonicalProduct q(ExponentSequence({{2.0, 0.0}, {-5.0, 0.0}, {11.0, 0.0}}), 3);
    const double h = 1e-6;
    for (std::size_t n = 1; n <= 3; ++n) {
        const Complex lam = q.zeros()[n - 1];
        const Complex fd =
            (eval_G(q, lam + h).value - eval_G(q, lam - h).value) / (2.0 * h);
        const Complex an = derivative_at_zero(q, n);
        CHECK(std::abs(fd - an) < 1e-6 * (1.0 + std::abs(an)));
    }
}

TEST_CASE("tail bound is honest against a longer truncation") {
    const CanonicalProduct p8(powers_ray(2.0, 2.0), 8);
    const CanonicalProduct p16(powers_ray(2.0, 2.0), 16);
    for (const Complex z : {Complex{10.0, 3.0}, Complex{-40.0, 7.0}, Complex{0.5, -200.0}}) {
        const LogAbsValue short_val = eval_log_abs(p8, z);
        const LogAbsValue long_val = eval_log_abs(p16, z);
        CHECK(std::abs(long_val.log_abs - short_val.log_abs) <= short_val.tail_bound + 1e-12);
        // The longer truncation drops less, so its bound is smaller.
        CHECK(long_val.tail_bound < short_val.tail_bound);
    }
}

TEST_CASE("evaluation refuses arguments reaching the dropped zeros") {
    const CanonicalProduct p(powers_ray(2.0, 2.0), 8);  // first dropped modulus 512
    CHECK_NOTHROW(eval_G(p, {250.0, 0.0}));
    CHECK_THROWS_AS(eval_G(p, {300.0, 0.0}), Error);
    CHECK_THROWS_AS(eval_log_abs(p, {0.0, 400.0}), Error);
    // At the origin nothing is dropped from the value.
    CHECK(eval_G(p, {0.0, 0.0}).tail_bound == 0.0);
}

TEST_CASE("condensation profile of a two-zero product") {
    const CanonicalProduct p(ExponentSequence({{2.0, 0.0}, {4.0, 0.0}}), 2);
    const std::vector<double> v = condensation_profile(p, 2, Exec::Serial);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(v[1] == doctest::Approx(std::log(4.0) / 4.0).epsilon(1e-12));
    CHECK(condensation_index(p, 2, Exec::Serial) == doctest::Approx(std::log(2.0)));
    CHECK_THROWS_AS(condensation_profile(p, 0, Exec::Serial), Error);
    CHECK_THROWS_AS(condensation_profile(p, 3, Exec::Serial), Error);
}

TEST_CASE("condensation index vanishes for geometric zeros") {
    for (double ratio : {2.0, 3.0}) {
        const CanonicalProduct p(powers_ray(ratio, ratio), 25);
        const std::vector<double> v = condensation_profile(p, 25, Exec::Serial);
        REQUIRE(v.size() == 25);
        // The early profile is positive, the far profile has decayed.
        double head = v[0];
        double tail_max = v[12];
        for (std::size_t n = 1; n < 12; ++n) head = std::max(head, v[n]);
        for (std::size_t n = 13; n < 25; ++n) tail_max = std::max(tail_max, v[n]);
        CHECK(tail_max < head);
        CHECK(condensation_index(p, 25, Exec::Serial) <= 0.05);
        CHECK(condensation_index(p, 25, Exec::Serial) >= 0.0);
        // Serial and parallel paths agree exactly.
        CHECK(condensation_index(p, 25, Exec::Serial) ==
              condensation_index(p, 25, Exec::Parallel));
    }
}
