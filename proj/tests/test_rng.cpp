#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "qcorr/rng.hpp"

using namespace qcorr;

TEST_CASE("identical (seed, stream) gives identical sequences") {
    RngStream a(42, 7);
    RngStream b(42, 7);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
    for (int i = 0; i < 1000; ++i) CHECK(a.next_gaussian() == b.next_gaussian());
}

TEST_CASE("streams with different ids do not collide") {
    RngStream a(42, 0);
    RngStream b(42, 1);
    int equal = 0;
    for (int i = 0; i < 256; ++i)
        if (a.next_u64() == b.next_u64()) ++equal;
    CHECK(equal == 0);
}

TEST_CASE("different seeds decorrelate") {
    RngStream a(1, 0);
    RngStream b(2, 0);
    int equal = 0;
    for (int i = 0; i < 256; ++i)
        if (a.next_u64() == b.next_u64()) ++equal;
    CHECK(equal == 0);
}

TEST_CASE("uniform doubles are in range with sane moments") {
    RngStream rng(5, 0);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_double();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));

    for (int i = 0; i < 10000; ++i) {
        const double u = rng.next_open_double();
        REQUIRE(u > 0.0);
        REQUIRE(u <= 1.0);
    }
}

TEST_CASE("gaussians have sane moments") {
    RngStream rng(6, 0);
    const int n = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.next_gaussian();
        sum += g;
        sum2 += g * g;
    }
    const double mean = sum / n;
    CHECK(std::abs(mean) < 0.02);
    CHECK(sum2 / n - mean * mean == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("simplex_uniform produces a probability vector") {
    RngStream rng(9, 3);
    for (int k : {1, 2, 4, 16}) {
        const std::vector<double> w = simplex_uniform(rng, k);
        REQUIRE(static_cast<int>(w.size()) == k);
        double sum = 0.0;
        for (double x : w) {
            CHECK(x >= 0.0);
            sum += x;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}
