#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rangelab/dilation.hpp"
#include "rangelab/rng.hpp"
#include "test_support.hpp"

using namespace rangelab;

TEST_CASE("halmos_dilation closed 1x1 cases") {
    CMatrix t0(1, 1);
    const CMatrix u0 = halmos_dilation(t0);
    CHECK((u0 - CMatrix{{0.0, 1.0}, {1.0, 0.0}}).max_abs() < 1e-15);

    CMatrix t1(1, 1);
    t1(0, 0) = 1.0;
    const CMatrix u1 = halmos_dilation(t1);
    CHECK((u1 - CMatrix{{1.0, 0.0}, {0.0, -1.0}}).max_abs() < 1e-12);

    CMatrix th(1, 1);
    th(0, 0) = 0.5;
    const CMatrix uh = halmos_dilation(th);
    const double s3 = std::sqrt(3.0) / 2.0;
    CHECK((uh - CMatrix{{0.5, s3}, {s3, -0.5}}).max_abs() < 1e-12);
    CHECK(unitarity_defect(uh) < 1e-12);
}

TEST_CASE("halmos_dilation on random contractions") {
    RngStream rng(51);
    for (int rep = 0; rep < 50; ++rep) {
        RngStream sub = rng.derive(rep);
        const std::size_t n = 2 + rep % 3;
        const CMatrix t = test::random_contraction(n, sub, rep % 2 ? 1.0 : 0.0);
        const CMatrix u = halmos_dilation(t);
        CHECK(unitarity_defect(u) <= 1e-10);
        CHECK((u.block(0, 0, n, n) - t).max_abs() <= 1e-12);
        CHECK((compress(u, CMatrix::identity(2 * n).block(0, 0, 2 * n, n)) - t).max_abs() <=
              1e-12);
    }
    CMatrix big(2, 2);
    big(0, 1) = 1.5;
    CHECK_THROWS_AS(halmos_dilation(big), std::invalid_argument);
}

TEST_CASE("sample_dilation with identity parameters reproduces the Halmos block") {
    RngStream rng(52);
    const CMatrix t = test::random_contraction(3, rng, 1.0);
    DilationSpec spec;
    spec.t = t;
    spec.pad = 3;
    spec.v = spec.w = spec.p = spec.q = CMatrix::identity(3);
    const CMatrix u = sample_dilation(spec, 1);
    CHECK((u - halmos_dilation(t)).max_abs() < 1e-12);
}

TEST_CASE("sample_dilation invariants over seeds and pads") {
    RngStream rng(53);
    int count = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        RngStream sub = rng.derive(rep);
        const CMatrix t = test::random_contraction(3, sub, rep % 3 ? 1.0 : 0.0);
        DilationSpec spec;
        spec.t = t;
        spec.pad = 3 + rep % 3;
        const CMatrix u = sample_dilation(spec, 7000 + rep);
        CHECK(unitarity_defect(u) <= 1e-10);
        CHECK((u.block(0, 0, 3, 3) - t).max_abs() <= 1e-10);
        ++count;
    }
    CHECK(count == 1000);
    // Determinism and pad validation.
    DilationSpec spec;
    spec.t = test::random_contraction(2, rng, 1.0);
    spec.pad = 2;
    CHECK((sample_dilation(spec, 5) - sample_dilation(spec, 5)).max_abs() == 0.0);
    spec.pad = 1;
    CHECK_THROWS_AS(sample_dilation(spec, 5), std::invalid_argument);
}

TEST_CASE("canonical_compression on the Halmos dilation at n = 2, theta = pi/3") {
    const double theta = std::numbers::pi / 3.0;
    const CMatrix t = std::cos(theta) * CMatrix::basis(2, 0, 1);
    const CMatrix u = halmos_dilation(t);
    const CanonicalCompression cc = canonical_compression(u, 2, theta);

    // Rows 1-2 of the compression: (0, 1/2, 0, -sqrt(3)/2) and (0, 0, 1, 0).
    const double s3 = std::sqrt(3.0) / 2.0;
    CHECK(std::abs(cc.that(0, 0)) < 1e-12);
    CHECK(std::abs(cc.that(0, 1) - 0.5) < 1e-12);
    CHECK(std::abs(cc.that(0, 2)) < 1e-12);
    CHECK(std::abs(cc.that(0, 3) + s3) < 1e-12);
    CHECK(std::abs(cc.that(1, 2) - 1.0) < 1e-12);
    CHECK(cc.pattern_violation < 1e-12);

    // The isometry reproduces the compression against U.
    CHECK((compress(u, cc.isometry) - cc.that).max_abs() < 1e-12);

    // The 2x2 block at rows/columns 2 and n+1 is [[0, 1], [x2 sin t, 0]].
    const CMatrix bhat = cc.that.select({1, 2}, {1, 2});
    CHECK(std::abs(bhat(0, 0)) < 1e-12);
    CHECK(std::abs(bhat(0, 1) - 1.0) < 1e-12);
    CHECK(std::abs(bhat(1, 0) - cc.x2 * std::sin(theta)) < 1e-12);
    CHECK(std::abs(bhat(1, 1)) < 1e-12);

    // And it equals the compression of that onto columns {2, n+1}.
    CMatrix sel(4, 2);
    sel(1, 0) = 1.0;
    sel(2, 1) = 1.0;
    CHECK((compress(cc.that, sel) - bhat).max_abs() < 1e-14);
}

TEST_CASE("canonical_compression pattern and norm constraints on random dilations") {
    RngStream rng(54);
    for (int rep = 0; rep < 30; ++rep) {
        RngStream sub = rng.derive(rep);
        const std::size_t n = 2 + rep % 3;
        const double theta = (rep % 2) ? std::numbers::pi / 6.0 : std::numbers::pi / 3.0;
        DilationSpec spec;
        spec.t = std::cos(theta) * CMatrix::basis(n, 0, 1);
        spec.pad = n + rep % 3;
        const CMatrix u = sample_dilation(spec, 9000 + rep);
        const CanonicalCompression cc = canonical_compression(u, n, theta);
        CHECK(cc.pattern_violation <= 1e-10);
        CHECK(std::norm(cc.x1) + std::norm(cc.x2) <= 1.0 + 1e-8);
        CHECK(std::norm(cc.y1) + std::norm(cc.y2) <= 1.0 + 1e-8);
        CHECK((cc.b - cc.that.select({0, 1, n, n + 1}, {0, 1, n, n + 1})).max_abs() == 0.0);
        CHECK((compress(u, cc.isometry) - cc.that).max_abs() < 1e-11);
    }
    // Rejects inputs that do not dilate the required matrix.
    const CMatrix wrong = haar_unitary(5, 123u);
    CHECK_THROWS_AS(canonical_compression(wrong, 2, std::numbers::pi / 3.0),
                    std::invalid_argument);
}

TEST_CASE("certify_membership on a diagonal unitary") {
    const CMatrix u = CMatrix::diagonal({Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)});
    const MembershipCertificate cert =
        certify_membership(CMatrix::identity(2), u, Complex(1.0, 1.0));
    CHECK(cert.certified());
    CHECK(cert.residual <= 1e-6);
    // The witness recomputes the achieved value.
    CHECK(std::abs(wc_value(CMatrix::identity(2), u, cert.v) - cert.achieved) < 1e-12);
}

TEST_CASE("certify_membership: sampling oracle point and out-of-range target") {
    const CMatrix c = CMatrix::diagonal({2.0, 0.0});
    const CMatrix t = 0.5 * CMatrix::basis(2, 0, 1);
    const CMatrix u = halmos_dilation(t);
    // 0.5 lies in the sampled hull of the weighted range of U.
    const auto cloud = wc_sample(c, u, 4000, 11);
    CHECK(test::cloud_support(cloud, 0.0) > 0.5);
    const MembershipCertificate cert = certify_membership(c, u, Complex(0.5, 0.0));
    CHECK(cert.certified());
    CHECK(cert.residual <= 1e-6);

    // Beyond the trace-norm bound: inconclusive without search (and provably
    // outside).
    const MembershipCertificate far = certify_membership(c, u, Complex(5.0, 0.0));
    CHECK_FALSE(far.certified());
}

TEST_CASE("intersection_estimate basics") {
    const CMatrix c = CMatrix::diagonal({1.0, 0.0});
    const CMatrix t = 0.5 * CMatrix::basis(2, 0, 1);

    // A single dilation equals that dilation's own outer region.
    const IntersectionEstimate one = intersection_estimate(t, c, 1, {2}, 77, 90);
    DilationSpec spec;
    spec.t = t;
    spec.pad = 2;
    const CMatrix u0 = sample_dilation(spec, one.dilation_seeds[0]);
    for (std::size_t k = 0; k < one.region.grid_size(); ++k) {
        const double h = nr_support(u0, one.region.directions[k]).h;
        CHECK(one.region.support[k] == doctest::Approx(h).epsilon(1e-10));
    }
    CHECK_FALSE(one.used_optimization);

    // Nesting: doubling the dilation count can only shrink the estimate.
    const IntersectionEstimate m8 = intersection_estimate(t, c, 8, {2, 3}, 77, 90);
    const IntersectionEstimate m16 = intersection_estimate(t, c, 16, {2, 3}, 77, 90);
    for (std::size_t k = 0; k < m8.region.grid_size(); ++k)
        CHECK(m16.region.support[k] <= m8.region.support[k] + 1e-12);

    // Every estimate contains the weighted range of T (disk of radius 1/4).
    for (std::size_t k = 0; k < m16.region.grid_size(); ++k)
        CHECK(m16.region.support[k] >= 0.25 - 1e-9);
    // Inner points come from the range of T itself.
    for (const auto& z : m16.region.inner_points) CHECK(std::abs(z) <= 0.25 + 1e-9);
}

TEST_CASE("dilation monotonicity: T-points lie inside every sampled dilation region") {
    RngStream rng(55);
    for (int rep = 0; rep < 6; ++rep) {
        RngStream sub = rng.derive(rep);
        const std::size_t n = 2 + rep % 3;
        const CMatrix t = test::random_contraction(n, sub, 1.0);
        const CMatrix c = ginibre(n, sub);
        const auto points = wc_sample(c, t, 200, 600 + rep);
        DilationSpec spec;
        spec.t = t;
        spec.pad = n + rep % 2;
        const CMatrix u = sample_dilation(spec, 800 + rep);
        for (int k = 0; k < 12; ++k) {
            const double theta = 2.0 * std::numbers::pi * k / 12.0;
            const SupportBound bound = wc_support_opt(c, u, theta, 8, 300, 900 + rep);
            double cloud_h = -1e300;
            for (const auto& z : points)
                cloud_h = std::max(cloud_h,
                                   std::cos(theta) * z.real() + std::sin(theta) * z.imag());
            CHECK(cloud_h <= bound.h + 1e-6);
        }
    }
}
