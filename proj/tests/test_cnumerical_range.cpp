#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rangelab/cnumerical_range.hpp"
#include "rangelab/rng.hpp"
#include "rangelab/scalar_distance.hpp"
#include "test_support.hpp"

using namespace rangelab;

namespace {
const CMatrix kE12 = CMatrix::basis(2, 0, 1);

CMatrix chat_of(Complex g, double f) {
    CMatrix c(2, 2);
    c(0, 0) = g;
    c(0, 1) = f;
    c(1, 0) = 1.0;
    c(1, 1) = g;
    return c;
}

CMatrix bhat_of(Complex x2, double theta) {
    CMatrix b(2, 2);
    b(0, 1) = 1.0;
    b(1, 0) = x2 * std::sin(theta);
    return b;
}
}  // namespace

TEST_CASE("wc_value basics and rejection") {
    RngStream rng(31);
    const CMatrix t = ginibre(3, rng);
    const CMatrix v = haar_unitary(3, rng);
    // Identity weight: similarity invariance of the trace.
    CHECK(std::abs(wc_value(CMatrix::identity(3), t, v) - t.trace()) < 1e-12);
    // diag(2,0) against E12 through the identity: zero.
    CHECK(std::abs(wc_value(CMatrix::diagonal({2.0, 0.0}), kE12, CMatrix::identity(2))) < 1e-15);
    // Rank-one normal weight: value equals 2 * (V^* T V)_{11}.
    const CMatrix w2 = haar_unitary(2, rng);
    const Complex expected = 2.0 * (w2.adjoint() * kE12 * w2)(0, 0);
    CHECK(std::abs(wc_value(CMatrix::diagonal({2.0, 0.0}), kE12, w2) - expected) < 1e-13);
    CHECK_THROWS_AS(wc_value(CMatrix::identity(2), kE12, 2.0 * CMatrix::identity(2)),
                    std::invalid_argument);
}

TEST_CASE("wc_sample basics") {
    RngStream rng(32);
    CMatrix traceless = ginibre(2, rng);
    traceless(1, 1) = -traceless(0, 0);
    const auto zeros = wc_sample(CMatrix::identity(2), traceless, 64, 5);
    for (const auto& z : zeros) CHECK(std::abs(z) < 1e-13);

    // diag(2,0) against E12: disk of radius 1 = 2 * (radius 1/2).
    const auto cloud = wc_sample(CMatrix::diagonal({2.0, 0.0}), kE12, 20000, 6);
    CHECK(test::cloud_max_modulus(cloud) <= 1.0 + 1e-12);
    CHECK(test::cloud_inradius(cloud) > 0.9);
    // Identical seeds reproduce identical clouds.
    const auto again = wc_sample(CMatrix::diagonal({2.0, 0.0}), kE12, 16, 6);
    const auto cloud16 = wc_sample(CMatrix::diagonal({2.0, 0.0}), kE12, 16, 6);
    for (std::size_t i = 0; i < 16; ++i) CHECK(again[i] == cloud16[i]);
}

TEST_CASE("wc_support_realc reductions and brute-force cross-check") {
    RngStream rng(33);
    const CMatrix t = ginibre(3, rng);
    for (double theta : {0.0, 1.1, 3.9}) {
        CHECK(wc_support_realc({1.0}, t, theta) ==
              doctest::Approx(nr_support(t, theta).h).epsilon(1e-12));
    }
    CHECK(wc_support_realc({1.0, 1.0}, CMatrix::diagonal({0.0, 1.0, 2.0}), 0.0) ==
          doctest::Approx(3.0).epsilon(1e-12));
    CHECK(wc_support_realc({2.0, -1.0}, CMatrix::diagonal({1.0, 0.0}), 0.0) ==
          doctest::Approx(2.0).epsilon(1e-12));

    // Haar brute force stays below the closed form and approaches it.
    const CMatrix c = CMatrix::diagonal({2.0, -1.0});
    const CMatrix target = ginibre(2, rng);
    const double exact = wc_support_realc({2.0, -1.0}, target, 0.7);
    const auto cloud = wc_sample(c, target, 100000, 9);
    const double sampled = test::cloud_support(cloud, 0.7);
    CHECK(sampled <= exact + 1e-10);
    CHECK(exact - sampled < 1e-3);
}

TEST_CASE("wc_support_opt certified lower bounds meet exact values") {
    RngStream rng(34);
    // Identity weight: the objective is constant Re(e^{-i theta} tr T).
    const CMatrix t0 = ginibre(3, rng);
    const SupportBound id_bound = wc_support_opt(CMatrix::identity(3), t0, 0.3, 2, 50);
    const double expected = (std::polar(1.0, -0.3) * t0.trace()).real();
    CHECK(id_bound.h == doctest::Approx(expected).epsilon(1e-10));

    CHECK(wc_support_opt(CMatrix::diagonal({2.0, 0.0}), kE12, 0.0).h >= 1.0 - 1e-6);

    for (int rep = 0; rep < 4; ++rep) {
        RngStream sub = rng.derive(rep);
        const std::size_t n = 2 + rep % 3;
        std::vector<double> weights(n);
        for (auto& w : weights) w = 2.0 * sub.uniform() - 0.5;
        const CMatrix t = ginibre(n, sub);
        const double theta = 2.0 * std::numbers::pi * sub.uniform();
        const double exact = wc_support_realc(weights, t, theta);
        CVector wc(weights.begin(), weights.end());
        const SupportBound opt = wc_support_opt(CMatrix::diagonal(wc), t, theta, 8, 500, 71);
        CHECK(opt.h <= exact + 1e-9);
        CHECK(std::abs(opt.h - exact) < 1e-6);
        // The witness recomputes the bound exactly.
        const Complex via_witness = wc_value(CMatrix::diagonal(wc), t, opt.v);
        CHECK((std::polar(1.0, -theta) * via_witness).real() ==
              doctest::Approx(opt.h).epsilon(1e-12));
    }
}

TEST_CASE("rank_one_nilpotent_disk values and consistency") {
    CHECK(rank_one_nilpotent_disk(CMatrix::identity(2)) < 1e-9);
    CHECK(rank_one_nilpotent_disk(CMatrix::diagonal({2.0, 0.0})) ==
          doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rank_one_nilpotent_disk(kE12) == doctest::Approx(1.0).epsilon(1e-8));
    RngStream rng(35);
    const CMatrix c = ginibre(4, rng);
    CHECK(rank_one_nilpotent_disk(c) == doctest::Approx(min_shift_norm(c).R).epsilon(1e-14));
}

TEST_CASE("lemma disk: the E12 range is a circle of the predicted radius") {
    // Plain Haar clouds concentrate away from the boundary as n grows, so
    // the hull is padded with phase orbits of the dual-ascent witness pair:
    // still exact members, and they pin the attained radius by a route
    // independent of the min-shift solve.
    RngStream rng(36);
    for (std::size_t n : {2u, 4u}) {
        RngStream sub = rng.derive(n);
        const CMatrix c = ginibre(n, sub);
        const double r = rank_one_nilpotent_disk(c);
        auto cloud = wc_sample(c, CMatrix::basis(n, 0, 1), 20000, 1000 + n);
        const OrthoPair pair = dual_orthopair(c);
        const Complex extremal = dot(pair.x, matvec(c, pair.y));
        for (int k = 0; k < 128; ++k)
            cloud.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / 128.0) * extremal);
        CHECK(test::cloud_max_modulus(cloud) <= r * (1.0 + 1e-5));
        CHECK(test::cloud_max_modulus(cloud) >= r * 0.999);
        CHECK(test::cloud_inradius(cloud) >= r * 0.98);
    }
    // At n = 2 the raw cloud already fills the disk.
    RngStream sub = rng.derive(99);
    const CMatrix c = ginibre(2, sub);
    const double r = rank_one_nilpotent_disk(c);
    const auto raw = wc_sample(c, kE12, 60000, 1099);
    CHECK(test::cloud_max_modulus(raw) <= r * 1.001);
    CHECK(test::cloud_inradius(raw) >= r * 0.98);
}

TEST_CASE("wca_ellipse closed forms") {
    // f = 0: unit disk.
    const Ellipse disk = wca_ellipse(Complex(0.3, 0.1), 0.0, Complex(0.5, 0.2), 0.7);
    CHECK(std::abs(disk.focus1) < 1e-14);
    CHECK(std::abs(disk.focus2) < 1e-14);
    CHECK(disk.minor_axis == doctest::Approx(2.0).epsilon(1e-12));

    // f = 1, x2 = -1, theta near pi/2: degenerates toward the segment
    // [-2i, 2i]; the real-axis slice shrinks to the origin.
    const double theta = 0.5 * std::numbers::pi - 1e-6;
    const Ellipse seg = wca_ellipse(0.0, 1.0, Complex(-1.0, 0.0), theta);
    CHECK(std::abs(seg.focus1 + Complex(0.0, 2.0)) < 1e-5);
    CHECK(std::abs(seg.focus2 - Complex(0.0, 2.0)) < 1e-5);
    CHECK(seg.minor_axis < 1e-5);
    CHECK(seg.contains(Complex(0.0, 0.0), 1e-12));
    CHECK_FALSE(seg.contains(Complex(0.05, 0.0)));

    // f = 1/2, x2 = 1, theta = pi/6: foci +-1, minor axis 3/2.
    const Ellipse e = wca_ellipse(0.0, 0.5, Complex(1.0, 0.0), std::numbers::pi / 6.0);
    CHECK(std::abs(e.focus1 + 1.0) < 1e-12);
    CHECK(std::abs(e.focus2 - 1.0) < 1e-12);
    CHECK(e.minor_axis == doctest::Approx(1.5).epsilon(1e-12));

    CHECK_THROWS_AS(wca_ellipse(0.0, 1.5, 0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(wca_ellipse(0.0, 0.5, Complex(2.0, 0.0), 0.1), std::invalid_argument);
    CHECK_THROWS_AS(wca_ellipse(0.0, 0.5, 0.0, 2.0), std::invalid_argument);
}

TEST_CASE("wca_ellipse matches sampled clouds and ignores g") {
    RngStream rng(37);
    const double f = 0.5;
    const Complex x2(0.6, -0.3);
    const double theta = 0.9;
    const CMatrix bhat = bhat_of(x2, theta);
    Ellipse reference = wca_ellipse(0.0, f, x2, theta);
    for (int rep = 0; rep < 10; ++rep) {
        RngStream sub = rng.derive(rep);
        const Complex g = sub.complex_gaussian();
        const auto cloud = wc_sample(chat_of(g, f), bhat, 4000, 900 + rep);
        for (const auto& z : cloud) CHECK(reference.boundary_defect(z) <= 1e-8);
    }
    // The segment [f sin t - 1, 1 - f sin t] lies inside, with room to spare
    // only along the real axis.
    const double xi = 1.0 - f * std::sin(theta);
    for (double s : {-1.0, -0.5, 0.0, 0.5, 1.0})
        CHECK(reference.contains(Complex(s * xi, 0.0), 1e-12));
}

TEST_CASE("wca_ellipse brute force fill on the derived example") {
    const Ellipse e = wca_ellipse(0.0, 0.5, Complex(1.0, 0.0), std::numbers::pi / 6.0);
    const auto cloud =
        wc_sample(chat_of(0.0, 0.5), bhat_of(Complex(1.0, 0.0), std::numbers::pi / 6.0), 100000, 41);
    for (const auto& z : cloud) CHECK(e.boundary_defect(z) <= 1e-8);
    CHECK(test::hull_area(cloud) >= 0.95 * e.area());
}

TEST_CASE("is_rank_one_normal classification") {
    CHECK(is_rank_one_normal(CMatrix::diagonal({2.0, 0.0})));
    CHECK_FALSE(is_rank_one_normal(kE12));
    CHECK_FALSE(is_rank_one_normal(CMatrix::identity(2)));
    CHECK_THROWS_AS(is_rank_one_normal(CMatrix(2, 2)), std::invalid_argument);
    RngStream rng(38);
    for (int rep = 0; rep < 10; ++rep) {
        RngStream sub = rng.derive(rep);
        CHECK(is_rank_one_normal(test::random_rank_one_normal(3, sub)));
    }
}

TEST_CASE("duality of the weighted range: swapped clouds agree under coupled streams") {
    // For equal sizes the swap is realized pointwise by V <-> V^*: sampling
    // the swapped problem at the adjoint stream (common random numbers) must
    // reproduce the original cloud, and the adjoint stream is itself Haar.
    RngStream rng(39);
    for (int rep = 0; rep < 5; ++rep) {
        RngStream sub = rng.derive(rep);
        const std::size_t n = 2 + rep % 3;
        CMatrix c = ginibre(n, sub);
        CMatrix a = ginibre(n, sub);
        c *= Complex(1.0 / spectral_norm(c), 0.0);
        a *= Complex(1.0 / spectral_norm(a), 0.0);
        RngStream haar_base(static_cast<std::uint64_t>(300 + rep));
        std::vector<Complex> cloud_ca, cloud_ac;
        for (int i = 0; i < 2000; ++i) {
            RngStream hs = haar_base.derive(i);
            const CMatrix v = haar_unitary(n, hs);
            cloud_ca.push_back(wc_value(c, a, v));
            cloud_ac.push_back(wc_value(a, c, v.adjoint()));
        }
        CHECK(test::hull_hausdorff(cloud_ca, cloud_ac) < 1e-12);
        // Independent streams estimate the same set; the hulls only agree up
        // to the sampling deficiency, which shrinks with the cloud size.
        const auto independent = wc_sample(a, c, 2000, 500 + rep);
        CHECK(test::hull_hausdorff(cloud_ca, independent) < 0.5);
    }
}

TEST_CASE("affine covariance of wc_value is exact") {
    RngStream rng(40);
    for (int rep = 0; rep < 10; ++rep) {
        RngStream sub = rng.derive(rep);
        const std::size_t n = 2 + rep % 3;
        const CMatrix c = ginibre(n, sub);
        const CMatrix t = ginibre(n, sub);
        const CMatrix v = haar_unitary(n, sub);
        const Complex xi1 = sub.complex_gaussian();
        const Complex xi2 = sub.complex_gaussian();
        const Complex lhs = wc_value(c, xi1 * CMatrix::identity(n) + xi2 * t, v);
        const Complex rhs = xi1 * c.trace() + xi2 * wc_value(c, t, v);
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("circle family endpoints match the closed forms") {
    const Complex g(0.2, 0.1);
    const double f = 0.4;
    const Complex c32(0.5, 0.4);
    const Complex x2(-0.3, 0.55), x3(0.25, -0.4);
    const double theta = 1.1;
    CMatrix ct(3, 3);
    ct(0, 0) = g;
    ct(0, 1) = f;
    ct(1, 0) = 1.0;
    ct(1, 1) = g;
    ct(2, 1) = c32;
    CMatrix bt(3, 3);
    bt(0, 1) = 1.0;
    bt(1, 0) = x2 * std::sin(theta);
    bt(1, 2) = x3;

    // v1 = swap matrix: the path is constant, so both endpoints collapse to
    // the singleton x2 sin t + f and a certificate exists only for it.
    CMatrix swap(2, 2);
    swap(0, 1) = 1.0;
    swap(1, 0) = 1.0;
    const Complex singleton = x2 * std::sin(theta) + f;
    CircleFamily family;
    const MembershipCertificate cert =
        circle_path_certify(ct, bt, singleton, swap, 64, 1e-6, &family);
    CHECK(cert.certified());
    CHECK(cert.residual < 1e-10);
    CHECK(std::abs(family.center.back() - singleton) < 1e-12);
    CHECK(family.radius.back() < 1e-12);
    // Certificate recomputes from its witness.
    const Complex recompute = (ct * (cert.v.adjoint() * (bt * cert.v))).trace();
    CHECK(std::abs(recompute - cert.achieved) < 1e-13);
}

TEST_CASE("circle_path_certify handles zero-radius paths by center matching") {
    const Complex g(0.0, 0.0);
    const double f = 0.3;
    const double theta = 1.2;
    CMatrix ct(3, 3);
    ct(0, 0) = g;
    ct(0, 1) = f;
    ct(1, 0) = 1.0;
    ct(1, 1) = g;
    ct(2, 1) = Complex(0.7, 0.1);
    CMatrix bt(3, 3);
    bt(0, 1) = 1.0;
    bt(1, 0) = Complex(-0.5, 0.2) * std::sin(theta);
    // x3 = 0: every circle in the family is a point.

    const Complex target = (ct.block(0, 0, 2, 2) *
                            (CMatrix::identity(2) * (bt.block(0, 0, 2, 2) * CMatrix::identity(2))))
                               .trace();
    const MembershipCertificate cert =
        circle_path_certify(ct, bt, target, CMatrix::identity(2), 512, 1e-6);
    CHECK(cert.certified());
    CHECK(cert.residual < 1e-8);
}
