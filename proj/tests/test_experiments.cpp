#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rangelab/experiments.hpp"
#include "rangelab/rng.hpp"
#include "test_support.hpp"

using namespace rangelab;

namespace {
CMatrix normalized_block(Complex g, double f) {
    CMatrix c(2, 2);
    c(0, 0) = g;
    c(0, 1) = f;
    c(1, 0) = 1.0;
    c(1, 1) = g;
    return c;
}
}  // namespace

TEST_CASE("normalize_stampfli is idempotent on an already-normalized weight") {
    const CMatrix c = normalized_block(0.0, 0.5);
    const StampfliForm form = normalize_stampfli(c);
    CHECK((form.c_norm - c).max_abs() <= 1e-10);
    CHECK(form.f == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(std::abs(form.g) < 1e-9);
    CHECK(form.R == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(form.structure_defect <= 1e-8);
}

TEST_CASE("normalize_stampfli produces the structured form on random weights") {
    RngStream rng(61);
    for (int rep = 0; rep < 12; ++rep) {
        RngStream sub = rng.derive(rep);
        const std::size_t n = 2 + rep % 3;
        CMatrix c = ginibre(n, sub);
        if (rep == 5) c = test::random_hermitian(n, sub);  // include a normal case
        const StampfliForm form = normalize_stampfli(c);
        CHECK(form.structure_defect <= 1e-6);
        CHECK(form.f >= 0.0);
        CHECK(form.f <= 1.0);
        // The normalized weight again has unit distance to the scalars.
        CHECK(min_shift_norm(form.c_norm).R == doctest::Approx(1.0).epsilon(1e-6));
        // c_norm = phase basis^* C basis / R with unitary basis.
        CHECK(unitarity_defect(form.basis) <= 1e-10);
        const CMatrix rebuilt =
            (form.phase / form.R) * (form.basis.adjoint() * (c * form.basis));
        CHECK((rebuilt - form.c_norm).max_abs() <= 1e-12);
    }
}

TEST_CASE("verify_main rejects weights that belong to the intersection experiment") {
    CHECK_THROWS_AS(verify_main(CMatrix::diagonal({2.0, 0.0}), 2, {2}, 1),
                    RoutedToVerifyKey);
    // [[1,1],[1,1]] is rank-one normal (it equals 2 vv^*), so it routes too.
    CMatrix ones(2, 2);
    ones(0, 0) = ones(0, 1) = ones(1, 0) = ones(1, 1) = 1.0;
    CHECK_THROWS_AS(verify_main(ones, 2, {2}, 1), RoutedToVerifyKey);
    CHECK_THROWS_AS(verify_main(CMatrix(2, 2), 2, {2}, 1), std::invalid_argument);
}

TEST_CASE("branch routing is a partition of nonzero weights") {
    RngStream rng(62);
    for (int rep = 0; rep < 12; ++rep) {
        RngStream sub = rng.derive(rep);
        const std::size_t n = 2 + rep % 3;
        const CMatrix c =
            (rep % 2) ? test::random_rank_one_normal(n, sub) : ginibre(n, sub);
        bool main_accepts = true;
        try {
            verify_main(c, 1, {n}, 3);
        } catch (const RoutedToVerifyKey&) {
            main_accepts = false;
        }
        bool key_accepts = true;
        try {
            verify_key(c, 0.5 * CMatrix::basis(n, 0, 1), 1, 16, 3);
        } catch (const std::invalid_argument&) {
            key_accepts = false;
        }
        CHECK(main_accepts != key_accepts);
    }
}

TEST_CASE("verify_main scalar branch certifies the quarter circle") {
    const MainReport report = verify_main(CMatrix::identity(2), 4, {2, 3, 4}, 11);
    CHECK(report.branch == "scalar-C");
    CHECK(report.r == 0.0);
    CHECK(report.gap_target == doctest::Approx(0.25));
    CHECK(report.all_pass);
    for (const auto& trial : report.per_dilation) {
        CHECK(trial.certified);
        CHECK(trial.residual <= 1e-8);
    }
    // A complex scalar weight runs through the same branch.
    const MainReport scaled =
        verify_main(Complex(0.0, 2.0) * CMatrix::identity(3), 2, {3, 5}, 12);
    CHECK(scaled.branch == "scalar-C");
    CHECK(scaled.all_pass);
}

TEST_CASE("verify_main f<1 branch at n=2 matches the published instance") {
    const CMatrix c = normalized_block(0.0, 0.5);
    const MainReport report = verify_main(c, 6, {2, 4}, 21);
    CHECK(report.branch == "case-I (f<1)");
    CHECK(report.theta == doctest::Approx(75.0 * std::numbers::pi / 180.0));
    CHECK(report.r == doctest::Approx(std::cos(75.0 * std::numbers::pi / 180.0)).epsilon(1e-12));
    CHECK(report.target.real() ==
          doctest::Approx(1.0 - 0.5 * std::sin(75.0 * std::numbers::pi / 180.0)).epsilon(1e-12));
    CHECK(report.gap_target >= 0.25);
    CHECK(report.all_pass);
    for (const auto& trial : report.per_dilation) CHECK(trial.residual <= 1e-8);
}

TEST_CASE("verify_main f<1 branch at n=3 goes through the circle path") {
    RngStream rng(63);
    for (int rep = 0; rep < 3; ++rep) {
        RngStream sub = rng.derive(rep);
        const CMatrix c = ginibre(3, sub);
        MainReport report;
        try {
            report = verify_main(c, 4, {3, 5}, 500 + rep);
        } catch (const RoutedToVerifyKey&) {
            continue;  // vanishingly unlikely for Ginibre draws
        }
        CHECK(report.branch == "case-I (f<1)");
        CHECK(report.all_pass);
        for (const auto& trial : report.per_dilation) CHECK(trial.residual <= 1e-6);
    }
}

TEST_CASE("verify_main f=1 branch finds a certified margin beyond one half") {
    // [[1,1],[1,1]] + [0.3]: rank-two, f = 1, g = 1 after normalization.
    CMatrix c(3, 3);
    c(0, 0) = c(0, 1) = c(1, 0) = c(1, 1) = 1.0;
    c(2, 2) = 0.3;
    const MainReport report = verify_main(c, 3, {3, 5}, 31);
    CHECK(report.branch == "case-II (f=1)");
    CHECK(report.form.f == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(report.r == doctest::Approx(0.5));
    CHECK(report.all_pass);
    CHECK(report.gap_target > 0.0);
    for (const auto& trial : report.per_dilation) {
        CHECK(trial.certified);
        CHECK(trial.margin > 0.0);
    }
}

TEST_CASE("verify_key containment and shrinking intersection") {
    const CMatrix c = CMatrix::diagonal({2.0, 0.0});
    const CMatrix t = 0.5 * CMatrix::basis(2, 0, 1);
    const KeyReport report = verify_key(c, t, 24, 180, 41);
    CHECK(report.containment_ok);
    CHECK(report.hausdorff_monotone);
    CHECK(report.all_pass);
    CHECK(std::abs(report.gamma - Complex(2.0, 0.0)) < 1e-12);
    // The final estimate still contains the disk of radius 1 = 2 * (1/2) * ... :
    // gamma W(T) is the disk of radius 2 * 1/4 = 1/2.
    CHECK(report.hausdorff.back() < report.hausdorff.front() + 1e-12);
    CHECK_THROWS_AS(verify_key(CMatrix::basis(2, 0, 1), t, 4, 32, 1), std::invalid_argument);
}

TEST_CASE("verify_key on a unitary target reaches Hausdorff zero with a matched dilation") {
    // For unitary T, T + T is itself a dilation; realized through explicit
    // rotation parameters it reproduces the weighted range exactly.
    const CMatrix t = CMatrix::diagonal({Complex(1.0, 0.0), Complex(0.0, 1.0)});
    const CMatrix c = CMatrix::diagonal({2.0, 0.0});
    DilationSpec spec;
    spec.t = t;
    spec.pad = 2;
    spec.v = spec.w = spec.q = CMatrix::identity(2);
    spec.p = t;
    const CMatrix u = sample_dilation(spec, 1);
    // W(U) = W(T + T) = W(T), so supports agree in every direction.
    for (int k = 0; k < 32; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / 32.0;
        CHECK(nr_support(u, theta).h == doctest::Approx(nr_support(t, theta).h).epsilon(1e-10));
    }
}

TEST_CASE("verify_key rotation covariance in the weight scale") {
    const CMatrix t = 0.5 * CMatrix::basis(2, 0, 1);
    CMatrix c2 = CMatrix::diagonal({2.0, 0.0});
    CMatrix c2i = CMatrix::diagonal({Complex(0.0, 2.0), Complex(0.0, 0.0)});
    const KeyReport a = verify_key(c2, t, 6, 64, 51);
    const KeyReport b = verify_key(c2i, t, 6, 64, 51);
    // Same seeds, weight rotated by i: identical Hausdorff profile.
    REQUIRE(a.hausdorff.size() == b.hausdorff.size());
    for (std::size_t k = 0; k < a.hausdorff.size(); ++k)
        CHECK(a.hausdorff[k] == doctest::Approx(b.hausdorff[k]).epsilon(1e-9));
}

TEST_CASE("report JSON carries the schema tag") {
    const MainReport report = verify_main(CMatrix::identity(2), 1, {2}, 3);
    const auto j = report_to_json(report);
    CHECK(j.at("schema").get<std::string>() == "rangelab-report/1");
    CHECK(j.at("kind").get<std::string>() == "verify-main");
    CHECK(j.at("all_pass").get<bool>());
    const KeyReport key = verify_key(CMatrix::diagonal({2.0, 0.0}),
                                     0.5 * CMatrix::basis(2, 0, 1), 4, 32, 3);
    const auto jk = report_to_json(key);
    CHECK(jk.at("kind").get<std::string>() == "verify-key");
}
