#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "sawtrap/hubbard.hpp"

using namespace sawtrap;

namespace {

hubbard::LatticeGeometry strip_geometry(int n = 10, double z = 0.01) {
    hubbard::LatticeGeometry geom;
    geom.sites = n;
    geom.strip_width = 0.005;
    geom.height = z;
    geom.wave_number = 50.0;
    geom.potential_scale = 100.0;
    geom.mass = 0.1;
    return geom;
}

}  // namespace

TEST_CASE("hopping amplitude follows the exponential envelope") {
    auto geom = strip_geometry();
    const double spacing = 0.0005;
    const double expected = spacing * 100.0 * std::exp(-50.0 * 0.01) *
                            std::exp(-spacing * spacing);
    CHECK(hubbard::hopping_j(geom) == doctest::Approx(expected).epsilon(1e-14));

    SUBCASE("kinetic switch adds the overlap term") {
        geom.include_kinetic = true;
        const double kinetic = spacing * (1.0 - spacing * spacing) /
                               (2.0 * 0.1) * std::exp(-spacing * spacing);
        CHECK(hubbard::hopping_j(geom) ==
              doctest::Approx(expected + kinetic).epsilon(1e-14));
    }
    SUBCASE("far above the layer only the kinetic channel survives") {
        geom.height = 1e3;
        CHECK(hubbard::hopping_j(geom) == doctest::Approx(0.0));
        geom.include_kinetic = true;
        CHECK(hubbard::hopping_j(geom) > 0.0);
    }
}

TEST_CASE("onsite repulsion: quadrature agrees with the closed form") {
    CHECK(std::abs(hubbard::onsite_u(0.1) - hubbard::onsite_u_analytic(0.1)) /
              hubbard::onsite_u_analytic(0.1) <
          1e-8);
    CHECK(hubbard::onsite_u_analytic(0.1) ==
          doctest::Approx(4.0 * std::numbers::pi / 0.1 *
                          std::sqrt(std::numbers::pi / 2.0))
              .epsilon(1e-15));
    // 1/m0 scaling.
    CHECK(hubbard::onsite_u(0.2) == doctest::Approx(hubbard::onsite_u(0.1) / 2.0)
                                        .epsilon(1e-12));
    // Unit normalization point.
    CHECK(hubbard::onsite_u_analytic(4.0 * std::numbers::pi *
                                     std::sqrt(std::numbers::pi / 2.0)) ==
          doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("energy offset") {
    const auto geom = strip_geometry(10, 0.0);
    CHECK(hubbard::onsite_eps(geom) == doctest::Approx(100.0).epsilon(1e-15));
    CHECK(hubbard::onsite_eps(geom, -100.0) == 0.0);
    auto high = strip_geometry(10, 0.02);
    CHECK(hubbard::onsite_eps(high) < hubbard::onsite_eps(strip_geometry(10, 0.01)));
}

TEST_CASE("general Wannier overlap") {
    auto geom = strip_geometry();
    SUBCASE("onsite kinetic energy of the Gaussian") {
        geom.potential_scale = 0.0;  // V_e = 0
        // Integral of e^{-x^2/2} * (1 - x^2)/(2 m0) * e^{-x^2/2} = sqrt(pi)/(4 m0).
        const double expected = std::sqrt(std::numbers::pi) / (4.0 * geom.mass);
        CHECK(hubbard::wannier_j_general(geom, 3, 3) ==
              doctest::Approx(expected).epsilon(1e-8));
    }
    SUBCASE("separated Gaussians decouple") {
        geom.potential_scale = 0.0;
        geom.strip_width = 200.0;  // spacing 20 -> overlap e^{-100}
        CHECK(std::abs(hubbard::wannier_j_general(geom, 3, 4)) < 1e-12);
    }
    SUBCASE("neighbour overlap carries the Gaussian suppression") {
        // The closed form keeps the e^{-Delta^2} envelope of the exact
        // Gaussian-overlap integral; check against the analytic kernel
        // with the potential sampled by the overlap-weighted Gaussian.
        geom.potential_scale = 0.0;
        geom.include_kinetic = true;
        const double spacing = geom.spacing();
        // Exact kinetic overlap between neighbours:
        // sqrt(pi) e^{-d^2/4} (2 - d^2) / (8 m0) with d = spacing.
        const double expected = std::sqrt(std::numbers::pi) *
                                std::exp(-spacing * spacing / 4.0) *
                                (2.0 - spacing * spacing) / (8.0 * geom.mass);
        CHECK(hubbard::wannier_j_general(geom, 3, 4) ==
              doctest::Approx(expected).epsilon(1e-8));
    }
}

TEST_CASE("critical ratios of the Mott lobes") {
    CHECK(std::abs(hubbard::critical_ratio(1) - 0.085786) < 1e-6);
    CHECK(std::abs(hubbard::critical_ratio(4) - 0.027864) < 1e-6);
    CHECK(std::abs(hubbard::critical_ratio(16) - 0.0075775) < 1e-7);
    for (int n0 = 1; n0 < 40; ++n0)
        CHECK(hubbard::critical_ratio(n0 + 1) < hubbard::critical_ratio(n0));
    // Asymptotically 1/(8 n0).
    CHECK(hubbard::critical_ratio(4000) ==
          doctest::Approx(1.0 / 32000.0).epsilon(1e-3));
}

TEST_CASE("phase boundary branches") {
    SUBCASE("zero hopping pins the lobe edges at integers") {
        const auto [upper, lower] = hubbard::phase_boundary_eps(0.0, 3);
        CHECK(upper == doctest::Approx(3.0).epsilon(1e-14));
        CHECK(lower == doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("branches merge exactly at the critical ratio") {
        for (int n0 = 1; n0 <= 16; ++n0) {
            const double tip = hubbard::boundary_tip(n0);
            CHECK(std::abs(tip - hubbard::critical_ratio(n0)) < 1e-12);
            const auto [upper, lower] = hubbard::phase_boundary_eps(tip, n0);
            // The gap is 2 sqrt(disc); rounding leaves disc ~ eps * scale.
            CHECK(std::abs(upper - lower) < 1e-5);
        }
    }
    SUBCASE("inside the lobe tip there is no boundary") {
        CHECK_THROWS_AS(hubbard::phase_boundary_eps(0.1, 1), NoBoundaryError);
    }
    SUBCASE("n0 = 1 at J/U = 0.05 stays two-valued") {
        const auto [upper, lower] = hubbard::phase_boundary_eps(0.05, 1);
        const double disc = 0.05 * 0.05 - 3.0 * 0.05 + 0.25;
        CHECK(upper == doctest::Approx(0.45 + std::sqrt(disc)).epsilon(1e-12));
        CHECK(lower == doctest::Approx(0.45 - std::sqrt(disc)).epsilon(1e-12));
    }
}

TEST_CASE("phase classification") {
    auto geom = strip_geometry(5, 0.001);
    geom.mass = 28.0;
    const auto near_layer = hubbard::classify_phase(geom, 1);
    CHECK(near_layer.phase == hubbard::Phase::Superfluid);
    geom.height = 1.0;
    const auto far = hubbard::classify_phase(geom, 1);
    CHECK(far.phase == hubbard::Phase::MottInsulator);
}

TEST_CASE("J/U decreases with height") {
    auto geom = strip_geometry();
    geom.mass = 28.0;
    double previous = std::numeric_limits<double>::infinity();
    for (double z = 0.001; z <= 0.02; z += 0.001) {
        geom.height = z;
        const double ratio =
            hubbard::hopping_j(geom) / hubbard::onsite_u_analytic(geom.mass);
        CHECK(ratio < previous);
        previous = ratio;
    }
}

TEST_CASE("thermal hopping suppression") {
    CHECK(hubbard::thermal_hopping(3.0, 0.0) == 3.0);
    CHECK(hubbard::thermal_hopping(3.0, 1.0) ==
          doctest::Approx(3.0 / std::numbers::e).epsilon(1e-14));
}

TEST_CASE("scale invariance without the kinetic channel") {
    auto geom = strip_geometry();
    geom.mass = 28.0;
    const double ratio =
        hubbard::hopping_j(geom) / hubbard::onsite_u_analytic(geom.mass);
    auto rescaled = geom;
    rescaled.potential_scale *= 7.0;
    rescaled.mass /= 7.0;
    const double ratio2 = hubbard::hopping_j(rescaled) /
                          hubbard::onsite_u_analytic(rescaled.mass);
    CHECK(ratio == doctest::Approx(ratio2).epsilon(1e-12));
}

TEST_CASE("phase diagram grids are deterministic per seed") {
    const std::vector<double> zs{0.001, 0.005, 0.01};
    const std::vector<int> ns{5, 10, 15};
    auto base = strip_geometry();
    base.mass = 28.0;
    hubbard::PerturbationSpec perturb;
    perturb.enabled = true;
    const auto a = hubbard::phase_diagram(zs, ns, base, 1, perturb, 99);
    const auto b = hubbard::phase_diagram(zs, ns, base, 1, perturb, 99);
    const auto c = hubbard::phase_diagram(zs, ns, base, 1, perturb, 100);
    REQUIRE(a.size() == 9);
    bool any_difference = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].delta_j == b[i].delta_j);
        CHECK(a[i].delta_eps == b[i].delta_eps);
        CHECK(a[i].j_over_u == b[i].j_over_u);
        CHECK(a[i].z == c[i].z);
        CHECK(a[i].sites == c[i].sites);
        if (a[i].delta_j != c[i].delta_j) any_difference = true;
    }
    CHECK(any_difference);
}
