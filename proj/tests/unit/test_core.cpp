#include <gtest/gtest.h>

#include <random>

#include "polariton/core.hpp"
#include "polariton/bath.hpp"

using namespace polariton;

namespace {

Excitation make_exc(std::size_t index, double energy, Vec3 dipole) {
    Excitation e;
    e.index = index;
    e.energy = energy;
    e.dipole = dipole;
    return e;
}

bool has_message(const ValidationReport& r, const std::string& needle) {
    for (const auto& v : r.violations)
        if (v.message.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST(CouplingRate, DefectLineMatchesQuotedThreeSevenMeV) {
    const auto e = make_exc(0, 4.00, Vec3(0.027, 0, 0));
    const PhotonMode mode{4.00, Vec3::UnitX(), 0.99};
    const double g = coupling_rate(e, mode);
    // sqrt(4/2) * 0.99 * 0.027 * 0.1
    EXPECT_NEAR(std::abs(g), 3.7802e-3, 1e-7);
    EXPECT_LT(g, 0.0);
    EXPECT_NEAR(std::abs(g), 3.7e-3, 0.03 * 3.7e-3);
}

TEST(CouplingRate, OrthogonalPolarizationAndZeroFieldGiveZero) {
    EXPECT_EQ(coupling_rate(make_exc(0, 4.0, Vec3(0, 0.5, 0)), {4.0, Vec3::UnitX(), 0.9}), 0.0);
    EXPECT_EQ(coupling_rate(make_exc(0, 4.0, Vec3(0.3, 0.5, 0)), {4.0, Vec3::UnitX(), 0.0}), 0.0);
}

TEST(CouplingRate, LinearInStrengthAndDipole) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int t = 0; t < 200; ++t) {
        const auto e = make_exc(0, 1.0 + std::abs(u(rng)), Vec3(u(rng), u(rng), u(rng)));
        PhotonMode mode{1.0 + std::abs(u(rng)), Vec3(u(rng), u(rng), u(rng)).normalized(), std::abs(u(rng))};
        const double base = coupling_rate(e, mode);
        const double alpha = u(rng);

        PhotonMode scaled = mode;
        scaled.strength *= std::abs(alpha);
        EXPECT_NEAR(coupling_rate(e, scaled), std::abs(alpha) * base, 1e-12 * std::abs(base) + 1e-300);

        for (int c = 0; c < 3; ++c) {
            auto e2 = e;
            e2.dipole[c] *= alpha;
            const double partial = -std::sqrt(mode.energy / 2) * mode.strength * mode.polarization[c] * e.dipole[c] * 0.1;
            EXPECT_NEAR(coupling_rate(e2, mode), base + (alpha - 1.0) * partial, 1e-12 * (std::abs(base) + std::abs(alpha * partial)) + 1e-300);
        }
    }
}

TEST(Units, FieldAmplitudeRoundTrip) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    for (int t = 0; t < 100; ++t) {
        const double lambda = u(rng), w = u(rng);
        const double back = strength_from_field(field_amplitude(lambda, w), w);
        EXPECT_NEAR(back, lambda, 1e-12 * lambda);
    }
}

TEST(Validation, WellFormedInputsHaveNoViolations) {
    std::vector<Excitation> ex{make_exc(0, 4.0, Vec3(0.027, 0, 0)), make_exc(1, 4.3, Vec3(0, 0, 0))};
    CavitySpec c;
    c.center_energy = 4.0;
    c.strength = 0.5;
    EXPECT_TRUE(validate_inputs(ex, c).ok());
    c.loss_rate = 0.05;
    c.mode_spacing = 0.001;
    EXPECT_TRUE(validate_inputs(ex, c).ok());
}

TEST(Validation, ReportsEveryViolationWithIndices) {
    std::vector<Excitation> ex{make_exc(0, 4.0, Vec3::Zero()), make_exc(1, -1.0, Vec3::Zero()),
                               make_exc(1, 2.0, Vec3(std::nan(""), 0, 0))};
    CavitySpec c;
    c.center_energy = 4.0;
    c.loss_rate = 0.1;
    c.mode_spacing = 0.0;
    c.polarization = Vec3(1, 1, 0);
    const auto report = validate_inputs(ex, c);
    EXPECT_FALSE(report.ok());
    EXPECT_TRUE(has_message(report, "nonpositive energy at index 1"));
    EXPECT_TRUE(has_message(report, "duplicate index 1"));
    EXPECT_TRUE(has_message(report, "non-finite dipole"));
    EXPECT_TRUE(has_message(report, "mode_spacing required"));
    EXPECT_TRUE(has_message(report, "unit vector"));
}

TEST(Validation, WindowMustCoverFiveLossRates) {
    CavitySpec c;
    c.center_energy = 4.0;
    c.loss_rate = 0.1;
    c.mode_spacing = 0.001;
    c.window_halfwidth = 0.3;
    EXPECT_TRUE(has_message(validate_inputs(std::span<const Excitation>{}, c), "window_halfwidth"));
    c.window_halfwidth.reset();
    EXPECT_DOUBLE_EQ(c.effective_window(), 1.0);
    EXPECT_TRUE(validate_inputs(std::span<const Excitation>{}, c).ok());
}

TEST(ExcitationSet, SortsByEnergyKeepingTiesInInputOrder) {
    std::vector<Excitation> ex{make_exc(0, 5.0, Vec3::Zero()), make_exc(1, 4.0, Vec3::UnitX()),
                               make_exc(2, 4.0, Vec3::UnitY()), make_exc(3, 1.0, Vec3::Zero())};
    const auto set = ExcitationSet::create(ex, "t");
    ASSERT_EQ(set.size(), 4u);
    EXPECT_EQ(set[0].index, 3u);
    EXPECT_EQ(set[1].index, 1u);
    EXPECT_EQ(set[2].index, 2u);
    EXPECT_EQ(set[3].index, 0u);
}

TEST(ExcitationSet, RejectsNonContiguousIndices) {
    std::vector<Excitation> ex{make_exc(0, 5.0, Vec3::Zero()), make_exc(2, 4.0, Vec3::Zero())};
    EXPECT_THROW(ExcitationSet::create(ex), ValidationError);
    EXPECT_THROW(ExcitationSet::create({}), ValidationError);
}

TEST(ExcitationSet, HeadKeepsLowestAndRenumbers) {
    std::vector<Excitation> ex{make_exc(0, 5.0, Vec3::Zero()), make_exc(1, 4.0, Vec3::Zero()),
                               make_exc(2, 6.0, Vec3::Zero())};
    const auto head = ExcitationSet::create(ex).head(2);
    ASSERT_EQ(head.size(), 2u);
    EXPECT_EQ(head[0].energy, 4.0);
    EXPECT_EQ(head[1].energy, 5.0);
    EXPECT_EQ(head[0].index, 0u);
    EXPECT_EQ(head[1].index, 1u);
    EXPECT_THROW(ExcitationSet::create(ex).head(4), std::out_of_range);
}
