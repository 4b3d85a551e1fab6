#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "polariton/bundled.hpp"
#include "polariton/io.hpp"
#include "polariton/synthetic.hpp"

using namespace polariton;

namespace {

std::vector<Excitation> parse_csv(const std::string& text) {
    std::istringstream in(text);
    return io::parse_excitations_csv(in);
}

std::string violations_of(const std::string& text) {
    try {
        parse_csv(text);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return {};
}

const std::filesystem::path kData = POLARITON_DATA_DIR;

}  // namespace

TEST(Csv, ParsesRowsWithAndWithoutLabels) {
    const auto rows = parse_csv("index,energy_eV,dx_eA,dy_eA,dz_eA\n0,4.0,0.1,0,0\n1,5.0,0,0.2,-0.3\n");
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1].dipole, Vec3(0, 0.2, -0.3));
    const auto labelled = parse_csv("index,energy_eV,dx_eA,dy_eA,dz_eA,label\r\n0,4.0,0.1,0,0,defect\r\n\n");
    ASSERT_EQ(labelled.size(), 1u);
    EXPECT_EQ(labelled[0].label, "defect");
}

TEST(Csv, ReportsEveryBadRow) {
    const std::string msg = violations_of(
        "index,energy_eV,dx_eA,dy_eA,dz_eA\n0,4.0,0.1,0,0\n1,abc,0,0,0\n2,1.0,0,0\n3,-2.0,0,0,0\n");
    EXPECT_NE(msg.find("row 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("row 3"), std::string::npos) << msg;
    EXPECT_NE(violations_of("index,energy_eV,dx_eA,dy_eA,dz_eA\n0,4.0,0,0,0\n1,-2.0,0,0,0\n").find("row 2"),
              std::string::npos);
    EXPECT_NE(violations_of("index,energy,dx\n").find("header"), std::string::npos);
    EXPECT_NE(violations_of("").find("empty"), std::string::npos);
}

TEST(Csv, RejectsComplexDipoles) {
    const std::string msg = violations_of("index,energy_eV,dx_eA,dy_eA,dz_eA\n0,4.0,0.1+0.2j,0,0\n");
    EXPECT_NE(msg.find("complex"), std::string::npos) << msg;
}

TEST(Csv, RoundTripsThroughWriter) {
    ContinuumProfile p;
    p.count = 25;
    const auto set = generate_synthetic_continuum(p);
    std::istringstream in(io::excitations_csv(set));
    const auto back = ExcitationSet::create(io::parse_excitations_csv(in));
    ASSERT_EQ(back.size(), set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
        EXPECT_NEAR(back[i].energy, set[i].energy, 1e-11 * set[i].energy);
        EXPECT_TRUE(back[i].dipole.isApprox(set[i].dipole, 1e-10));
        EXPECT_EQ(back[i].label, "continuum");
    }
}

TEST(Json, ExcitationsAcceptArrayOrObject) {
    const auto doc = io::json::parse(R"([{"index":0,"energy_eV":4.0,"dx_eA":0.1,"dy_eA":0,"dz_eA":0}])");
    EXPECT_EQ(io::parse_excitations_json(doc).size(), 1u);
    io::json wrapped = {{"excitations", doc}};
    EXPECT_EQ(io::parse_excitations_json(wrapped).size(), 1u);
    EXPECT_THROW(io::parse_excitations_json(io::json::parse(R"([{"index":0}])")), ValidationError);
}

TEST(Json, CavityRoundTrip) {
    CavitySpec c;
    c.center_energy = 4.0;
    c.strength = 0.493;
    c.loss_rate = 0.05;
    c.mode_spacing = 0.001;
    c.window_halfwidth = 0.5;
    const auto back = io::cavity_from_json(io::cavity_to_json(c));
    EXPECT_EQ(back.center_energy, 4.0);
    EXPECT_EQ(back.strength, 0.493);
    EXPECT_EQ(back.window_halfwidth, 0.5);
    EXPECT_THROW(io::cavity_from_json(io::json::parse(R"({"center_energy_eV":4})")), ValidationError);
}

TEST(Json, ModesRoundTrip) {
    const std::vector<PhotonMode> modes{{4.0, Vec3::UnitY(), 0.2}, {4.1, Vec3::UnitY(), 0.1}};
    const auto back = io::modes_from_json(io::modes_to_json(modes));
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[1].energy, 4.1);
    EXPECT_EQ(back[1].polarization, Vec3::UnitY());
}

TEST(Format, TwelveSignificantDigits) {
    EXPECT_EQ(io::format_number(4.0), "4.00000000000e+00");
    EXPECT_EQ(io::format_number(-3.7802e-3), "-3.78020000000e-03");
    EXPECT_EQ(io::format_number(1.0 / 3.0), "3.33333333333e-01");
}

TEST(Bundled, DataFilesMatchTable) {
    for (const auto& sys : kBundledSystems) {
        const auto set = io::read_excitations(kData / "systems" / (std::string(sys.name) + ".csv"));
        ASSERT_EQ(set.size(), 1u);
        const auto expected = lowest_excitation(sys);
        EXPECT_EQ(set[0].energy, expected.energy) << sys.name;
        EXPECT_EQ(set[0].dipole, expected.dipole) << sys.name;
        EXPECT_EQ(set[0].label, sys.name);
    }
    EXPECT_FALSE(find_bundled("graphene").has_value());
}

TEST(Bundled, CavityFilesLoad) {
    const auto c = io::read_cavity(kData / "cavity_CHB.json");
    EXPECT_EQ(c.center_energy, 4.00);
    EXPECT_EQ(c.strength, 0.986);
    const auto lossy = io::read_cavity(kData / "cavity_CHB_lossy.json");
    EXPECT_EQ(lossy.loss_rate, 0.05);
    EXPECT_TRUE(validate_inputs(std::span<const Excitation>{}, lossy).ok());
}

TEST(Files, MissingFileIsIoError) {
    EXPECT_THROW(io::read_text_file("/nonexistent/file.csv"), IoError);
}

TEST(Generator, SingleLineSitsAtOnset) {
    ContinuumProfile p;
    p.count = 1;
    const auto set = generate_synthetic_continuum(p);
    ASSERT_EQ(set.size(), 1u);
    EXPECT_EQ(set[0].energy, p.onset);
    EXPECT_NEAR(set[0].dipole.squaredNorm(), p.dipole_scale * p.dipole_scale, 1e-12);
}

TEST(Generator, DeterministicForSeed) {
    ContinuumProfile p;
    const std::string a = io::excitations_csv(generate_synthetic_continuum(p));
    const std::string b = io::excitations_csv(generate_synthetic_continuum(p));
    EXPECT_EQ(a, b);
    p.seed = 7;
    EXPECT_NE(io::excitations_csv(generate_synthetic_continuum(p)), a);
}

TEST(Generator, GridAndDipoleScale) {
    ContinuumProfile p;
    const auto lines = synthetic_continuum_lines(p);
    ASSERT_EQ(lines.size(), 500u);
    EXPECT_EQ(lines.front().energy, 4.25);
    EXPECT_NEAR(lines.back().energy, 9.0, 1e-12);
    double total = 0.0;
    for (const auto& e : lines) total += e.dipole.squaredNorm();
    EXPECT_NEAR(total, 0.3 * 0.3 * 500, 1e-9);
}

TEST(Generator, DefectsComeFirstAndRejectsBadProfiles) {
    const Excitation defect = lowest_excitation(*find_bundled("CHB"));
    ContinuumProfile p;
    p.count = 10;
    const auto set = generate_synthetic_continuum(p, std::span<const Excitation>(&defect, 1));
    ASSERT_EQ(set.size(), 11u);
    EXPECT_EQ(set[0].energy, 4.00);
    EXPECT_EQ(set[0].label, "CHB");
    p.count = 0;
    EXPECT_THROW(synthetic_continuum_lines(p), std::invalid_argument);
    p.count = 10;
    p.dipole_scale = 0.0;
    EXPECT_THROW(synthetic_continuum_lines(p), std::invalid_argument);
    p.dipole_scale = 0.3;
    p.cutoff = 4.0;
    EXPECT_THROW(synthetic_continuum_lines(p), std::invalid_argument);
}
