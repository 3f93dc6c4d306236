#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "gravidec/error.hpp"
#include "gravidec/quantities.hpp"

using namespace gravidec;

namespace {

const std::string data_dir = GRAVIDEC_TEST_DATA "/data/";

// Reference values computed with mpmath at 40 digits from the CODATA 2018 inputs.
constexpr double planck_mass_ref = 2.176434342051126669e-8;
constexpr double planck_length_ref = 1.616255023928550051e-35;
constexpr double electron_compton_ref = 3.861755340422397431e-13;  // m = 9.109e-31 kg

}  // namespace

TEST(Constants, Codata2018) {
  EXPECT_EQ(codata2018.c, 299792458.0);
  EXPECT_EQ(codata2018.hbar, 1.054571817e-34);
  EXPECT_EQ(codata2018.k_B, 1.380649e-23);
  EXPECT_EQ(codata2018.G, 6.67430e-11);
  EXPECT_NO_THROW(validate(codata2018));
  EXPECT_THROW(validate(PhysicalConstants{-1.0, 1.0, 1.0, 1.0}), InvalidArgument);
  EXPECT_THROW(validate(PhysicalConstants{1.0, NAN, 1.0, 1.0}), InvalidArgument);
}

TEST(PlanckScales, MatchHighPrecisionReference) {
  EXPECT_NEAR(planck_mass() / planck_mass_ref, 1.0, 1e-14);
  EXPECT_NEAR(planck_length() / planck_length_ref, 1.0, 1e-14);
  EXPECT_NEAR(compton_length(9.109e-31) / electron_compton_ref, 1.0, 1e-14);
}

TEST(PlanckScales, ComptonLengthOfPlanckMassIsPlanckLength) {
  // l_C(m_P) = hbar / (m_P c) = l_P.
  EXPECT_NEAR(compton_length(planck_mass()) / planck_length(), 1.0, 1e-14);
}

TEST(PlanckScales, ScaleWithConstants) {
  PhysicalConstants k = codata2018;
  k.G *= 4.0;
  EXPECT_NEAR(planck_mass(k) / planck_mass(), 0.5, 1e-15);
  EXPECT_NEAR(planck_length(k) / planck_length(), 2.0, 1e-15);
}

TEST(PlanckScales, ComptonRejectsNonPositiveMass) {
  EXPECT_THROW(compton_length(0.0), InvalidArgument);
  EXPECT_THROW(compton_length(-1.0), InvalidArgument);
}

TEST(Catalog, BuiltinPresets) {
  const Catalog c = Catalog::builtin();
  ASSERT_TRUE(c.contains("moon"));
  ASSERT_TRUE(c.contains("metal_pair"));
  const auto& moon = c.get("moon");
  EXPECT_EQ(moon.m_a, 5.972e24);
  EXPECT_EQ(moon.m_b, 7.346e22);
  EXPECT_EQ(moon.rho, 3.844e8);
  EXPECT_EQ(moon.r, 1.737e6);
  EXPECT_EQ(moon.T_em, 2.7);
  EXPECT_EQ(moon.chh_at_2omega, 1e-34);

  const auto& pair = c.get("metal_pair");
  EXPECT_EQ(pair.m_a, 500.0);
  EXPECT_EQ(pair.m_b, 500.0);
  EXPECT_NEAR(4.0 / 3.0 * M_PI * std::pow(pair.r, 3) * 8000.0, 500.0, 1e-9);
  EXPECT_NEAR(pair.rho, 2.0 * pair.r, 1e-15);
}

TEST(Catalog, UnknownNameListsAvailablePresets) {
  try {
    catalog_get("jupiter");
    FAIL() << "expected LookupError";
  } catch (const LookupError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("jupiter"), std::string::npos);
    EXPECT_NE(what.find("moon"), std::string::npos);
    EXPECT_NE(what.find("metal_pair"), std::string::npos);
  }
}

TEST(Catalog, LoadsExtraFile) {
  Catalog c = Catalog::builtin();
  c.load_file(data_dir + "extra_catalog.ini");
  EXPECT_EQ(c.names().size(), 4u);
  EXPECT_EQ(c.get("lab_pair").T_em, 300.0);
  EXPECT_EQ(c.get("binary_pulsar").chh_at_2omega, 1e-36);
  EXPECT_THROW(c.load_file(data_dir + "extra_catalog.ini"), InvalidArgument);
}

TEST(Catalog, RejectsIncompleteEntries) {
  Catalog c;
  EXPECT_THROW(c.load_file(data_dir + "missing_key.ini"), InvalidArgument);
  EXPECT_THROW(c.load_file(data_dir + "does_not_exist.ini"), InvalidArgument);
  EXPECT_THROW(c.add({"bad", 1.0, 1.0, 1.0, 1.0, 0.0, 1e-34}), InvalidArgument);
}

TEST(Catalog, EnvironmentVariable) {
  ::setenv("GRAVIDEC_CATALOG", (data_dir + "extra_catalog.ini").c_str(), 1);
  const Catalog c = Catalog::from_environment();
  ::unsetenv("GRAVIDEC_CATALOG");
  EXPECT_TRUE(c.contains("lab_pair"));
  EXPECT_FALSE(Catalog::from_environment().contains("lab_pair"));
}
