#include "robin/asymptotics.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace robin;

namespace {
const PrimeTable& big_table() {
  static const PrimeTable t = sieve(12'000'000);
  return t;
}
}  // namespace

TEST(ThetaBrackets, RelativeHoldsOnTheDeskRange) {
  const auto r = check_theta_relative(big_table(), 10'544'112, 12'000'000);
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(r.vacuous);
  EXPECT_EQ(r.claim, "theta_relative");
  EXPECT_EQ(r.margin.sign(), Sign::Positive);
}

TEST(ThetaBrackets, RelativeSlackAtFirstPrimeAboveThreshold) {
  const auto r = check_theta_relative(big_table(), 10'544'113, 10'544'113);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.margin.midpoint_string(15), "9.47403688475141e+03");
}

TEST(ThetaBrackets, ThresholdIsEnforced) {
  EXPECT_THROW(check_theta_relative(big_table(), 10'544'111, 10'600'000), std::invalid_argument);
  EXPECT_THROW(check_theta_additive(big_table(), 100, 10'600'000), std::invalid_argument);
}

TEST(ThetaBrackets, AdditiveWithPrintedConstantFailsAtFirstPrime) {
  // c = 0.0066788 leaves theta(10544113) below p - c p / ln p by about 47.2.
  const auto r = check_theta_additive(big_table(), 10'544'113, 10'544'113);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.margin.sign(), Sign::Negative);
  EXPECT_EQ(r.margin.midpoint_string(15), "-4.72028167129572e+01");
}

TEST(ThetaBrackets, AdditiveWithDusartConstantHolds) {
  LabConfig cfg;
  cfg.theta_additive_constant = "0.006788";
  const auto at_first = check_theta_additive(big_table(), 10'544'113, 10'544'113, 1e-20, cfg);
  EXPECT_EQ(at_first.margin.midpoint_string(15), "2.39994322410003e+01");
  EXPECT_TRUE(check_theta_additive(big_table(), 10'544'112, 12'000'000, 1e-20, cfg).pass);
}

TEST(ThetaBrackets, EmptyRangeIsVacuous) {
  const auto r = check_theta_additive(big_table(), 11'999'999, 11'999'999);  // no prime there
  EXPECT_TRUE(r.vacuous);
  EXPECT_TRUE(r.pass);
}

TEST(NthPrimeAsymptotic, Examples) {
  const auto& t = big_table();
  const auto two = nth_prime_asymptotic_error(t, 2);
  EXPECT_EQ(two.p_k, 3u);
  EXPECT_TRUE(two.dusart_holds);
  const auto e4 = nth_prime_asymptotic_error(t, 10000);
  EXPECT_EQ(e4.p_k, 104729u);
  EXPECT_TRUE(e4.dusart_holds);
  EXPECT_EQ(e4.dusart_margin.midpoint_string(12), "4.22328216560e+02");
  EXPECT_THROW(nth_prime_asymptotic_error(t, 1), std::invalid_argument);
}

TEST(NthPrimeAsymptotic, NormalizedErrorStaysInRecordedBand) {
  const struct {
    std::uint64_t k;
    const char* err;
  } rows[] = {{1000, "2.80935997342e-01"},
              {10000, "1.75189823951e-01"},
              {100000, "1.91739191429e-01"},
              {600000, "2.12244277648e-01"}};
  for (const auto& r : rows) {
    const auto e = nth_prime_asymptotic_error(big_table(), r.k);
    EXPECT_EQ(e.normalized_error.midpoint_string(12), r.err) << r.k;
    EXPECT_GT(e.normalized_error.lower(), 0.15);
    EXPECT_LT(e.normalized_error.upper(), 0.30);
  }
}

TEST(Dusart, HoldsUpToOneHundredThousand) {
  const auto r = check_dusart(big_table(), 100000);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.domain_lo, 2u);
  EXPECT_EQ(r.domain_hi, 100000u);
}

TEST(RosserSchoenfeld, SandwichHoldsFrom59ToTenMillion) {
  const auto r = check_rosser_schoenfeld(big_table(), 59, 10'000'000);
  EXPECT_TRUE(r.lower.pass);
  EXPECT_TRUE(r.upper.pass);
  EXPECT_THROW(check_rosser_schoenfeld(big_table(), 58, 100), std::invalid_argument);
}

TEST(RosserSchoenfeld, LowerBoundFailsBelow59) {
  // x = 58: pi = 16 while 58/ln 58 (1 + 1/(2 ln 58)) is about 16.1.
  const Precision prec = 128;
  const auto lx = CertifiedReal::log_of(58, prec);
  const auto b = CertifiedReal::from_uint(58, prec) / lx *
                 (CertifiedReal::from_int(1, prec) + CertifiedReal::from_int(1, prec) / (lx * 2));
  EXPECT_EQ(compare(b, CertifiedReal::from_uint(big_table().count_up_to(58), prec)), Ordering::Greater);
}

TEST(Mertens, Examples) {
  const auto& t = big_table();
  EXPECT_EQ(mertens_product(t, 2).midpoint_string(20), "6.1727266245149507365e-01");
  const auto m6 = mertens_product(t, 1'000'000);
  EXPECT_LT(std::abs(m6.midpoint() - 1.0), 1e-3);
  EXPECT_NEAR(m6.midpoint(), 0.99996106240192542, 1e-12);
  EXPECT_THROW(mertens_product(t, 1), std::invalid_argument);
}

TEST(Mertens, TrendAndEnvelope) {
  const auto& t = big_table();
  const auto m4 = mertens_product(t, 10'000), m7 = mertens_product(t, 10'000'000);
  EXPECT_NEAR(m4.midpoint(), 0.99876973739737270, 1e-15);
  EXPECT_NEAR(m7.midpoint(), 0.99999042884703227, 1e-12);  // float-summed oracle
  EXPECT_EQ(m7.midpoint_string(20), "9.9999042884703349526e-01");  // regression fixture
  EXPECT_LT(std::abs(m7.midpoint() - 1), std::abs(m4.midpoint() - 1));
  const auto r = check_mertens(t, 10'000'000);
  EXPECT_TRUE(r.pass);
  LabConfig tight;
  tight.mertens_envelope = 1e-6;
  EXPECT_FALSE(check_mertens(t, 10'000'000, tight).pass);
}

TEST(DecayProbe, LogDomainHandlesHugeX) {
  const double grid[] = {1e6};
  const auto p = decay_limit_probe(1.0, 0.1, grid);
  EXPECT_EQ(p.samples[0].log_value.midpoint_string(15), "-9.86184489442036e+02");
  EXPECT_LT(p.samples[0].value.upper(), 1e-300);
  EXPECT_EQ(p.samples[0].value.sign(), Sign::Positive);
}

TEST(DecayProbe, ParameterDomain) {
  const double grid[] = {10.0};
  EXPECT_THROW(decay_limit_probe(1.0, 0.2, grid), std::invalid_argument);
  EXPECT_THROW(decay_limit_probe(1.0, 0.0, grid), std::invalid_argument);
  EXPECT_THROW(decay_limit_probe(0.0, 0.1, grid), std::invalid_argument);
}

TEST(DecayProbe, RecordedOnsetOnDecadeGrid) {
  std::vector<double> grid;
  for (int i = 2; i <= 9; ++i) grid.push_back(i * std::log(10.0));
  const auto p = decay_limit_probe(0.5, 0.1, grid);
  ASSERT_TRUE(p.onset.has_value());
  EXPECT_EQ(*p.onset, 5u);  // peaks near x = 10^7, decreasing afterwards
  EXPECT_FALSE(p.final_below_first);
  EXPECT_EQ(p.samples[5].log_value.midpoint_string(10), "7.725751858e-01");

  grid.push_back(200.0);
  grid.push_back(2000.0);
  EXPECT_TRUE(decay_limit_probe(0.5, 0.1, grid).final_below_first);
}

TEST(TruncatedGap, SmallExamples) {
  const auto& t = big_table();
  const std::uint32_t one[] = {1};
  EXPECT_EQ(lemma24_gap(t, one).midpoint_string(20), "-2.1527860536850342843e+00");
  EXPECT_EQ(lemma24_gap_surrogate(t, 1).midpoint_string(20), "-2.6527860536850342843e+00");
  const std::uint32_t zero[] = {0};
  EXPECT_THROW(lemma24_gap(t, zero), std::invalid_argument);
}

TEST(TruncatedGap, TrendOnDecadeGrid) {
  const auto& t = big_table();
  const struct {
    std::size_t m;
    const char* gap;
    const char* surrogate;
  } rows[] = {{10, "1.67565103979459e+00", "-7.78691325699053e-01"},
              {100, "4.23762933974062e+00", "-1.78354627913143e-01"},
              {1000, "6.23239903752929e+00", "-4.39986069167023e-02"},
              {10000, "8.06254634207409e+00", "-1.16040086325204e-02"},
              {100000, "9.82796426162987e+00", "-3.18941368177421e-03"}};
  std::optional<CertifiedReal> prev_gap, prev_sur;
  for (const auto& r : rows) {
    const std::vector<std::uint32_t> ones(r.m, 1);
    const auto gap = lemma24_gap(t, ones);
    const auto sur = lemma24_gap_surrogate(t, r.m);
    EXPECT_EQ(gap.midpoint_string(15), r.gap) << r.m;
    EXPECT_EQ(sur.midpoint_string(15), r.surrogate) << r.m;
    EXPECT_EQ(compare(sur, gap), Ordering::Less);  // surrogate is the lower envelope
    if (prev_gap) {
      EXPECT_EQ(compare(gap, *prev_gap), Ordering::Greater) << r.m;  // m_0 = 10 on this grid
      EXPECT_EQ(compare(sur, *prev_sur), Ordering::Greater) << r.m;
    }
    prev_gap = gap;
    prev_sur = sur;
  }
}

TEST(K0Ratio, Schedules) {
  const std::uint64_t grid[] = {4, 16, 100, 400, 2500, 10000};
  const auto ones = k0_ratio_experiment([](std::uint64_t, std::uint64_t) { return 1u; }, grid);
  for (const auto& r : ones) {
    EXPECT_EQ(r.k0, 1u);
    EXPECT_DOUBLE_EQ(r.ratio, 1.0 / static_cast<double>(r.m));
    EXPECT_TRUE(r.epsilon.contains(0.0));
  }

  const auto ceil_sched = k0_ratio_experiment(
      [](std::uint64_t i, std::uint64_t m) { return static_cast<std::uint32_t>((m + i - 1) / i); }, grid);
  const std::uint64_t expected_k0[] = {2, 4, 10, 20, 50, 100};
  for (std::size_t j = 0; j < ceil_sched.size(); ++j) {
    EXPECT_EQ(ceil_sched[j].k0, expected_k0[j]);
    if (j > 0) EXPECT_LT(ceil_sched[j].ratio, ceil_sched[j - 1].ratio);
  }
  EXPECT_EQ(ceil_sched.back().epsilon.midpoint_string(8), "5.0306156e+00");

  const std::uint64_t small[] = {5, 50, 200};
  const auto constant = k0_ratio_experiment(
      [](std::uint64_t, std::uint64_t m) { return static_cast<std::uint32_t>(m); }, small);
  for (const auto& r : constant) {
    EXPECT_EQ(r.k0, r.m);
    EXPECT_DOUBLE_EQ(r.ratio, 1.0);
    EXPECT_TRUE(r.epsilon.contains(static_cast<double>(r.m - 1)));
  }

  EXPECT_THROW(k0_ratio_experiment([](std::uint64_t i, std::uint64_t) { return static_cast<std::uint32_t>(i); },
                                   std::span<const std::uint64_t>(grid, 1)),
               std::invalid_argument);
}

TEST(ScaledGap, PrimorialGrid) {
  const std::uint64_t grid[] = {10, 100, 1000, 10000};
  const auto e = scaled_gap_experiment(grid);
  ASSERT_EQ(e.rows.size(), 4u);
  const double expected[] = {0.156254942, 1.287437074, 2.350931960, 3.377986640};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(e.rows[i].difference.midpoint(), expected[i], 1e-9);
  EXPECT_FALSE(e.any_indeterminate);
  EXPECT_EQ(e.least_certified_m, 10u);
}

TEST(ScaledGap, ConsistentWithLittleL) {
  const std::uint64_t grid[] = {25};
  const auto e = scaled_gap_experiment(grid);
  const auto prim = Factorization::on_first_primes(std::vector<std::uint32_t>(25, 1));
  const auto sq = Factorization::on_first_primes(std::vector<std::uint32_t>(25, 2));
  EXPECT_TRUE(e.rows[0].r1.overlaps(little_l(prim)));
  EXPECT_TRUE(e.rows[0].r2.overlaps(little_l(sq)));
}
