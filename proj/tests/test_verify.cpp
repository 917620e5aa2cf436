#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "relaysec/achievable.hpp"
#include "relaysec/bounds.hpp"
#include "relaysec/verify.hpp"

using namespace relaysec;

namespace {

McConfig make_cfg(std::int64_t samples, std::uint64_t seed) {
  McConfig cfg;
  cfg.samples = samples;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("identical seeds give bit-identical blocks") {
  const McConfig cfg = make_cfg(1000, 42);
  const PhasePowers powers(0.0, 3.0, 3.0);
  ChannelSampler a(cfg, powers, 3.0, 4.0 / 3.0, 0.25);
  ChannelSampler b(cfg, powers, 3.0, 4.0 / 3.0, 0.25);
  ChannelSample sa, sb;
  for (std::uint64_t k = 0; k < 50; ++k) {
    a.sample_block(k, sa);
    b.sample_block(k, sb);
    for (std::size_t i = 0; i < sa.x1.size(); ++i) {
      CHECK(sa.x1[i] == sb.x1[i]);
      CHECK(sa.ze[i] == sb.ze[i]);
      CHECK(sa.y1_hat[i] == sb.y1_hat[i]);
    }
    CHECK(sa.y2[0] == sb.y2[0]);
  }
}

TEST_CASE("block access is order independent") {
  const McConfig cfg = make_cfg(1000, 7);
  const PhasePowers powers(0.0, 2.0, 5.0);
  ChannelSampler sampler(cfg, powers, 1.0, 0.5, 0.0);
  ChannelSample forward3;
  sampler.sample_block(3, forward3);
  ChannelSample backward3;
  sampler.sample_block(9, backward3);  // disturb nothing
  sampler.sample_block(3, backward3);
  CHECK(forward3.x1[0] == backward3.x1[0]);
  CHECK(forward3.y2[0] == backward3.y2[0]);
}

TEST_CASE("channel identities hold exactly per sample") {
  ChannelSampler sampler(make_cfg(1000, 3), PhasePowers(0.0, 2.0, 5.0), 1.5, 0.7,
                         0.4);
  ChannelSample s;
  for (std::uint64_t k = 0; k < 200; ++k) {
    sampler.sample_block(k, s);
    for (std::size_t i = 0; i < s.x1.size(); ++i) {
      CHECK(s.y1[i] == s.x1[i] + s.x2[i] + s.z1[i]);
      CHECK(s.y1_hat[i] == s.y1[i] + s.zq[i]);
    }
    for (std::size_t j = 0; j < s.xr.size(); ++j) {
      CHECK(s.y2[j] == s.xr[j] + s.z2[j]);
    }
  }
}

TEST_CASE("sampler rejects bad configurations") {
  const McConfig cfg = make_cfg(1000, 1);
  const PhasePowers powers(0.0, 1.0, 1.0);
  CHECK_THROWS_AS(ChannelSampler(cfg, powers, 1.0, 0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(ChannelSampler(cfg, powers, 1.0, 0.5, -1.2), std::domain_error);
  CHECK_THROWS_AS(ChannelSampler(cfg, PhasePowers(0.0, 1.0, kInfinitePower), 1.0,
                                 0.5, 0.0),
                  std::domain_error);
}

TEST_CASE("sample moments match the configured parameters") {
  const std::size_t n = 1000000;
  McConfig cfg = make_cfg(static_cast<std::int64_t>(n), 11);
  const double p1_prime = 2.5;
  const double rho = 0.6;
  ChannelSampler sampler(cfg, PhasePowers(0.0, 1.0, 1.0), p1_prime, 0.1, rho);

  double sum_sq = 0.0;
  double sum_z1ze = 0.0;
  double sum_z1 = 0.0, sum_ze = 0.0, sum_z1sq = 0.0, sum_zesq = 0.0;
  ChannelSample s;
  for (std::size_t k = 0; k < n; ++k) {
    sampler.sample_block(k, s);
    sum_sq += s.x1[0] * s.x1[0];
    sum_z1 += s.z1[0];
    sum_ze += s.ze[0];
    sum_z1sq += s.z1[0] * s.z1[0];
    sum_zesq += s.ze[0] * s.ze[0];
    sum_z1ze += s.z1[0] * s.ze[0];
  }
  const double nd = static_cast<double>(n);
  const double var_x1 = sum_sq / nd;
  // Sample variance of a Gaussian has spread var * sqrt(2/n).
  CHECK(std::fabs(var_x1 - p1_prime) < 3.0 * p1_prime * std::sqrt(2.0 / nd));

  const double cov = sum_z1ze / nd - (sum_z1 / nd) * (sum_ze / nd);
  const double corr = cov / std::sqrt((sum_z1sq / nd) * (sum_zesq / nd));
  CHECK(std::fabs(corr - rho) < 3.0 * (1.0 - rho * rho) / std::sqrt(nd));
}

TEST_CASE("Gaussian MI from covariance: anchor cases") {
  SymMatrix indep(2);
  indep.at(0, 0) = 2.0;
  indep.at(1, 1) = 5.0;
  CHECK(gaussian_mi_from_covariance(indep, 1) == doctest::Approx(0.0));

  const double p = 3.0;
  SymMatrix chain(2);
  chain.at(0, 0) = p;
  chain.at(0, 1) = chain.at(1, 0) = p;
  chain.at(1, 1) = p + 1.0;
  CHECK(gaussian_mi_from_covariance(chain, 1) ==
        doctest::Approx(capacity(p)).epsilon(1e-12));

  const double rho = 0.37;
  SymMatrix pair(2);
  pair.at(0, 0) = pair.at(1, 1) = 1.0;
  pair.at(0, 1) = pair.at(1, 0) = rho;
  CHECK(gaussian_mi_from_covariance(pair, 1) ==
        doctest::Approx(-0.5 * std::log2(1.0 - rho * rho)).epsilon(1e-12));
}

TEST_CASE("Gaussian MI rejects degenerate input") {
  SymMatrix singular(2);
  singular.at(0, 0) = 1.0;
  singular.at(0, 1) = singular.at(1, 0) = 1.0;
  singular.at(1, 1) = 1.0;
  CHECK_THROWS_AS(gaussian_mi_from_covariance(singular, 1), std::domain_error);
}

namespace {

DataMatrix paired_stream(std::size_t n, double var_x, double var_extra,
                         bool independent_pairs, std::uint64_t seed) {
  DataMatrix data(n, 2);
  for (std::size_t k = 0; k < n; ++k) {
    GaussianStream g(seed, k);
    const double x = std::sqrt(var_x) * g.next();
    const double z = g.next();
    const double extra = var_extra > 0.0 ? std::sqrt(var_extra) * g.next() : 0.0;
    data.at(k, 0) = x;
    data.at(k, 1) = x + z + extra;
  }
  if (independent_pairs) {
    // Rebuild the second column from disjoint blocks.
    for (std::size_t k = 0; k < n; ++k) {
      GaussianStream g(seed, n + k);
      data.at(k, 1) = std::sqrt(var_x) * g.next() + g.next();
    }
  }
  return data;
}

}  // namespace

TEST_CASE("MI estimate: direct observation") {
  const DataMatrix data = paired_stream(1000000, 3.0, 0.0, false, 21);
  const MiEstimate e = estimate_mi(data, 1, 77);
  CHECK(e.std_err > 0.0);
  CHECK(std::fabs(e.estimate - capacity(3.0)) < 3.0 * e.std_err);
}

TEST_CASE("MI estimate: independent pairing") {
  const DataMatrix data = paired_stream(1000000, 3.0, 0.0, true, 22);
  const MiEstimate e = estimate_mi(data, 1, 78);
  CHECK(std::fabs(e.estimate) < 3.0 * e.std_err + 1e-5);
}

TEST_CASE("MI estimate: quantized observation") {
  const DataMatrix data = paired_stream(1000000, 3.0, 4.0 / 3.0, false, 23);
  const MiEstimate e = estimate_mi(data, 1, 79);
  // C(3 / (1 + 4/3)) = C(9/7)
  CHECK(capacity(9.0 / 7.0) == doctest::Approx(0.5963225389711979).epsilon(1e-12));
  CHECK(std::fabs(e.estimate - capacity(9.0 / 7.0)) < 3.0 * e.std_err);
}

TEST_CASE("MI estimate needs enough rows") {
  DataMatrix tiny(3, 2);
  CHECK_THROWS_AS(estimate_mi(tiny, 1, 1), std::invalid_argument);
}

TEST_CASE("rate terms at the worked point") {
  const McConfig cfg = make_cfg(200000, 5);
  const std::vector<MiReport> reports =
      verify_rate_terms(cfg, 3.0, 3.0, 3.0, TimeShare(0.5));
  REQUIRE(reports.size() == 4);

  CHECK(reports[0].term_id == "forward");
  CHECK(reports[0].closed_form ==
        doctest::Approx(capacity(9.0 / 7.0)).epsilon(1e-12));
  CHECK(reports[1].term_id == "leakage");
  CHECK(reports[1].closed_form ==
        doctest::Approx(capacity(0.75)).epsilon(1e-12));
  CHECK(reports[2].term_id == "relay_link");
  CHECK(reports[2].closed_form == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(reports[3].term_id == "description");
  CHECK(reports[3].closed_form == doctest::Approx(1.0).epsilon(1e-12));

  for (const MiReport& r : reports) {
    CHECK(r.std_err > 0.0);
    CHECK(r.pass());
  }

  // Difference of the two source terms, scaled by the time share, is the
  // rate before clipping.
  const double rate = rate_fixed(3.0, 3.0, 3.0, TimeShare(0.5));
  CHECK(0.5 * (reports[0].closed_form - reports[1].closed_form) ==
        doctest::Approx(rate).epsilon(1e-12));
  CHECK(0.5 * (reports[0].estimate - reports[1].estimate) ==
        doctest::Approx(rate).epsilon(0.05));
}

TEST_CASE("rate terms with a silent source") {
  const McConfig cfg = make_cfg(10000, 6);
  const std::vector<MiReport> reports =
      verify_rate_terms(cfg, 0.0, 3.0, 3.0, TimeShare(0.5));
  CHECK(reports[0].closed_form == 0.0);
  CHECK(reports[0].estimate == 0.0);
  CHECK(reports[1].closed_form == 0.0);
  CHECK(reports[0].pass());
  CHECK(reports[1].pass());
  CHECK(reports[2].pass());
  CHECK(reports[3].pass());
}

TEST_CASE("rate terms in block mode") {
  McConfig cfg = make_cfg(20000, 8);
  cfg.n_prime = 2;
  cfg.m_prime = 2;
  const std::vector<MiReport> reports =
      verify_rate_terms(cfg, 3.0, 3.0, 3.0, TimeShare(0.5));
  for (const MiReport& r : reports) {
    CHECK(r.pass());
  }
}

TEST_CASE("rate terms reject a thin sample budget") {
  CHECK_THROWS_AS(verify_rate_terms(make_cfg(10, 1), 3.0, 3.0, 3.0, TimeShare(0.5)),
                  std::invalid_argument);
}

TEST_CASE("rate term reports are deterministic") {
  const McConfig cfg = make_cfg(5000, 99);
  const auto a = verify_rate_terms(cfg, 3.0, 3.0, 3.0, TimeShare(0.5));
  const auto b = verify_rate_terms(cfg, 3.0, 3.0, 3.0, TimeShare(0.5));
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].estimate == b[i].estimate);
    CHECK(a[i].std_err == b[i].std_err);
  }
}

TEST_CASE("genie term: no jamming, independent noises") {
  const MiReport r = verify_genie_term(1.0, 0.0, 0.0, make_cfg(100000, 12));
  // Closed form collapses to 1/2 log2((2 p1 + 1) / (p1 + 1)).
  CHECK(r.closed_form == doctest::Approx(0.5 * std::log2(1.5)).epsilon(1e-12));
  CHECK(r.pass());
}

TEST_CASE("genie term at the optimal correlation") {
  const double rho = optimal_rho(1.0, 1.0).rho;
  const MiReport r = verify_genie_term(1.0, 1.0, rho, make_cfg(100000, 13));
  CHECK(r.closed_form == doctest::Approx(0.3287515315579589).epsilon(1e-9));
  CHECK(r.pass());
}

TEST_CASE("estimated genie curve dips at the optimal correlation") {
  const McConfig cfg = make_cfg(100000, 14);
  const double rho_star = optimal_rho(1.0, 1.0).rho;
  const MiReport at_star = verify_genie_term(1.0, 1.0, rho_star, cfg);
  for (double rho = -0.8; rho <= 0.85; rho += 0.2) {
    if (std::fabs(rho - rho_star) < 0.15) {
      continue;
    }
    const MiReport other = verify_genie_term(1.0, 1.0, rho, cfg);
    CHECK(at_star.estimate <
          other.estimate + 3.0 * (at_star.std_err + other.std_err));
  }
}

TEST_CASE("bootstrap spread shrinks like one over root samples") {
  // Quadrupling the block count should halve the spread; average the ratio
  // over terms and seeds to tame bootstrap noise.
  double ratio_sum = 0.0;
  int count = 0;
  for (std::uint64_t seed : {31, 32, 33, 34}) {
    const auto small = verify_rate_terms(make_cfg(20000, seed), 3.0, 3.0, 3.0,
                                         TimeShare(0.5));
    const auto large = verify_rate_terms(make_cfg(80000, seed), 3.0, 3.0, 3.0,
                                         TimeShare(0.5));
    for (std::size_t i = 0; i < small.size(); ++i) {
      ratio_sum += large[i].std_err / small[i].std_err;
      ++count;
    }
  }
  const double mean_ratio = ratio_sum / count;
  CHECK(mean_ratio > 0.4);
  CHECK(mean_ratio < 0.6);
}
