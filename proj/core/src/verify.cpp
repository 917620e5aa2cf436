#include "relaysec/verify.hpp"

#include <cmath>

#include "relaysec/achievable.hpp"
#include "relaysec/bounds.hpp"

namespace relaysec {

namespace {

constexpr double kTwoPi = 6.2831853071795864769;

void require_samples(const McConfig& cfg) {
  if (cfg.n_prime < 1 || cfg.m_prime < 1) {
    throw std::invalid_argument("McConfig: block lengths must be >= 1");
  }
  if (cfg.samples < kMinVerifySamples) {
    throw std::invalid_argument(
        "McConfig: statistical checks need at least 1000 samples");
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return mix64(seed ^ mix64(tag));
}

// Sufficient statistics of a run of rows, centered at a fixed reference
// point so the second moments stay small.
struct ChunkStats {
  explicit ChunkStats(std::size_t d)
      : count(0), sum(d, 0.0), outer(d * (d + 1) / 2, 0.0) {}

  void add(const ChunkStats& other) {
    count += other.count;
    for (std::size_t i = 0; i < sum.size(); ++i) {
      sum[i] += other.sum[i];
    }
    for (std::size_t i = 0; i < outer.size(); ++i) {
      outer[i] += other.outer[i];
    }
  }

  // cov = sum_outer / n - delta delta^T with delta = sum / n; exact for any
  // fixed centering point. Plain 1/n normalization; every statistic built on
  // the result is a ratio in which the normalization cancels.
  SymMatrix covariance(std::size_t d) const {
    SymMatrix cov(d);
    const double n = static_cast<double>(count);
    std::size_t upper = 0;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j, ++upper) {
        const double value =
            outer[upper] / n - (sum[i] / n) * (sum[j] / n);
        cov.at(i, j) = value;
        cov.at(j, i) = value;
      }
    }
    return cov;
  }

  std::size_t count;
  std::vector<double> sum;
  std::vector<double> outer;
};

// Per-chunk statistics over runs of consecutive rows, centered at the grand
// mean. Chunks are the resampling unit of the block bootstrap.
std::vector<ChunkStats> chunk_statistics(const DataMatrix& data,
                                         std::size_t chunk_count) {
  const std::size_t d = data.cols;
  const std::size_t n = data.rows;
  std::vector<double> center(d, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      center[c] += data.at(r, c);
    }
  }
  for (double& m : center) {
    m /= static_cast<double>(n);
  }

  const std::size_t chunk_len = (n + chunk_count - 1) / chunk_count;
  std::vector<ChunkStats> chunks;
  chunks.reserve(chunk_count);
  std::vector<double> centered(d);
  for (std::size_t lo = 0; lo < n; lo += chunk_len) {
    const std::size_t hi = std::min(n, lo + chunk_len);
    ChunkStats stats(d);
    stats.count = hi - lo;
    for (std::size_t r = lo; r < hi; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        centered[c] = data.at(r, c) - center[c];
        stats.sum[c] += centered[c];
      }
      std::size_t upper = 0;
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j, ++upper) {
          stats.outer[upper] += centered[i] * centered[j];
        }
      }
    }
    chunks.push_back(std::move(stats));
  }
  return chunks;
}

// log2 det via Cholesky. Throws on a non-positive-definite input.
double log2_det(const SymMatrix& m) {
  const std::size_t n = m.n;
  std::vector<double> l(n * n, 0.0);
  double log2det = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = m.at(i, j);
      for (std::size_t k = 0; k < j; ++k) {
        s -= l[i * n + k] * l[j * n + k];
      }
      if (i == j) {
        if (!(s > 0.0)) {
          throw std::domain_error("log2_det: matrix is not positive definite");
        }
        l[i * n + i] = std::sqrt(s);
        log2det += 2.0 * std::log2(l[i * n + i]);
      } else {
        l[i * n + j] = s / l[j * n + j];
      }
    }
  }
  return log2det;
}

SymMatrix principal_block(const SymMatrix& m, std::size_t lo, std::size_t hi) {
  SymMatrix b(hi - lo);
  for (std::size_t i = lo; i < hi; ++i) {
    for (std::size_t j = lo; j < hi; ++j) {
      b.at(i - lo, j - lo) = m.at(i, j);
    }
  }
  return b;
}

// Fixed-block bootstrap: the rows are cut into up to kBootstrapChunks runs of
// consecutive blocks, each resample redraws that many runs with replacement,
// and the spread of the statistic over kBootstrapResamples resamples is the
// standard error.
constexpr std::size_t kBootstrapChunks = 512;

template <typename Stat>
MiEstimate bootstrap_statistic(const DataMatrix& data, Stat&& statistic,
                               std::uint64_t seed) {
  const std::size_t d = data.cols;
  const std::size_t chunk_count = std::min<std::size_t>(kBootstrapChunks, data.rows);
  const std::vector<ChunkStats> chunks = chunk_statistics(data, chunk_count);

  ChunkStats all(d);
  for (const ChunkStats& c : chunks) {
    all.add(c);
  }
  MiEstimate out;
  out.estimate = statistic(all.covariance(d));

  double sum = 0.0;
  double sumsq = 0.0;
  for (int r = 0; r < kBootstrapResamples; ++r) {
    SplitMix64 engine(derive_seed(seed, 0xB007u + static_cast<std::uint64_t>(r)));
    ChunkStats resampled(d);
    for (std::size_t i = 0; i < chunks.size(); ++i) {
      resampled.add(chunks[engine.next() % chunks.size()]);
    }
    const double value = statistic(resampled.covariance(d));
    sum += value;
    sumsq += value * value;
  }
  const double k = static_cast<double>(kBootstrapResamples);
  const double var = (sumsq - sum * sum / k) / (k - 1.0);
  out.std_err = std::sqrt(var > 0.0 ? var : 0.0);
  return out;
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

GaussianStream::GaussianStream(std::uint64_t seed, std::uint64_t block_index)
    : engine_(mix64(seed ^ mix64(block_index + 1))) {}

double GaussianStream::next() {
  // (0,1] so the log is finite.
  const double u1 =
      (static_cast<double>(engine_.next() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(engine_.next() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

ChannelSampler::ChannelSampler(const McConfig& cfg, const PhasePowers& powers,
                               double p1_prime, double sigma_c2, double rho)
    : cfg_(cfg),
      p1_prime_(p1_prime),
      p2_(powers.p2),
      pr_(powers.pr),
      sigma_c2_(sigma_c2),
      rho_(rho) {
  if (cfg.n_prime < 1 || cfg.m_prime < 1 || cfg.samples < 1) {
    throw std::invalid_argument("ChannelSampler: invalid block configuration");
  }
  if (!(std::fabs(rho) < 1.0)) {
    throw std::domain_error("ChannelSampler: |rho| must be < 1");
  }
  if (!(p1_prime >= 0.0) || !(sigma_c2 >= 0.0)) {
    throw std::domain_error("ChannelSampler: variances must be >= 0");
  }
  if (!std::isfinite(pr_)) {
    throw std::domain_error("ChannelSampler: relay power must be finite");
  }
}

void ChannelSampler::sample_block(std::uint64_t block_index,
                                  ChannelSample& out) const {
  const std::size_t n = static_cast<std::size_t>(cfg_.n_prime);
  const std::size_t m = static_cast<std::size_t>(cfg_.m_prime);
  out.x1.resize(n);
  out.x2.resize(n);
  out.z1.resize(n);
  out.ze.resize(n);
  out.zq.resize(n);
  out.y1.resize(n);
  out.y1_hat.resize(n);
  out.xr.resize(m);
  out.z2.resize(m);
  out.y2.resize(m);

  GaussianStream g(cfg_.seed, block_index);
  const double s1 = std::sqrt(p1_prime_);
  const double s2 = std::sqrt(p2_);
  const double sq = std::sqrt(sigma_c2_);
  const double sr = std::sqrt(pr_);
  const double mix = std::sqrt(1.0 - rho_ * rho_);
  for (std::size_t i = 0; i < n; ++i) {
    out.x1[i] = s1 * g.next();
    out.x2[i] = s2 * g.next();
    out.z1[i] = g.next();
    out.ze[i] = rho_ * out.z1[i] + mix * g.next();
    out.zq[i] = sq * g.next();
    out.y1[i] = out.x1[i] + out.x2[i] + out.z1[i];
    out.y1_hat[i] = out.y1[i] + out.zq[i];
  }
  for (std::size_t j = 0; j < m; ++j) {
    out.xr[j] = sr * g.next();
    out.z2[j] = g.next();
    out.y2[j] = out.xr[j] + out.z2[j];
  }
}

ChannelSample ChannelSampler::next() {
  ChannelSample s;
  sample_block(cursor_++, s);
  return s;
}

double gaussian_mi_from_covariance(const SymMatrix& cov, std::size_t split_dim) {
  if (split_dim == 0 || split_dim >= cov.n) {
    throw std::invalid_argument("gaussian_mi_from_covariance: bad split");
  }
  const double ld_u = log2_det(principal_block(cov, 0, split_dim));
  const double ld_v = log2_det(principal_block(cov, split_dim, cov.n));
  const double ld = log2_det(cov);
  return 0.5 * (ld_u + ld_v - ld);
}

MiEstimate estimate_mi(const DataMatrix& data, std::size_t split_dim,
                       std::uint64_t bootstrap_seed) {
  if (data.rows < data.cols + 2) {
    throw std::invalid_argument("estimate_mi: too few samples for the dimension");
  }
  return bootstrap_statistic(
      data,
      [split_dim](const SymMatrix& cov) {
        return gaussian_mi_from_covariance(cov, split_dim);
      },
      bootstrap_seed);
}

bool MiReport::pass() const {
  // <= so that exactly-known degenerate terms (zero estimate, zero spread)
  // count as passing.
  return std::fabs(estimate - closed_form) <= 3.0 * std_err;
}

std::vector<MiReport> verify_rate_terms(const McConfig& cfg, double p1_prime,
                                        double p2, double pr, TimeShare alpha) {
  require_samples(cfg);
  const double sigma_c2 = quantization_noise(p1_prime, pr, alpha);
  const std::size_t n = static_cast<std::size_t>(cfg.n_prime);
  const std::size_t m = static_cast<std::size_t>(cfg.m_prime);
  const std::size_t blocks = static_cast<std::size_t>(cfg.samples);

  DataMatrix forward(blocks, 2 * n);      // (x1, x1+z1+zq)
  DataMatrix leakage(blocks, 2 * n);      // (x1, y1)
  DataMatrix relay_link(blocks, 2 * m);   // (xr, y2)
  DataMatrix description(blocks, 2 * n);  // (x1+z1+zq, x1+z1)

  ChannelSampler sampler(cfg, PhasePowers(0.0, p2, pr), p1_prime, sigma_c2, 0.0);
  ChannelSample s;
  for (std::size_t b = 0; b < blocks; ++b) {
    sampler.sample_block(b, s);
    for (std::size_t i = 0; i < n; ++i) {
      // Conditioning on the jamming signal reduces the quantized observation
      // to x1 + z1 + zq.
      const double quantized = s.x1[i] + s.z1[i] + s.zq[i];
      forward.at(b, i) = s.x1[i];
      forward.at(b, n + i) = quantized;
      leakage.at(b, i) = s.x1[i];
      leakage.at(b, n + i) = s.y1[i];
      description.at(b, i) = quantized;
      description.at(b, n + i) = s.x1[i] + s.z1[i];
    }
    for (std::size_t j = 0; j < m; ++j) {
      relay_link.at(b, j) = s.xr[j];
      relay_link.at(b, m + j) = s.y2[j];
    }
  }

  const double per_n = static_cast<double>(n);
  const double per_m = static_cast<double>(m);
  std::vector<MiReport> reports;
  reports.reserve(4);

  if (p1_prime == 0.0) {
    // The source is silent: both source terms are identically zero, with no
    // sampling spread to estimate.
    reports.push_back({"forward", 0.0, 0.0, 0.0});
    reports.push_back({"leakage", 0.0, 0.0, 0.0});
  } else {
    const MiEstimate e0 = estimate_mi(forward, n, derive_seed(cfg.seed, 101));
    reports.push_back({"forward", capacity(p1_prime / (1.0 + sigma_c2)),
                       e0.estimate / per_n, e0.std_err / per_n});
    const MiEstimate e1 = estimate_mi(leakage, n, derive_seed(cfg.seed, 102));
    reports.push_back({"leakage", capacity(p1_prime / (1.0 + p2)),
                       e1.estimate / per_n, e1.std_err / per_n});
  }
  const MiEstimate e2 = estimate_mi(relay_link, m, derive_seed(cfg.seed, 103));
  reports.push_back({"relay_link", capacity(pr), e2.estimate / per_m,
                     e2.std_err / per_m});
  const MiEstimate e3 = estimate_mi(description, n, derive_seed(cfg.seed, 104));
  reports.push_back({"description", capacity((p1_prime + 1.0) / sigma_c2),
                     e3.estimate / per_n, e3.std_err / per_n});
  return reports;
}

MiReport verify_genie_term(double p1, double p2, double rho,
                           const McConfig& cfg) {
  require_samples(cfg);
  if (!(std::fabs(rho) < 1.0)) {
    throw std::domain_error("verify_genie_term: |rho| must be < 1");
  }
  const std::size_t letters = static_cast<std::size_t>(cfg.samples);
  // Per-letter columns: (x1+z1, x1+x2+ze, z1, ze).
  DataMatrix data(letters, 4);
  const double s1 = std::sqrt(p1);
  const double s2 = std::sqrt(p2);
  const double mix = std::sqrt(1.0 - rho * rho);
  for (std::size_t b = 0; b < letters; ++b) {
    GaussianStream g(cfg.seed, b);
    const double x1 = s1 * g.next();
    const double x2 = s2 * g.next();
    const double z1 = g.next();
    const double ze = rho * z1 + mix * g.next();
    data.at(b, 0) = x1 + z1;
    data.at(b, 1) = x1 + x2 + ze;
    data.at(b, 2) = z1;
    data.at(b, 3) = ze;
  }

  // h(U|V) - h(W|T) = 1/2 log2( (var U - cov_UV^2 / var V)
  //                             / (var W - cov_WT^2 / var T) ).
  const auto statistic = [](const SymMatrix& cov) {
    const double top = cov.at(0, 0) - cov.at(0, 1) * cov.at(0, 1) / cov.at(1, 1);
    const double bot = cov.at(2, 2) - cov.at(2, 3) * cov.at(2, 3) / cov.at(3, 3);
    if (!(top > 0.0) || !(bot > 0.0)) {
      throw std::domain_error("verify_genie_term: degenerate sample covariance");
    }
    return 0.5 * std::log2(top / bot);
  };

  const MiEstimate e = bootstrap_statistic(data, statistic, derive_seed(cfg.seed, 105));
  MiReport report;
  report.term_id = "genie_term";
  report.closed_form = first_term_at_rho(p1, p2, rho);
  report.estimate = e.estimate;
  report.std_err = e.std_err;
  return report;
}

}  // namespace relaysec
