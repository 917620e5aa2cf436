#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relaysec/core.hpp"

// Monte Carlo oracle for the sampled two-phase Gaussian channel. Blocks are
// drawn independently, mutual-information and conditional-entropy terms are
// estimated with Gaussian plug-in estimators (sample covariance into the
// log-determinant identity), and the results are compared against the closed
// forms. Every variable in the model is jointly Gaussian, so the plug-in
// target is exact.
//
// Randomness contract: block k of a stream with seed s is generated by a
// SplitMix64 engine seeded with mix64(s ^ mix64(k + 1)). Each Gaussian draw
// consumes exactly two engine outputs (Box-Muller, cosine branch), so the
// j-th normal of block k is a pure function of (s, k, j). Blocks may
// therefore be generated in any order, or concurrently, with results
// identical to sequential generation.

namespace relaysec {

// splitmix64 output/finalization step.
std::uint64_t mix64(std::uint64_t z);

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

// Standard normal draws from a per-block counter-based stream.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t block_index);
  double next();

 private:
  SplitMix64 engine_;
};

struct McConfig {
  int n_prime = 1;                // phase-one letters per block
  int m_prime = 1;                // phase-two letters per block
  std::int64_t samples = 100000;  // independent blocks
  std::uint64_t seed = 1;
};

// Minimum block count for any statistical pass/fail assertion.
inline constexpr std::int64_t kMinVerifySamples = 1000;

// One sampled block of the two-phase model. Phase-one vectors have length
// n_prime, phase-two vectors length m_prime.
struct ChannelSample {
  std::vector<double> x1;      // source signal, variance p1_prime
  std::vector<double> x2;      // jamming signal, variance p2
  std::vector<double> z1;      // relay noise, unit variance
  std::vector<double> ze;      // genie eavesdropper noise, corr(z1, ze) = rho
  std::vector<double> zq;      // quantization noise, variance sigma_c2
  std::vector<double> y1;      // x1 + x2 + z1
  std::vector<double> y1_hat;  // y1 + zq
  std::vector<double> xr;      // relay signal, variance pr
  std::vector<double> z2;      // destination noise, unit variance
  std::vector<double> y2;      // xr + z2
};

// Deterministic stream of channel blocks. sample_block(k, out) fills block k
// regardless of call order; next() walks blocks 0, 1, 2, ...
class ChannelSampler {
 public:
  ChannelSampler(const McConfig& cfg, const PhasePowers& powers,
                 double p1_prime, double sigma_c2, double rho);

  void sample_block(std::uint64_t block_index, ChannelSample& out) const;
  ChannelSample next();

 private:
  McConfig cfg_;
  double p1_prime_;
  double p2_;
  double pr_;
  double sigma_c2_;
  double rho_;
  std::uint64_t cursor_ = 0;
};

// Dense symmetric matrix, row-major.
struct SymMatrix {
  explicit SymMatrix(std::size_t n) : n(n), a(n * n, 0.0) {}
  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  std::size_t n;
  std::vector<double> a;
};

// Row-major sample matrix: one row per block.
struct DataMatrix {
  DataMatrix(std::size_t rows, std::size_t cols)
      : rows(rows), cols(cols), v(rows * cols, 0.0) {}
  double& at(std::size_t r, std::size_t c) { return v[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return v[r * cols + c]; }

  std::size_t rows;
  std::size_t cols;
  std::vector<double> v;
};

// I(U;V) in bits for a joint Gaussian with the given covariance, U being the
// first split_dim coordinates: 1/2 log2(det S_U det S_V / det S).
// Throws std::domain_error when the matrix is not positive definite.
double gaussian_mi_from_covariance(const SymMatrix& cov, std::size_t split_dim);

struct MiEstimate {
  double estimate;
  double std_err;
};

inline constexpr int kBootstrapResamples = 32;

// Plug-in Gaussian MI of the rows' first split_dim coordinates against the
// rest; std_err from a 32-resample fixed-block bootstrap (runs of consecutive
// rows as the resampling unit), deterministic given bootstrap_seed.
MiEstimate estimate_mi(const DataMatrix& data, std::size_t split_dim,
                       std::uint64_t bootstrap_seed);

struct MiReport {
  std::string term_id;
  double closed_form;  // bits per channel use
  double estimate;     // bits per channel use
  double std_err;      // bits per channel use

  bool pass() const;  // |estimate - closed_form| < 3 std_err
};

// Estimates the four mutual-information terms behind the achievable rate and
// compares each, per channel use, with its closed form:
//   forward:      I(X1; X1+Z1+ZQ)     = C(p1' / (1 + sigma_c2))
//   leakage:      I(X1; X1+X2+Z1)     = C(p1' / (1 + p2))
//   relay_link:   I(Xr; Xr+Z2)        = C(pr)
//   description:  I(X1+Z1+ZQ; X1+Z1)  = C((p1' + 1) / sigma_c2)
// sigma_c2 is taken from the balance equation. Reports come back in that
// order. Requires cfg.samples >= kMinVerifySamples.
std::vector<MiReport> verify_rate_terms(const McConfig& cfg, double p1_prime,
                                        double p2, double pr, TimeShare alpha);

// Per-letter estimate of h(X1+Z1 | X1+X2+Ze) - h(Z1 | Ze) against the genie
// first-term closed form at the same rho. term_id genie_term.
MiReport verify_genie_term(double p1, double p2, double rho,
                           const McConfig& cfg);

}  // namespace relaysec
