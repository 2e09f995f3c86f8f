#pragma once

#include <cstdint>

namespace seqgamma {

// Shape/scale parameterization: density x^{a-1} e^{-x/b} / (Gamma(a) b^a) on x > 0.
struct GammaParams {
  double alpha = 1.0;  // shape
  double beta = 1.0;   // scale

  // Throws std::invalid_argument unless both parameters are finite and positive.
  void validate() const;
};

// ln Gamma(x) for x > 0 (reflection handles 0 < x < 0.5). Throws
// std::domain_error outside the domain, as do the other functions here.
double log_gamma(double x);

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a),
// a > 0, x >= 0. Q(a, 0) = 1, monotone decreasing to 0 in x.
double reg_upper_gamma(double a, double x);

// Gamma density at x; x must be positive.
double gamma_pdf(double x, const GammaParams& params);

// Deterministic counter-keyed random stream. A given (seed, stream_id) pair
// yields the same sequence on every platform; distinct stream_ids give
// statistically independent substreams of the same seed.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  // Uniform on the open interval (0, 1).
  double next_unit();
  // Standard normal deviate (Marsaglia polar method, spare cached).
  double next_normal();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t state_[4];
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// One gamma(alpha, beta) variate. Consumes a deterministic number of stream
// values for a given acceptance path, so sequences are replayable.
double sample_gamma(const GammaParams& params, RngStream& rng);

}  // namespace seqgamma
