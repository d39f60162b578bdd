#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dsmb/expansion.hpp"
#include "dsmb/rng.hpp"

namespace dsmb {

/// Independent N(0, variance) on every coefficient.
struct PriorSpec
{
  double variance = 0.01;
  void validate() const;
};

/// Gaussian likelihood with noise std `sigma` around F A. `data` is the
/// vectorised far field in operator row order.
class LikelihoodSpec
{
public:
  LikelihoodSpec(const ForwardOperator& op, std::vector<cplx> data, double sigma = 0.04);
  /// Pulls the rows matching the operator's wavenumbers out of `data`.
  LikelihoodSpec(const ForwardOperator& op, const FarFieldData& data, double sigma = 0.04);

  const ForwardOperator& op() const noexcept { return *op_; }
  const std::vector<cplx>& data() const noexcept { return data_; }
  double sigma() const noexcept { return sigma_; }

private:
  const ForwardOperator* op_;
  std::vector<cplx> data_;
  double sigma_;
};

/// (1 / 2 sigma^2) ||U - F A||^2.
double misfit(std::span<const double> a, const LikelihoodSpec& like);
double misfit(const CoefficientVector& a, const LikelihoodSpec& like);

/// sqrt(1 - beta^2) a + beta W, W a prior draw (or standard normal when
/// `prior` is null, i.e. the literal unscaled proposal).
void pcn_propose(std::span<const double> a, double beta, const PriorSpec* prior, Rng& rng,
                 std::span<double> out);
CoefficientVector pcn_propose(const CoefficientVector& a, double beta, const PriorSpec& prior, Rng& rng);

/// Accept with probability min(1, exp(g_old - g_new)). ContractError on NaN.
bool pcn_accept(double g_old, double g_new, Rng& rng);

/// Covariance of the pCN innovation W.
///   literal: W ~ N(0, I), as in the reference algorithm; mixes at beta = 0.001.
///   prior:   W ~ N(0, prior variance I); the chain is then prior-reversible.
enum class ProposalScale { literal, prior };

ProposalScale parse_proposal_scale(const std::string& text);
const char* to_string(ProposalScale scale);

struct SamplerConfig
{
  double beta = 0.001;
  std::size_t total_steps = 120000;
  std::size_t burn_in = 20000;
  std::size_t thin = 1;
  std::uint64_t seed = 1;
  ProposalScale proposal = ProposalScale::literal;
  /// Skip the likelihood (G == 0): samples the prior.
  bool disable_likelihood = false;

  void validate() const;
};

struct MarkovChain
{
  BasisIndex basis{5, 2};
  Disc disc;
  SamplerConfig config;
  std::size_t accepted = 0;
  /// Row-major (samples x basis.size()); state after steps burn_in+thin, burn_in+2 thin, ...
  std::vector<double> samples;

  std::size_t dim() const noexcept { return basis.size(); }
  std::size_t sample_count() const noexcept { return dim() == 0 ? 0 : samples.size() / dim(); }
  std::span<const double> sample(std::size_t s) const { return {samples.data() + s * dim(), dim()}; }
  double acceptance_rate() const;
};

/// pCN Metropolis-Hastings from A = 0. Deterministic in the seed.
MarkovChain run_chain(const LikelihoodSpec& like, const PriorSpec& prior, const SamplerConfig& config);

struct Histogram
{
  std::vector<double> edges; // bins + 1
  std::vector<std::size_t> counts;
};

struct PosteriorSummary
{
  CoefficientVector conditional_mean;
  std::vector<Histogram> histograms;
  double acceptance_rate = 0.0;
};

/// ContractError on an empty chain.
PosteriorSummary summarize(const MarkovChain& chain, int bins = 50);

/// Header "# chain v1 dim=.. samples=.. seed=.. beta=.. burn_in=.. thin=.. total=.. accepted=..",
/// then one sample per line.
void write_chain(std::ostream& out, const MarkovChain& chain);
/// Key-value block: acceptance_rate, samples, cm.<m>.<n>.<parity> = value.
void write_summary(std::ostream& out, const PosteriorSummary& summary, const MarkovChain& chain);

} // namespace dsmb
