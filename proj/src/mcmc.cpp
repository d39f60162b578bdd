#include "dsmb/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "dsmb/errors.hpp"

namespace dsmb {

void PriorSpec::validate() const
{
  if (!(variance > 0.0))
    throw ConfigError("prior variance must be positive");
}

ProposalScale parse_proposal_scale(const std::string& text)
{
  if (text == "literal")
    return ProposalScale::literal;
  if (text == "prior" || text == "prior-scaled")
    return ProposalScale::prior;
  throw ConfigError("unknown proposal scale '" + text + "'");
}

const char* to_string(ProposalScale scale) { return scale == ProposalScale::literal ? "literal" : "prior-scaled"; }

void SamplerConfig::validate() const
{
  if (!(beta > 0.0 && beta <= 1.0))
    throw DomainError("pCN beta must lie in (0, 1]");
  if (!(total_steps > burn_in))
    throw ConfigError("total steps must exceed burn-in");
  if (thin == 0)
    throw ConfigError("thinning must be at least 1");
}

LikelihoodSpec::LikelihoodSpec(const ForwardOperator& op, std::vector<cplx> data, double sigma)
    : op_(&op), data_(std::move(data)), sigma_(sigma)
{
  if (!(sigma > 0.0))
    throw ConfigError("likelihood sigma must be positive");
  if (data_.size() != op.rows())
    throw ContractError("data length " + std::to_string(data_.size()) + " does not match operator rows " +
                        std::to_string(op.rows()));
}

namespace {

std::vector<cplx> rows_for_operator(const ForwardOperator& op, const FarFieldData& data)
{
  if (data.aperture().angles != op.aperture().angles)
    throw ContractError("data and operator use different apertures");
  return data.select_wavenumbers(op.wavenumbers()).values();
}

} // namespace

LikelihoodSpec::LikelihoodSpec(const ForwardOperator& op, const FarFieldData& data, double sigma)
    : LikelihoodSpec(op, rows_for_operator(op, data), sigma)
{}

double misfit(std::span<const double> a, const LikelihoodSpec& like)
{
  const auto& op = like.op();
  if (a.size() != op.cols())
    throw ContractError("misfit: coefficient vector has the wrong length");
  const std::size_t P = op.cols();
  const cplx* m = op.matrix().data();
  const auto& u = like.data();
  double sum = 0.0;
  for (std::size_t r = 0; r < op.rows(); ++r) {
    double re = u[r].real(), im = u[r].imag();
    const cplx* row = m + r * P;
    for (std::size_t c = 0; c < P; ++c) {
      re -= row[c].real() * a[c];
      im -= row[c].imag() * a[c];
    }
    sum += re * re + im * im;
  }
  return sum / (2.0 * like.sigma() * like.sigma());
}

double misfit(const CoefficientVector& a, const LikelihoodSpec& like)
{
  a.validate();
  return misfit(std::span<const double>(a.values), like);
}

void pcn_propose(std::span<const double> a, double beta, const PriorSpec* prior, Rng& rng,
                 std::span<double> out)
{
  if (!(beta > 0.0 && beta <= 1.0))
    throw DomainError("pCN beta must lie in (0, 1]");
  if (out.size() != a.size())
    throw ContractError("pcn_propose: output has the wrong length");
  const double keep = std::sqrt(1.0 - beta * beta);
  const double scale = prior ? std::sqrt(prior->variance) : 1.0;
  for (std::size_t c = 0; c < a.size(); ++c)
    out[c] = keep * a[c] + beta * scale * rng.normal();
}

CoefficientVector pcn_propose(const CoefficientVector& a, double beta, const PriorSpec& prior, Rng& rng)
{
  a.validate();
  prior.validate();
  CoefficientVector out = a;
  pcn_propose(a.values, beta, &prior, rng, out.values);
  return out;
}

bool pcn_accept(double g_old, double g_new, Rng& rng)
{
  if (std::isnan(g_old) || std::isnan(g_new))
    throw ContractError("pcn_accept: NaN misfit");
  const double alpha = std::min(1.0, std::exp(g_old - g_new));
  // The uniform is drawn on every step so the stream does not depend on the outcome.
  return alpha >= rng.uniform();
}

double MarkovChain::acceptance_rate() const
{
  return config.total_steps == 0 ? 0.0 : static_cast<double>(accepted) / config.total_steps;
}

MarkovChain run_chain(const LikelihoodSpec& like, const PriorSpec& prior, const SamplerConfig& config)
{
  prior.validate();
  config.validate();
  const auto& op = like.op();
  const std::size_t P = op.cols();

  MarkovChain chain;
  chain.basis = op.basis();
  chain.disc = op.disc();
  chain.config = config;
  chain.samples.reserve(((config.total_steps - config.burn_in) / config.thin) * P);

  Rng rng(config.seed);
  std::vector<double> current(P, 0.0), proposal(P);
  auto g = [&](std::span<const double> a) { return config.disable_likelihood ? 0.0 : misfit(a, like); };
  double g_current = g(current);
  const PriorSpec* scale = config.proposal == ProposalScale::literal ? nullptr : &prior;

  for (std::size_t step = 1; step <= config.total_steps; ++step) {
    pcn_propose(current, config.beta, scale, rng, proposal);
    const double g_proposal = g(proposal);
    if (pcn_accept(g_current, g_proposal, rng)) {
      current.swap(proposal);
      g_current = g_proposal;
      ++chain.accepted;
    }
    if (step > config.burn_in && (step - config.burn_in) % config.thin == 0)
      chain.samples.insert(chain.samples.end(), current.begin(), current.end());
  }
  return chain;
}

PosteriorSummary summarize(const MarkovChain& chain, int bins)
{
  if (chain.sample_count() == 0)
    throw ContractError("summarize: chain holds no samples");
  if (bins < 1)
    throw ConfigError("histogram needs at least one bin");
  const std::size_t P = chain.dim(), S = chain.sample_count();

  PosteriorSummary out;
  out.conditional_mean = CoefficientVector::zeros(chain.basis, chain.disc);
  out.acceptance_rate = chain.acceptance_rate();
  for (std::size_t c = 0; c < P; ++c) {
    double sum = 0.0, lo = chain.samples[c], hi = chain.samples[c];
    for (std::size_t s = 0; s < S; ++s) {
      const double v = chain.samples[s * P + c];
      sum += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    out.conditional_mean.values[c] = sum / S;

    Histogram h;
    h.counts.assign(bins, 0);
    const double width = (hi - lo) / bins;
    for (int b = 0; b <= bins; ++b)
      h.edges.push_back(b == bins ? hi : lo + b * width);
    for (std::size_t s = 0; s < S; ++s) {
      const double v = chain.samples[s * P + c];
      int b = width > 0.0 ? static_cast<int>((v - lo) / width) : 0;
      h.counts[std::clamp(b, 0, bins - 1)] += 1;
    }
    out.histograms.push_back(std::move(h));
  }
  return out;
}

void write_chain(std::ostream& out, const MarkovChain& chain)
{
  const auto& c = chain.config;
  out.precision(17);
  out << "# chain v1 dim=" << chain.dim() << " samples=" << chain.sample_count() << " seed=" << c.seed
      << " beta=" << c.beta << " proposal=" << to_string(c.proposal) << " burn_in=" << c.burn_in << " thin=" << c.thin << " total=" << c.total_steps
      << " accepted=" << chain.accepted << '\n';
  for (std::size_t s = 0; s < chain.sample_count(); ++s) {
    const auto row = chain.sample(s);
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? " " : "") << row[i];
    out << '\n';
  }
  if (!out)
    throw IoError("failed writing chain");
}

void write_summary(std::ostream& out, const PosteriorSummary& summary, const MarkovChain& chain)
{
  out.precision(17);
  out << "acceptance_rate = " << summary.acceptance_rate << '\n'
      << "samples = " << chain.sample_count() << '\n'
      << "accepted = " << chain.accepted << '\n'
      << "disc = " << chain.disc.center.x << ' ' << chain.disc.center.y << ' ' << chain.disc.radius << '\n';
  const auto& cm = summary.conditional_mean;
  for (std::size_t c = 0; c < cm.values.size(); ++c) {
    const auto& t = cm.basis[c];
    out << "cm." << t.m << '.' << t.n << '.' << to_string(t.parity) << " = " << cm.values[c] << '\n';
  }
  if (!out)
    throw IoError("failed writing summary");
}

} // namespace dsmb
