#include "kcbs/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "kcbs/error.hpp"
#include "kcbs/pentagram.hpp"

namespace kcbs {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

int poisson(double mean, Rng& rng) {
  if (mean <= 0.0) return 0;
  return std::poisson_distribution<int>(mean)(rng);
}

// P(X <= k) for X ~ Poisson(mean).
double poisson_cdf(int k, double mean) {
  if (k < 0) return 0.0;
  if (mean <= 0.0) return 1.0;
  return boost::math::gamma_q(static_cast<double>(k) + 1.0, mean);
}

void require_probability(double p, const char* field) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "noise." << field << " must be a probability in [0, 1], got " << p;
    throw Error(ErrorKind::ConfigError, os.str());
  }
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t sequence, std::uint64_t shot) noexcept {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ splitmix64(sequence + 0x632BE59BD9B4E019ULL));
  return splitmix64(h ^ shot);
}

Rng make_rng(std::uint64_t stream) {
  const std::uint64_t hi = splitmix64(stream ^ 0xD1B54A32D192ED03ULL);
  std::array<std::uint32_t, 3> words{static_cast<std::uint32_t>(stream),
                                     static_cast<std::uint32_t>(stream >> 32),
                                     static_cast<std::uint32_t>(hi)};
  auto first = words.begin();
  Rng rng;
  rng.seed(first, words.end());
  return rng;
}

TransitionFrequencies nmr_frequencies(const NvParameters& p) {
  if (!std::isfinite(p.q_mhz) || !std::isfinite(p.gamma_n_khz_per_gauss) || !std::isfinite(p.b_gauss)) {
    throw Error(ErrorKind::NonFinite, "nmr_frequencies: non-finite parameter");
  }
  if (p.b_gauss < 0.0) throw Error(ErrorKind::ConfigError, "B must be >= 0 Gauss");
  const double zeeman_mhz = p.gamma_n_khz_per_gauss * p.b_gauss / 1000.0;
  double a = std::abs(p.q_mhz + zeeman_mhz);
  double b = std::abs(p.q_mhz - zeeman_mhz);
  if (a > b) std::swap(a, b);
  return {a, b};
}

void NoiseModel::validate() const {
  if (!std::isfinite(pulse_angle_error_std) || pulse_angle_error_std < 0.0) {
    throw Error(ErrorKind::ConfigError, "noise.pulse_angle_error_std must be finite and >= 0");
  }
  require_probability(init_error_prob, "init_error_prob");
  require_probability(nuclear_flip_prob, "nuclear_flip_prob");
  require_probability(charge_good_prob, "charge_good_prob");
  if (!std::isfinite(lambda_bright) || lambda_bright < 0.0) {
    throw Error(ErrorKind::ConfigError, "noise.lambda_bright must be finite and >= 0");
  }
  if (!std::isfinite(lambda_dark) || lambda_dark < 0.0) {
    throw Error(ErrorKind::ConfigError, "noise.lambda_dark must be finite and >= 0");
  }
  if (readout_threshold < 0) throw Error(ErrorKind::ConfigError, "noise.readout_threshold must be >= 0");
  if (init_threshold < 0) throw Error(ErrorKind::ConfigError, "noise.init_threshold must be >= 0");
}

ReadoutConfusion readout_confusion(const NoiseModel& noise) {
  const double bright_low = poisson_cdf(noise.readout_threshold, noise.lambda_bright);
  const double dark_high = 1.0 - poisson_cdf(noise.readout_threshold, noise.lambda_dark);
  // Polarity decides which photon law each true outcome follows; the assigned
  // bit is always "looks like |+1>".
  return {bright_low, dark_high};
}

ReadoutResult single_shot_readout(const StateVector& psi, const NoiseModel& noise, Rng& rng) {
  const double p_plus = std::norm(psi[Level::Plus]);
  const int outcome = uniform01(rng) < p_plus ? 1 : 0;

  StateVector post;
  if (outcome == 1) {
    post = StateVector::basis(Level::Plus);
  } else {
    const double rest = std::norm(psi[Level::Zero]) + std::norm(psi[Level::Minus]);
    post = rest > 1e-300 ? make_state(0.0, psi[Level::Zero], psi[Level::Minus])
                         : StateVector::basis(Level::Zero);
  }

  if (noise.nuclear_flip_prob > 0.0 && uniform01(rng) < noise.nuclear_flip_prob && outcome == 0) {
    // The |+1> subspace is one-dimensional, so only outcome 0 can change.
    std::normal_distribution<double> g(0.0, 1.0);
    const Complex a{g(rng), g(rng)};
    const Complex b{g(rng), g(rng)};
    post = make_state(0.0, a, b);
  }

  const bool bright = (outcome == 1) == noise.plus_is_bright;
  const int count = poisson(bright ? noise.lambda_bright : noise.lambda_dark, rng);
  const bool above = count > noise.readout_threshold;
  const int bit = (above == noise.plus_is_bright) ? 1 : 0;
  return {bit, outcome, post, count};
}

StateVector initialize(const NoiseModel& noise, Rng& rng) {
  const double u = uniform01(rng);
  if (u >= noise.init_error_prob) return StateVector::basis(Level::Plus);
  return u < 0.5 * noise.init_error_prob ? StateVector::basis(Level::Zero)
                                          : StateVector::basis(Level::Minus);
}

bool charge_check(const NoiseModel& noise, Rng& rng) {
  return uniform01(rng) < noise.charge_good_prob;
}

StateVector noisy_apply(std::span<const Pulse> pulses, const NoiseModel& noise, Rng& rng,
                        const StateVector& psi) {
  StateVector out = psi;
  std::normal_distribution<double> eps(0.0, noise.pulse_angle_error_std);
  for (const Pulse& p : pulses) {
    const double scale = noise.pulse_angle_error_std > 0.0 ? 1.0 + eps(rng) : 1.0;
    out = apply(rotation({p.axis, p.angle * scale}), out, false);
  }
  return out;
}

void RunConfig::validate() const {
  if (shots_per_term < 1) throw Error(ErrorKind::ConfigError, "shots_per_term must be >= 1");
  noise.validate();
}

std::vector<MeasurementSequence> protocol_sequences(PairOrder order) {
  const double gamma = angles().gamma;
  const PulseSequence prep = psi0_preparation_pulses();
  const PulseSequence swap = swap_pulses();
  std::vector<MeasurementSequence> out;

  // Forward reads via A then A+B; Reverse reads via A+B then returns to A.
  const auto make = [&](const PulseSequence& a, const PulseSequence& b, int forward_single,
                        std::size_t single_term, std::size_t pair_term) {
    MeasurementSequence s;
    s.preparation = prep;
    s.single_term = single_term;
    s.pair_term = pair_term;
    if (order == PairOrder::Forward) {
      s.first = a;
      s.second = b;
      s.single_readout = forward_single;
    } else {
      s.first = a;
      s.first.insert(s.first.end(), b.begin(), b.end());
      s.second = inverse(b);
      s.single_readout = 1 - forward_single;
    }
    return s;
  };

  for (int i = 1; i <= 5; ++i) {
    // Plan i reads l_{2 floor(i/2)+1} then l_{2 floor((i+1)/2)}; l_i is the
    // first of these for odd i and the second for even i.
    const int single_readout = (i % 2 == 1) ? 0 : 1;
    out.push_back(make(plan_pulses(i, gamma), swap, single_readout,
                       static_cast<std::size_t>(i - 1), static_cast<std::size_t>(4 + i)));
  }

  // Read l1 directly, then l6 = U_5^dag|-1> through U_5 followed by the swap.
  PulseSequence to_l6 = plan_pulses(5, gamma);
  to_l6.insert(to_l6.end(), swap.begin(), swap.end());
  out.push_back(make({}, to_l6, 0, 10, 11));
  return out;
}

ShotOutcome simulate_shot(const MeasurementSequence& seq, const NoiseModel& noise,
                          std::uint64_t stream) {
  Rng rng = make_rng(stream);
  StateVector psi = initialize(noise, rng);
  if (!charge_check(noise, rng)) return {false, false, false};
  psi = noisy_apply(seq.preparation, noise, rng, psi);
  psi = noisy_apply(seq.first, noise, rng, psi);
  const ReadoutResult r1 = single_shot_readout(psi, noise, rng);
  psi = noisy_apply(seq.second, noise, rng, r1.post_state);
  const ReadoutResult r2 = single_shot_readout(psi, noise, rng);
  const bool b1 = r1.bit == 1;
  const bool b2 = r2.bit == 1;
  return {true, seq.single_readout == 0 ? b1 : b2, b1 && b2};
}

Estimates estimate_stats(std::span<const TermCount> counts, std::span<const double> coefficients) {
  if (coefficients.size() != counts.size()) {
    throw std::invalid_argument("estimate_stats: one coefficient per term required");
  }
  Estimates e{{}, {}, 0.0};
  double var = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const auto& c = counts[i];
    if (c.shots < 2) {
      std::ostringstream os;
      os << "term " << i << " has " << c.shots << " kept shots, need >= 2";
      throw Error(ErrorKind::InsufficientData, os.str());
    }
    const double n = static_cast<double>(c.shots);
    const double mean = static_cast<double>(c.hits) / n;
    const double p = std::clamp(mean, 1.0 / (2.0 * n), 1.0 - 1.0 / (2.0 * n));
    const double se = std::sqrt(p * (1.0 - p) / n);
    e.means.push_back(mean);
    e.stderrs.push_back(se);
    var += coefficients[i] * coefficients[i] * se * se;
  }
  e.combined_stderr = std::sqrt(var);
  return e;
}

ExperimentResult assemble_result(std::span<const SequenceCounts> counts,
                                 const std::vector<MeasurementSequence>& sequences) {
  ExperimentResult r;
  for (std::size_t s = 0; s < sequences.size(); ++s) {
    const auto& c = counts[s];
    r.counts[sequences[s].single_term] = {c.single_hits, c.kept};
    r.counts[sequences[s].pair_term] = {c.pair_hits, c.kept};
    r.kept_shots += c.kept;
    r.discarded_shots += c.attempted - c.kept;
  }
  const Estimates e = estimate_stats(r.counts, modified_coefficients());
  std::array<double, kNumTerms> means{};
  std::array<double, kNumTerms> errs{};
  std::copy(e.means.begin(), e.means.end(), means.begin());
  std::copy(e.stderrs.begin(), e.stderrs.end(), errs.begin());
  r.terms = TermSet::from_flat(means);
  r.term_stderr = TermSet::from_flat(errs);
  r.plain_value = kcbs_value(r.terms);
  r.inequality_value = modified_kcbs_value(r.terms);
  r.inequality_stderr = e.combined_stderr;
  r.violation_sigma = (r.inequality_value - 2.0) / r.inequality_stderr;
  return r;
}

ExperimentResult run_protocol(const RunConfig& config, int threads) {
  const auto counts = count_shots_parallel(config, threads);
  return assemble_result(counts, protocol_sequences(config.pair_order));
}

ExperimentResult run_protocol_serial(const RunConfig& config) {
  const auto counts = count_shots_serial(config);
  return assemble_result(counts, protocol_sequences(config.pair_order));
}

}  // namespace kcbs
