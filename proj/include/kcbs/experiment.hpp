#pragma once

// Monte Carlo model of the sequential single-shot measurement protocol:
// noisy initialization, charge-state post-selection, imperfect RF pulses,
// Poisson photon-count readout with a threshold, and shot statistics.

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <boost/random/taus88.hpp>

#include "kcbs/inequality.hpp"
#include "kcbs/qutrit.hpp"

namespace kcbs {

// Per-shot engine. A shot constructs its own engine, so seeding cost matters
// more than period; a combined Tausworthe generator seeds from three words.
using Rng = boost::random::taus88;

// Independent stream seed for one shot. Depends only on its arguments, so a
// shot draws the same numbers whichever thread runs it.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t sequence, std::uint64_t shot) noexcept;

// Engine for one shot's stream, seeded with 96 bits derived from `stream`.
Rng make_rng(std::uint64_t stream);

struct NvParameters {
  double q_mhz = 4.95;                    // quadrupole splitting
  double gamma_n_khz_per_gauss = 0.3077;  // nuclear gyromagnetic ratio
  double b_gauss = 5636.0;
};

struct TransitionFrequencies {
  double low_mhz;
  double high_mhz;
};

// |E(+-1) - E(0)| = |Q +- gamma_n B| for H = Q Iz^2 + gamma_n B Iz, sorted.
// Throws NonFinite, or ConfigError for B < 0.
TransitionFrequencies nmr_frequencies(const NvParameters& p);

struct NoiseModel {
  double pulse_angle_error_std = 0.0;  // relative: each angle becomes t (1 + eps)
  double init_error_prob = 0.0;        // split evenly between |0> and |-1>
  double lambda_bright = 14.0;         // mean photon count of the bright outcome
  double lambda_dark = 2.0;
  int readout_threshold = 5;           // bright iff count > threshold
  int init_threshold = 3;              // informational, see README
  double nuclear_flip_prob = 0.01;     // post-readout depolarization in the collapsed subspace
  double charge_good_prob = 1.0;
  bool plus_is_bright = true;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Misassignment probabilities implied by the Poisson/threshold model.
struct ReadoutConfusion {
  double plus_read_as_0;  // true |+1>, assigned 0
  double rest_read_as_1;  // true |0>/|-1>, assigned 1
};

ReadoutConfusion readout_confusion(const NoiseModel& noise);

struct ReadoutResult {
  int bit;            // assigned outcome
  int true_outcome;   // 1 iff the projective outcome was |+1>
  StateVector post_state;
  int photon_count;
};

ReadoutResult single_shot_readout(const StateVector& psi, const NoiseModel& noise, Rng& rng);
StateVector initialize(const NoiseModel& noise, Rng& rng);
bool charge_check(const NoiseModel& noise, Rng& rng);
StateVector noisy_apply(std::span<const Pulse> pulses, const NoiseModel& noise, Rng& rng,
                        const StateVector& psi);

struct RunConfig {
  std::uint64_t seed = 0;
  std::int64_t shots_per_term = 10000;
  NoiseModel noise;
  PairOrder pair_order = PairOrder::Forward;

  void validate() const;
};

// One measurement sequence: prepare psi0, apply `first`, read, apply
// `second`, read. `single_readout` (0 or 1) names the readout whose bit
// estimates `single_term`; the AND of both bits estimates `pair_term`.
struct MeasurementSequence {
  PulseSequence preparation;
  PulseSequence first;
  PulseSequence second;
  int single_readout;
  std::size_t single_term;  // index into TermSet::flat()
  std::size_t pair_term;
};

// The five plan sequences followed by the L1 / L'1 L1 correction sequence.
std::vector<MeasurementSequence> protocol_sequences(PairOrder order);

struct ShotOutcome {
  bool kept;
  bool single_bit;
  bool pair_bit;
};

ShotOutcome simulate_shot(const MeasurementSequence& seq, const NoiseModel& noise,
                          std::uint64_t stream) ;

struct SequenceCounts {
  std::int64_t attempted = 0;
  std::int64_t kept = 0;
  std::int64_t single_hits = 0;
  std::int64_t pair_hits = 0;

  friend bool operator==(const SequenceCounts&, const SequenceCounts&) = default;
};

// Shot kernels. Both return identical counts for the same config.
std::vector<SequenceCounts> count_shots_serial(const RunConfig& config);
// threads <= 0 uses the OpenMP default.
std::vector<SequenceCounts> count_shots_parallel(const RunConfig& config, int threads = 0);

struct TermCount {
  std::int64_t hits = 0;
  std::int64_t shots = 0;

  friend bool operator==(const TermCount&, const TermCount&) = default;
};

struct Estimates {
  std::vector<double> means;
  std::vector<double> stderrs;
  double combined_stderr;
};

// mean = k/n, stderr = sqrt(p(1-p)/n) with p clamped to [1/2n, 1 - 1/2n];
// combined = sqrt(sum (c_i s_i)^2). Throws InsufficientData when any n < 2.
Estimates estimate_stats(std::span<const TermCount> counts, std::span<const double> coefficients);

struct ExperimentResult {
  TermSet terms;
  TermSet term_stderr;
  std::array<TermCount, kNumTerms> counts{};
  std::int64_t kept_shots = 0;
  std::int64_t discarded_shots = 0;
  double plain_value = 0.0;       // five-cycle form, no correction terms
  double inequality_value = 0.0;  // modified form
  double inequality_stderr = 0.0;
  double violation_sigma = 0.0;   // (inequality_value - 2) / inequality_stderr
};

ExperimentResult assemble_result(std::span<const SequenceCounts> counts,
                                 const std::vector<MeasurementSequence>& sequences);

ExperimentResult run_protocol(const RunConfig& config, int threads = 0);
ExperimentResult run_protocol_serial(const RunConfig& config);

}  // namespace kcbs
