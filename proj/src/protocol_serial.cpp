// Reference shot loop. Kept single-threaded so the OpenMP kernel has an
// independent baseline to be compared against.

#include "kcbs/experiment.hpp"

namespace kcbs {

std::vector<SequenceCounts> count_shots_serial(const RunConfig& config) {
  config.validate();
  const auto sequences = protocol_sequences(config.pair_order);
  std::vector<SequenceCounts> counts(sequences.size());
  for (std::size_t s = 0; s < sequences.size(); ++s) {
    auto& c = counts[s];
    for (std::int64_t shot = 0; shot < config.shots_per_term; ++shot) {
      const ShotOutcome o = simulate_shot(sequences[s], config.noise,
                                          stream_seed(config.seed, s, static_cast<std::uint64_t>(shot)));
      ++c.attempted;
      if (!o.kept) continue;
      ++c.kept;
      c.single_hits += o.single_bit;
      c.pair_hits += o.pair_bit;
    }
  }
  return counts;
}

}  // namespace kcbs
