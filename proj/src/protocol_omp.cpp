#include "kcbs/experiment.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kcbs {

std::vector<SequenceCounts> count_shots_parallel(const RunConfig& config, int threads) {
  config.validate();
  const auto sequences = protocol_sequences(config.pair_order);
  const auto num_seq = static_cast<std::int64_t>(sequences.size());
  const std::int64_t shots = config.shots_per_term;
  const std::int64_t total = num_seq * shots;

  std::vector<SequenceCounts> counts(sequences.size());
  for (auto& c : counts) c.attempted = shots;

  // Flattened (sequence, shot) loop; per-sequence integer sums are
  // order-independent, so any schedule gives the serial result.
  std::vector<std::int64_t> kept(sequences.size()), single(sequences.size()), pair(sequences.size());
  std::int64_t* kept_p = kept.data();
  std::int64_t* single_p = single.data();
  std::int64_t* pair_p = pair.data();

#ifdef _OPENMP
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nthreads) \
    reduction(+ : kept_p[:num_seq], single_p[:num_seq], pair_p[:num_seq])
#else
  (void)threads;
#endif
  for (std::int64_t k = 0; k < total; ++k) {
    const std::int64_t s = k / shots;
    const std::int64_t shot = k % shots;
    const ShotOutcome o =
        simulate_shot(sequences[static_cast<std::size_t>(s)], config.noise,
                      stream_seed(config.seed, static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(shot)));
    if (!o.kept) continue;
    kept_p[s] += 1;
    single_p[s] += o.single_bit;
    pair_p[s] += o.pair_bit;
  }

  for (std::size_t s = 0; s < counts.size(); ++s) {
    counts[s].kept = kept[s];
    counts[s].single_hits = single[s];
    counts[s].pair_hits = pair[s];
  }
  return counts;
}

}  // namespace kcbs
