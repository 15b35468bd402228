#include "symvol/montecarlo.hpp"

#include "symvol/hull.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

namespace symvol {
namespace {

// Chunks group a fixed number of batches so that the Welford merge tree
// depends only on (samples, batch), never on the worker count.
constexpr std::uint64_t kBatchesPerChunk = 64;

struct Welford {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Welford& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double delta = other.mean - mean;
    const std::uint64_t total = count + other.count;
    mean += delta * (static_cast<double>(other.count) / static_cast<double>(total));
    m2 += other.m2 + delta * delta * static_cast<double>(count) *
                         static_cast<double>(other.count) / static_cast<double>(total);
    count = total;
  }
};

double replicate(const Body& body, int dim, const MomentSpec& spec, RandomStream& stream,
                 HullWorkspace& ws, const SampleOverride& override_sampler,
                 std::uint64_t replication) {
  double buf[3];
  double hull = 0.0;
  if (dim == 2) {
    ws.pts2.clear();
    for (int i = 0; i < spec.num_points; ++i) {
      if (override_sampler) {
        override_sampler(stream, buf);
      } else {
        body.sample(stream, buf);
      }
      ws.pts2.emplace_back(buf[0], buf[1]);
    }
    if (spec.symmetric) {
      const int n = spec.num_points;
      for (int i = 0; i < n; ++i) ws.pts2.push_back(-ws.pts2[i]);
    }
    hull = hull_area_2d_ws(ws);
  } else {
    ws.pts3.clear();
    for (int i = 0; i < spec.num_points; ++i) {
      if (override_sampler) {
        override_sampler(stream, buf);
      } else {
        body.sample(stream, buf);
      }
      ws.pts3.emplace_back(buf[0], buf[1], buf[2]);
    }
    if (spec.symmetric) {
      hull = symmetric_hull_volume_3d_ws(ws);
    } else {
      hull = hull_volume_3d(ws.pts3);
    }
  }
  const double normalized = hull / body.volume();
  if (!(normalized >= 0.0 && normalized <= 1.0 + 1e-9)) {
    std::ostringstream msg;
    msg << "normalized hull volume " << normalized << " outside [0,1] at replication "
        << replication << " (hull bug guard)";
    throw std::logic_error(msg.str());
  }
  if (spec.power == 1.0) return normalized;
  if (spec.power == 2.0) return normalized * normalized;
  return std::pow(normalized, spec.power);
}

// Runs fn(batch_index, first_replication, count, worker_state&) over every
// batch, batches grouped into fixed chunks processed in batch order within
// each chunk. State is per chunk, so results can be reduced deterministically.
template <typename State, typename BatchFn>
std::vector<State> run_batches(const MCConfig& cfg, BatchFn&& fn) {
  const std::uint64_t nbatches = (cfg.samples + cfg.batch - 1) / cfg.batch;
  const std::uint64_t nchunks = (nbatches + kBatchesPerChunk - 1) / kBatchesPerChunk;
  std::vector<State> chunk_states(nchunks);

  std::atomic<std::uint64_t> next_chunk{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    try {
      while (true) {
        const std::uint64_t chunk = next_chunk.fetch_add(1);
        if (chunk >= nchunks) return;
        const std::uint64_t batch_lo = chunk * kBatchesPerChunk;
        const std::uint64_t batch_hi = std::min(nbatches, batch_lo + kBatchesPerChunk);
        for (std::uint64_t b = batch_lo; b < batch_hi; ++b) {
          const std::uint64_t first = b * cfg.batch;
          const std::uint64_t count = std::min(cfg.batch, cfg.samples - first);
          fn(b, first, count, chunk_states[chunk]);
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  const int nthreads = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(std::max(cfg.workers, 1)), nchunks));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return chunk_states;
}

}  // namespace

void MCConfig::validate() const {
  if (samples < 1 || batch < 1 || samples < batch) {
    throw std::domain_error("Monte Carlo config requires samples >= batch >= 1");
  }
  if (workers < 1) throw std::domain_error("Monte Carlo config requires workers >= 1");
}

MomentEstimate estimate_moment(const Body& body, const MomentSpec& spec, const MCConfig& cfg,
                               const SampleOverride& sample_override) {
  spec.validate(body.dimension());
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const int dim = body.dimension();

  struct ChunkState {
    Welford stats;
    HullWorkspace ws;
  };
  auto chunks = run_batches<ChunkState>(
      cfg, [&](std::uint64_t batch_index, std::uint64_t first, std::uint64_t count,
               ChunkState& state) {
        RandomStream stream(cfg.seed, batch_index);
        for (std::uint64_t i = 0; i < count; ++i) {
          state.stats.add(
              replicate(body, dim, spec, stream, state.ws, sample_override, first + i));
        }
      });

  Welford total;
  for (const auto& chunk : chunks) total.merge(chunk.stats);

  MomentEstimate estimate;
  estimate.mean = total.mean;
  estimate.samples = total.count;
  estimate.spec = spec;
  estimate.seed = cfg.seed;
  if (total.count > 1) {
    const double variance = total.m2 / static_cast<double>(total.count - 1);
    estimate.std_error = std::sqrt(variance / static_cast<double>(total.count));
  }
  estimate.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return estimate;
}

std::vector<std::pair<double, double>> empirical_cdf(const Body& body, const MomentSpec& spec,
                                                     const MCConfig& cfg,
                                                     std::span<const double> grid) {
  spec.validate(body.dimension());
  cfg.validate();
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::domain_error("empirical_cdf requires a sorted grid");
  }
  const int dim = body.dimension();

  struct ChunkState {
    std::vector<std::uint64_t> counts;
    HullWorkspace ws;
  };
  auto chunks = run_batches<ChunkState>(
      cfg, [&](std::uint64_t batch_index, std::uint64_t first, std::uint64_t count,
               ChunkState& state) {
        if (state.counts.empty()) state.counts.assign(grid.size() + 1, 0);
        RandomStream stream(cfg.seed, batch_index);
        MomentSpec raw = spec;
        raw.power = 1.0;
        for (std::uint64_t i = 0; i < count; ++i) {
          const double v = replicate(body, dim, raw, stream, state.ws, nullptr, first + i);
          const std::size_t bucket =
              std::lower_bound(grid.begin(), grid.end(), v) - grid.begin();
          ++state.counts[bucket];
        }
      });

  std::vector<std::uint64_t> counts(grid.size() + 1, 0);
  for (const auto& chunk : chunks) {
    for (std::size_t k = 0; k < chunk.counts.size(); ++k) counts[k] += chunk.counts[k];
  }
  std::vector<std::pair<double, double>> cdf;
  cdf.reserve(grid.size());
  std::uint64_t running = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    running += counts[k];
    cdf.emplace_back(grid[k], static_cast<double>(running) / static_cast<double>(cfg.samples));
  }
  return cdf;
}

CompareReport compare_bodies(const std::vector<std::pair<std::string, const Body*>>& bodies,
                             const MomentSpec& spec, const MCConfig& cfg) {
  if (bodies.empty()) throw std::domain_error("compare_bodies requires at least one body");
  const int dim = bodies.front().second->dimension();
  for (const auto& [name, body] : bodies) {
    if (body->dimension() != dim) {
      throw std::domain_error("compare_bodies requires bodies of one dimension");
    }
  }
  CompareReport report;
  for (const auto& [name, body] : bodies) {
    report.rows.push_back({name, estimate_moment(*body, spec, cfg)});
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const CompareRow& a, const CompareRow& b) {
              return a.estimate.mean < b.estimate.mean;
            });
  const int n = static_cast<int>(report.rows.size());
  report.z_scores = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double sa = report.rows[i].estimate.std_error;
      const double sb = report.rows[j].estimate.std_error;
      const double scale = std::sqrt(sa * sa + sb * sb);
      const double gap = report.rows[i].estimate.mean - report.rows[j].estimate.mean;
      report.z_scores(i, j) = scale > 0.0 ? gap / scale : 0.0;
    }
  }
  return report;
}

std::string estimate_json_line(const std::string& body_name, const MomentEstimate& estimate,
                               bool include_elapsed) {
  nlohmann::json doc;
  doc["body"] = body_name;
  doc["N"] = estimate.spec.num_points;
  doc["p"] = estimate.spec.power;
  doc["symmetric"] = estimate.spec.symmetric;
  doc["mean"] = estimate.mean;
  doc["std_error"] = estimate.std_error;
  doc["samples"] = estimate.samples;
  doc["seed"] = estimate.seed;
  if (include_elapsed) doc["elapsed_seconds"] = estimate.elapsed_seconds;
  return doc.dump();
}

}  // namespace symvol
