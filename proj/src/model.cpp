#include "mecsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mecsim/channel.hpp"
#include "mecsim/rng.hpp"

namespace mecsim {

const DeviceClass& Catalog::find_class(const std::string& name) const {
  for (const auto& c : classes)
    if (c.name == name) return c;
  throw std::invalid_argument("unknown device class: " + name);
}

const TaskSpec& Catalog::find_task(const std::string& name) const {
  for (const auto& t : tasks)
    if (t.name == name) return t;
  throw std::invalid_argument("unknown task type: " + name);
}

void validate(const Scenario& s) {
  if (s.n_md < 1) throw std::invalid_argument("n_md must be >= 1");
  if (s.n_es < 1) throw std::invalid_argument("n_es must be >= 1");
  if (!(s.area_side > 0.0)) throw std::invalid_argument("area_side must be > 0");
  if (s.cluster_spec.count < 0) throw std::invalid_argument("cluster_spec.count must be >= 0");
  if (s.cluster_spec.radius < 0.0) throw std::invalid_argument("cluster_spec.radius must be >= 0");
  if (s.cluster_spec.radius > s.area_side)
    throw std::invalid_argument("cluster_spec.radius must not exceed area_side");
  if (s.cluster_spec.member_fraction < 0.0 || s.cluster_spec.member_fraction > 1.0)
    throw std::invalid_argument("cluster_spec.member_fraction must be in [0,1]");
  if (s.cluster_spec.member_fraction > 0.0 && s.cluster_spec.count == 0)
    throw std::invalid_argument("cluster_spec.count must be >= 1 when member_fraction > 0");
  if (s.alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  if (s.epsilon_local < 0.0 || s.epsilon_local > 1.0)
    throw std::invalid_argument("epsilon_local must be in [0,1]");
  if (!(s.total_bandwidth > 0.0)) throw std::invalid_argument("total_bandwidth must be > 0");
  if (!(s.noise_psd > 0.0)) throw std::invalid_argument("noise_psd must be > 0");
  if (!(s.reg_epsilon > 0.0)) throw std::invalid_argument("reg_epsilon must be > 0");
  if (s.steps < 0) throw std::invalid_argument("steps must be >= 0");
  if (!(s.eta1 > 0.0) || !(s.eta2 > 0.0))
    throw std::invalid_argument("step_sizes must be > 0");
  if (!(s.dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (s.warmup_fraction < 0.0 || s.warmup_fraction >= 1.0)
    throw std::invalid_argument("warmup_fraction must be in [0,1)");
  if (s.price_warmup_iters < 0)
    throw std::invalid_argument("price_warmup_iters must be >= 0");
  if (s.n_seeds < 1) throw std::invalid_argument("n_seeds must be >= 1");
  if (!s.es_positions.empty() && static_cast<int>(s.es_positions.size()) != s.n_es)
    throw std::invalid_argument("es_positions must list exactly n_es points");
}

TaskSpec sample_task(const std::vector<std::pair<std::string, double>>& mix,
                     const Catalog& catalog, Rng& rng) {
  if (catalog.tasks.empty()) throw std::invalid_argument("task catalog is empty");
  if (mix.empty()) throw std::invalid_argument("task mix is empty");
  std::vector<double> weights;
  weights.reserve(mix.size());
  for (const auto& [name, w] : mix) {
    if (w < 0.0) throw std::invalid_argument("task mix weight must be >= 0: " + name);
    weights.push_back(w);
  }
  const std::size_t k = rng.discrete(weights);  // exactly one draw
  return catalog.find_task(mix[k].first);
}

Network generate_scenario(const Scenario& config, const Catalog& catalog) {
  validate(config);
  if (config.task_mix.empty())
    throw std::invalid_argument("scenario needs a non-empty task_mix");

  Network net;
  net.config = config;

  const DeviceClass& md_cls = catalog.find_class(config.md_class);
  const DeviceClass& es_cls = catalog.find_class(config.es_class);

  Rng place = Rng::substream(config.seed, streams::kPlacement);
  const double side = config.area_side;

  // Edge servers: explicit grid if configured, otherwise uniform placement.
  // The shared spectrum splits equally across servers.
  const double w_j = config.total_bandwidth / config.n_es;
  net.ess.reserve(config.n_es);
  for (int j = 0; j < config.n_es; ++j) {
    EdgeServer es;
    es.id = j;
    if (!config.es_positions.empty()) {
      es.x = config.es_positions[j].first;
      es.y = config.es_positions[j].second;
    } else {
      es.x = place.uniform(0.0, side);
      es.y = place.uniform(0.0, side);
    }
    es.cls = es_cls;
    es.bandwidth = w_j;
    net.ess.push_back(std::move(es));
  }

  // Hot-spot centers for clustered users.
  std::vector<std::pair<double, double>> centers;
  for (int c = 0; c < config.cluster_spec.count; ++c)
    centers.emplace_back(place.uniform(0.0, side), place.uniform(0.0, side));

  const int n_clustered = static_cast<int>(
      std::floor(config.cluster_spec.member_fraction * config.n_md + 0.5));

  net.mds.reserve(config.n_md);
  for (int i = 0; i < config.n_md; ++i) {
    MobileDevice md;
    md.id = i;
    if (i < n_clustered && !centers.empty()) {
      // Uniform draw inside the disk around center i % count, clamped to the
      // area so no user leaves the world.
      const auto& [cx, cy] = centers[i % centers.size()];
      const double r = config.cluster_spec.radius * std::sqrt(place.uniform());
      const double theta = 6.283185307179586 * place.uniform();
      md.x = std::clamp(cx + r * std::cos(theta), 0.0, side);
      md.y = std::clamp(cy + r * std::sin(theta), 0.0, side);
    } else {
      md.x = place.uniform(0.0, side);
      md.y = place.uniform(0.0, side);
    }
    md.cls = md_cls;
    md.battery = md_cls.battery_capacity;
    net.mds.push_back(std::move(md));
  }

  // First task of every device comes from the head of that device's task
  // stream; the episode engine continues the same streams.
  net.initial_tasks.reserve(config.n_md);
  for (int i = 0; i < config.n_md; ++i) {
    Rng task_rng = Rng::substream(config.seed, streams::kTaskBase + static_cast<std::uint64_t>(i));
    net.initial_tasks.push_back(sample_task(config.task_mix, catalog, task_rng));
  }

  // Precompute the channel table.
  Rng shadow = Rng::substream(config.seed, streams::kShadowing);
  ChannelTable table = build_channel_table(
      net.mds, net.ess, config.noise_psd, config.shadowing_sigma_db,
      config.shadowing_sigma_db > 0.0 ? &shadow : nullptr);
  net.rate = std::move(table.rate);
  net.snr = std::move(table.snr);
  return net;
}

}  // namespace mecsim
