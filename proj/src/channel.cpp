#include "mecsim/channel.hpp"

#include <cmath>

#include "mecsim/rng.hpp"

namespace mecsim {

double pathloss_db(double distance_m) {
  const double d = distance_m < 1.0 ? 1.0 : distance_m;
  return 41.0 + 28.0 * std::log10(d);
}

double linear_gain(double distance_m) {
  return std::pow(10.0, -pathloss_db(distance_m) / 10.0);
}

namespace {
inline double distance(const MobileDevice& md, const EdgeServer& es) {
  const double dx = md.x - es.x, dy = md.y - es.y;
  return std::sqrt(dx * dx + dy * dy);
}
}  // namespace

double snr(const MobileDevice& md, const EdgeServer& es, double noise_psd) {
  const double noise_w = noise_psd * es.bandwidth;
  if (noise_w <= 0.0) return 0.0;
  return md.cls.tx_power * linear_gain(distance(md, es)) / noise_w;
}

double rate_from_snr(double bandwidth_hz, double snr_linear) {
  return bandwidth_hz * std::log2(1.0 + snr_linear);
}

double spectral_rate(const MobileDevice& md, const EdgeServer& es, double noise_psd) {
  return rate_from_snr(es.bandwidth, snr(md, es, noise_psd));
}

ChannelTable build_channel_table(const std::vector<MobileDevice>& mds,
                                 const std::vector<EdgeServer>& ess,
                                 double noise_psd, double shadowing_sigma_db,
                                 Rng* rng) {
  ChannelTable table;
  table.n_md = static_cast<int>(mds.size());
  table.n_es = static_cast<int>(ess.size());
  const std::size_t n = mds.size() * ess.size();
  table.gain.resize(n);
  table.snr.resize(n);
  table.rate.resize(n);

  // Shadowing draws happen in a fixed (i, j) order so the table is
  // reproducible.  A Box-Muller pair is consumed per link.
  for (int i = 0; i < table.n_md; ++i) {
    for (int j = 0; j < table.n_es; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * table.n_es + j;
      double g = linear_gain(distance(mds[i], ess[j]));
      if (shadowing_sigma_db > 0.0 && rng != nullptr) {
        const double u1 = rng->uniform();
        const double u2 = rng->uniform();
        const double z =
            std::sqrt(-2.0 * std::log(u1 > 0.0 ? u1 : 5e-324)) *
            std::cos(6.283185307179586 * u2);
        g *= std::pow(10.0, shadowing_sigma_db * z / 10.0);
      }
      const double noise_w = noise_psd * ess[j].bandwidth;
      const double s = noise_w > 0.0 ? mds[i].cls.tx_power * g / noise_w : 0.0;
      table.gain[k] = g;
      table.snr[k] = s;
      table.rate[k] = rate_from_snr(ess[j].bandwidth, s);
    }
  }
  return table;
}

}  // namespace mecsim
