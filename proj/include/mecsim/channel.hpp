#ifndef MECSIM_CHANNEL_HPP
#define MECSIM_CHANNEL_HPP

#include <vector>

#include "mecsim/model.hpp"

namespace mecsim {

class Rng;

// Uplink channel quality between every MD/ES pair.
struct ChannelTable {
  int n_md = 0, n_es = 0;
  std::vector<double> gain;  // |h|^2 linear power gain
  std::vector<double> snr;   // linear SNR
  std::vector<double> rate;  // bits/s

  double gain_at(int i, int j) const { return gain[static_cast<std::size_t>(i) * n_es + j]; }
  double snr_at(int i, int j) const { return snr[static_cast<std::size_t>(i) * n_es + j]; }
  double rate_at(int i, int j) const { return rate[static_cast<std::size_t>(i) * n_es + j]; }
};

// Log-distance pathloss, 41 + 28*log10(d[m]); distances below 1 m clamp to
// the 1 m reference so the formula never goes negative.
double pathloss_db(double distance_m);

// Linear power gain 10^(-PL/10) for a given distance.
double linear_gain(double distance_m);

// SNR of the md->es uplink when the noise floor is noise_psd * bandwidth(es).
// Dimensionless; zero transmit power gives exactly zero.
double snr(const MobileDevice& md, const EdgeServer& es, double noise_psd);

// Shannon-style spectral rate W_j * log2(1 + SNR) in bits/s.
double rate_from_snr(double bandwidth_hz, double snr_linear);
double spectral_rate(const MobileDevice& md, const EdgeServer& es, double noise_psd);

// Dense table for a whole deployment.  Optional log-normal shadowing
// (sigma_db > 0) multiplies each gain by 10^(N(0,sigma)/10) using the given
// rng; default paths are deterministic pathloss only.
ChannelTable build_channel_table(const std::vector<MobileDevice>& mds,
                                 const std::vector<EdgeServer>& ess,
                                 double noise_psd, double shadowing_sigma_db = 0.0,
                                 Rng* rng = nullptr);

}  // namespace mecsim

#endif  // MECSIM_CHANNEL_HPP
