#ifndef MECSIM_MODEL_HPP
#define MECSIM_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace mecsim {

// Battery sentinel: devices with unlimited supply never deplete and are
// excluded from the energy-preservation term of the objective.
inline constexpr double kUnlimitedBattery = -1.0;

inline bool battery_unlimited(double capacity) { return capacity < 0.0; }

// Hardware description shared by mobile devices and edge servers.  The
// MD-only and ES-only fields are simply ignored on the other side.
struct DeviceClass {
  std::string name;
  int cores = 1;                        // parallel units (Z)
  double flops_per_core = 0.0;          // flops/s per core (F)
  double compute_energy_coeff = 0.0;    // W per (flops/s) of active compute
  double tx_power = 0.0;                // W, uplink transmit power (MD only)
  double comm_energy_coeff = 0.0;       // dimensionless radio overhead (MD only)
  double base_power = 0.0;              // W, always-on floor (MD only)
  double battery_capacity = kUnlimitedBattery;  // J, <0 means unlimited
  double reserved_memory_fraction = 0.0;        // [0,1], VRAM held back (ES only)

  double total_flops() const { return flops_per_core * cores; }
};

// One inference task: how much to ship, how much to compute, and how much of
// the compute parallelizes across cores.
struct TaskSpec {
  std::string name;
  double bits = 0.0;              // uplink payload d (bits)
  double flops = 0.0;             // compute load f (flops)
  double parallel_fraction = 0.0; // rho in [0,1]
  double memory_fraction = 0.0;   // m in [0,1], share of server VRAM
  std::string kind;               // "vision" | "language"
};

struct MobileDevice {
  int id = 0;
  double x = 0.0, y = 0.0;  // meters
  DeviceClass cls;
  double battery = kUnlimitedBattery;  // J remaining, <0 means unlimited
};

struct EdgeServer {
  int id = 0;
  double x = 0.0, y = 0.0;  // meters
  DeviceClass cls;
  double bandwidth = 0.0;  // Hz, this server's licensed slice W_j
};

struct ClusterSpec {
  int count = 0;             // number of hot-spot clusters
  double radius = 0.0;       // meters
  double member_fraction = 0.0;  // share of MDs placed inside clusters
};

// Scenario configuration.  Field names match the JSON schema one-to-one.
struct Scenario {
  int n_md = 1;
  int n_es = 1;
  double area_side = 1000.0;            // meters, square world
  ClusterSpec cluster_spec;
  std::vector<std::pair<std::string, double>> task_mix;  // (catalog name, weight)
  double alpha = 1.0;                   // energy-preservation weight
  double epsilon_local = 0.2;           // baseline local-compute probability
  double total_bandwidth = 1.0e8;       // Hz, shared spectrum W
  double noise_psd = 3.9810717055349694e-21;  // W/Hz (-174 dBm/Hz)
  double reg_epsilon = 1.0e-12;         // shared regularizer
  std::uint64_t seed = 1;
  int steps = 2000;
  double eta1 = 0.01, eta2 = 0.01;      // price step sizes
  double dt = 0.01;                     // s per simulation step

  // Plumbing beyond the core schema.
  std::string catalog_path = "catalog_default.json";  // relative to the config file
  std::string md_class = "phone_mid";
  std::string es_class = "edge_small";
  std::vector<std::pair<double, double>> es_positions;  // optional fixed grid
  std::vector<std::string> policies;    // which policies `simulate` runs
  double warmup_fraction = 0.1;         // head of the episode excluded from metrics
  // Dual iterations on the initial task set before the first decision, so the
  // opening prices already reflect that load.  Without this, every device sees
  // the same unconverged prices at t=0 and floods whichever server drew the
  // cheapest initial price; the flood cannot drain quickly and, since devices
  // only re-decide when a task finishes, the episode can stay wedged for its
  // whole duration.  0 disables.
  int price_warmup_iters = 1000;
  bool trace = false;                   // dump per-step price trace
  bool memory_strict = false;           // reject offloads that overflow VRAM
  double shadowing_sigma_db = 0.0;      // log-normal shadowing, 0 disables
  int n_seeds = 1;                      // seed replicas for sweeps
};

// Catalog of device classes and task types loaded from JSON.
struct Catalog {
  std::vector<DeviceClass> classes;
  std::vector<TaskSpec> tasks;

  const DeviceClass& find_class(const std::string& name) const;
  const TaskSpec& find_task(const std::string& name) const;
};

class Rng;
struct ChannelTable;

// Fully generated world: devices, servers, initial tasks, channel table.
struct Network {
  Scenario config;
  std::vector<MobileDevice> mds;
  std::vector<EdgeServer> ess;
  std::vector<TaskSpec> initial_tasks;  // one per MD, first draw of its stream
  std::vector<double> rate;  // R_ij bits/s, row-major [i * n_es + j]
  std::vector<double> snr;   // linear SNR_ij, row-major

  double rate_at(int i, int j) const { return rate[static_cast<std::size_t>(i) * ess.size() + j]; }
  double snr_at(int i, int j) const { return snr[static_cast<std::size_t>(i) * ess.size() + j]; }
};

// Deterministic world construction; same (config, catalog) => identical
// Network bit for bit, including the task sequence implied by the seed.
Network generate_scenario(const Scenario& config, const Catalog& catalog);

// Weighted draw from the catalog restricted to the mix entries.  Consumes
// exactly one RNG value, so per-device task streams advance in lock step
// with the draw count.
TaskSpec sample_task(const std::vector<std::pair<std::string, double>>& mix,
                     const Catalog& catalog, Rng& rng);

// Input validation; throws std::invalid_argument with a field-specific
// message on the first violated constraint.
void validate(const Scenario& config);

}  // namespace mecsim

#endif  // MECSIM_MODEL_HPP
