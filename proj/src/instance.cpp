#include "mecsim/instance.hpp"

namespace mecsim {

OffloadInstance OffloadInstance::from_network(const Network& net) {
  OffloadInstance inst;
  inst.n_md = static_cast<int>(net.mds.size());
  inst.n_es = static_cast<int>(net.ess.size());
  inst.alpha = net.config.alpha;
  inst.reg_eps = net.config.reg_epsilon;
  inst.task = net.initial_tasks;
  inst.active.assign(inst.n_md, 1);
  inst.battery.reserve(inst.n_md);
  inst.md_cls.reserve(inst.n_md);
  for (const auto& md : net.mds) {
    inst.battery.push_back(md.battery);
    inst.md_cls.push_back(md.cls);
  }
  inst.es_cls.reserve(inst.n_es);
  for (const auto& es : net.ess) inst.es_cls.push_back(es.cls);
  inst.rate = net.rate;
  inst.snr = net.snr;
  return inst;
}

}  // namespace mecsim
