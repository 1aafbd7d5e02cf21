#include "mbg/maker.hpp"

namespace mbg::maker {

std::unique_ptr<MakerStrategy> make_maker(const std::string& name, const Config& cfg,
                                          std::uint64_t seed, std::uint32_t target_degree) {
  const Config own = cfg.section(name);
  if (name == "connectivity") return std::make_unique<ConnectivityMaker>();
  if (name == "pm") return std::make_unique<PmMaker>(own, seed);
  if (name == "greedy-pm") return std::make_unique<GreedyPmMaker>();
  if (name == "hnf") return std::make_unique<HnfMaker>(own, seed);
  if (name == "hvs") return std::make_unique<HvsMaker>(own, seed);
  if (name == "hs") return std::make_unique<HsMaker>(own, seed);
  if (name == "mindeg" || name == "mindeg-random") {
    if (target_degree == 0) throw GameError(ErrorKind::ConfigError, name + " needs a target degree c >= 1");
    if (name == "mindeg") return std::make_unique<degree::MinDegreeMaker>(target_degree);
    return std::make_unique<degree::MinDegreeMaker>(target_degree, seed);
  }
  throw GameError(ErrorKind::ConfigError, "unknown maker '" + name + "'");
}

std::vector<std::string> maker_names() {
  return {"connectivity", "pm", "greedy-pm", "hnf", "hvs", "hs", "mindeg", "mindeg-random"};
}

}  // namespace mbg::maker
