// Learns one built-in fixture under sensor noise, with and without
// verification, and prints what each step settled on.
//
//   learn_fixture [fixture] [seed]

#include <cstdio>
#include <cstdlib>
#include <string>

#include "salfd/salfd.hpp"

int main(int argc, char** argv) {
  const std::string name = argc > 1 ? argv[1] : "spiral";
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 4;

  salfd::PipelineConfig cfg;
  cfg.noise = salfd::standard_noise(seed);
  const salfd::DemonstrationTrace trace = cfg.trace_for(salfd::fixture(name).events);
  const salfd::BrickCatalog& catalog = *cfg.catalog;

  for (bool verify : {false, true}) {
    cfg.verification_enabled = verify;
    const salfd::LearnReport r = salfd::learn(trace, cfg);
    std::printf("%s on %s (seed %llu): %s, cost %d\n", verify ? "SaLfD" : "LfD", name.c_str(),
                static_cast<unsigned long long>(seed), r.success ? "exact" : "mismatch", r.cost);
    for (std::size_t i = 0; i < r.per_step.size(); ++i) {
      const auto& s = r.per_step[i];
      const auto& truth = trace.events[i];
      if (!s.ok()) {
        std::printf("  %2d  failed: %s\n", s.step, s.error.c_str());
        continue;
      }
      const auto& b = *s.accepted;
      std::printf("  %2d  %s w%d %s %-7s %s", s.step, catalog.at(b.id).name().c_str(),
                  salfd::to_int(b.omega), salfd::to_string(b.position).c_str(),
                  std::string(salfd::to_string(b.color)).c_str(), b == truth ? "ok" : "WRONG");
      if (s.outcome) {
        std::printf("  s=%.3f after %zu trial(s), %s", s.outcome->s, s.outcome->trials.size(),
                    std::string(salfd::to_string(s.outcome->via)).c_str());
      }
      if (b != truth) {
        std::printf("  (demonstrated %s w%d %s %s)", catalog.at(truth.id).name().c_str(),
                    salfd::to_int(truth.omega), salfd::to_string(truth.position).c_str(),
                    std::string(salfd::to_string(truth.color)).c_str());
      }
      std::printf("\n");
    }
  }
  return 0;
}
