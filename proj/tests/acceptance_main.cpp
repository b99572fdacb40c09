// Acceptance suite: runs the ten headline criteria end to end at their
// pinned tolerances and prints one pass/fail line per criterion.
#include <cstdio>
#include <string>
#include <vector>

#include "entkit/verify.hpp"

namespace {

struct Criterion {
  int number;
  std::string description;
  std::vector<std::string> check_ids;
};

}  // namespace

int main() {
  using entkit::CheckResult;
  using entkit::VerifyConfig;

  const std::vector<Criterion> criteria = {
      {1,
       "superactivation: two-copy partial-transpose expectation -1/16 and "
       "minimum eigenvalue at most -1/16",
       {"superactivation.minus-one-sixteenth"}},
      {2,
       "negativity non-monotonicity: 1/d maps to (d-1)/(2d) for d = 4, 5, 6",
       {"negativity.ppt-preserving-ratio"}},
      {3, "isotropic PPT threshold located at d/(d+1) within 1e-9 for d = 2..6",
       {"isotropic.ppt-threshold"}},
      {4,
       "coefficients (16/18, 1/18, 1/18): unit half-entropy, strictly larger "
       "entropies below one half, and a rank-raising conversion",
       {"renyi.increase-below-half"}},
      {5,
       "alpha relative entropy of entanglement equals the (1/alpha) entropy "
       "on random pure states with nonnegative stationarity derivatives",
       {"renyi.ER-alpha-equivalence"}},
      {6,
       "derivative machinery: finite-difference agreement and scalar "
       "inequality sweeps without violations",
       {"frechet.fd-agreement", "frechet.technical-lemma",
        "frechet.xpyp-lemma"}},
      {7,
       "Werner projection thresholds at (d-k)/k and (d-k-1)/(k+1) located by "
       "bisection to 1e-6",
       {"k-ne.werner-projection-thresholds"}},
      {8,
       "fifty random NPT states convert to entangled two-qubit states "
       "through witness channels with PPT Choi matrices",
       {"distill.npt-to-distillable"}},
      {9,
       "GHZ to W under a map undetected by five random witnesses, with PSD "
       "Omega and exact output",
       {"stochastic.ghz-to-w"}},
      {10,
       "explicit constants satisfy both inequalities for d = 2..10 and the "
       "rank-raising side conditions hold for (k,d) in {(2,3),(2,4),(3,5)}",
       {"appendixA.constants", "dne.schmidt-rank"}},
  };

  VerifyConfig cfg;
  int failures = 0;
  for (const Criterion& crit : criteria) {
    bool pass = true;
    std::string detail;
    for (const std::string& id : crit.check_ids) {
      const CheckResult r = entkit::run_check(id, cfg);
      if (!r.pass) {
        pass = false;
        detail += (detail.empty() ? "" : ", ") + id;
      }
    }
    std::printf("criterion %2d: %s  %s%s%s\n", crit.number,
                pass ? "PASS" : "FAIL", crit.description.c_str(),
                pass ? "" : "  [failed: ", pass ? "" : (detail + "]").c_str());
    if (!pass) ++failures;
  }
  std::printf("%d/10 acceptance criteria passed\n",
              10 - failures);
  return failures == 0 ? 0 : 1;
}
