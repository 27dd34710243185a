// Hadamard walk on a 7-cycle at a few decoherence rates: prints the position
// distribution after 30 steps and how far the state is from its limit.

#include "qwalk/qwalk.hpp"

#include <cstdio>

int main() {
  const int n = 7;
  const int steps = 30;
  for (double p : {0.0, 0.05, 0.3, 1.0}) {
    qwalk::WalkParams params;
    params.n_sites = n;
    params.decoherence_rate = p;

    qwalk::FourierEvolver walk(params);
    walk.advance_to(steps);
    const auto rho = qwalk::reconstruct_density(walk.field());
    const auto probs = qwalk::position_distribution(rho);
    const auto info = qwalk::mutual_information(rho, steps);

    std::printf("p=%.2f  P(x):", p);
    for (double v : probs) std::printf(" %.4f", v);
    std::printf("\n        S=%.4f bits  I(coin:walker)=%.4f  ||rho - rho_inf||_tr=%.2e\n", info.s_total,
                info.mutual_info, qwalk::trace_distance(rho, qwalk::stationary_density_at(n, steps)));
  }
}
