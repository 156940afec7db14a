#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nplab {

struct FigureOptions {
    std::string out_dir = ".";
    std::uint64_t seed = 12345;
    int replications = 20;
    int n_inputs = 1000;
};

struct FigureResult {
    std::vector<std::string> files;
    bool compare_pass = true;               // embedded theory/simulation checks
    std::vector<std::string> report_lines;  // one line per check or summary
};

// Renders one of the standard figures (2..7) into out_dir: the backing
// CSVs plus one SVG. Figure 2 runs its simulations and checks them
// against the closed form at 5% over t in [1, 10]; the result carries
// that verdict.
//
//   2: learning curves, closed form vs simulation, M in {1,3,5,8}
//   3: optimal step size and optimal noise ratio versus M
//   4: residual error per output and total, at the optimal pair, versus M
//   5: optimal noise ratio and its residual error versus step size
//   6: fastest-relaxation step size versus a small step size, theory
//   7: noisy-baseline rule versus perturbation-only rule, theory
FigureResult run_figure(int figure, const FigureOptions& opt);

}  // namespace nplab
