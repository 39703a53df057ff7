//
// seedmatch - Copyright 2026 The seedmatch Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Draws a correlated pair, hides the alignment, and compares RGM with SGM
// at a few seed levels.

#include <iostream>

#include "seedmatch.hpp"

int main() {
  using namespace seedmatch;

  ExperimentConfig cfg;
  cfg.n = 150;
  cfg.p = 0.5;
  cfg.rho_grid = {0.6};
  cfg.seed_grid = {5, 10, 20, 40};
  cfg.replicates = 5;
  cfg.methods = {Method::sgm, Method::rgm};
  cfg.master_seed = 7;

  for (const CellResult& r : run_experiment(cfg)) {
    std::cout << method_name(r.method) << " s=" << r.s << " accuracy=" << r.mean_accuracy << " ± "
              << 2 * r.std_error << '\n';
  }
}
