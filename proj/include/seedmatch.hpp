//
// seedmatch - Copyright 2026 The seedmatch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include "seedmatch/errors.hpp"
#include "seedmatch/graph.hpp"
#include "seedmatch/harness/canonical.hpp"
#include "seedmatch/harness/experiment.hpp"
#include "seedmatch/harness/io.hpp"
#include "seedmatch/harness/svg.hpp"
#include "seedmatch/lap.hpp"
#include "seedmatch/matchers.hpp"
#include "seedmatch/permutation.hpp"
#include "seedmatch/rng.hpp"
#include "seedmatch/theory.hpp"
