#pragma once

#include "nlc/calculus.hpp"
#include "nlc/density_transport.hpp"
#include "nlc/diagnostics.hpp"
#include "nlc/director.hpp"
#include "nlc/error.hpp"
#include "nlc/exponents.hpp"
#include "nlc/grid.hpp"
#include "nlc/harness/config.hpp"
#include "nlc/harness/csv.hpp"
#include "nlc/harness/heatmap.hpp"
#include "nlc/harness/run.hpp"
#include "nlc/harness/scenario.hpp"
#include "nlc/harness/snapshot.hpp"
#include "nlc/inequality_lab.hpp"
#include "nlc/momentum.hpp"
#include "nlc/spectral.hpp"
#include "nlc/state.hpp"
