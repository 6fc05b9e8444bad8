#pragma once

// Everything in one include.
#include "evenac/graph.hpp"
#include "evenac/block_tree.hpp"
#include "evenac/flow.hpp"
#include "evenac/budget.hpp"
#include "evenac/cycles.hpp"
#include "evenac/tree.hpp"
#include "evenac/certificate.hpp"
#include "evenac/oracles.hpp"
#include "evenac/gadgets.hpp"
#include "evenac/pipeline.hpp"
#include "evenac/tree_packing.hpp"
#include "evenac/solve.hpp"
