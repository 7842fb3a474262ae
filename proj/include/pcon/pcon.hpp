#pragma once
// Umbrella header for the whole library.

#include "pcon/bench.hpp"
#include "pcon/diffusion.hpp"
#include "pcon/eval.hpp"
#include "pcon/generators.hpp"
#include "pcon/graph.hpp"
#include "pcon/memtrack.hpp"
#include "pcon/peel.hpp"
#include "pcon/ratio.hpp"
#include "pcon/rng.hpp"
#include "pcon/spectral.hpp"
#include "pcon/structural.hpp"
