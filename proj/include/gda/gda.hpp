#pragma once

#include "gda/disc.hpp"
#include "gda/generators.hpp"
#include "gda/graph.hpp"
#include "gda/io.hpp"
#include "gda/recon.hpp"
#include "gda/rng.hpp"
#include "gda/sampler.hpp"
