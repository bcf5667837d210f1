#pragma once

#include "gsp/clustering.hpp"
#include "gsp/design.hpp"
#include "gsp/error.hpp"
#include "gsp/graph.hpp"
#include "gsp/io.hpp"
#include "gsp/matrix.hpp"
#include "gsp/random.hpp"
#include "gsp/spectral.hpp"
#include "gsp/synth.hpp"
#include "gsp/systems.hpp"
