#pragma once

// Umbrella header for the whole workbench.

#include "kmwb/blowup.hpp"
#include "kmwb/cone.hpp"
#include "kmwb/descriptor.hpp"
#include "kmwb/errors.hpp"
#include "kmwb/hodge.hpp"
#include "kmwb/io.hpp"
#include "kmwb/lattice.hpp"
#include "kmwb/linalg.hpp"
#include "kmwb/rational.hpp"
#include "kmwb/recovery.hpp"
#include "kmwb/series.hpp"
#include "kmwb/simplex.hpp"
#include "kmwb/structure.hpp"
