#pragma once

#include "skewgeom/conics.hpp"
#include "skewgeom/core.hpp"
#include "skewgeom/frame.hpp"
#include "skewgeom/loci.hpp"
#include "skewgeom/maps.hpp"
#include "skewgeom/quadrics.hpp"
#include "skewgeom/tensor.hpp"
