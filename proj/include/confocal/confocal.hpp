#pragma once

#include "confocal/cone.hpp"
#include "confocal/elliptic.hpp"
#include "confocal/error.hpp"
#include "confocal/numerics.hpp"
#include "confocal/quadric.hpp"
#include "confocal/rng.hpp"
#include "confocal/staude.hpp"
#include "confocal/vec.hpp"
#include "confocal/verify.hpp"
