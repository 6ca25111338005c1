#pragma once

#include "ramify/errors.hpp"
#include "ramify/group.hpp"
#include "ramify/spherical.hpp"
#include "ramify/bigcount.hpp"
#include "ramify/construction.hpp"
#include "ramify/orbits.hpp"
#include "ramify/certified.hpp"
#include "ramify/bounds.hpp"
#include "ramify/serialize.hpp"
#include "ramify/cache.hpp"
