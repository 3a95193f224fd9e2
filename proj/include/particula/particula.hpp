#pragma once

// Umbrella header.

#include "particula/vec.hpp"
#include "particula/variables.hpp"
#include "particula/particle_set.hpp"
#include "particula/domain.hpp"
#include "particula/cell_list.hpp"
#include "particula/neighbor_query.hpp"
#include "particula/update.hpp"
#include "particula/csv.hpp"
#include "particula/md.hpp"
#include "particula/bench.hpp"
