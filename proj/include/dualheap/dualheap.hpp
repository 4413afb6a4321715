#pragma once

#include "adaptive_sort.hpp"
#include "bst_replay.hpp"
#include "geometry.hpp"
#include "perm_core.hpp"
#include "smooth.hpp"
#include "stable_heap.hpp"
#include "star_path.hpp"
#include "transform.hpp"
