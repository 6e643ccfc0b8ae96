#pragma once

#include "pullup/cut_tree.hpp"
#include "pullup/edge_geometry.hpp"
#include "pullup/error.hpp"
#include "pullup/fabricate.hpp"
#include "pullup/fold_sim.hpp"
#include "pullup/geometry.hpp"
#include "pullup/join_sets.hpp"
#include "pullup/mesh.hpp"
#include "pullup/net.hpp"
#include "pullup/netlib.hpp"
#include "pullup/obj.hpp"
#include "pullup/overlap.hpp"
#include "pullup/pipeline.hpp"
#include "pullup/string_path.hpp"
#include "pullup/unfold.hpp"
#include "pullup/validate.hpp"
