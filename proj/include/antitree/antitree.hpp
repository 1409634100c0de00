#pragma once

#include "antitree/anticonnect.hpp"
#include "antitree/digraph.hpp"
#include "antitree/embed.hpp"
#include "antitree/extremal.hpp"
#include "antitree/io.hpp"
#include "antitree/matching.hpp"
#include "antitree/reduced.hpp"
#include "antitree/result.hpp"
#include "antitree/tree.hpp"
#include "antitree/tree_cut.hpp"
#include "antitree/tree_gen.hpp"
