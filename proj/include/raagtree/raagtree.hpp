#pragma once

#include "raagtree/budget.hpp"
#include "raagtree/constants.hpp"
#include "raagtree/egf.hpp"
#include "raagtree/enumerate.hpp"
#include "raagtree/error.hpp"
#include "raagtree/homology.hpp"
#include "raagtree/intmat.hpp"
#include "raagtree/relators.hpp"
#include "raagtree/series.hpp"
#include "raagtree/stats.hpp"
#include "raagtree/stirling.hpp"
#include "raagtree/tree.hpp"
#include "raagtree/whitehead.hpp"
#include "raagtree/word.hpp"
