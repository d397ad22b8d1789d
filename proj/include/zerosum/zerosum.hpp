#pragma once

#include "atoms.hpp"
#include "corpus.hpp"
#include "element_set.hpp"
#include "error.hpp"
#include "formulas.hpp"
#include "group.hpp"
#include "json.hpp"
#include "lattice.hpp"
#include "search_control.hpp"
#include "separating.hpp"
#include "sequence.hpp"
#include "verify.hpp"
