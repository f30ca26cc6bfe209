#pragma once

#include "abelian_group.hpp"
#include "bosonization.hpp"
#include "coboundary.hpp"
#include "cocycle.hpp"
#include "cyclotomic.hpp"
#include "fixtures.hpp"
#include "integer_linalg.hpp"
#include "json_io.hpp"
#include "matrix.hpp"
#include "nichols.hpp"
#include "yd_module.hpp"
