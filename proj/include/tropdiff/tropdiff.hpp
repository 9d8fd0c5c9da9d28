#pragma once

#include "tropdiff/diff_poly.hpp"
#include "tropdiff/errors.hpp"
#include "tropdiff/exponent_matrix.hpp"
#include "tropdiff/family.hpp"
#include "tropdiff/linear_system.hpp"
#include "tropdiff/parse.hpp"
#include "tropdiff/rational.hpp"
#include "tropdiff/series.hpp"
#include "tropdiff/solver.hpp"
#include "tropdiff/support_set.hpp"
#include "tropdiff/trop_poly.hpp"
#include "tropdiff/trop_value.hpp"
