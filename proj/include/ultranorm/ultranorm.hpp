#pragma once

#include "ultranorm/betweenness.hpp"
#include "ultranorm/error.hpp"
#include "ultranorm/field.hpp"
#include "ultranorm/isometry.hpp"
#include "ultranorm/json_io.hpp"
#include "ultranorm/norm.hpp"
#include "ultranorm/oracle.hpp"
#include "ultranorm/random.hpp"
#include "ultranorm/report.hpp"
#include "ultranorm/valuation.hpp"
#include "ultranorm/vector.hpp"
