#pragma once

#include "applications.hpp"
#include "count.hpp"
#include "error.hpp"
#include "expansions.hpp"
#include "matrix.hpp"
#include "memo.hpp"
#include "oracle.hpp"
#include "permutation.hpp"
#include "results.hpp"
