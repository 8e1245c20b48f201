#pragma once

#include "mordell/bounds.hpp"
#include "mordell/enumerate.hpp"
#include "mordell/errors.hpp"
#include "mordell/graph.hpp"
#include "mordell/interval.hpp"
#include "mordell/json_io.hpp"
#include "mordell/np.hpp"
#include "mordell/pl_function.hpp"
#include "mordell/rational.hpp"
#include "mordell/series.hpp"
