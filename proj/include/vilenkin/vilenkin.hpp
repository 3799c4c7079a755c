#pragma once

#include "vilenkin/group.hpp"
#include "vilenkin/level_function.hpp"
#include "vilenkin/transform.hpp"
#include "vilenkin/kernels.hpp"
#include "vilenkin/bounds.hpp"
#include "vilenkin/martingale.hpp"
#include "vilenkin/maximal.hpp"
#include "vilenkin/counterexample.hpp"
#include "vilenkin/parallel.hpp"
#include "vilenkin/io.hpp"
