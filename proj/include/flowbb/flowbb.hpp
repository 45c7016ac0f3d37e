#ifndef FLOWBB_FLOWBB_HPP
#define FLOWBB_FLOWBB_HPP

#include "flowbb/autotune.hpp"
#include "flowbb/backend.hpp"
#include "flowbb/bench.hpp"
#include "flowbb/bound.hpp"
#include "flowbb/instance.hpp"
#include "flowbb/node.hpp"
#include "flowbb/pending.hpp"
#include "flowbb/search.hpp"
#include "flowbb/workload.hpp"

#endif  // FLOWBB_FLOWBB_HPP
