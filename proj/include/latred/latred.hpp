#pragma once

#include "latred/bounds.hpp"
#include "latred/core.hpp"
#include "latred/enumeration.hpp"
#include "latred/harness.hpp"
#include "latred/io.hpp"
#include "latred/lll.hpp"
#include "latred/reduction.hpp"
