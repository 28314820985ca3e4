#pragma once

#include "fgq/branching.hpp"
#include "fgq/errors.hpp"
#include "fgq/formalseries.hpp"
#include "fgq/hamiltonian.hpp"
#include "fgq/khom.hpp"
#include "fgq/linalg.hpp"
#include "fgq/rational.hpp"
#include "fgq/repring.hpp"
#include "fgq/rootdata.hpp"
#include "fgq/serialize.hpp"
