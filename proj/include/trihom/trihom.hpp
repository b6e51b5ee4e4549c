#pragma once
// Umbrella header: exact triply graded homology of braid closures, with the
// Hecke-trace and skein-recursion oracles and the structured-output layer.

#include "trihom/bimodule.hpp"
#include "trihom/cache.hpp"
#include "trihom/complex.hpp"
#include "trihom/coxeter.hpp"
#include "trihom/document.hpp"
#include "trihom/hecke.hpp"
#include "trihom/hochschild.hpp"
#include "trihom/invariants.hpp"
#include "trihom/linalg.hpp"
#include "trihom/oracle.hpp"
#include "trihom/poly.hpp"
#include "trihom/polymatrix.hpp"
#include "trihom/rational.hpp"
#include "trihom/series.hpp"
#include "trihom/util.hpp"
