#pragma once

#include "perbeta/error.hpp"
#include "perbeta/polynomial.hpp"
#include "perbeta/modular.hpp"
#include "perbeta/field.hpp"
#include "perbeta/membership.hpp"
#include "perbeta/witness.hpp"
#include "perbeta/graph.hpp"
#include "perbeta/fermat.hpp"
#include "perbeta/periodic_rep.hpp"
#include "perbeta/representation.hpp"
#include "perbeta/verify.hpp"
#include "perbeta/io.hpp"
