#pragma once

#include "scalar.hpp"
#include "combinatorics.hpp"
#include "form.hpp"
#include "exterior.hpp"
#include "subspace.hpp"
#include "g2.hpp"
#include "spin7.hpp"
#include "polynomial.hpp"
#include "report.hpp"
#include "fm_transform.hpp"
#include "compat.hpp"
#include "counterexample.hpp"
#include "random.hpp"
#include "constructions.hpp"
#include "io.hpp"
#include "identities.hpp"
