#pragma once

#include "hyclique/algebra.hpp"
#include "hyclique/bounds.hpp"
#include "hyclique/chi_tau.hpp"
#include "hyclique/core.hpp"
#include "hyclique/errors.hpp"
#include "hyclique/extraction.hpp"
#include "hyclique/interval.hpp"
#include "hyclique/numeric.hpp"
#include "hyclique/report.hpp"
#include "hyclique/search.hpp"
