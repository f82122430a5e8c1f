#ifndef DIRACGB_DIRACGB_HPP
#define DIRACGB_DIRACGB_HPP

#include "rational.hpp"
#include "variables.hpp"
#include "monomial.hpp"
#include "order.hpp"
#include "polynomial.hpp"
#include "groebner.hpp"
#include "phasespace.hpp"
#include "dirac.hpp"
#include "parser.hpp"
#include "report.hpp"

#endif  // DIRACGB_DIRACGB_HPP
