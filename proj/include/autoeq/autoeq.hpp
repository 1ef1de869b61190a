#pragma once

#include "autoeq/scalar.hpp"
#include "autoeq/comm_poly.hpp"
#include "autoeq/uni_poly.hpp"
#include "autoeq/bivariate_gcd.hpp"
#include "autoeq/free_poly.hpp"
#include "autoeq/comm_basis.hpp"
#include "autoeq/automorphism.hpp"
#include "autoeq/groebner.hpp"
#include "autoeq/param.hpp"
#include "autoeq/decide.hpp"
#include "autoeq/parser.hpp"
