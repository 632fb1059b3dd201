#ifndef ENGEL_ENGEL_HPP
#define ENGEL_ENGEL_HPP

#include "rational.hpp"
#include "interval.hpp"
#include "errors.hpp"
#include "expansion.hpp"
#include "family.hpp"
#include "construction.hpp"
#include "dimension.hpp"

#endif
