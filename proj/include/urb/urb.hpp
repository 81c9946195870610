#pragma once

#include "urb/analysis.hpp"
#include "urb/construct_t1.hpp"
#include "urb/construct_t2.hpp"
#include "urb/error.hpp"
#include "urb/int_set.hpp"
#include "urb/integer.hpp"
#include "urb/prime_field.hpp"
#include "urb/repair.hpp"
#include "urb/sidon.hpp"
