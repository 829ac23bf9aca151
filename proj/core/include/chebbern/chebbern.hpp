#pragma once

#include "chebbern/bernstein_basis.hpp"
#include "chebbern/closed_forms.hpp"
#include "chebbern/convexity.hpp"
#include "chebbern/errors.hpp"
#include "chebbern/function_space.hpp"
#include "chebbern/operator.hpp"
