#ifndef CASIMIR_CASIMIR_HPP
#define CASIMIR_CASIMIR_HPP

#include "casimir/core.hpp"
#include "casimir/corrections.hpp"
#include "casimir/dielectric.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/quadrature.hpp"

#endif  // CASIMIR_CASIMIR_HPP
