#ifndef SKEWDGA_SKEWDGA_HPP
#define SKEWDGA_SKEWDGA_HPP

#include "field.hpp"
#include "linalg.hpp"
#include "skewpoly.hpp"
#include "quotient.hpp"
#include "dga.hpp"
#include "homology.hpp"
#include "ext.hpp"
#include "spec.hpp"

#endif // SKEWDGA_SKEWDGA_HPP
