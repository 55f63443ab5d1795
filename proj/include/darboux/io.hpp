#pragma once

#include <string>

#include "darboux/grid.hpp"

namespace darboux {

// CSV with header "x,re,im", one row per node, 17 significant digits.
void write_field_csv(const std::string& path, const ComplexField& f);
ComplexField read_field_csv(const std::string& path);

std::string format_double(double v);  // shortest round-trippable (%.17g)

}  // namespace darboux
