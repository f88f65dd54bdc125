/*
 * csv.hpp — tiny deterministic CSV helpers for the experiment outputs.
 */
#pragma once

#include <ostream>
#include <string>

namespace qwalk {

// Unquoted decimal with 17 significant digits; round-trips any double.
std::string format_double(double x);

// "a,b,...\n" with doubles through format_double.
void csv_row(std::ostream& out, int a, double b);
void csv_row(std::ostream& out, int a, double b, int c);
void csv_row(std::ostream& out, double a, double b, int c);

}  // namespace qwalk
