#include "qwalk/csv.hpp"

#include <cstdio>

namespace qwalk {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void csv_row(std::ostream& out, int a, double b) {
    out << a << ',' << format_double(b) << '\n';
}

void csv_row(std::ostream& out, int a, double b, int c) {
    out << a << ',' << format_double(b) << ',' << c << '\n';
}

void csv_row(std::ostream& out, double a, double b, int c) {
    out << format_double(a) << ',' << format_double(b) << ',' << c << '\n';
}

}  // namespace qwalk
