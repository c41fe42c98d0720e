#include "fermi/errors.hpp"

#include <cstdio>

namespace fermi {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace fermi
