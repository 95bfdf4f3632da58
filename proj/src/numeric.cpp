#include "primorial/numeric.hpp"

#include <cstdio>

namespace primlab {

std::string format_real(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

}  // namespace primlab
