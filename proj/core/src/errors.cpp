#include "haptolab/errors.hpp"

namespace haptolab {

void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw InvalidArgument(what);
    }
}

}  // namespace haptolab
