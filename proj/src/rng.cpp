#include "acdelay/rng.hpp"

namespace acdelay {

// Reference values pin the stream definition across builds.
static_assert(mix64(0) == 0);
static_assert(mix64(kGolden) == 0xE220A8397B1DCDAFULL);

}  // namespace acdelay
