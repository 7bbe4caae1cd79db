#include "doctest.h"

TEST_CASE("placeholder spectral") { CHECK(false); }
